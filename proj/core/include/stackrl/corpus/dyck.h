#ifndef STACKRL_CORPUS_DYCK_H_
#define STACKRL_CORPUS_DYCK_H_

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "stackrl/random.h"

namespace stackrl::corpus {

struct DyckOptions {
  std::size_t min_pairs = 2;
  std::size_t max_pairs = 12;
  std::size_t max_depth = 8;
};

// One balanced word over "()[]" with a uniformly drawn number of pairs. At
// every position the walk opens with probability 1/2 unless the depth limit
// or the remaining pair budget forces a move.
std::string dyck_word(const DyckOptions& options, Rng& rng);
std::vector<std::string> dyck_corpus(std::size_t n, const DyckOptions& options, Rng& rng);

// Non-empty and correctly matched over "()[]".
bool is_dyck_word(std::string_view s);

}  // namespace stackrl::corpus

#endif  // STACKRL_CORPUS_DYCK_H_
