#include "stackrl/corpus/dyck.h"

#include <stdexcept>

namespace stackrl::corpus {

std::string dyck_word(const DyckOptions& o, Rng& rng) {
  if (o.min_pairs == 0 || o.max_pairs < o.min_pairs || o.max_depth == 0) {
    throw std::invalid_argument("dyck: bad pair/depth limits");
  }
  const std::size_t pairs = o.min_pairs + uniform_index(rng, o.max_pairs - o.min_pairs + 1);
  std::string word, open_stack;
  std::size_t opens_left = pairs;
  while (opens_left > 0 || !open_stack.empty()) {
    bool open;
    if (opens_left == 0) open = false;
    else if (open_stack.empty()) open = true;
    else if (open_stack.size() >= o.max_depth) open = false;
    else open = uniform01(rng) < 0.5;
    if (open) {
      const char c = uniform01(rng) < 0.5 ? '(' : '[';
      word += c;
      open_stack += c;
      --opens_left;
    } else {
      word += open_stack.back() == '(' ? ')' : ']';
      open_stack.pop_back();
    }
  }
  return word;
}

std::vector<std::string> dyck_corpus(std::size_t n, const DyckOptions& options, Rng& rng) {
  std::vector<std::string> out;
  out.reserve(n);
  for (std::size_t i = 0; i < n; ++i) out.push_back(dyck_word(options, rng));
  return out;
}

bool is_dyck_word(std::string_view s) {
  if (s.empty()) return false;
  std::string stack;
  for (char c : s) {
    if (c == '(' || c == '[') {
      stack += c;
    } else if (c == ')' || c == ']') {
      if (stack.empty() || stack.back() != (c == ')' ? '(' : '[')) return false;
      stack.pop_back();
    } else {
      return false;
    }
  }
  return stack.empty();
}

}  // namespace stackrl::corpus
