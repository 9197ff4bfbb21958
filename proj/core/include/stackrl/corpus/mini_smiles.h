#ifndef STACKRL_CORPUS_MINI_SMILES_H_
#define STACKRL_CORPUS_MINI_SMILES_H_

#include <cstddef>
#include <string>
#include <vector>

#include "stackrl/random.h"

namespace stackrl::corpus {

struct MiniSmilesOptions {
  std::size_t max_rings = 3;
  double acyclic_fraction = 0.15;
  std::size_t max_ring_substituents = 2;
  // Side chains nest: a branch may hold a carbon carrying its own branch.
  std::size_t max_branch_depth = 3;
  double nesting_probability = 0.4;
  // Longer draws are rejected so the corpus fits a generator with max_len 80.
  std::size_t max_tokens = 78;
};

// One string from the template grammar: optional head group, one to
// max_rings ring units joined by short linkers, side chains on ring atoms,
// optional tail group; or a short acyclic chain. Ring units are benzene,
// pyridine, cyclohexane, cyclopentane, and the fused naphthalene and
// tetralin systems whose two ring-bond digits interleave. Every output
// passes chem::validate.
std::string mini_smiles(const MiniSmilesOptions& options, Rng& rng);

// n distinct strings (fewer if the grammar runs dry after many attempts).
std::vector<std::string> mini_smiles_corpus(std::size_t n, const MiniSmilesOptions& options, Rng& rng);

}  // namespace stackrl::corpus

#endif  // STACKRL_CORPUS_MINI_SMILES_H_
