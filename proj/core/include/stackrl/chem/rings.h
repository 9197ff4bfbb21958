#ifndef STACKRL_CHEM_RINGS_H_
#define STACKRL_CHEM_RINGS_H_

#include <cstddef>
#include <string_view>
#include <vector>

#include "stackrl/chem/molecule.h"

namespace stackrl::chem {

inline constexpr std::size_t kMaxRingSize = 8;

// Every simple cycle with at most max_length atoms, each listed once starting
// from its lowest atom index. Bounded depth-first search.
std::vector<std::vector<std::size_t>> simple_cycles(const MoleculeGraph& g,
                                                    std::size_t max_length = kMaxRingSize);

// Atoms lying on any cycle, whatever its size (non-bridge bond endpoints).
std::vector<bool> ring_atoms(const MoleculeGraph& g);

// Distinct 6-cycles made only of aromatic carbons.
int count_benzene_rings(const MoleculeGraph& g);

enum class Substituent { kHydroxyl, kAmino, kMethyl, kCyano, kFluoro, kChloro, kBromo, kNitro };

std::string_view substituent_name(Substituent s);
const std::vector<Substituent>& default_substituents();

// Terminal groups from `patterns` hanging off ring atoms.
int count_substituents(const MoleculeGraph& g,
                       const std::vector<Substituent>& patterns = default_substituents());

}  // namespace stackrl::chem

#endif  // STACKRL_CHEM_RINGS_H_
