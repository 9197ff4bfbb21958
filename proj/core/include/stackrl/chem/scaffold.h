#ifndef STACKRL_CHEM_SCAFFOLD_H_
#define STACKRL_CHEM_SCAFFOLD_H_

#include <cstdint>

#include "stackrl/chem/molecule.h"

namespace stackrl::chem {

// Ring systems plus the linkers joining them: degree-1 atoms outside rings
// are removed until none remain. Acyclic molecules give an empty graph.
// Hydrogen counts of the remaining atoms are adjusted for removed bonds.
MoleculeGraph murcko_scaffold(const MoleculeGraph& g);

// Isomorphism-invariant 64-bit key (iterated neighbourhood refinement over
// the whole graph). Equal graphs up to renumbering share a key; used to
// compare scaffolds without canonical SMILES.
std::uint64_t graph_key(const MoleculeGraph& g);

}  // namespace stackrl::chem

#endif  // STACKRL_CHEM_SCAFFOLD_H_
