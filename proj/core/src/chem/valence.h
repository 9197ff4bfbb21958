#ifndef STACKRL_CHEM_VALENCE_H_
#define STACKRL_CHEM_VALENCE_H_

#include <optional>
#include <string_view>

#include "stackrl/chem/molecule.h"

namespace stackrl::chem::detail {

// Hydrogens needed to bring an organic-subset atom to its lowest allowed
// valence at or above `bond_sum`; nullopt when every allowed valence is
// exceeded. Aromatic atoms count aromatic bonds as 1 and, unless they carry a
// double bond, reserve one more unit for the ring pi system. Aromatic
// nitrogen/phosphorus take 2 or 3 in total and never gain hydrogens.
std::optional<int> implicit_hydrogens(std::string_view element, bool aromatic, int bond_sum, bool has_double);

// Valence check for a bracket atom with its explicit hydrogen count. Charged
// atoms and elements outside the organic subset are accepted as written.
bool bracket_valence_ok(const Atom& atom, int bond_sum, bool has_double);

bool has_double_bond(const MoleculeGraph& g, std::size_t atom);

}  // namespace stackrl::chem::detail

#endif  // STACKRL_CHEM_VALENCE_H_
