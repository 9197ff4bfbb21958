#ifndef STACKRL_CHEM_PROPERTIES_H_
#define STACKRL_CHEM_PROPERTIES_H_

#include <optional>
#include <string>
#include <string_view>

#include "stackrl/chem/molecule.h"

namespace stackrl::chem {

// Heavy atoms plus hydrogens, standard atomic weights. nullopt when an
// element has no tabulated mass.
std::optional<double> molar_mass(const MoleculeGraph& g);

// Fixed linear score over atom lexemes (a lipophilicity stand-in). Works on
// any string, valid or not; bracket atoms are scored by their element.
double composition_score(std::string_view smiles);

// Number of SMILES lexemes.
double token_count(std::string_view smiles);

// Computable properties usable as oracle labels or reward sources.
enum class Feature { kBenzeneRings, kSubstituents, kCompositionScore, kTokenCount, kMolarMass };

Feature parse_feature(std::string_view name);  // throws DataError
std::string_view feature_name(Feature f);
// True when the feature is defined on strings that fail validation.
bool feature_defined_on_invalid(Feature f);

// Value of `f` for a SMILES string. Graph-based features are nullopt for
// strings that do not parse.
std::optional<double> compute_feature(Feature f, std::string_view smiles);

}  // namespace stackrl::chem

#endif  // STACKRL_CHEM_PROPERTIES_H_
