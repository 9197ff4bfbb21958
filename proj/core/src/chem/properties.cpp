#include "stackrl/chem/properties.h"

#include <cctype>

#include "stackrl/chem/rings.h"
#include "stackrl/chem/tokenizer.h"
#include "stackrl/chem/validator.h"
#include "stackrl/errors.h"

namespace stackrl::chem {
namespace {

constexpr double kHydrogenMass = 1.008;

double atom_weight(std::string_view symbol, bool aromatic) {
  if (symbol == "C") return aromatic ? 0.35 : 0.5;
  if (symbol == "N") return aromatic ? -0.6 : -0.8;
  if (symbol == "O") return aromatic ? -0.2 : -0.7;
  if (symbol == "S") return aromatic ? 0.4 : 0.3;
  if (symbol == "P") return -0.3;
  if (symbol == "B") return -0.2;
  if (symbol == "F") return 0.3;
  if (symbol == "Cl") return 0.8;
  if (symbol == "Br") return 1.0;
  if (symbol == "I") return 1.2;
  return 0.0;
}

// Element symbol at the start of a bracket body, after any isotope digits.
std::pair<std::string, bool> bracket_element(std::string_view text) {
  std::size_t i = 1;
  while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) ++i;
  if (i >= text.size()) return {"", false};
  const char c = text[i];
  if (std::islower(static_cast<unsigned char>(c))) {
    return {std::string(1, static_cast<char>(std::toupper(c))), true};
  }
  std::string sym(1, c);
  if (i + 1 < text.size() && std::islower(static_cast<unsigned char>(text[i + 1])) &&
      text[i + 1] != 'H') {
    const std::string two = sym + text[i + 1];
    if (atomic_mass(two)) sym = two;
  }
  return {sym, false};
}

}  // namespace

std::optional<double> molar_mass(const MoleculeGraph& g) {
  double total = 0.0;
  for (const Atom& a : g.atoms()) {
    const auto m = atomic_mass(a.element);
    if (!m) return std::nullopt;
    total += *m + kHydrogenMass * a.hydrogens;
  }
  return total;
}

double composition_score(std::string_view smiles) {
  double score = 0.0;
  for (const Lexeme& lx : lex_smiles(smiles)) {
    if (lx.kind == LexemeKind::kAtom) {
      const bool aromatic = std::islower(static_cast<unsigned char>(lx.text[0])) != 0;
      std::string sym = lx.text;
      sym[0] = static_cast<char>(std::toupper(static_cast<unsigned char>(sym[0])));
      score += atom_weight(sym, aromatic);
    } else if (lx.kind == LexemeKind::kBracketAtom) {
      const auto [sym, aromatic] = bracket_element(lx.text);
      score += atom_weight(sym, aromatic);
    }
  }
  return score;
}

double token_count(std::string_view smiles) { return static_cast<double>(lex_smiles(smiles).size()); }

Feature parse_feature(std::string_view name) {
  if (name == "benzene_rings") return Feature::kBenzeneRings;
  if (name == "substituents") return Feature::kSubstituents;
  if (name == "composition_score") return Feature::kCompositionScore;
  if (name == "token_count") return Feature::kTokenCount;
  if (name == "molar_mass") return Feature::kMolarMass;
  throw DataError("unknown structural feature '" + std::string(name) + "'");
}

std::string_view feature_name(Feature f) {
  switch (f) {
    case Feature::kBenzeneRings: return "benzene_rings";
    case Feature::kSubstituents: return "substituents";
    case Feature::kCompositionScore: return "composition_score";
    case Feature::kTokenCount: return "token_count";
    case Feature::kMolarMass: return "molar_mass";
  }
  return "unknown";
}

bool feature_defined_on_invalid(Feature f) {
  return f == Feature::kCompositionScore || f == Feature::kTokenCount;
}

std::optional<double> compute_feature(Feature f, std::string_view smiles) {
  if (f == Feature::kCompositionScore) return composition_score(smiles);
  if (f == Feature::kTokenCount) return token_count(smiles);
  const auto parsed = parse_molecule(smiles);
  if (!parsed.report.valid) return std::nullopt;
  const MoleculeGraph& g = parsed.graph;
  switch (f) {
    case Feature::kBenzeneRings: return static_cast<double>(count_benzene_rings(g));
    case Feature::kSubstituents: return static_cast<double>(count_substituents(g));
    case Feature::kMolarMass: return molar_mass(g);
    default: return std::nullopt;
  }
}

}  // namespace stackrl::chem
