#ifndef STACKRL_CHEM_VALIDATOR_H_
#define STACKRL_CHEM_VALIDATOR_H_

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "stackrl/chem/molecule.h"
#include "stackrl/errors.h"

namespace stackrl::chem {

enum class FailureKind { kToken, kParenthesis, kRingClosure, kBracketAtom, kValence, kEmpty };

std::string_view failure_kind_name(FailureKind kind);

struct ValidityFailure {
  FailureKind kind = FailureKind::kToken;
  std::size_t position = 0;  // character offset (atom index for valence)
  std::string detail;
};

struct ValidityReport {
  bool valid = false;
  std::vector<ValidityFailure> failures;

  bool has(FailureKind kind) const;
  std::string summary() const;
};

// Syntax and valence check. Stages run in order (tokens, parentheses, ring
// closures, bracket atoms, valence); the first stage that finds problems
// ends the check and reports all of its failures.
ValidityReport validate(std::string_view smiles);

class InvalidSmilesError : public DataError {
 public:
  InvalidSmilesError(std::string smiles, ValidityReport report);
  const ValidityReport& report() const { return report_; }

 private:
  ValidityReport report_;
};

// Atoms and bonds with implicit hydrogens filled. Throws InvalidSmilesError.
MoleculeGraph parse_graph(std::string_view smiles);

// Graph plus report in one pass; graph is empty unless report.valid.
struct ParsedMolecule {
  MoleculeGraph graph;
  ValidityReport report;
};
ParsedMolecule parse_molecule(std::string_view smiles);

// Non-canonical SMILES for a graph (depth-first, ring closures for back
// edges). parse_graph(to_smiles(g)) is isomorphic to g.
std::string to_smiles(const MoleculeGraph& graph);

}  // namespace stackrl::chem

#endif  // STACKRL_CHEM_VALIDATOR_H_
