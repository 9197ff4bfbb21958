#ifndef STACKRL_CHEM_MOLECULE_H_
#define STACKRL_CHEM_MOLECULE_H_

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace stackrl::chem {

enum class BondOrder : std::uint8_t { kSingle = 1, kDouble = 2, kTriple = 3, kAromatic = 4 };

// Contribution of a bond to an atom's valence sum; aromatic counts as 1.
int valence_contribution(BondOrder order);

struct Atom {
  std::string element;   // capitalized symbol, e.g. "C", "Cl"
  bool aromatic = false;
  int hydrogens = 0;     // implicit or bracket-specified
  int charge = 0;
  int isotope = 0;       // 0 = unspecified
  bool bracket = false;

  bool operator==(const Atom&) const = default;
};

struct Bond {
  std::size_t a = 0;
  std::size_t b = 0;
  BondOrder order = BondOrder::kSingle;

  std::size_t other(std::size_t atom) const { return atom == a ? b : a; }
  bool operator==(const Bond&) const = default;
};

class MoleculeGraph {
 public:
  std::size_t add_atom(Atom atom);
  // Throws std::invalid_argument on bad endpoints, self bonds or duplicates.
  std::size_t add_bond(std::size_t a, std::size_t b, BondOrder order);

  std::size_t atom_count() const { return atoms_.size(); }
  std::size_t bond_count() const { return bonds_.size(); }
  bool empty() const { return atoms_.empty(); }

  const Atom& atom(std::size_t i) const { return atoms_[i]; }
  Atom& atom(std::size_t i) { return atoms_[i]; }
  const Bond& bond(std::size_t i) const { return bonds_[i]; }
  const std::vector<Atom>& atoms() const { return atoms_; }
  const std::vector<Bond>& bonds() const { return bonds_; }

  // Bond indices incident to atom i.
  const std::vector<std::size_t>& incident(std::size_t i) const { return adjacency_[i]; }
  std::size_t degree(std::size_t i) const { return adjacency_[i].size(); }
  std::optional<std::size_t> bond_between(std::size_t a, std::size_t b) const;
  int valence_sum(std::size_t i) const;

  // Copy keeping only atoms with keep[i]; atom order is preserved.
  MoleculeGraph subgraph(const std::vector<bool>& keep) const;

  // Same atoms (with relabelling) and bonds: new index of old atom i is perm[i].
  MoleculeGraph permuted(const std::vector<std::size_t>& perm) const;

  bool operator==(const MoleculeGraph& other) const {
    return atoms_ == other.atoms_ && bonds_ == other.bonds_;
  }

 private:
  std::vector<Atom> atoms_;
  std::vector<Bond> bonds_;
  std::vector<std::vector<std::size_t>> adjacency_;
};

std::optional<double> atomic_mass(std::string_view element);
bool is_organic_subset(std::string_view element);

}  // namespace stackrl::chem

#endif  // STACKRL_CHEM_MOLECULE_H_
