#include "stackrl/chem/molecule.h"

#include <algorithm>
#include <array>
#include <stdexcept>

namespace stackrl::chem {

int valence_contribution(BondOrder order) {
  switch (order) {
    case BondOrder::kSingle: return 1;
    case BondOrder::kDouble: return 2;
    case BondOrder::kTriple: return 3;
    case BondOrder::kAromatic: return 1;
  }
  return 1;
}

std::size_t MoleculeGraph::add_atom(Atom atom) {
  atoms_.push_back(std::move(atom));
  adjacency_.emplace_back();
  return atoms_.size() - 1;
}

std::size_t MoleculeGraph::add_bond(std::size_t a, std::size_t b, BondOrder order) {
  if (a >= atoms_.size() || b >= atoms_.size()) throw std::invalid_argument("bond endpoint out of range");
  if (a == b) throw std::invalid_argument("self bond on atom " + std::to_string(a));
  if (bond_between(a, b)) {
    throw std::invalid_argument("duplicate bond " + std::to_string(a) + "-" + std::to_string(b));
  }
  bonds_.push_back({a, b, order});
  const std::size_t id = bonds_.size() - 1;
  adjacency_[a].push_back(id);
  adjacency_[b].push_back(id);
  return id;
}

std::optional<std::size_t> MoleculeGraph::bond_between(std::size_t a, std::size_t b) const {
  for (std::size_t id : adjacency_[a]) {
    if (bonds_[id].other(a) == b) return id;
  }
  return std::nullopt;
}

int MoleculeGraph::valence_sum(std::size_t i) const {
  int sum = 0;
  for (std::size_t id : adjacency_[i]) sum += valence_contribution(bonds_[id].order);
  return sum;
}

MoleculeGraph MoleculeGraph::subgraph(const std::vector<bool>& keep) const {
  MoleculeGraph out;
  std::vector<std::size_t> remap(atoms_.size(), SIZE_MAX);
  for (std::size_t i = 0; i < atoms_.size(); ++i) {
    if (keep[i]) remap[i] = out.add_atom(atoms_[i]);
  }
  for (const Bond& b : bonds_) {
    if (keep[b.a] && keep[b.b]) out.add_bond(remap[b.a], remap[b.b], b.order);
  }
  return out;
}

MoleculeGraph MoleculeGraph::permuted(const std::vector<std::size_t>& perm) const {
  if (perm.size() != atoms_.size()) throw std::invalid_argument("permutation size mismatch");
  std::vector<std::size_t> inverse(perm.size());
  for (std::size_t i = 0; i < perm.size(); ++i) inverse.at(perm[i]) = i;
  MoleculeGraph out;
  for (std::size_t j = 0; j < perm.size(); ++j) out.add_atom(atoms_[inverse[j]]);
  for (const Bond& b : bonds_) out.add_bond(perm[b.a], perm[b.b], b.order);
  return out;
}

namespace {

struct ElementMass {
  std::string_view symbol;
  double mass;
};

constexpr std::array<ElementMass, 36> kMasses{{
    {"H", 1.008},   {"He", 4.0026}, {"Li", 6.94},    {"Be", 9.0122}, {"B", 10.81},
    {"C", 12.011},  {"N", 14.007},  {"O", 15.999},   {"F", 18.998},  {"Ne", 20.180},
    {"Na", 22.990}, {"Mg", 24.305}, {"Al", 26.982},  {"Si", 28.085}, {"P", 30.974},
    {"S", 32.06},   {"Cl", 35.45},  {"Ar", 39.948},  {"K", 39.098},  {"Ca", 40.078},
    {"Ti", 47.867}, {"Cr", 51.996}, {"Mn", 54.938},  {"Fe", 55.845}, {"Co", 58.933},
    {"Ni", 58.693}, {"Cu", 63.546}, {"Zn", 65.38},   {"Ga", 69.723}, {"Ge", 72.630},
    {"As", 74.922}, {"Se", 78.971}, {"Br", 79.904},  {"Sn", 118.71}, {"I", 126.90},
    {"Pt", 195.08},
}};

}  // namespace

std::optional<double> atomic_mass(std::string_view element) {
  for (const auto& e : kMasses) {
    if (e.symbol == element) return e.mass;
  }
  return std::nullopt;
}

bool is_organic_subset(std::string_view element) {
  static constexpr std::array<std::string_view, 10> kOrganic{"B", "C", "N", "O", "P", "S", "F", "Cl", "Br", "I"};
  return std::find(kOrganic.begin(), kOrganic.end(), element) != kOrganic.end();
}

}  // namespace stackrl::chem
