#include <algorithm>
#include <cctype>
#include <functional>
#include <set>

#include "stackrl/chem/validator.h"
#include "valence.h"

namespace stackrl::chem {
namespace {

std::string atom_text(const MoleculeGraph& g, std::size_t i) {
  const Atom& a = g.atom(i);
  std::string symbol = a.element;
  if (a.aromatic) symbol[0] = static_cast<char>(std::tolower(symbol[0]));

  bool plain = a.charge == 0 && a.isotope == 0 && is_organic_subset(a.element);
  if (plain) {
    const auto h = detail::implicit_hydrogens(a.element, a.aromatic, g.valence_sum(i), detail::has_double_bond(g, i));
    plain = h && *h == a.hydrogens;
  }
  if (plain) return symbol;

  std::string out = "[";
  if (a.isotope) out += std::to_string(a.isotope);
  out += symbol;
  if (a.hydrogens == 1) out += "H";
  if (a.hydrogens > 1) out += "H" + std::to_string(a.hydrogens);
  if (a.charge > 0) out += "+";
  if (a.charge < 0) out += "-";
  if (std::abs(a.charge) > 1) out += std::to_string(std::abs(a.charge));
  return out + "]";
}

std::string bond_text(const MoleculeGraph& g, const Bond& b) {
  switch (b.order) {
    case BondOrder::kSingle:
      return g.atom(b.a).aromatic && g.atom(b.b).aromatic ? "-" : "";
    case BondOrder::kDouble: return "=";
    case BondOrder::kTriple: return "#";
    case BondOrder::kAromatic:
      return g.atom(b.a).aromatic && g.atom(b.b).aromatic ? "" : ":";
  }
  return "";
}

std::string ring_label(int d) { return d < 10 ? std::to_string(d) : "%" + std::to_string(d); }

}  // namespace

std::string to_smiles(const MoleculeGraph& g) {
  const std::size_t n = g.atom_count();
  std::vector<bool> seen(n, false);
  std::vector<std::vector<std::size_t>> children(n);     // tree bonds, DFS order
  std::vector<std::vector<std::size_t>> closures(n);     // ring-closure bonds
  std::vector<bool> bond_used(g.bond_count(), false);

  std::function<void(std::size_t)> explore = [&](std::size_t u) {
    seen[u] = true;
    for (std::size_t id : g.incident(u)) {
      if (bond_used[id]) continue;
      const std::size_t v = g.bond(id).other(u);
      bond_used[id] = true;
      if (seen[v]) {
        closures[u].push_back(id);
        closures[v].push_back(id);
      } else {
        children[u].push_back(id);
        explore(v);
      }
    }
  };

  std::string out;
  std::set<int> free_digits;
  for (int d = 1; d < 100; ++d) free_digits.insert(d);
  std::vector<int> digit_of(g.bond_count(), 0);
  std::vector<bool> written(n, false);

  std::function<void(std::size_t)> emit = [&](std::size_t u) {
    written[u] = true;
    out += atom_text(g, u);
    for (std::size_t id : closures[u]) {
      const std::size_t v = g.bond(id).other(u);
      if (!written[v]) {
        const int d = *free_digits.begin();
        free_digits.erase(free_digits.begin());
        digit_of[id] = d;
        out += bond_text(g, g.bond(id)) + ring_label(d);
      } else {
        out += ring_label(digit_of[id]);
        free_digits.insert(digit_of[id]);
      }
    }
    for (std::size_t k = 0; k < children[u].size(); ++k) {
      const std::size_t id = children[u][k];
      const bool last = k + 1 == children[u].size();
      if (!last) out += "(";
      out += bond_text(g, g.bond(id));
      emit(g.bond(id).other(u));
      if (!last) out += ")";
    }
  };

  for (std::size_t start = 0; start < n; ++start) {
    if (seen[start]) continue;
    explore(start);
    if (!out.empty()) out += ".";
    emit(start);
  }
  return out;
}

}  // namespace stackrl::chem
