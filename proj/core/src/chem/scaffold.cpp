#include "stackrl/chem/scaffold.h"

#include <algorithm>

#include "hashing.h"
#include "stackrl/chem/rings.h"
#include "valence.h"

namespace stackrl::chem {

MoleculeGraph murcko_scaffold(const MoleculeGraph& g) {
  const std::size_t n = g.atom_count();
  const std::vector<bool> in_ring = ring_atoms(g);
  if (std::none_of(in_ring.begin(), in_ring.end(), [](bool b) { return b; })) return {};

  std::vector<bool> keep(n, true);
  std::vector<std::size_t> degree(n);
  for (std::size_t i = 0; i < n; ++i) degree[i] = g.degree(i);

  bool changed = true;
  while (changed) {
    changed = false;
    for (std::size_t i = 0; i < n; ++i) {
      if (!keep[i] || in_ring[i] || degree[i] > 1) continue;
      keep[i] = false;
      changed = true;
      for (std::size_t id : g.incident(i)) {
        const std::size_t o = g.bond(id).other(i);
        if (keep[o]) --degree[o];
      }
    }
  }

  // Restore hydrogens on atoms that lost neighbours.
  std::vector<int> lost(n, 0);
  for (const Bond& b : g.bonds()) {
    if (keep[b.a] && !keep[b.b]) lost[b.a] += valence_contribution(b.order);
    if (keep[b.b] && !keep[b.a]) lost[b.b] += valence_contribution(b.order);
  }
  std::vector<std::size_t> new_index(n, SIZE_MAX);
  std::size_t next = 0;
  for (std::size_t i = 0; i < n; ++i) {
    if (keep[i]) new_index[i] = next++;
  }
  MoleculeGraph scaffold = g.subgraph(keep);
  for (std::size_t i = 0; i < n; ++i) {
    if (!keep[i] || lost[i] == 0) continue;
    const std::size_t j = new_index[i];
    Atom& atom = scaffold.atom(j);
    if (atom.bracket) {
      atom.hydrogens += lost[i];
      continue;
    }
    const auto h = detail::implicit_hydrogens(atom.element, atom.aromatic, scaffold.valence_sum(j),
                                              detail::has_double_bond(scaffold, j));
    if (h) atom.hydrogens = *h;
  }
  return scaffold;
}

std::uint64_t graph_key(const MoleculeGraph& g) {
  const std::size_t n = g.atom_count();
  std::vector<std::uint64_t> label(n), next(n);
  for (std::size_t i = 0; i < n; ++i) {
    const Atom& a = g.atom(i);
    std::uint64_t h = detail::hash_string(a.element);
    h = detail::combine(h, a.aromatic);
    h = detail::combine(h, static_cast<std::uint64_t>(a.hydrogens));
    h = detail::combine(h, static_cast<std::uint64_t>(a.charge + 16));
    h = detail::combine(h, static_cast<std::uint64_t>(a.isotope));
    label[i] = h;
  }
  std::vector<std::pair<std::uint64_t, std::uint64_t>> env;
  for (std::size_t round = 0; round < n; ++round) {
    for (std::size_t i = 0; i < n; ++i) {
      env.clear();
      for (std::size_t id : g.incident(i)) {
        env.emplace_back(static_cast<std::uint64_t>(g.bond(id).order), label[g.bond(id).other(i)]);
      }
      std::sort(env.begin(), env.end());
      std::uint64_t h = label[i];
      for (const auto& [order, nh] : env) h = detail::combine(detail::combine(h, order), nh);
      next[i] = h;
    }
    label.swap(next);
  }
  std::sort(label.begin(), label.end());
  std::uint64_t key = detail::combine(n, g.bond_count());
  for (auto l : label) key = detail::combine(key, l);
  return key;
}

}  // namespace stackrl::chem
