#include "stackrl/chem/rings.h"

#include <algorithm>
#include <functional>

namespace stackrl::chem {

std::vector<std::vector<std::size_t>> simple_cycles(const MoleculeGraph& g, std::size_t max_length) {
  std::vector<std::vector<std::size_t>> cycles;
  const std::size_t n = g.atom_count();
  std::vector<std::size_t> path;
  std::vector<bool> on_path(n, false);

  std::function<void(std::size_t, std::size_t)> dfs = [&](std::size_t start, std::size_t u) {
    for (std::size_t id : g.incident(u)) {
      const std::size_t v = g.bond(id).other(u);
      if (v == start) {
        // Each cycle is found in both directions; keep one.
        if (path.size() >= 3 && path[1] < path.back()) cycles.push_back(path);
        continue;
      }
      if (v < start || on_path[v] || path.size() >= max_length) continue;
      path.push_back(v);
      on_path[v] = true;
      dfs(start, v);
      on_path[v] = false;
      path.pop_back();
    }
  };

  for (std::size_t s = 0; s < n; ++s) {
    path.assign(1, s);
    on_path[s] = true;
    dfs(s, s);
    on_path[s] = false;
  }
  return cycles;
}

std::vector<bool> ring_atoms(const MoleculeGraph& g) {
  // Tarjan bridge finding; endpoints of non-bridge bonds are ring atoms.
  const std::size_t n = g.atom_count();
  std::vector<int> disc(n, -1), low(n, 0);
  std::vector<bool> bridge(g.bond_count(), false);
  int timer = 0;
  std::function<void(std::size_t, std::size_t)> dfs = [&](std::size_t u, std::size_t via) {
    disc[u] = low[u] = timer++;
    for (std::size_t id : g.incident(u)) {
      if (id == via) continue;
      const std::size_t v = g.bond(id).other(u);
      if (disc[v] < 0) {
        dfs(v, id);
        low[u] = std::min(low[u], low[v]);
        if (low[v] > disc[u]) bridge[id] = true;
      } else {
        low[u] = std::min(low[u], disc[v]);
      }
    }
  };
  for (std::size_t s = 0; s < n; ++s) {
    if (disc[s] < 0) dfs(s, SIZE_MAX);
  }
  std::vector<bool> in_ring(n, false);
  for (std::size_t id = 0; id < g.bond_count(); ++id) {
    if (!bridge[id]) {
      in_ring[g.bond(id).a] = true;
      in_ring[g.bond(id).b] = true;
    }
  }
  return in_ring;
}

int count_benzene_rings(const MoleculeGraph& g) {
  int count = 0;
  for (const auto& cycle : simple_cycles(g, 6)) {
    if (cycle.size() != 6) continue;
    const bool benzene = std::all_of(cycle.begin(), cycle.end(), [&](std::size_t i) {
      return g.atom(i).element == "C" && g.atom(i).aromatic;
    });
    if (benzene) ++count;
  }
  return count;
}

std::string_view substituent_name(Substituent s) {
  switch (s) {
    case Substituent::kHydroxyl: return "OH";
    case Substituent::kAmino: return "NH2";
    case Substituent::kMethyl: return "CH3";
    case Substituent::kCyano: return "CN";
    case Substituent::kFluoro: return "F";
    case Substituent::kChloro: return "Cl";
    case Substituent::kBromo: return "Br";
    case Substituent::kNitro: return "NO2";
  }
  return "?";
}

const std::vector<Substituent>& default_substituents() {
  static const std::vector<Substituent> kAll{
      Substituent::kHydroxyl, Substituent::kAmino,  Substituent::kMethyl, Substituent::kCyano,
      Substituent::kFluoro,   Substituent::kChloro, Substituent::kBromo,  Substituent::kNitro};
  return kAll;
}

namespace {

bool plain(const Atom& a, std::string_view element) {
  return a.element == element && !a.aromatic && a.charge == 0;
}

// Does the group rooted at `x`, reached from ring atom `anchor` through
// bond `via`, match pattern `s`?
bool matches(const MoleculeGraph& g, std::size_t anchor, std::size_t x, std::size_t via, Substituent s) {
  const Atom& a = g.atom(x);
  const BondOrder link = g.bond(via).order;
  auto neighbors = [&](std::size_t atom) {
    std::vector<std::pair<std::size_t, BondOrder>> out;
    for (std::size_t id : g.incident(atom)) {
      const std::size_t o = g.bond(id).other(atom);
      if (o != anchor || atom != x) out.emplace_back(o, g.bond(id).order);
    }
    return out;
  };
  const bool terminal = g.degree(x) == 1 && link == BondOrder::kSingle;
  switch (s) {
    case Substituent::kHydroxyl: return terminal && plain(a, "O") && a.hydrogens == 1;
    case Substituent::kAmino: return terminal && plain(a, "N") && a.hydrogens == 2;
    case Substituent::kMethyl: return terminal && plain(a, "C") && a.hydrogens == 3;
    case Substituent::kFluoro: return terminal && plain(a, "F");
    case Substituent::kChloro: return terminal && plain(a, "Cl");
    case Substituent::kBromo: return terminal && plain(a, "Br");
    case Substituent::kCyano: {
      if (!plain(a, "C") || link != BondOrder::kSingle || g.degree(x) != 2) return false;
      const auto nb = neighbors(x);
      return nb.size() == 1 && nb[0].second == BondOrder::kTriple && g.atom(nb[0].first).element == "N" &&
             !g.atom(nb[0].first).aromatic && g.degree(nb[0].first) == 1;
    }
    case Substituent::kNitro: {
      if (a.element != "N" || a.aromatic || link != BondOrder::kSingle || g.degree(x) != 3) return false;
      const auto nb = neighbors(x);
      return nb.size() == 2 && std::all_of(nb.begin(), nb.end(), [&](const auto& p) {
               return g.atom(p.first).element == "O" && g.degree(p.first) == 1;
             });
    }
  }
  return false;
}

}  // namespace

int count_substituents(const MoleculeGraph& g, const std::vector<Substituent>& patterns) {
  const std::vector<bool> in_ring = ring_atoms(g);
  int count = 0;
  for (std::size_t r = 0; r < g.atom_count(); ++r) {
    if (!in_ring[r]) continue;
    for (std::size_t id : g.incident(r)) {
      const std::size_t x = g.bond(id).other(r);
      if (in_ring[x]) continue;
      for (Substituent s : patterns) {
        if (matches(g, r, x, id, s)) {
          ++count;
          break;
        }
      }
    }
  }
  return count;
}

}  // namespace stackrl::chem
