#include "stackrl/corpus/mini_smiles.h"

#include <array>
#include <cctype>
#include <set>
#include <string_view>

#include "stackrl/chem/tokenizer.h"
#include "stackrl/errors.h"

namespace stackrl::corpus {
namespace {

template <std::size_t N>
std::string_view pick(const std::array<std::string_view, N>& items, Rng& rng) {
  return items[uniform_index(rng, N)];
}

constexpr std::array<std::string_view, 8> kTerminal = {"C", "O", "N", "F", "Cl", "Br", "C#N", "N(=O)=O"};
constexpr std::array<std::string_view, 6> kChainTail = {"C", "O", "N", "F", "Cl", "C#N"};
constexpr std::array<std::string_view, 8> kHead = {"C", "O", "N", "F", "Cl", "Br", "N#C", "O=N(=O)"};
constexpr std::array<std::string_view, 6> kLinker = {"", "C", "CC", "O", "N", "C(=O)N"};
constexpr std::array<std::string_view, 7> kChainEnd = {"", "O", "N", "C(=O)O", "C#N", "F", "Cl"};

struct RingTemplate {
  std::string_view smiles;  // written from its entry atom; the last atom carries the exit bond
  double weight;
};
constexpr std::array<RingTemplate, 6> kRings = {{
    {"c1ccccc1", 0.4},
    {"c1ccncc1", 0.15},
    {"C1CCCCC1", 0.15},
    {"C1CCCC1", 0.1},
    {"c1ccc2ccccc2c1", 0.12},
    {"C1CCc2ccccc2C1", 0.08},
}};

const RingTemplate& pick_ring(Rng& rng) {
  double u = uniform01(rng);
  for (const auto& r : kRings) {
    if (u < r.weight) return r;
    u -= r.weight;
  }
  return kRings.back();
}

// A terminal group, or a carbon holding a nested side chain and a tail.
std::string side_chain(const MiniSmilesOptions& o, std::size_t depth, Rng& rng) {
  if (depth >= o.max_branch_depth || uniform01(rng) >= o.nesting_probability) {
    return std::string(pick(kTerminal, rng));
  }
  std::string out = "C(";
  out += side_chain(o, depth + 1, rng);
  out += ')';
  out += pick(kChainTail, rng);
  return out;
}

struct TemplateAtom {
  std::size_t begin;  // offset of the atom letter
  std::size_t end;    // one past its ring-bond digits
  bool substitutable;
};

std::vector<TemplateAtom> template_atoms(std::string_view t) {
  std::vector<TemplateAtom> atoms;
  for (std::size_t i = 0; i < t.size();) {
    std::size_t j = i + 1;
    while (j < t.size() && std::isdigit(static_cast<unsigned char>(t[j]))) ++j;
    // Fusion atoms and aromatic nitrogen have no free hydrogen.
    atoms.push_back({i, j, j == i + 1 && t[i] != 'n'});
    i = j;
  }
  atoms.front().substitutable = false;
  atoms.back().substitutable = false;
  return atoms;
}

std::string ring_unit(const MiniSmilesOptions& o, Rng& rng) {
  const std::string_view t = pick_ring(rng).smiles;
  const auto atoms = template_atoms(t);
  std::vector<bool> sub(atoms.size(), false);
  const std::size_t subs = uniform_index(rng, o.max_ring_substituents + 1);
  for (std::size_t k = 0; k < subs; ++k) {
    const std::size_t pos = 1 + uniform_index(rng, atoms.size() - 2);
    if (atoms[pos].substitutable) sub[pos] = true;
  }
  std::string out;
  for (std::size_t i = 0; i < atoms.size(); ++i) {
    out += t.substr(atoms[i].begin, atoms[i].end - atoms[i].begin);
    if (sub[i]) {
      out += '(';
      out += side_chain(o, 1, rng);
      out += ')';
    }
  }
  return out;
}

std::string acyclic(const MiniSmilesOptions& o, Rng& rng) {
  constexpr std::array<std::string_view, 5> kAtoms = {"C", "C", "C", "O", "N"};
  std::string out = "C";
  bool last_hetero = false;
  const std::size_t len = 1 + uniform_index(rng, 5);
  for (std::size_t i = 0; i < len; ++i) {
    std::string_view a = pick(kAtoms, rng);
    if (last_hetero && a != "C") a = "C";
    out += a;
    last_hetero = a != "C";
    if (a == "C" && i + 1 < len && uniform01(rng) < 0.3) {
      out += '(';
      out += side_chain(o, 1, rng);
      out += ')';
    }
  }
  const std::string_view end = pick(kChainEnd, rng);
  if (last_hetero && !end.empty() && end.front() != 'C') out += 'C';
  out += end;
  return out;
}

std::string draw(const MiniSmilesOptions& o, Rng& rng) {
  if (uniform01(rng) < o.acyclic_fraction) return acyclic(o, rng);
  std::string out;
  if (uniform01(rng) < 0.3) out += pick(kHead, rng);
  const std::size_t rings = 1 + uniform_index(rng, o.max_rings);
  for (std::size_t r = 0; r < rings; ++r) {
    if (r > 0) out += pick(kLinker, rng);
    out += ring_unit(o, rng);
  }
  if (uniform01(rng) < 0.3) out += pick(kTerminal, rng);
  return out;
}

}  // namespace

std::string mini_smiles(const MiniSmilesOptions& o, Rng& rng) {
  for (int attempt = 0; attempt < 10000; ++attempt) {
    std::string s = draw(o, rng);
    if (chem::smiles_tokens(s).size() <= o.max_tokens) return s;
  }
  throw DataError("mini_smiles: max_tokens " + std::to_string(o.max_tokens) + " is too small for the grammar");
}

std::vector<std::string> mini_smiles_corpus(std::size_t n, const MiniSmilesOptions& options, Rng& rng) {
  std::vector<std::string> out;
  std::set<std::string> seen;
  std::size_t attempts = 0;
  while (out.size() < n && attempts < 50 * n + 1000) {
    ++attempts;
    std::string s = mini_smiles(options, rng);
    if (seen.insert(s).second) out.push_back(std::move(s));
  }
  return out;
}

}  // namespace stackrl::corpus
