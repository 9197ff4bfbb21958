#include "stackrl/chem/fingerprint.h"

#include <algorithm>
#include <bit>
#include <stdexcept>

#include "hashing.h"

namespace stackrl::chem {

Fingerprint::Fingerprint(std::size_t width, int radius)
    : width_(width), radius_(radius), words_((width + 63) / 64, 0) {}

void Fingerprint::set(std::size_t bit) { words_[bit / 64] |= std::uint64_t{1} << (bit % 64); }

bool Fingerprint::test(std::size_t bit) const { return (words_[bit / 64] >> (bit % 64)) & 1u; }

std::size_t Fingerprint::count() const {
  std::size_t n = 0;
  for (auto w : words_) n += static_cast<std::size_t>(std::popcount(w));
  return n;
}

Fingerprint fingerprint(const MoleculeGraph& g, int radius, std::size_t nbits) {
  if (nbits == 0 || !std::has_single_bit(nbits)) {
    throw std::invalid_argument("fingerprint width must be a power of two");
  }
  if (radius < 0) throw std::invalid_argument("fingerprint radius must be non-negative");
  Fingerprint fp(nbits, radius);
  const std::size_t n = g.atom_count();
  std::vector<std::uint64_t> current(n), next(n);
  for (std::size_t i = 0; i < n; ++i) {
    const Atom& a = g.atom(i);
    std::uint64_t h = detail::hash_string(a.element);
    h = detail::combine(h, a.aromatic ? 1 : 0);
    h = detail::combine(h, g.degree(i));
    h = detail::combine(h, static_cast<std::uint64_t>(a.hydrogens));
    h = detail::combine(h, static_cast<std::uint64_t>(a.charge + 16));
    current[i] = h;
    fp.set(h & (nbits - 1));
  }
  std::vector<std::pair<std::uint64_t, std::uint64_t>> env;
  for (int r = 1; r <= radius; ++r) {
    for (std::size_t i = 0; i < n; ++i) {
      env.clear();
      for (std::size_t id : g.incident(i)) {
        const Bond& b = g.bond(id);
        env.emplace_back(static_cast<std::uint64_t>(b.order), current[b.other(i)]);
      }
      std::sort(env.begin(), env.end());
      std::uint64_t h = detail::combine(current[i], static_cast<std::uint64_t>(r));
      for (const auto& [order, nh] : env) h = detail::combine(detail::combine(h, order), nh);
      next[i] = h;
      fp.set(h & (nbits - 1));
    }
    current.swap(next);
  }
  return fp;
}

double tanimoto(const Fingerprint& a, const Fingerprint& b) {
  if (a.width() != b.width() || a.radius() != b.radius()) {
    throw std::invalid_argument("tanimoto: fingerprints have different width/radius");
  }
  std::size_t both = 0, either = 0;
  for (std::size_t i = 0; i < a.words().size(); ++i) {
    both += static_cast<std::size_t>(std::popcount(a.words()[i] & b.words()[i]));
    either += static_cast<std::size_t>(std::popcount(a.words()[i] | b.words()[i]));
  }
  if (either == 0) return 1.0;
  return static_cast<double>(both) / static_cast<double>(either);
}

}  // namespace stackrl::chem
