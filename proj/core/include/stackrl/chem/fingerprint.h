#ifndef STACKRL_CHEM_FINGERPRINT_H_
#define STACKRL_CHEM_FINGERPRINT_H_

#include <cstddef>
#include <cstdint>
#include <vector>

#include "stackrl/chem/molecule.h"

namespace stackrl::chem {

inline constexpr std::size_t kDefaultFingerprintBits = 1024;
inline constexpr int kDefaultFingerprintRadius = 2;

class Fingerprint {
 public:
  Fingerprint(std::size_t width, int radius);

  std::size_t width() const { return width_; }
  int radius() const { return radius_; }
  void set(std::size_t bit);
  bool test(std::size_t bit) const;
  std::size_t count() const;
  const std::vector<std::uint64_t>& words() const { return words_; }

  bool operator==(const Fingerprint&) const = default;

 private:
  std::size_t width_;
  int radius_;
  std::vector<std::uint64_t> words_;
};

// Circular-neighbourhood fingerprint: each atom starts from a hash of
// (element, aromatic, degree, hydrogens) and is re-hashed `radius` times with
// the sorted (bond order, neighbour hash) list; every intermediate hash sets
// bit hash % nbits. Invariant under atom renumbering.
// Throws std::invalid_argument unless nbits is a power of two.
Fingerprint fingerprint(const MoleculeGraph& g, int radius = kDefaultFingerprintRadius,
                        std::size_t nbits = kDefaultFingerprintBits);

// |a & b| / |a | b|, 1.0 when both are empty. Throws std::invalid_argument if
// width or radius differ.
double tanimoto(const Fingerprint& a, const Fingerprint& b);

}  // namespace stackrl::chem

#endif  // STACKRL_CHEM_FINGERPRINT_H_
