#pragma once

#include <cstdint>
#include <vector>

#include "bes/base.hpp"

namespace bes {

// Fixed-width bit vector sized for a full base lattice (2^rules entries).
struct Bitvec {
  size_t n = 0;
  std::vector<uint64_t> w;

  Bitvec() = default;
  explicit Bitvec(size_t bits, bool fill = false)
      : n(bits), w((bits + 63) / 64, fill ? ~0ULL : 0ULL) {
    trim();
  }
  bool get(size_t i) const { return (w[i >> 6] >> (i & 63)) & 1; }
  void set(size_t i, bool v = true) {
    if (v)
      w[i >> 6] |= 1ULL << (i & 63);
    else
      w[i >> 6] &= ~(1ULL << (i & 63));
  }
  void trim() {
    if (n & 63) w.back() &= (1ULL << (n & 63)) - 1;
  }
  bool any() const {
    for (uint64_t x : w)
      if (x) return true;
    return false;
  }
  size_t count() const;
  Bitvec operator~() const;
  Bitvec& operator&=(const Bitvec& o);
  Bitvec& operator|=(const Bitvec& o);
  bool operator==(const Bitvec&) const = default;
};

// out[b] = OR over all supersets C of b (within rule_bits dimensions) of v[C].
Bitvec superset_or(const Bitvec& v, int rule_bits);
// out[b] = AND over all supersets C of b of v[C].
Bitvec superset_and(const Bitvec& v, int rule_bits);
// out[b] = OR over all subsets D of b of v[D].
Bitvec subset_or(const Bitvec& v, int rule_bits);
// out[b] = OR over all proper supersets C of b of v[C].
Bitvec proper_superset_or(const Bitvec& v, int rule_bits);

// Precomputed per-base facts over the full lattice of a small universe
// (closure, consistency, maximal-consistency, unique maximal superset).
// The base index of a lattice IS its member bitmask.
struct Lattice {
  int rule_bits = 0;
  size_t base_count = 0;
  uint64_t full_atom_mask = 0;
  std::vector<uint32_t> closures;      // per base mask
  Bitvec inconsistent;
  Bitvec maxcon;
  std::vector<uint8_t> maxsup_count;   // 0, 1, or 2 (2 = "two or more")
  std::vector<uint32_t> maxsup_first;  // member mask of the least max-consistent superset

  explicit Lattice(const RuleUniverse& u);  // rejects universes over 12 rules

  // Process-wide cache keyed by universe value. The returned reference lives
  // for the process lifetime.
  static const Lattice& of(const RuleUniverse& u);
};

}  // namespace bes
