#include "bes/lattice.hpp"

#include <bit>
#include <map>
#include <memory>
#include <mutex>
#include <string>

#include "bes/errors.hpp"

namespace bes {

size_t Bitvec::count() const {
  size_t c = 0;
  for (uint64_t x : w) c += std::popcount(x);
  return c;
}

Bitvec Bitvec::operator~() const {
  Bitvec out = *this;
  for (auto& x : out.w) x = ~x;
  out.trim();
  return out;
}

Bitvec& Bitvec::operator&=(const Bitvec& o) {
  for (size_t i = 0; i < w.size(); i++) w[i] &= o.w[i];
  return *this;
}

Bitvec& Bitvec::operator|=(const Bitvec& o) {
  for (size_t i = 0; i < w.size(); i++) w[i] |= o.w[i];
  return *this;
}

namespace {

// In-word masks: positions whose bit d is clear, for d < 6.
constexpr uint64_t kDimMask[6] = {
    0x5555555555555555ULL, 0x3333333333333333ULL, 0x0F0F0F0F0F0F0F0FULL,
    0x00FF00FF00FF00FFULL, 0x0000FFFF0000FFFFULL, 0x00000000FFFFFFFFULL,
};

}  // namespace

Bitvec superset_or(const Bitvec& v, int rule_bits) {
  Bitvec out = v;
  for (int d = 0; d < rule_bits; d++) {
    if (d < 6) {
      const int s = 1 << d;
      for (auto& x : out.w) x |= (x >> s) & kDimMask[d];
    } else {
      const size_t stride = 1ULL << (d - 6);
      for (size_t i = 0; i < out.w.size(); i++)
        if (!((i >> (d - 6)) & 1)) out.w[i] |= out.w[i + stride];
    }
  }
  return out;
}

Bitvec superset_and(const Bitvec& v, int rule_bits) {
  Bitvec out = ~superset_or(~v, rule_bits);
  return out;
}

Bitvec subset_or(const Bitvec& v, int rule_bits) {
  Bitvec out = v;
  for (int d = 0; d < rule_bits; d++) {
    if (d < 6) {
      const int s = 1 << d;
      for (auto& x : out.w) x |= (x & kDimMask[d]) << s;
    } else {
      const size_t stride = 1ULL << (d - 6);
      for (size_t i = 0; i < out.w.size(); i++)
        if ((i >> (d - 6)) & 1) out.w[i] |= out.w[i - stride];
    }
  }
  return out;
}

Bitvec proper_superset_or(const Bitvec& v, int rule_bits) {
  Bitvec all = superset_or(v, rule_bits);
  Bitvec out(v.n);
  for (size_t b = 0; b < v.n; b++) {
    bool hit = false;
    for (int d = 0; d < rule_bits && !hit; d++)
      if (!((b >> d) & 1)) hit = all.get(b | (1ULL << d));
    out.set(b, hit);
  }
  return out;
}

Lattice::Lattice(const RuleUniverse& u) {
  if (u.rule_count() > 12)
    throw SizeLimitError("lattice construction requires at most 12 rules (" +
                         std::to_string(u.rule_count()) + " given)");
  rule_bits = static_cast<int>(u.rule_count());
  base_count = 1ULL << rule_bits;
  full_atom_mask = u.full_atom_mask();
  closures.resize(base_count);
  inconsistent = Bitvec(base_count);
  maxcon = Bitvec(base_count);
  for (size_t m = 0; m < base_count; m++) {
    closures[m] = static_cast<uint32_t>(u.closure_of(m));
    if (closures[m] == full_atom_mask) inconsistent.set(m);
  }
  const auto maxcons = max_consistent_bases(u);
  for (const Base& b : maxcons) maxcon.set(b.members);
  maxsup_count.assign(base_count, 0);
  maxsup_first.assign(base_count, 0);
  for (const Base& mc : maxcons) {
    // Walk subsets of the max-consistent member mask.
    uint64_t m = mc.members;
    uint64_t s = m;
    while (true) {
      if (maxsup_count[s] == 0) {
        maxsup_count[s] = 1;
        maxsup_first[s] = static_cast<uint32_t>(m);
      } else if (maxsup_first[s] != m && maxsup_count[s] == 1) {
        maxsup_count[s] = 2;
      }
      if (s == 0) break;
      s = (s - 1) & m;
    }
  }
}

const Lattice& Lattice::of(const RuleUniverse& u) {
  static std::mutex mu;
  static std::map<std::pair<std::string, int>, std::unique_ptr<Lattice>>* cache =
      new std::map<std::pair<std::string, int>, std::unique_ptr<Lattice>>();
  std::string key;
  for (const auto& a : u.alphabet().atoms) {
    key += a;
    key += ',';
  }
  std::lock_guard<std::mutex> lock(mu);
  auto& slot = (*cache)[{key, u.max_premises()}];
  if (!slot) slot = std::make_unique<Lattice>(u);
  return *slot;
}

}  // namespace bes
