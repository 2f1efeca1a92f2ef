#include "bes/base.hpp"

#include <bit>
#include <stdexcept>

#include "bes/errors.hpp"

namespace bes {

RuleUniverse::RuleUniverse(AtomAlphabet alphabet, int max_premises)
    : alphabet_(std::move(alphabet)), max_premises_(max_premises) {
  const int n = static_cast<int>(alphabet_.size());
  if (max_premises_ < 1 || max_premises_ > n)
    throw std::invalid_argument("max_premises must satisfy 1 <= max_premises <= |alphabet|");
  if (n > 20) throw SizeLimitError("alphabet too large for a rule universe");
  const uint64_t full = (1ULL << n) - 1;
  for (int c = 0; c < n; c++)
    for (uint64_t mask = 0; mask <= full; mask++)
      if (std::popcount(mask) <= max_premises_) rules_.push_back({mask, c});
  if (rules_.size() > 62)
    throw SizeLimitError("rule universe has " + std::to_string(rules_.size()) +
                         " rules; the bitset representation holds at most 62");
}

int RuleUniverse::rule_index(uint64_t premise_mask, int conclusion) const {
  for (size_t i = 0; i < rules_.size(); i++)
    if (rules_[i].premise_mask == premise_mask && rules_[i].conclusion == conclusion)
      return static_cast<int>(i);
  return -1;
}

uint64_t RuleUniverse::closure_of(uint64_t members) const {
  uint64_t atoms = 0;
  bool changed = true;
  while (changed) {
    changed = false;
    uint64_t m = members;
    while (m) {
      int i = std::countr_zero(m);
      m &= m - 1;
      const BaseRule& r = rules_[i];
      uint64_t bit = 1ULL << r.conclusion;
      if ((r.premise_mask & ~atoms) == 0 && !(atoms & bit)) {
        atoms |= bit;
        changed = true;
      }
    }
  }
  return atoms;
}

RuleUniverse build_universe(const AtomAlphabet& alphabet, int max_premises) {
  return RuleUniverse(alphabet, max_premises);
}

Base make_base(const RuleUniverse& u, uint64_t members) {
  if (members & ~u.full_rule_mask()) throw std::invalid_argument("rule bits outside universe");
  uint64_t cl = u.closure_of(members);
  return Base{&u, members, cl, cl == u.full_atom_mask()};
}

Base make_base(const RuleUniverse& u, const std::vector<BaseRule>& rules) {
  uint64_t members = 0;
  for (const BaseRule& r : rules) {
    int idx = u.rule_index(r.premise_mask, r.conclusion);
    if (idx < 0) throw std::invalid_argument("rule is not in the universe");
    members |= 1ULL << idx;
  }
  return make_base(u, members);
}

bool derives_atom(const Base& b, int atom_index) {
  if (atom_index < 0 || atom_index >= static_cast<int>(b.universe->alphabet().size()))
    throw std::invalid_argument("unknown atom index");
  return (b.closure >> atom_index) & 1;
}

bool derives_atom(const Base& b, std::string_view atom_name) {
  int idx = b.universe->alphabet().index_of(atom_name);
  if (idx < 0) throw std::invalid_argument("unknown atom: " + std::string(atom_name));
  return derives_atom(b, idx);
}

void for_each_superset(const Base& b, const std::function<void(uint64_t)>& fn) {
  const uint64_t free = b.universe->full_rule_mask() & ~b.members;
  uint64_t s = 0;
  while (true) {
    fn(b.members | s);
    s = (s - free) & free;  // next submask of `free` in ascending order
    if (s == 0) break;
  }
}

std::vector<Base> supersets(const Base& b) {
  if (b.universe->rule_count() > 24)
    throw SizeLimitError("superset enumeration rejected: universe has more than 24 rules");
  std::vector<Base> out;
  for_each_superset(b, [&](uint64_t m) { out.push_back(make_base(*b.universe, m)); });
  return out;
}

bool is_max_consistent(const Base& b) {
  if (b.inconsistent) return false;
  const RuleUniverse& u = *b.universe;
  for (size_t i = 0; i < u.rule_count(); i++) {
    uint64_t bit = 1ULL << i;
    if (b.members & bit) continue;
    if (u.closure_of(b.members | bit) != u.full_atom_mask()) return false;
  }
  return true;
}

Base extend_max_consistent_avoiding(const Base& b, int avoid_atom) {
  if (derives_atom(b, avoid_atom))
    throw std::invalid_argument("base already derives the atom to avoid");
  const RuleUniverse& u = *b.universe;
  const uint64_t avoid_bit = 1ULL << avoid_atom;
  uint64_t cur = b.members;
  for (size_t i = 0; i < u.rule_count(); i++) {
    uint64_t bit = 1ULL << i;
    if (cur & bit) continue;
    if (!(u.closure_of(cur | bit) & avoid_bit)) cur |= bit;
  }
  return make_base(u, cur);
}

std::vector<Base> max_consistent_bases(const RuleUniverse& u) {
  const int n = static_cast<int>(u.alphabet().size());
  const uint64_t full = (1ULL << n) - 1;
  std::vector<Base> out;
  for (uint64_t t = 0; t < full; t++) {
    uint64_t members = 0;
    const auto& rules = u.rules();
    for (size_t i = 0; i < rules.size(); i++) {
      bool fires_outside = (rules[i].premise_mask & ~t) == 0 && !((t >> rules[i].conclusion) & 1);
      if (!fires_outside) members |= 1ULL << i;
    }
    out.push_back(make_base(u, members));
  }
  return out;
}

std::vector<Base> max_consistent_supersets(const Base& b) {
  std::vector<Base> out;
  if (b.inconsistent) return out;
  for (const Base& m : max_consistent_bases(*b.universe))
    if (b.subset_of(m)) out.push_back(m);
  return out;
}

}  // namespace bes
