#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "bes/formula.hpp"

namespace bes {

// A production rule: from the premise atoms (possibly none), conclude one atom.
struct BaseRule {
  uint64_t premise_mask;  // bitset over alphabet indices
  int conclusion;         // alphabet index

  bool operator==(const BaseRule&) const = default;
};

// The finite, canonically ordered set of all rules with |premises| <= max_premises
// over an alphabet. The order (ascending conclusion index, then ascending premise
// bitmask) is the enumeration that makes the maximal-extension walk deterministic.
class RuleUniverse {
 public:
  RuleUniverse(AtomAlphabet alphabet, int max_premises);

  const AtomAlphabet& alphabet() const { return alphabet_; }
  int max_premises() const { return max_premises_; }
  const std::vector<BaseRule>& rules() const { return rules_; }
  size_t rule_count() const { return rules_.size(); }
  uint64_t full_rule_mask() const {
    return rules_.size() == 64 ? ~0ULL : (1ULL << rules_.size()) - 1;
  }
  uint64_t full_atom_mask() const { return (1ULL << alphabet_.size()) - 1; }

  // -1 if the rule is not in the universe (premises too large).
  int rule_index(uint64_t premise_mask, int conclusion) const;

  // Least atom set closed under the member rules, by forward chaining from nothing.
  uint64_t closure_of(uint64_t members) const;

  bool operator==(const RuleUniverse& o) const {
    return alphabet_ == o.alphabet_ && max_premises_ == o.max_premises_;
  }

 private:
  AtomAlphabet alphabet_;
  int max_premises_;
  std::vector<BaseRule> rules_;
};

// A subset of a universe's rules, with its closure and consistency computed at
// construction. Value type; cheap to copy.
struct Base {
  const RuleUniverse* universe;
  uint64_t members;
  uint64_t closure;  // atom bitset
  bool inconsistent;

  bool operator==(const Base& o) const {
    return universe == o.universe && members == o.members;
  }
  bool subset_of(const Base& o) const { return (members & ~o.members) == 0; }
};

RuleUniverse build_universe(const AtomAlphabet& alphabet, int max_premises);

Base make_base(const RuleUniverse& u, uint64_t members);
Base make_base(const RuleUniverse& u, const std::vector<BaseRule>& rules);

inline uint64_t closure(const Base& b) { return b.closure; }
bool derives_atom(const Base& b, int atom_index);
bool derives_atom(const Base& b, std::string_view atom_name);
inline bool is_inconsistent(const Base& b) { return b.inconsistent; }

// All supersets of b within its universe, b first, ascending in the free bits.
// Exhaustive: rejects universes with more than 24 rules.
std::vector<Base> supersets(const Base& b);
// Streaming form used internally; same order, no exhaustive-size guard on the
// universe, but still enumerates 2^(free bits) masks.
void for_each_superset(const Base& b, const std::function<void(uint64_t)>& fn);

bool is_max_consistent(const Base& b);

// Greedy walk over the canonical rule order: add every rule that keeps the
// avoided atom underived. The result is maximal with that property and, when
// the precondition holds, maximally-consistent.
Base extend_max_consistent_avoiding(const Base& b, int avoid_atom);

// Every maximally-consistent base of the universe, ascending by closure mask.
// A maximally-consistent base is determined by its closure T (a proper subset
// of the alphabet): it holds exactly the rules that cannot push outside T.
std::vector<Base> max_consistent_bases(const RuleUniverse& u);

// All maximally-consistent supersets of b, ascending by closure mask.
std::vector<Base> max_consistent_supersets(const Base& b);

}  // namespace bes
