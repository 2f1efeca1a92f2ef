#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <vector>

#include "bes/base.hpp"
#include "bes/formula.hpp"
#include "bes/lattice.hpp"
#include "bes/relation.hpp"

namespace bes {

// Bottom-up evaluation over the full base lattice: one truth bit per base per
// subformula, with the superset quantifiers of the validity clauses computed
// by subset-sum transforms. This is the reference evaluation path; it is a
// direct transliteration of the semantic clauses and works on universes of at
// most 12 rules.
class Evaluator {
 public:
  explicit Evaluator(const RuleUniverse& u);                              // classical
  Evaluator(const RuleUniverse& u, const ExtensionalRelation& relation);  // modal

  const RuleUniverse& universe() const { return *u_; }
  bool classical() const { return rel_ == nullptr; }

  // Truth vector of f over all bases (index = member mask).
  const Bitvec& truth(Formula f);
  bool holds_at(uint64_t base_mask, Formula f);
  // Gamma-relative consequence at a base: every superset satisfying all of
  // gamma satisfies f.
  bool entails_at(uint64_t base_mask, const std::vector<Formula>& gamma, Formula f);

 private:
  const Bitvec& compute(Formula f);

  const RuleUniverse* u_;
  const Lattice* lat_;
  const ExtensionalRelation* rel_;
  std::shared_ptr<const ExtensionalRelation> rel_owned_;
  std::map<uint32_t, Bitvec> memo_;
};

// Evaluation over large universes via the quotient into world classes.
//
// For a relation generated from distinct max-consistent world bases, the
// reachable portion of the lattice collapses: the superset cone of a world
// base is the base itself plus inconsistent bases, every base whose unique
// max-consistent superset is a world base evaluates like that world base, and
// all inconsistent bases evaluate alike. Those facts are certified here at
// construction (max-consistency checks, closure computations) rather than
// assumed; the quotient itself is cross-checked against Evaluator on
// materializable universes by the test suite.
class ClassEvaluator {
 public:
  ClassEvaluator(const RuleUniverse& u, const GeneratedRelation& relation);

  int world_count() const { return static_cast<int>(worlds_.size()); }
  bool holds_at_world(int world_index, Formula f);
  bool holds_at_inconsistent(Formula f);
  // Classifies the base (world class, its unique-max-superset cone, or
  // inconsistent); throws SizeLimitError for bases outside the quotient.
  bool holds_at(const Base& b, Formula f);

 private:
  const RuleUniverse* u_;
  const GeneratedRelation* rel_;
  std::vector<uint64_t> worlds_;            // world base member masks
  std::vector<uint64_t> world_closures_;    // atom masks
  std::vector<std::vector<int>> succ_;      // world-level successor lists
  std::map<std::pair<int, uint32_t>, bool> memo_;
  std::map<uint32_t, bool> memo_inc_;
};

struct Verdict {
  enum class Status { ValidOverUniverse, Invalid, NoCounterexampleFound };
  Status status = Status::ValidOverUniverse;
  int samples = 0;
  uint64_t seed = 0;
  uint64_t witness_base = 0;
  std::optional<ExtensionalRelation> witness_ext;
  std::optional<GeneratedRelation> witness_gen;

  bool valid_like() const { return status != Status::Invalid; }
};

// Classical validity at a base (modal operators are rejected).
bool holds_classical(const Base& b, Formula f);
bool holds(const Base& b, const ExtensionalRelation& r, Formula f);
// Dense on materializable universes, class-based beyond.
bool holds(const Base& b, const GeneratedRelation& r, Formula f);
bool entails(const Base& b, const ExtensionalRelation& r, const std::vector<Formula>& gamma,
             Formula f);
bool entails(const Base& b, const GeneratedRelation& r, const std::vector<Formula>& gamma,
             Formula f);
bool entails_classical(const Base& b, const std::vector<Formula>& gamma, Formula f);

// Exhaustive verdict over every base and every enumerable modal relation of
// the universe (at most 4 bases). The relation list is cached per logic.
Verdict valid_exhaustive(const RuleUniverse& u, Logic logic, Formula f);
const std::vector<ExtensionalRelation>& enumerated_relations(const RuleUniverse& u, Logic logic);

// One-sided sampling verdict: n seeded relations, all bases probed on
// materializable universes. Never reports ValidOverUniverse.
Verdict valid_sampled(const RuleUniverse& u, Logic logic, Formula f, int n, uint64_t seed);

}  // namespace bes
