#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <vector>

#include "bes/base.hpp"
#include "bes/kripke.hpp"
#include "bes/lattice.hpp"

namespace bes {

// Relation on a universe's full base lattice, stored as a bit matrix.
// Only universes with at most 4096 bases are representable.
class ExtensionalRelation {
 public:
  ExtensionalRelation(const RuleUniverse& u);

  const RuleUniverse& universe() const { return *u_; }
  size_t base_count() const { return n_; }
  bool rel(uint64_t x, uint64_t y) const { return (row(x)[y >> 6] >> (y & 63)) & 1; }
  void set(uint64_t x, uint64_t y) { row(x)[y >> 6] |= 1ULL << (y & 63); }
  const uint64_t* row(uint64_t x) const { return bits_.data() + x * words_; }
  uint64_t* row(uint64_t x) { return bits_.data() + x * words_; }
  size_t words_per_row() const { return words_; }
  std::vector<std::pair<uint64_t, uint64_t>> pairs() const;

  bool operator==(const ExtensionalRelation& o) const { return bits_ == o.bits_; }

 private:
  const RuleUniverse* u_;
  size_t n_, words_;
  std::vector<uint64_t> bits_;
};

// Which closure rules a generated relation is closed under. (2) relates all
// inconsistent bases, (3) copies a consistent source's successors to all its
// subsets, (4) is transitive closure, (5a) adds all self loops, (5b) relates a
// non-world maximally-consistent base to its subsets, (5c) relates a world
// base to every base whose unique maximally-consistent superset it is.
struct RelationRules {
  bool inc_total = true;
  bool downward = true;
  bool transitive = false;
  bool reflexive = false;
  bool five_b = false;
  bool five_c = false;

  static RelationRules for_logic(Logic logic);
};

// Least relation containing the seed pairs and closed under the enabled rules.
// Membership is decided on demand; small universes are materialized.
class GeneratedRelation {
 public:
  GeneratedRelation(const RuleUniverse& u, std::vector<std::pair<uint64_t, uint64_t>> seeds,
                    Logic logic, std::vector<uint64_t> world_bases);

  const RuleUniverse& universe() const { return *u_; }
  const std::vector<std::pair<uint64_t, uint64_t>>& seeds() const { return seeds_; }
  const RelationRules& rules() const { return rules_; }
  Logic logic() const { return logic_; }
  const std::vector<uint64_t>& world_bases() const { return world_bases_; }

  bool rel(uint64_t x, uint64_t y) const;

  bool materializable() const { return u_->rule_count() <= 12; }
  const ExtensionalRelation& materialize() const;  // SizeLimitError beyond 12 rules

  // Membership route used beyond the materialization bound: a least fixpoint
  // over a finite pool of bases (queried bases, world bases, seed endpoints,
  // every maximally-consistent base, the empty and the full base — enough to
  // replay any derivation between pool members). Public so the tests can
  // cross-check it against full materialization.
  bool support_rel(uint64_t x, uint64_t y) const;

 private:
  void ensure_pooled(uint64_t base) const;
  void refresh_pool_fixpoint() const;

  const RuleUniverse* u_;
  std::vector<std::pair<uint64_t, uint64_t>> seeds_;
  RelationRules rules_;
  Logic logic_;
  std::vector<uint64_t> world_bases_;
  mutable std::shared_ptr<ExtensionalRelation> dense_;
  mutable std::vector<uint64_t> pool_;       // sorted base masks
  mutable std::vector<uint64_t> pool_rows_;  // adjacency rows over pool indices
  mutable bool pool_dirty_ = true;
};

struct RelationWitness {
  std::array<uint64_t, 3> bases{};
  int arity = 2;
};

struct ConditionItem {
  bool pass = true;
  std::vector<RelationWitness> witnesses;  // capped at a handful
};

struct ConditionReport {
  // Modal-relation conditions. (d) is enforced for consistent sources; the
  // literal all-sources reading is reported informationally.
  ConditionItem a, b, c, d_adopted, d_literal;
  bool has_modal = false;
  // Frame conditions.
  ConditionItem reflexive, transitive, euclidean;
  bool has_frame = false;
  FrameConditions required;
  bool restricted_to_probes = false;

  bool modal_pass() const { return a.pass && b.pass && c.pass && d_adopted.pass; }
  bool frame_pass() const {
    return (!required.reflexive || reflexive.pass) && (!required.transitive || transitive.pass) &&
           (!required.euclidean || euclidean.pass);
  }
};

ConditionReport check_modal(const ExtensionalRelation& r);
ConditionReport check_frame(const ExtensionalRelation& r, Logic logic);
// Generated relations over materializable universes are checked exactly;
// larger ones are checked over a finite probe set (world bases, seed
// endpoints, maximally-consistent bases, canonical inconsistent bases, and
// near-world cone samples), which the report flags.
ConditionReport check_modal(const GeneratedRelation& r);
ConditionReport check_frame(const GeneratedRelation& r, Logic logic);

// Exactly all pairs of inconsistent bases: the least relation meeting (a)/(b).
ExtensionalRelation minimal_modal_relation(const RuleUniverse& u);

// All relations on the full lattice passing check_modal and check_frame, in
// ascending bit-matrix order. Only universes with at most 4 bases.
std::vector<ExtensionalRelation> enumerate_modal_relations(const RuleUniverse& u, Logic logic);

GeneratedRelation close_relation(const std::vector<std::pair<uint64_t, uint64_t>>& seed_pairs,
                                 const RuleUniverse& u, Logic logic,
                                 const std::vector<uint64_t>& world_bases);

// Seeded draw: a random Kripke-style frame over a random subset of
// maximally-consistent bases, frame-closed for the logic, then closed under
// the relation rules. Retries until the checkers pass.
GeneratedRelation sample_modal_relation(const RuleUniverse& u, Logic logic, uint64_t seed);

}  // namespace bes
