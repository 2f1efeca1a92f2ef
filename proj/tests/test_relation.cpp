#include <doctest.h>

#include <set>

#include "bes/errors.hpp"
#include "bes/json_io.hpp"
#include "bes/relation.hpp"

using namespace bes;

namespace {

RuleUniverse u_p1() { return build_universe(AtomAlphabet({"p"}), 1); }

}  // namespace

TEST_CASE("minimal_modal_relation on the one-atom universe") {
  RuleUniverse u = u_p1();
  ExtensionalRelation r = minimal_modal_relation(u);
  // inconsistent bases are {=>p} (0b01) and {=>p, p=>p} (0b11)
  std::set<std::pair<uint64_t, uint64_t>> expect = {{1, 1}, {1, 3}, {3, 1}, {3, 3}};
  auto got = r.pairs();
  CHECK(std::set<std::pair<uint64_t, uint64_t>>(got.begin(), got.end()) == expect);

  CHECK(check_modal(r).modal_pass());
  ConditionReport s4 = check_frame(r, Logic::S4);
  CHECK_FALSE(s4.reflexive.pass);
  CHECK_FALSE(s4.frame_pass());
  CHECK(check_frame(r, Logic::K).frame_pass());
}

TEST_CASE("check_modal witnesses") {
  RuleUniverse u = u_p1();
  ExtensionalRelation empty(u);
  ConditionReport rep = check_modal(empty);
  CHECK_FALSE(rep.a.pass);  // inconsistent bases lack successors

  ExtensionalRelation total(u);
  for (uint64_t x = 0; x < 4; x++)
    for (uint64_t y = 0; y < 4; y++) total.set(x, y);
  ConditionReport rep2 = check_modal(total);
  CHECK_FALSE(rep2.b.pass);  // consistent base related to an inconsistent one
  CHECK(rep2.a.pass);

  // the adopted (d) reading passes where the literal one cannot
  ExtensionalRelation minimal = minimal_modal_relation(u);
  ConditionReport rep3 = check_modal(minimal);
  CHECK(rep3.d_adopted.pass);
  CHECK_FALSE(rep3.d_literal.pass);
}

TEST_CASE("check_frame witnesses") {
  RuleUniverse u = u_p1();
  ExtensionalRelation ident(u);
  for (uint64_t x = 0; x < 4; x++) ident.set(x, x);
  ConditionReport rep = check_frame(ident, Logic::S4);
  CHECK(rep.reflexive.pass);
  CHECK(rep.transitive.pass);
  CHECK(rep.euclidean.pass);

  ExtensionalRelation one(u);
  one.set(0, 1);
  ConditionReport rep2 = check_frame(one, Logic::KT);
  CHECK_FALSE(rep2.reflexive.pass);
  REQUIRE_FALSE(rep2.reflexive.witnesses.empty());
  CHECK(rep2.reflexive.witnesses[0].bases[0] == 0);

  ExtensionalRelation chain(u);
  chain.set(0, 1);
  chain.set(1, 2);
  ConditionReport rep3 = check_frame(chain, Logic::K4);
  CHECK_FALSE(rep3.transitive.pass);
  REQUIRE_FALSE(rep3.transitive.witnesses.empty());
  CHECK(rep3.transitive.witnesses[0].arity == 3);
}

TEST_CASE("enumerate_modal_relations: counts frozen as regression values") {
  RuleUniverse u = u_p1();
  const auto& k_rels = enumerate_modal_relations(u, Logic::K);
  CHECK(k_rels.size() == 36);
  bool has_minimal = false;
  ExtensionalRelation minimal = minimal_modal_relation(u);
  for (const auto& r : k_rels) has_minimal |= (r == minimal);
  CHECK(has_minimal);
  for (const auto& r : k_rels) {
    CHECK(check_modal(r).modal_pass());
    CHECK(check_frame(r, Logic::K).frame_pass());
  }

  CHECK(enumerate_modal_relations(u, Logic::KT).size() == 4);
  CHECK(enumerate_modal_relations(u, Logic::K4).size() > 0);
  CHECK(enumerate_modal_relations(u, Logic::S4).size() > 0);

  RuleUniverse big = build_universe(AtomAlphabet({"p", "q"}), 1);
  CHECK_THROWS_AS(enumerate_modal_relations(big, Logic::K), SizeLimitError);
}

TEST_CASE("close_relation with empty seeds matches the minimal relation") {
  RuleUniverse u = u_p1();
  GeneratedRelation gen = close_relation({}, u, Logic::K, {});
  CHECK(gen.materialize() == minimal_modal_relation(u));
}

TEST_CASE("close_relation applies downward closure and reflexivity") {
  RuleUniverse u = build_universe(AtomAlphabet({"p", "q"}), 2);
  auto maxcons = max_consistent_bases(u);
  REQUIRE(maxcons.size() == 3);
  uint64_t bw = maxcons[1].members, bv = maxcons[2].members;
  GeneratedRelation gen = close_relation({{bw, bv}}, u, Logic::K, {bw, bv});
  const ExtensionalRelation& mat = gen.materialize();
  // every consistent subset of the source inherits the successor
  const Lattice& lat = Lattice::of(u);
  for (uint64_t d = 0; d <= u.full_rule_mask(); d++)
    if ((d & ~bw) == 0 && !lat.inconsistent.get(d)) CHECK(mat.rel(d, bv));
  // no reflexivity for K
  CHECK_FALSE(mat.rel(bw, bw));

  GeneratedRelation s4 = close_relation({{bw, bv}}, u, Logic::S4, {bw, bv});
  const ExtensionalRelation& mat4 = s4.materialize();
  for (uint64_t b = 0; b <= u.full_rule_mask(); b++) CHECK(mat4.rel(b, b));
  CHECK(check_modal(s4).modal_pass());
  CHECK(check_frame(s4, Logic::S4).frame_pass());
}

TEST_CASE("close_relation is monotone in seeds and idempotent") {
  RuleUniverse u = build_universe(AtomAlphabet({"p", "q"}), 2);
  auto maxcons = max_consistent_bases(u);
  uint64_t a = maxcons[0].members, b = maxcons[1].members, c = maxcons[2].members;
  GeneratedRelation small = close_relation({{a, b}}, u, Logic::K, {a, b, c});
  GeneratedRelation large = close_relation({{a, b}, {b, c}}, u, Logic::K, {a, b, c});
  const size_t n = 1ULL << u.rule_count();
  for (uint64_t x = 0; x < n; x++)
    for (uint64_t y = 0; y < n; y++)
      if (small.materialize().rel(x, y)) CHECK(large.materialize().rel(x, y));

  // closing the closure's pairs again changes nothing
  GeneratedRelation reclosed = close_relation(small.materialize().pairs(), u, Logic::K, {a, b, c});
  CHECK(reclosed.materialize() == small.materialize());
}

TEST_CASE("support membership agrees with materialization") {
  for (Logic g : {Logic::K, Logic::KT, Logic::K4, Logic::S4}) {
    RuleUniverse u = build_universe(AtomAlphabet({"p", "q"}), 1);
    auto maxcons = max_consistent_bases(u);
    REQUIRE(maxcons.size() == 3);
    uint64_t w0 = maxcons[0].members, w1 = maxcons[1].members;
    std::vector<std::pair<uint64_t, uint64_t>> seeds = {{w0, w1}, {w1, w1}};
    if (frame_conditions(g).reflexive) seeds.push_back({w0, w0});
    GeneratedRelation gen = close_relation(seeds, u, g, {w0, w1});
    const ExtensionalRelation& mat = gen.materialize();
    const size_t n = 1ULL << u.rule_count();
    for (uint64_t x = 0; x < n; x++)
      for (uint64_t y = 0; y < n; y++) CHECK(gen.support_rel(x, y) == mat.rel(x, y));
  }
}

TEST_CASE("sample_modal_relation is deterministic and passes the checkers") {
  RuleUniverse u = build_universe(AtomAlphabet({"p", "q"}), 2);
  for (Logic g : {Logic::K, Logic::KT, Logic::K4, Logic::S4}) {
    GeneratedRelation r1 = sample_modal_relation(u, g, 17);
    GeneratedRelation r2 = sample_modal_relation(u, g, 17);
    CHECK(r1.seeds() == r2.seeds());
    CHECK(r1.world_bases() == r2.world_bases());
    CHECK(check_modal(r1).modal_pass());
    CHECK(check_frame(r1, g).frame_pass());
  }
}

TEST_CASE("relation JSON round trips") {
  RuleUniverse u = u_p1();
  ExtensionalRelation r = minimal_modal_relation(u);
  Json j = relation_to_json(r);
  ExtensionalRelation r2 = relation_from_json(u, j);
  CHECK(r == r2);

  RuleUniverse u2 = build_universe(AtomAlphabet({"p", "q"}), 2);
  auto maxcons = max_consistent_bases(u2);
  GeneratedRelation gen =
      close_relation({{maxcons[0].members, maxcons[1].members}}, u2, Logic::S4,
                     {maxcons[0].members, maxcons[1].members});
  GeneratedRelation gen2 = generated_relation_from_json(u2, relation_to_json(gen));
  CHECK(gen.seeds() == gen2.seeds());
  CHECK(gen.logic() == gen2.logic());
  CHECK(gen.world_bases() == gen2.world_bases());
  CHECK(gen.materialize() == gen2.materialize());
}

TEST_CASE("universe and base JSON round trips") {
  RuleUniverse u = build_universe(AtomAlphabet({"p", "q"}), 2);
  RuleUniverse u2 = universe_from_json(universe_to_json(u));
  CHECK(u == u2);
  for (uint64_t m : {0ULL, 5ULL, 37ULL, u.full_rule_mask()}) {
    Base b = make_base(u, m);
    CHECK(base_from_json(u, base_to_json(b)).members == m);
  }
}
