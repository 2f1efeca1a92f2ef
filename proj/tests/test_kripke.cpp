#include <doctest.h>

#include "bes/kripke.hpp"

using namespace bes;

TEST_CASE("eval at single worlds") {
  KripkeModel loop = make_kripke_model({"w"}, {{"w", "w"}}, {{"p", {"w"}}});
  CHECK(eval(loop, "w", parse_formula("[]p")));

  KripkeModel bare = make_kripke_model({"w"}, {}, {});
  CHECK(eval(bare, "w", parse_formula("[]bot")));
  CHECK_FALSE(eval(bare, "w", parse_formula("<>p")));

  KripkeModel two = make_kripke_model({"w", "v"}, {{"w", "v"}}, {{"p", {"v"}}});
  CHECK(eval(two, "w", parse_formula("<>p")));
  CHECK(eval(two, "w", parse_formula("[]p")));
  CHECK_FALSE(eval(two, "w", parse_formula("p")));

  CHECK_THROWS(eval(two, "zz", parse_formula("p")));
}

TEST_CASE("negation sugar matches complement") {
  KripkeModel two = make_kripke_model({"w", "v"}, {{"w", "v"}, {"v", "w"}}, {{"p", {"v"}}});
  for (const char* text : {"p", "[]p", "<>p", "p -> p", "bot"})
    for (const std::string& w : two.worlds) {
      Formula f = parse_formula(text);
      CHECK(eval(two, w, Formula::neg(f)) == !eval(two, w, f));
    }
}

TEST_CASE("frame_check") {
  KripkeModel ident = make_kripke_model({"a", "b"}, {{"a", "a"}, {"b", "b"}}, {});
  CHECK(frame_check(ident, Logic::S4));
  CHECK(frame_check(ident, Logic::KEuclid));

  KripkeModel chain =
      make_kripke_model({"a", "b", "c"}, {{"a", "b"}, {"b", "c"}}, {});
  CHECK(frame_check(chain, Logic::K));
  CHECK_FALSE(frame_check(chain, Logic::K4));
  CHECK_FALSE(frame_check(chain, Logic::KT));

  KripkeModel closed = make_kripke_model({"a", "b", "c"}, {{"a", "b"}, {"b", "c"}, {"a", "c"}}, {});
  CHECK(frame_check(closed, Logic::K4));
}

TEST_CASE("find_countermodel") {
  auto hit = find_countermodel(Logic::K, parse_formula("[]p -> p"), 2);
  REQUIRE(hit.has_value());
  CHECK_FALSE(eval(hit->first, hit->second, parse_formula("[]p -> p")));
  CHECK(frame_check(hit->first, Logic::K));

  CHECK_FALSE(find_countermodel(Logic::KT, parse_formula("[]p -> p"), 3).has_value());
  CHECK_FALSE(
      find_countermodel(Logic::K, parse_formula("[](p -> q) -> ([]p -> []q)"), 3).has_value());

  // determinism
  auto again = find_countermodel(Logic::K, parse_formula("[]p -> p"), 2);
  REQUIRE(again.has_value());
  CHECK(again->first.worlds == hit->first.worlds);
  CHECK(again->first.succ == hit->first.succ);
  CHECK(again->second == hit->second);
}

TEST_CASE("find_countermodel respects frame conditions") {
  auto k4_hit = find_countermodel(Logic::K4, parse_formula("[]p -> p"), 2);
  REQUIRE(k4_hit.has_value());
  CHECK(frame_check(k4_hit->first, Logic::K4));

  auto kt_hit = find_countermodel(Logic::KT, parse_formula("[]p -> [][]p"), 3);
  REQUIRE(kt_hit.has_value());
  CHECK(frame_check(kt_hit->first, Logic::KT));
  CHECK_FALSE(eval(kt_hit->first, kt_hit->second, parse_formula("[]p -> [][]p")));

  // 4 is an S4 theorem: no reflexive-transitive countermodel
  CHECK_FALSE(find_countermodel(Logic::S4, parse_formula("[]p -> [][]p"), 3).has_value());
}
