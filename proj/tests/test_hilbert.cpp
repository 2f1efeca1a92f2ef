#include <doctest.h>

#include "bes/hilbert.hpp"
#include "bes/json_io.hpp"

using namespace bes;

namespace {

// The standard five-step derivation of f -> f from axioms 1 and 2.
HilbertProof identity_proof(Logic logic, Formula f) {
  Formula ff = Formula::implies(f, f);
  Formula f_ff = Formula::implies(f, ff);
  HilbertProof p;
  p.logic = logic;
  p.steps.push_back({Formula::implies(Formula::implies(f, Formula::implies(ff, f)),
                                      Formula::implies(f_ff, ff)),
                     ProofStep::By::Axiom, AxiomId::Ax2, -1, -1});
  p.steps.push_back(
      {Formula::implies(f, Formula::implies(ff, f)), ProofStep::By::Axiom, AxiomId::Ax1, -1, -1});
  p.steps.push_back({Formula::implies(f_ff, ff), ProofStep::By::MP, AxiomId::Ax1, 1, 0});
  p.steps.push_back({f_ff, ProofStep::By::Axiom, AxiomId::Ax1, -1, -1});
  p.steps.push_back({ff, ProofStep::By::MP, AxiomId::Ax1, 3, 2});
  return p;
}

}  // namespace

TEST_CASE("match_axiom") {
  auto m1 = match_axiom(parse_formula("p -> q -> p"), AxiomId::Ax1);
  REQUIRE(m1.has_value());
  CHECK(m1->at("a") == Formula::atom("p"));
  CHECK(m1->at("b") == Formula::atom("q"));

  auto mk = match_axiom(parse_formula("[](p -> q) -> ([]p -> []q)"), AxiomId::AxK);
  REQUIRE(mk.has_value());
  CHECK(mk->at("a") == Formula::atom("p"));
  CHECK(mk->at("b") == Formula::atom("q"));

  CHECK_FALSE(match_axiom(parse_formula("p -> p"), AxiomId::Ax1).has_value());
  // inconsistent bindings must fail
  CHECK_FALSE(match_axiom(parse_formula("[](p -> q) -> ([]q -> []q)"), AxiomId::AxK).has_value());
  // negation appears only as sugar
  auto m3 = match_axiom(parse_formula("(~p -> ~q) -> (q -> p)"), AxiomId::Ax3);
  REQUIRE(m3.has_value());
  CHECK(m3->at("a") == Formula::atom("p"));
}

TEST_CASE("check_proof accepts the textbook identity derivation") {
  HilbertProof p = identity_proof(Logic::K, Formula::atom("p"));
  ProofCheckResult res = check_proof(p);
  CHECK(res.ok);
  CHECK(p.conclusion() == parse_formula("p -> p"));
}

TEST_CASE("check_proof rejects out-of-logic axioms") {
  HilbertProof p;
  p.logic = Logic::K;
  p.steps.push_back({parse_formula("[]p -> p"), ProofStep::By::Axiom, AxiomId::AxT, -1, -1});
  ProofCheckResult res = check_proof(p);
  CHECK_FALSE(res.ok);
  CHECK(res.failed_step == 0);

  p.logic = Logic::KT;
  CHECK(check_proof(p).ok);

  HilbertProof five;
  five.logic = Logic::S4;
  five.steps.push_back({parse_formula("<>p -> []<>p"), ProofStep::By::Axiom, AxiomId::Ax5, -1, -1});
  CHECK_FALSE(check_proof(five).ok);
  five.logic = Logic::KEuclid;
  CHECK(check_proof(five).ok);
}

TEST_CASE("check_proof validates references") {
  HilbertProof p = identity_proof(Logic::K, Formula::atom("p"));
  p.steps[2].ref1 = 2;  // self reference
  CHECK_FALSE(check_proof(p).ok);

  HilbertProof nec;
  nec.logic = Logic::K;
  nec.steps = identity_proof(Logic::K, Formula::atom("p")).steps;
  nec.steps.push_back({parse_formula("[](p -> p)"), ProofStep::By::Nec, AxiomId::Ax1, 4, -1});
  CHECK(check_proof(nec).ok);
  nec.steps.back().formula = parse_formula("[](p -> q)");
  CHECK_FALSE(check_proof(nec).ok);
}

TEST_CASE("check_proof rejects bad axiom instances and reports the step") {
  HilbertProof p;
  p.logic = Logic::K;
  p.steps.push_back({parse_formula("p -> q -> p"), ProofStep::By::Axiom, AxiomId::Ax1, -1, -1});
  p.steps.push_back({parse_formula("q -> q"), ProofStep::By::Axiom, AxiomId::Ax1, -1, -1});
  ProofCheckResult res = check_proof(p);
  CHECK_FALSE(res.ok);
  CHECK(res.failed_step == 1);
}

TEST_CASE("proof JSON round trip") {
  HilbertProof p = identity_proof(Logic::S4, Formula::box(Formula::atom("p")));
  Json j = proof_to_json(p);
  HilbertProof q = proof_from_json(j);
  CHECK(q.logic == p.logic);
  REQUIRE(q.steps.size() == p.steps.size());
  for (size_t i = 0; i < p.steps.size(); i++) {
    CHECK(q.steps[i].formula == p.steps[i].formula);
    CHECK(q.steps[i].by == p.steps[i].by);
  }
  CHECK(check_proof(q).ok);
}
