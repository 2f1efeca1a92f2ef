#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "bes/base.hpp"
#include "bes/kripke.hpp"
#include "bes/relation.hpp"
#include "bes/semantics.hpp"

namespace bes {

struct AgreementCell {
  int world;
  Formula formula;
  bool kripke;
  bool bes;
};

// Full record of one countermodel transfer: the source Kripke countermodel,
// the freshened model, the per-world bases, the generated relation with its
// condition verdicts, and the world-by-subformula agreement table.
struct BridgeReport {
  Logic logic = Logic::K;
  Formula phi;
  KripkeModel model;
  int witness_world = 0;
  KripkeModel freshened;
  std::shared_ptr<RuleUniverse> universe;
  std::vector<Base> world_bases;
  std::shared_ptr<GeneratedRelation> relation;
  ConditionReport modal_checks;
  ConditionReport frame_checks;
  std::vector<AgreementCell> agreement;
  int disagreement_count = 0;
  bool phi_fails_at_witness = false;
  bool success = false;
};

// One fresh atom name per world, not colliding with the atoms of phi.
std::vector<std::string> fresh_world_atoms(const KripkeModel& m, Formula phi);

// Adds one fresh atom per world, true everywhere except that world; no two
// worlds of the result share a valuation, and phi keeps its truth values.
KripkeModel freshen_model(const KripkeModel& m, Formula phi);

// Universe over the atoms of phi plus the fresh atoms, with premise arity 2
// (capped by the alphabet). Rejects alphabets of 5 or more atoms.
RuleUniverse bridge_universe(const KripkeModel& m_prime, Formula phi);

// The maximally-consistent base encoding a world's valuation: facts for true
// atoms, the false atoms tied to the world's fresh atom, extended maximally
// while avoiding that fresh atom.
Base world_base(const KripkeModel& m_prime, int world, const RuleUniverse& u);

GeneratedRelation build_bridge_relation(const KripkeModel& m_prime,
                                        const std::vector<Base>& world_bases, Logic logic);

// Checks the relation conditions and evaluates every subformula of phi at
// every world, Kripke-side and base-side.
BridgeReport verify_agreement(const KripkeModel& m_prime, const std::vector<Base>& world_bases,
                              std::shared_ptr<GeneratedRelation> relation, Formula phi,
                              Logic logic, std::shared_ptr<RuleUniverse> universe);

// Countermodel search followed by the whole transfer pipeline; nullopt when no
// Kripke countermodel exists within the world bound.
std::optional<BridgeReport> falsify_in_bes(Logic logic, Formula phi, int max_worlds);

// The euclidean incompleteness construction: a base and euclidean modal
// relation where the possibility of an atom holds but its necessitated
// possibility fails.
struct EuclidReport {
  std::shared_ptr<RuleUniverse> universe;
  Base base_b, base_c, base_d, base_e, base_f;
  std::vector<std::pair<uint64_t, uint64_t>> literal_seeds;
  std::vector<std::pair<uint64_t, uint64_t>> added_pairs;
  std::shared_ptr<GeneratedRelation> relation;
  ConditionReport modal_checks;
  ConditionReport frame_checks;
  bool diamond_p = false;
  bool box_diamond_p = true;
  enum class Construction { Literal, Repaired, NotFound } construction = Construction::NotFound;
  bool success = false;
};

EuclidReport euclidean_demo(const RuleUniverse& u);

}  // namespace bes
