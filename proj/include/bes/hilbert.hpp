#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "bes/formula.hpp"
#include "bes/kripke.hpp"

namespace bes {

enum class AxiomId { Ax1, Ax2, Ax3, AxK, AxT, Ax4, Ax5 };

const char* axiom_name(AxiomId id);
std::optional<AxiomId> parse_axiom(std::string_view name);

// Schema of the axiom with metavariables; negation appears expanded to `-> bot`.
Formula axiom_schema(AxiomId id);

// Axioms admitted by a logic's proof system.
std::vector<AxiomId> axioms_for(Logic logic);

// Structural match of f against the schema; metavariables bind to subformulas.
std::optional<std::map<std::string, Formula>> match_axiom(Formula f, AxiomId schema);

struct ProofStep {
  Formula formula;
  enum class By { Axiom, MP, Nec } by;
  AxiomId axiom = AxiomId::Ax1;  // when by == Axiom
  int ref1 = -1;                 // MP: index of the premise; Nec: index of the boxed step
  int ref2 = -1;                 // MP: index of the implication
};

struct HilbertProof {
  Logic logic = Logic::K;
  std::vector<ProofStep> steps;

  Formula conclusion() const { return steps.back().formula; }
};

struct ProofCheckResult {
  bool ok = true;
  int failed_step = -1;
  std::string reason;
};

// A proof checks when every step is an instance of an axiom available in the
// proof's logic, or follows by MP (ref2 must be Implies(ref1, step)), or by NEC
// from any earlier step (these are theorem-proofs: no open assumptions).
ProofCheckResult check_proof(const HilbertProof& proof);

}  // namespace bes
