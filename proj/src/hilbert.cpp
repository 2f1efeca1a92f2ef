#include "bes/hilbert.hpp"

#include <stdexcept>

namespace bes {

const char* axiom_name(AxiomId id) {
  switch (id) {
    case AxiomId::Ax1: return "AX1";
    case AxiomId::Ax2: return "AX2";
    case AxiomId::Ax3: return "AX3";
    case AxiomId::AxK: return "AXK";
    case AxiomId::AxT: return "AXT";
    case AxiomId::Ax4: return "AX4";
    case AxiomId::Ax5: return "AX5";
  }
  return "?";
}

std::optional<AxiomId> parse_axiom(std::string_view name) {
  if (name == "AX1") return AxiomId::Ax1;
  if (name == "AX2") return AxiomId::Ax2;
  if (name == "AX3") return AxiomId::Ax3;
  if (name == "AXK") return AxiomId::AxK;
  if (name == "AXT") return AxiomId::AxT;
  if (name == "AX4") return AxiomId::Ax4;
  if (name == "AX5") return AxiomId::Ax5;
  return std::nullopt;
}

Formula axiom_schema(AxiomId id) {
  const Formula a = Formula::atom("a");
  const Formula b = Formula::atom("b");
  const Formula c = Formula::atom("c");
  switch (id) {
    case AxiomId::Ax1:
      return Formula::implies(a, Formula::implies(b, a));
    case AxiomId::Ax2:
      return Formula::implies(
          Formula::implies(a, Formula::implies(b, c)),
          Formula::implies(Formula::implies(a, b), Formula::implies(a, c)));
    case AxiomId::Ax3:
      return Formula::implies(Formula::implies(Formula::neg(a), Formula::neg(b)),
                              Formula::implies(b, a));
    case AxiomId::AxK:
      return Formula::implies(Formula::box(Formula::implies(a, b)),
                              Formula::implies(Formula::box(a), Formula::box(b)));
    case AxiomId::AxT:
      return Formula::implies(Formula::box(a), a);
    case AxiomId::Ax4:
      return Formula::implies(Formula::box(a), Formula::box(Formula::box(a)));
    case AxiomId::Ax5:
      return Formula::implies(Formula::diamond(a), Formula::box(Formula::diamond(a)));
  }
  throw std::logic_error("unreachable");
}

std::vector<AxiomId> axioms_for(Logic logic) {
  std::vector<AxiomId> out = {AxiomId::Ax1, AxiomId::Ax2, AxiomId::Ax3, AxiomId::AxK};
  const FrameConditions fc = frame_conditions(logic);
  if (fc.reflexive) out.push_back(AxiomId::AxT);
  if (fc.transitive) out.push_back(AxiomId::Ax4);
  if (fc.euclidean) out.push_back(AxiomId::Ax5);
  return out;
}

namespace {

bool match(Formula pattern, Formula target, std::map<std::string, Formula>& bind) {
  switch (pattern.kind()) {
    case Conn::Atom: {
      auto [it, inserted] = bind.emplace(pattern.atom_name(), target);
      return inserted || it->second == target;
    }
    case Conn::Bottom:
      return target.kind() == Conn::Bottom;
    case Conn::Implies:
      return target.kind() == Conn::Implies && match(pattern.left(), target.left(), bind) &&
             match(pattern.right(), target.right(), bind);
    case Conn::Box:
      return target.kind() == Conn::Box && match(pattern.body(), target.body(), bind);
    case Conn::Diamond:
      return target.kind() == Conn::Diamond && match(pattern.body(), target.body(), bind);
  }
  return false;
}

}  // namespace

std::optional<std::map<std::string, Formula>> match_axiom(Formula f, AxiomId schema) {
  std::map<std::string, Formula> bind;
  if (match(axiom_schema(schema), f, bind)) return bind;
  return std::nullopt;
}

ProofCheckResult check_proof(const HilbertProof& proof) {
  const std::vector<AxiomId> available = axioms_for(proof.logic);
  auto fail = [](int step, std::string reason) {
    return ProofCheckResult{false, step, std::move(reason)};
  };
  if (proof.steps.empty()) return fail(-1, "proof has no steps");
  for (size_t i = 0; i < proof.steps.size(); i++) {
    const ProofStep& s = proof.steps[i];
    switch (s.by) {
      case ProofStep::By::Axiom: {
        bool admitted = false;
        for (AxiomId a : available) admitted |= (a == s.axiom);
        if (!admitted)
          return fail(static_cast<int>(i), std::string("axiom ") + axiom_name(s.axiom) +
                                               " is not part of " + logic_name(proof.logic));
        if (!match_axiom(s.formula, s.axiom))
          return fail(static_cast<int>(i),
                      std::string("formula is not an instance of ") + axiom_name(s.axiom));
        break;
      }
      case ProofStep::By::MP: {
        if (s.ref1 < 0 || s.ref2 < 0 || s.ref1 >= static_cast<int>(i) ||
            s.ref2 >= static_cast<int>(i))
          return fail(static_cast<int>(i), "MP references must point to earlier steps");
        Formula premise = proof.steps[s.ref1].formula;
        Formula implication = proof.steps[s.ref2].formula;
        if (implication.kind() != Conn::Implies || implication.left() != premise ||
            implication.right() != s.formula)
          return fail(static_cast<int>(i), "MP requires step[ref2] = step[ref1] -> conclusion");
        break;
      }
      case ProofStep::By::Nec: {
        if (s.ref1 < 0 || s.ref1 >= static_cast<int>(i))
          return fail(static_cast<int>(i), "NEC reference must point to an earlier step");
        if (s.formula != Formula::box(proof.steps[s.ref1].formula))
          return fail(static_cast<int>(i), "NEC conclusion must box the referenced step");
        break;
      }
    }
  }
  return {};
}

}  // namespace bes
