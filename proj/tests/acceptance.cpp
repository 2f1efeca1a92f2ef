// Acceptance suite: runs every acceptance criterion and prints one PASS/FAIL
// line per criterion. Exit status is nonzero when any criterion fails.

#include <chrono>
#include <cstdio>
#include <map>
#include <string>
#include <vector>

#include "bes/bridge.hpp"
#include "bes/hilbert.hpp"
#include "bes/lemma_suite.hpp"
#include "bes/semantics.hpp"

using namespace bes;

namespace {

int g_failures = 0;

struct Criterion {
  const char* name;
  bool (*run)(std::string& detail);
};

double seconds_since(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

// 1. Classical double negation at every base of the 256-base universe.
bool criterion_classical_dn(std::string& detail) {
  RuleUniverse u = build_universe(AtomAlphabet({"p", "q"}), 2);
  Formula dn = parse_formula("((p -> bot) -> bot) -> p");
  Evaluator ev(u);
  int count = 0;
  for (uint64_t m = 0; m <= u.full_rule_mask(); m++) {
    if (!ev.holds_at(m, dn)) {
      detail = "fails at base mask " + std::to_string(m);
      return false;
    }
    count++;
  }
  detail = std::to_string(count) + " bases";
  return count == 256;
}

// 2. Exhaustive relation enumeration on the 4-base universe.
bool criterion_exhaustive(std::string& detail) {
  RuleUniverse u = build_universe(AtomAlphabet({"p"}), 1);
  const auto& rels = enumerated_relations(u, Logic::K);
  if (rels.empty()) {
    detail = "no K-modal relations";
    return false;
  }
  bool has_minimal = false;
  ExtensionalRelation minimal = minimal_modal_relation(u);
  for (const auto& r : rels) has_minimal |= (r == minimal);
  if (!has_minimal) {
    detail = "minimal relation missing from the enumeration";
    return false;
  }
  if (valid_exhaustive(u, Logic::K, parse_formula("[](p -> p) -> ([]p -> []p)")).status !=
      Verdict::Status::ValidOverUniverse) {
    detail = "K axiom instance not valid";
    return false;
  }
  if (valid_exhaustive(u, Logic::K, parse_formula("[](p -> p)")).status !=
      Verdict::Status::ValidOverUniverse) {
    detail = "[](p -> p) not valid";
    return false;
  }
  Verdict t_k = valid_exhaustive(u, Logic::K, parse_formula("[]p -> p"));
  if (t_k.status != Verdict::Status::Invalid || !t_k.witness_ext) {
    detail = "[]p -> p not refuted under K";
    return false;
  }
  if (check_frame(*t_k.witness_ext, Logic::KT).reflexive.pass) {
    detail = "witness relation is reflexive";
    return false;
  }
  if (holds(make_base(u, t_k.witness_base), *t_k.witness_ext, parse_formula("[]p -> p"))) {
    detail = "witness does not falsify []p -> p";
    return false;
  }
  if (valid_exhaustive(u, Logic::KT, parse_formula("[]p -> p")).status !=
      Verdict::Status::ValidOverUniverse) {
    detail = "[]p -> p not valid under KT";
    return false;
  }
  detail = std::to_string(rels.size()) + " K-modal relations of 65536 candidates";
  return true;
}

// 3. Sampled axiom schedule: 100 relations per logic, no counterexamples.
bool criterion_sampled_schedule(std::string& detail) {
  RuleUniverse u = build_universe(AtomAlphabet({"p", "q"}), 2);
  struct Entry {
    AxiomId axiom;
    const char* text;
  };
  const std::vector<Entry> schedule = {
      {AxiomId::Ax1, "p -> (q -> p)"},
      {AxiomId::Ax1, "[]p -> (q -> []p)"},
      {AxiomId::Ax2, "(p -> (q -> p)) -> ((p -> q) -> (p -> p))"},
      {AxiomId::Ax2, "([]p -> (q -> []q)) -> (([]p -> q) -> ([]p -> []q))"},
      {AxiomId::Ax3, "((p -> bot) -> (q -> bot)) -> (q -> p)"},
      {AxiomId::Ax3, "(([]p -> bot) -> (q -> bot)) -> (q -> []p)"},
      {AxiomId::AxK, "[](p -> q) -> ([]p -> []q)"},
      {AxiomId::AxK, "[](q -> []p) -> ([]q -> [][]p)"},
      {AxiomId::AxT, "[]p -> p"},
      {AxiomId::AxT, "[](p -> q) -> (p -> q)"},
      {AxiomId::Ax4, "[]p -> [][]p"},
      {AxiomId::Ax4, "[](p -> q) -> [][](p -> q)"},
  };
  int runs = 0;
  for (Logic g : {Logic::K, Logic::KT, Logic::K4, Logic::S4}) {
    const auto available = axioms_for(g);
    for (const Entry& e : schedule) {
      bool applies = false;
      for (AxiomId a : available) applies |= (a == e.axiom);
      if (!applies) continue;
      Formula f = parse_formula(e.text);
      if (!match_axiom(f, e.axiom)) {
        detail = std::string("schedule entry is not an instance: ") + e.text;
        return false;
      }
      Verdict v = valid_sampled(u, g, f, 100, 2026);
      runs++;
      if (v.status != Verdict::Status::NoCounterexampleFound) {
        detail = std::string(logic_name(g)) + " refutes " + e.text;
        return false;
      }
    }
  }
  detail = std::to_string(runs) + " schedule runs, 100 relations each";
  return runs == 8 + 10 + 10 + 12;
}

// 4. The whole lemma suite at 1000 cases per check.
bool criterion_lemma_suite(std::string& detail) {
  auto results = run_suite("*", 1000, 2026);
  int passed = 0;
  for (const LemmaResult& r : results) {
    if (!r.pass) {
      detail = r.id + " failed: " + r.witness;
      return false;
    }
    passed++;
  }
  detail = std::to_string(passed) + " checks";
  return passed == static_cast<int>(lemma_suite_ids().size());
}

// 5. Countermodel transfer over the fixed corpus.
bool criterion_bridge(std::string& detail) {
  struct Case {
    Logic g;
    const char* text;
  };
  const Case corpus[] = {
      {Logic::K, "[]p -> p"},
      {Logic::K, "[]p -> [][]p"},
      {Logic::KT, "[]p -> [][]p"},
      {Logic::K, "[](p -> q) -> []q"},
  };
  for (const Case& c : corpus) {
    auto rep = falsify_in_bes(c.g, parse_formula(c.text), 3);
    if (!rep) {
      detail = std::string(logic_name(c.g)) + " " + c.text + ": no countermodel within 3 worlds";
      return false;
    }
    if (!rep->modal_checks.modal_pass() || !rep->frame_checks.frame_pass()) {
      detail = std::string(logic_name(c.g)) + " " + c.text + ": relation checks failed";
      return false;
    }
    if (rep->disagreement_count != 0) {
      detail = std::string(logic_name(c.g)) + " " + c.text + ": agreement table disagrees";
      return false;
    }
    if (!rep->phi_fails_at_witness || !rep->success) {
      detail = std::string(logic_name(c.g)) + " " + c.text + ": formula does not fail at the base";
      return false;
    }
  }
  detail = "4 transfers";
  return true;
}

// 6. Euclidean incompleteness demonstration.
bool criterion_euclid(std::string& detail) {
  RuleUniverse u = build_universe(AtomAlphabet({"p", "q", "r"}), 1);
  EuclidReport rep = euclidean_demo(u);
  if (!rep.modal_checks.modal_pass()) {
    detail = "modal conditions failed";
    return false;
  }
  if (!rep.frame_checks.euclidean.pass) {
    detail = "relation is not euclidean";
    return false;
  }
  if (!rep.diamond_p || rep.box_diamond_p) {
    detail = "semantic targets wrong";
    return false;
  }
  detail = rep.construction == EuclidReport::Construction::Literal
               ? "literal construction verified"
               : "repaired construction verified (" + std::to_string(rep.added_pairs.size()) +
                     " pairs added)";
  return rep.success;
}

// Hilbert proofs for the provable formulas of depth <= 2 over {p}.
std::vector<ProofStep> identity_steps(Formula f, int offset) {
  Formula ff = Formula::implies(f, f);
  Formula f_ff = Formula::implies(f, ff);
  return {
      {Formula::implies(Formula::implies(f, Formula::implies(ff, f)), Formula::implies(f_ff, ff)),
       ProofStep::By::Axiom, AxiomId::Ax2, -1, -1},
      {Formula::implies(f, Formula::implies(ff, f)), ProofStep::By::Axiom, AxiomId::Ax1, -1, -1},
      {Formula::implies(f_ff, ff), ProofStep::By::MP, AxiomId::Ax1, offset + 1, offset + 0},
      {f_ff, ProofStep::By::Axiom, AxiomId::Ax1, -1, -1},
      {ff, ProofStep::By::MP, AxiomId::Ax1, offset + 3, offset + 2},
  };
}

HilbertProof identity_proof(Logic g, Formula f) {
  return {g, identity_steps(f, 0)};
}

HilbertProof ax1_proof(Logic g, Formula a, Formula b) {
  return {g,
          {{Formula::implies(a, Formula::implies(b, a)), ProofStep::By::Axiom, AxiomId::Ax1, -1,
            -1}}};
}

// bot -> f, via AX1, AX3 and the identity of bot.
HilbertProof efq_proof(Logic g, Formula f) {
  Formula bot = Formula::bottom();
  Formula bb = Formula::implies(bot, bot);
  Formula nf = Formula::neg(f);
  HilbertProof p{g, identity_steps(bot, 0)};  // steps 0..4 conclude bot -> bot
  p.steps.push_back({Formula::implies(bb, Formula::implies(nf, bb)), ProofStep::By::Axiom,
                     AxiomId::Ax1, -1, -1});                                       // 5
  p.steps.push_back({Formula::implies(nf, bb), ProofStep::By::MP, AxiomId::Ax1, 4, 5});  // 6
  p.steps.push_back({Formula::implies(Formula::implies(nf, bb), Formula::implies(bot, f)),
                     ProofStep::By::Axiom, AxiomId::Ax3, -1, -1});                 // 7
  p.steps.push_back({Formula::implies(bot, f), ProofStep::By::MP, AxiomId::Ax1, 6, 7});  // 8
  return p;
}

HilbertProof nec_identity_proof(Logic g, Formula f) {
  HilbertProof p{g, identity_steps(f, 0)};
  p.steps.push_back(
      {Formula::box(Formula::implies(f, f)), ProofStep::By::Nec, AxiomId::Ax1, 4, -1});
  return p;
}

HilbertProof axt_proof(Logic g, Formula f) {
  return {g, {{Formula::implies(Formula::box(f), f), ProofStep::By::Axiom, AxiomId::AxT, -1, -1}}};
}

std::map<uint32_t, HilbertProof> proof_library(Logic g) {
  const Formula p = Formula::atom("p");
  const Formula bot = Formula::bottom();
  std::map<uint32_t, HilbertProof> lib;
  auto put = [&](const HilbertProof& proof) { lib.emplace(proof.conclusion().id(), proof); };
  put(identity_proof(g, p));
  put(identity_proof(g, bot));
  put(identity_proof(g, Formula::implies(p, p)));
  put(identity_proof(g, Formula::box(p)));
  put(identity_proof(g, Formula::box(bot)));
  put(ax1_proof(g, p, p));
  put(ax1_proof(g, p, bot));
  put(ax1_proof(g, bot, p));
  put(ax1_proof(g, bot, bot));
  put(efq_proof(g, p));
  put(efq_proof(g, Formula::box(p)));
  put(efq_proof(g, Formula::diamond(p)));
  put(nec_identity_proof(g, p));
  put(nec_identity_proof(g, bot));
  if (frame_conditions(g).reflexive) {
    put(axt_proof(g, p));
    put(axt_proof(g, bot));
  }
  return lib;
}

// 7. Proof-certified formulas are unfalsifiable both ways; every countermodel
// transfers to a base countermodel.
bool criterion_cross_semantics(std::string& detail) {
  RuleUniverse u1 = build_universe(AtomAlphabet({"p"}), 1);
  const auto corpus = enumerate_formulas(AtomAlphabet({"p"}), 2, true);
  int proof_checked = 0, bridged = 0;
  for (Logic g : {Logic::K, Logic::KT, Logic::K4, Logic::S4}) {
    const auto lib = proof_library(g);
    for (Formula f : corpus) {
      auto hit = find_countermodel(g, f, 3);
      auto it = lib.find(f.id());
      if (it != lib.end()) {
        ProofCheckResult res = check_proof(it->second);
        if (!res.ok) {
          detail = std::string(logic_name(g)) + " proof of " + render(f) + " broken at step " +
                   std::to_string(res.failed_step) + ": " + res.reason;
          return false;
        }
        proof_checked++;
        if (hit) {
          detail = std::string(logic_name(g)) + " theorem " + render(f) + " has a countermodel";
          return false;
        }
        if (valid_exhaustive(u1, g, f).status != Verdict::Status::ValidOverUniverse) {
          detail = std::string(logic_name(g)) + " theorem " + render(f) + " not valid over ({p},1)";
          return false;
        }
      }
      if (hit) {
        auto rep = falsify_in_bes(g, f, 3);
        if (!rep || !rep->success) {
          detail = std::string(logic_name(g)) + " countermodel for " + render(f) +
                   " did not transfer";
          return false;
        }
        bridged++;
      }
    }
  }
  detail = std::to_string(proof_checked) + " proofs certified, " + std::to_string(bridged) +
           " countermodels transferred";
  return proof_checked > 0 && bridged > 0;
}

}  // namespace

int main() {
  const Criterion criteria[] = {
      {"classical double negation over 256 bases", criterion_classical_dn},
      {"exhaustive modal validity on the 4-base universe", criterion_exhaustive},
      {"sampled axiom schedule across K, KT, K4, S4", criterion_sampled_schedule},
      {"lemma suite at 1000 cases per check", criterion_lemma_suite},
      {"soundness bridge corpus", criterion_bridge},
      {"euclidean incompleteness demo", criterion_euclid},
      {"cross-semantics consistency on depth-2 formulas", criterion_cross_semantics},
  };
  int index = 0;
  for (const Criterion& c : criteria) {
    index++;
    auto start = std::chrono::steady_clock::now();
    std::string detail;
    bool ok = false;
    try {
      ok = c.run(detail);
    } catch (const std::exception& e) {
      detail = std::string("exception: ") + e.what();
    }
    if (!ok) g_failures++;
    std::printf("%s  criterion %d: %s (%s, %.2fs)\n", ok ? "PASS" : "FAIL", index, c.name,
                detail.c_str(), seconds_since(start));
    std::fflush(stdout);
  }
  return g_failures == 0 ? 0 : 1;
}
