#include "bes/lemma_suite.hpp"

#include <functional>
#include <map>
#include <memory>
#include <random>
#include <sstream>

#include "bes/bridge.hpp"
#include "bes/semantics.hpp"

namespace bes {

namespace {

constexpr int kRelationsPerLogic = 100;
const Logic kLogics[] = {Logic::K, Logic::KT, Logic::K4, Logic::S4};

uint64_t fnv1a(const std::string& s) {
  uint64_t h = 0xcbf29ce484222325ULL;
  for (char c : s) {
    h ^= static_cast<unsigned char>(c);
    h *= 0x100000001b3ULL;
  }
  return h;
}

// Shared, lazily built corpora: the two default universes, formula pools, and
// 100 sampled relations per logic with their evaluators.
struct SuiteContext {
  uint64_t seed;
  std::unique_ptr<RuleUniverse> u1, u2;
  std::vector<Formula> pool1;          // depth <= 2 over {p}, modal
  std::vector<Formula> pool2;          // depth <= 3 over {p,q}, modal
  std::vector<Formula> pool2_classic;  // depth <= 3 over {p,q}, no modal
  std::map<Logic, std::vector<GeneratedRelation>> relations;
  std::map<std::pair<Logic, int>, std::unique_ptr<Evaluator>> evals;
  std::unique_ptr<Evaluator> classic_eval;

  explicit SuiteContext(uint64_t s) : seed(s) {
    u1 = std::make_unique<RuleUniverse>(build_universe(AtomAlphabet({"p"}), 1));
    u2 = std::make_unique<RuleUniverse>(build_universe(AtomAlphabet({"p", "q"}), 2));
    pool1 = enumerate_formulas(u1->alphabet(), 2, true);
    pool2 = enumerate_formulas(u2->alphabet(), 3, true);
    pool2_classic = enumerate_formulas(u2->alphabet(), 3, false);
    classic_eval = std::make_unique<Evaluator>(*u2);
  }

  const std::vector<GeneratedRelation>& rels(Logic g) {
    auto it = relations.find(g);
    if (it != relations.end()) return it->second;
    std::vector<GeneratedRelation> v;
    v.reserve(kRelationsPerLogic);
    for (int i = 0; i < kRelationsPerLogic; i++)
      v.push_back(sample_modal_relation(*u2, g, seed + static_cast<uint64_t>(i)));
    return relations.emplace(g, std::move(v)).first->second;
  }

  Evaluator& eval_for(Logic g, int idx) {
    auto key = std::make_pair(g, idx);
    auto it = evals.find(key);
    if (it != evals.end()) return *it->second;
    const GeneratedRelation& r = rels(g)[idx];
    auto ev = std::make_unique<Evaluator>(*u2, r.materialize());
    return *evals.emplace(key, std::move(ev)).first->second;
  }
};

struct CaseRng {
  std::mt19937_64 rng;
  explicit CaseRng(uint64_t s) : rng(s) {}
  uint64_t next() { return rng(); }
  size_t index(size_t n) { return static_cast<size_t>(rng() % n); }
};

struct Check {
  std::string id;
  std::function<LemmaResult(SuiteContext&, int, uint64_t)> fn;
};

std::string describe_case(Logic g, int rel_idx, uint64_t base, const std::string& detail) {
  std::ostringstream os;
  os << logic_name(g) << " relation#" << rel_idx << " base=0x" << std::hex << base << std::dec
     << " " << detail;
  return os.str();
}

LemmaResult pass_result(const std::string& id, int cases) { return {id, true, "", cases}; }
LemmaResult fail_result(const std::string& id, int cases, std::string witness) {
  return {id, false, std::move(witness), cases};
}

// Draws (logic, relation index, base mask) for a modal case.
struct ModalCase {
  Logic g;
  int rel_idx;
  uint64_t base;
};

ModalCase draw_modal(SuiteContext& ctx, CaseRng& rng) {
  Logic g = kLogics[rng.index(4)];
  int idx = static_cast<int>(rng.index(kRelationsPerLogic));
  uint64_t base = rng.next() & ctx.u2->full_rule_mask();
  return {g, idx, base};
}

Formula draw_formula(SuiteContext& ctx, CaseRng& rng) { return ctx.pool2[rng.index(ctx.pool2.size())]; }

using CheckFn = std::function<LemmaResult(SuiteContext&, int, uint64_t)>;

std::vector<Check> build_registry() {
  std::vector<Check> reg;
  auto add = [&](const std::string& id, CheckFn fn) { reg.push_back({id, std::move(fn)}); };

  add("ClassicalMonotonicity", [](SuiteContext& ctx, int budget, uint64_t s) {
    CaseRng rng(s);
    for (int i = 0; i < budget; i++) {
      uint64_t b = rng.next() & ctx.u2->full_rule_mask();
      uint64_t c = b | (rng.next() & ctx.u2->full_rule_mask());
      std::vector<Formula> gamma = {ctx.pool2_classic[rng.index(ctx.pool2_classic.size())]};
      Formula f = ctx.pool2_classic[rng.index(ctx.pool2_classic.size())];
      if (ctx.classic_eval->entails_at(b, gamma, f) && !ctx.classic_eval->entails_at(c, gamma, f))
        return fail_result("ClassicalMonotonicity", i + 1,
                           "b=0x" + std::to_string(b) + " c=0x" + std::to_string(c) + " phi=" +
                               render(f));
    }
    return pass_result("ClassicalMonotonicity", budget);
  });

  add("MaxCon", [](SuiteContext& ctx, int budget, uint64_t) {
    (void)budget;  // exhaustive over both default universes
    int cases = 0;
    for (const RuleUniverse* u : {ctx.u1.get(), ctx.u2.get()}) {
      const uint64_t full = u->full_rule_mask();
      for (uint64_t m = 0; m <= full; m++) {
        Base b = make_base(*u, m);
        if (b.inconsistent) continue;
        for (size_t a = 0; a < u->alphabet().size(); a++) {
          if ((b.closure >> a) & 1) continue;
          cases++;
          Base ext = extend_max_consistent_avoiding(b, static_cast<int>(a));
          if (!b.subset_of(ext) || derives_atom(ext, static_cast<int>(a)) ||
              !is_max_consistent(ext))
            return fail_result("MaxCon", cases,
                               "base=0x" + std::to_string(m) + " atom=" + u->alphabet().atoms[a]);
        }
      }
    }
    return pass_result("MaxCon", cases);
  });

  add("AlmostMaxCon", [](SuiteContext& ctx, int budget, uint64_t s) {
    CaseRng rng(s);
    const Lattice& lat = Lattice::of(*ctx.u2);
    std::vector<uint64_t> unique_bases;
    for (uint64_t m = 0; m < lat.base_count; m++)
      if (!lat.inconsistent.get(m) && lat.maxsup_count[m] == 1 && !lat.maxcon.get(m))
        unique_bases.push_back(m);
    for (int i = 0; i < budget; i++) {
      uint64_t b = unique_bases[rng.index(unique_bases.size())];
      uint64_t c = lat.maxsup_first[b];
      Formula f = ctx.pool2_classic[rng.index(ctx.pool2_classic.size())];
      if (ctx.classic_eval->holds_at(b, f) != ctx.classic_eval->holds_at(c, f))
        return fail_result("AlmostMaxCon", i + 1, "base=0x" + std::to_string(b) + " phi=" + render(f));
    }
    return pass_result("AlmostMaxCon", budget);
  });

  add("ModalMonotonicity", [](SuiteContext& ctx, int budget, uint64_t s) {
    CaseRng rng(s);
    for (int i = 0; i < budget; i++) {
      ModalCase mc = draw_modal(ctx, rng);
      uint64_t c = mc.base | (rng.next() & ctx.u2->full_rule_mask());
      std::vector<Formula> gamma = {draw_formula(ctx, rng)};
      Formula f = draw_formula(ctx, rng);
      Evaluator& ev = ctx.eval_for(mc.g, mc.rel_idx);
      if (ev.entails_at(mc.base, gamma, f) && !ev.entails_at(c, gamma, f))
        return fail_result("ModalMonotonicity", i + 1,
                           describe_case(mc.g, mc.rel_idx, mc.base, "phi=" + render(f)));
    }
    return pass_result("ModalMonotonicity", budget);
  });

  add("EFQ", [](SuiteContext& ctx, int budget, uint64_t s) {
    CaseRng rng(s);
    const Lattice& lat = Lattice::of(*ctx.u2);
    for (int i = 0; i < budget; i++) {
      ModalCase mc = draw_modal(ctx, rng);
      uint64_t b = mc.base;
      while (!lat.inconsistent.get(b)) b |= 1ULL << rng.index(ctx.u2->rule_count());
      Formula f = draw_formula(ctx, rng);
      if (!ctx.eval_for(mc.g, mc.rel_idx).holds_at(b, f))
        return fail_result("EFQ", i + 1, describe_case(mc.g, mc.rel_idx, b, "phi=" + render(f)));
    }
    return pass_result("EFQ", budget);
  });

  auto maxcon_masks = [](SuiteContext& ctx) {
    std::vector<uint64_t> out;
    for (const Base& b : max_consistent_bases(*ctx.u2)) out.push_back(b.members);
    return out;
  };

  add("ModalBehaviour.Bot", [maxcon_masks](SuiteContext& ctx, int budget, uint64_t s) {
    CaseRng rng(s);
    auto mcs = maxcon_masks(ctx);
    for (int i = 0; i < budget; i++) {
      ModalCase mc = draw_modal(ctx, rng);
      uint64_t b = mcs[rng.index(mcs.size())];
      if (ctx.eval_for(mc.g, mc.rel_idx).holds_at(b, Formula::bottom()))
        return fail_result("ModalBehaviour.Bot", i + 1, describe_case(mc.g, mc.rel_idx, b, ""));
    }
    return pass_result("ModalBehaviour.Bot", budget);
  });

  add("ModalBehaviour.Imp", [maxcon_masks](SuiteContext& ctx, int budget, uint64_t s) {
    CaseRng rng(s);
    auto mcs = maxcon_masks(ctx);
    for (int i = 0; i < budget; i++) {
      ModalCase mc = draw_modal(ctx, rng);
      uint64_t b = mcs[rng.index(mcs.size())];
      Formula f = draw_formula(ctx, rng), g = draw_formula(ctx, rng);
      Evaluator& ev = ctx.eval_for(mc.g, mc.rel_idx);
      bool lhs = ev.holds_at(b, Formula::implies(f, g));
      bool rhs = !ev.holds_at(b, f) || ev.holds_at(b, g);
      if (lhs != rhs)
        return fail_result("ModalBehaviour.Imp", i + 1,
                           describe_case(mc.g, mc.rel_idx, b, render(f) + " -> " + render(g)));
    }
    return pass_result("ModalBehaviour.Imp", budget);
  });

  add("ModalBehaviour.Box", [maxcon_masks](SuiteContext& ctx, int budget, uint64_t s) {
    CaseRng rng(s);
    auto mcs = maxcon_masks(ctx);
    const size_t n = 1ULL << ctx.u2->rule_count();
    for (int i = 0; i < budget; i++) {
      ModalCase mc = draw_modal(ctx, rng);
      uint64_t b = mcs[rng.index(mcs.size())];
      Formula f = draw_formula(ctx, rng);
      Evaluator& ev = ctx.eval_for(mc.g, mc.rel_idx);
      const ExtensionalRelation& rel = ctx.rels(mc.g)[mc.rel_idx].materialize();
      bool lhs = ev.holds_at(b, Formula::box(f));
      bool rhs = true;
      for (uint64_t c = 0; c < n; c++)
        if (rel.rel(b, c) && !ev.holds_at(c, f)) rhs = false;
      if (lhs != rhs)
        return fail_result("ModalBehaviour.Box", i + 1,
                           describe_case(mc.g, mc.rel_idx, b, "phi=" + render(f)));
    }
    return pass_result("ModalBehaviour.Box", budget);
  });

  add("BelowMaxCon", [](SuiteContext& ctx, int budget, uint64_t s) {
    CaseRng rng(s);
    const Lattice& lat = Lattice::of(*ctx.u2);
    std::vector<uint64_t> unique_bases;
    for (uint64_t m = 0; m < lat.base_count; m++)
      if (!lat.inconsistent.get(m) && lat.maxsup_count[m] == 1) unique_bases.push_back(m);
    for (int i = 0; i < budget; i++) {
      ModalCase mc = draw_modal(ctx, rng);
      uint64_t b = unique_bases[rng.index(unique_bases.size())];
      uint64_t c = lat.maxsup_first[b];
      Formula f = draw_formula(ctx, rng);
      Evaluator& ev = ctx.eval_for(mc.g, mc.rel_idx);
      if (ev.holds_at(b, f) != ev.holds_at(c, f))
        return fail_result("BelowMaxCon", i + 1,
                           describe_case(mc.g, mc.rel_idx, b, "phi=" + render(f)));
    }
    return pass_result("BelowMaxCon", budget);
  });

  // Structural rules of the consequence relation.
  add("MinimalLogic.R", [](SuiteContext& ctx, int budget, uint64_t s) {
    CaseRng rng(s);
    for (int i = 0; i < budget; i++) {
      ModalCase mc = draw_modal(ctx, rng);
      Formula f = draw_formula(ctx, rng);
      if (!ctx.eval_for(mc.g, mc.rel_idx).entails_at(mc.base, {f}, f))
        return fail_result("MinimalLogic.R", i + 1,
                           describe_case(mc.g, mc.rel_idx, mc.base, "phi=" + render(f)));
    }
    return pass_result("MinimalLogic.R", budget);
  });

  add("MinimalLogic.S", [](SuiteContext& ctx, int budget, uint64_t s) {
    CaseRng rng(s);
    for (int i = 0; i < budget; i++) {
      ModalCase mc = draw_modal(ctx, rng);
      std::vector<Formula> gamma = {draw_formula(ctx, rng)};
      std::vector<Formula> delta = gamma;
      delta.push_back(draw_formula(ctx, rng));
      Formula f = draw_formula(ctx, rng);
      Evaluator& ev = ctx.eval_for(mc.g, mc.rel_idx);
      if (ev.entails_at(mc.base, gamma, f) && !ev.entails_at(mc.base, delta, f))
        return fail_result("MinimalLogic.S", i + 1,
                           describe_case(mc.g, mc.rel_idx, mc.base, "phi=" + render(f)));
    }
    return pass_result("MinimalLogic.S", budget);
  });

  add("MinimalLogic.C", [](SuiteContext& ctx, int budget, uint64_t s) {
    CaseRng rng(s);
    for (int i = 0; i < budget; i++) {
      ModalCase mc = draw_modal(ctx, rng);
      std::vector<Formula> gamma = {draw_formula(ctx, rng)};
      Formula f = draw_formula(ctx, rng), g = draw_formula(ctx, rng);
      std::vector<Formula> gamma_f = gamma;
      gamma_f.push_back(f);
      Evaluator& ev = ctx.eval_for(mc.g, mc.rel_idx);
      if (ev.entails_at(mc.base, gamma, f) && ev.entails_at(mc.base, gamma_f, g) &&
          !ev.entails_at(mc.base, gamma, g))
        return fail_result("MinimalLogic.C", i + 1,
                           describe_case(mc.g, mc.rel_idx, mc.base,
                                         "phi=" + render(f) + " psi=" + render(g)));
    }
    return pass_result("MinimalLogic.C", budget);
  });

  add("MinimalLogic.ImpE", [](SuiteContext& ctx, int budget, uint64_t s) {
    CaseRng rng(s);
    for (int i = 0; i < budget; i++) {
      ModalCase mc = draw_modal(ctx, rng);
      Formula f = draw_formula(ctx, rng), g = draw_formula(ctx, rng);
      if (!ctx.eval_for(mc.g, mc.rel_idx)
               .entails_at(mc.base, {Formula::implies(f, g), f}, g))
        return fail_result("MinimalLogic.ImpE", i + 1,
                           describe_case(mc.g, mc.rel_idx, mc.base,
                                         "phi=" + render(f) + " psi=" + render(g)));
    }
    return pass_result("MinimalLogic.ImpE", budget);
  });

  add("MinimalLogic.ImpI", [](SuiteContext& ctx, int budget, uint64_t s) {
    CaseRng rng(s);
    for (int i = 0; i < budget; i++) {
      ModalCase mc = draw_modal(ctx, rng);
      std::vector<Formula> gamma = {draw_formula(ctx, rng)};
      Formula f = draw_formula(ctx, rng), g = draw_formula(ctx, rng);
      std::vector<Formula> gamma_f = gamma;
      gamma_f.push_back(f);
      Evaluator& ev = ctx.eval_for(mc.g, mc.rel_idx);
      if (ev.entails_at(mc.base, gamma_f, g) &&
          !ev.entails_at(mc.base, gamma, Formula::implies(f, g)))
        return fail_result("MinimalLogic.ImpI", i + 1,
                           describe_case(mc.g, mc.rel_idx, mc.base,
                                         "phi=" + render(f) + " psi=" + render(g)));
    }
    return pass_result("MinimalLogic.ImpI", budget);
  });

  add("DoubleNegation", [](SuiteContext& ctx, int budget, uint64_t s) {
    CaseRng rng(s);
    for (int i = 0; i < budget; i++) {
      ModalCase mc = draw_modal(ctx, rng);
      Formula f = draw_formula(ctx, rng);
      Formula dn = Formula::neg(Formula::neg(f));
      if (!ctx.eval_for(mc.g, mc.rel_idx).entails_at(mc.base, {dn}, f))
        return fail_result("DoubleNegation", i + 1,
                           describe_case(mc.g, mc.rel_idx, mc.base, "phi=" + render(f)));
    }
    return pass_result("DoubleNegation", budget);
  });

  add("Kmodalaxioms.MP", [](SuiteContext& ctx, int budget, uint64_t s) {
    CaseRng rng(s);
    for (int i = 0; i < budget; i++) {
      ModalCase mc = draw_modal(ctx, rng);
      Formula f = draw_formula(ctx, rng), g = draw_formula(ctx, rng);
      Evaluator& ev = ctx.eval_for(mc.g, mc.rel_idx);
      if (ev.holds_at(mc.base, Formula::implies(f, g)) && ev.holds_at(mc.base, f) &&
          !ev.holds_at(mc.base, g))
        return fail_result("Kmodalaxioms.MP", i + 1,
                           describe_case(mc.g, mc.rel_idx, mc.base,
                                         "phi=" + render(f) + " psi=" + render(g)));
    }
    return pass_result("Kmodalaxioms.MP", budget);
  });

  add("Kmodalaxioms.NEC", [](SuiteContext& ctx, int budget, uint64_t s) {
    CaseRng rng(s);
    int cases = std::min(budget, 60);
    for (int i = 0; i < cases; i++) {
      Logic g = kLogics[rng.index(4)];
      Formula f = ctx.pool1[rng.index(ctx.pool1.size())];
      bool valid = valid_exhaustive(*ctx.u1, g, f).status == Verdict::Status::ValidOverUniverse;
      bool box_valid =
          valid_exhaustive(*ctx.u1, g, Formula::box(f)).status ==
          Verdict::Status::ValidOverUniverse;
      if (valid && !box_valid)
        return fail_result("Kmodalaxioms.NEC", i + 1,
                           std::string(logic_name(g)) + " phi=" + render(f));
    }
    return pass_result("Kmodalaxioms.NEC", cases);
  });

  add("Kmodalaxioms.K", [](SuiteContext& ctx, int budget, uint64_t s) {
    CaseRng rng(s);
    for (int i = 0; i < budget; i++) {
      ModalCase mc = draw_modal(ctx, rng);
      Formula f = draw_formula(ctx, rng), g = draw_formula(ctx, rng);
      Formula boxed_imp = Formula::box(Formula::implies(f, g));
      Formula conc = Formula::implies(Formula::box(f), Formula::box(g));
      if (!ctx.eval_for(mc.g, mc.rel_idx).entails_at(mc.base, {boxed_imp}, conc))
        return fail_result("Kmodalaxioms.K", i + 1,
                           describe_case(mc.g, mc.rel_idx, mc.base,
                                         "phi=" + render(f) + " psi=" + render(g)));
    }
    return pass_result("Kmodalaxioms.K", budget);
  });

  add("OtherModalaxioms.T", [](SuiteContext& ctx, int budget, uint64_t s) {
    CaseRng rng(s);
    // Reflexive logics validate the schema; K admits a falsifying relation.
    Verdict k_verdict = valid_exhaustive(*ctx.u1, Logic::K,
                                         parse_formula("[]p -> p"));
    if (k_verdict.status != Verdict::Status::Invalid)
      return fail_result("OtherModalaxioms.T", 1, "no K countermodel for []p -> p");
    for (int i = 0; i < budget; i++) {
      Logic g = (rng.next() & 1) ? Logic::KT : Logic::S4;
      int idx = static_cast<int>(rng.index(kRelationsPerLogic));
      uint64_t base = rng.next() & ctx.u2->full_rule_mask();
      Formula f = draw_formula(ctx, rng);
      if (!ctx.eval_for(g, idx).entails_at(base, {Formula::box(f)}, f))
        return fail_result("OtherModalaxioms.T", i + 1,
                           describe_case(g, idx, base, "phi=" + render(f)));
    }
    return pass_result("OtherModalaxioms.T", budget);
  });

  add("OtherModalaxioms.Axiom4", [](SuiteContext& ctx, int budget, uint64_t s) {
    CaseRng rng(s);
    for (int i = 0; i < budget; i++) {
      Logic g = (rng.next() & 1) ? Logic::K4 : Logic::S4;
      int idx = static_cast<int>(rng.index(kRelationsPerLogic));
      uint64_t base = rng.next() & ctx.u2->full_rule_mask();
      Formula f = draw_formula(ctx, rng);
      if (!ctx.eval_for(g, idx).entails_at(base, {Formula::box(f)},
                                           Formula::box(Formula::box(f))))
        return fail_result("OtherModalaxioms.Axiom4", i + 1,
                           describe_case(g, idx, base, "phi=" + render(f)));
    }
    return pass_result("OtherModalaxioms.Axiom4", budget);
  });

  add("Duality.Diamond", [](SuiteContext& ctx, int budget, uint64_t s) {
    CaseRng rng(s);
    for (int i = 0; i < budget; i++) {
      ModalCase mc = draw_modal(ctx, rng);
      Formula f = draw_formula(ctx, rng);
      Formula dia = Formula::diamond(f);
      Evaluator& ev = ctx.eval_for(mc.g, mc.rel_idx);
      if (ev.holds_at(mc.base, dia) != ev.holds_at(mc.base, rewrite_diamond(dia)))
        return fail_result("Duality.Diamond", i + 1,
                           describe_case(mc.g, mc.rel_idx, mc.base, "phi=" + render(f)));
    }
    return pass_result("Duality.Diamond", budget);
  });

  add("Duality.Box", [](SuiteContext& ctx, int budget, uint64_t s) {
    CaseRng rng(s);
    for (int i = 0; i < budget; i++) {
      ModalCase mc = draw_modal(ctx, rng);
      Formula f = draw_formula(ctx, rng);
      Formula box = Formula::box(f);
      Formula via_dia = Formula::neg(Formula::diamond(Formula::neg(f)));
      Evaluator& ev = ctx.eval_for(mc.g, mc.rel_idx);
      if (ev.holds_at(mc.base, box) != ev.holds_at(mc.base, via_dia))
        return fail_result("Duality.Box", i + 1,
                           describe_case(mc.g, mc.rel_idx, mc.base, "phi=" + render(f)));
    }
    return pass_result("Duality.Box", budget);
  });

  add("MaxConOr", [maxcon_masks](SuiteContext& ctx, int budget, uint64_t s) {
    CaseRng rng(s);
    auto mcs = maxcon_masks(ctx);
    for (int i = 0; i < budget; i++) {
      ModalCase mc = draw_modal(ctx, rng);
      uint64_t b = mcs[rng.index(mcs.size())];
      Formula f = draw_formula(ctx, rng);
      Evaluator& ev = ctx.eval_for(mc.g, mc.rel_idx);
      if (!ev.holds_at(b, f) && !ev.holds_at(b, Formula::neg(f)))
        return fail_result("MaxConOr", i + 1,
                           describe_case(mc.g, mc.rel_idx, b, "phi=" + render(f)));
    }
    return pass_result("MaxConOr", budget);
  });

  add("ModalMaxCon", [](SuiteContext& ctx, int budget, uint64_t s) {
    CaseRng rng(s);
    const Lattice& lat = Lattice::of(*ctx.u2);
    for (int i = 0; i < budget; i++) {
      ModalCase mc = draw_modal(ctx, rng);
      if (lat.inconsistent.get(mc.base)) continue;
      Formula f = draw_formula(ctx, rng);
      Evaluator& ev = ctx.eval_for(mc.g, mc.rel_idx);
      if (ev.holds_at(mc.base, f)) continue;
      bool found = false;
      for (const Base& m : max_consistent_supersets(make_base(*ctx.u2, mc.base)))
        if (!ev.holds_at(m.members, f)) found = true;
      if (!found)
        return fail_result("ModalMaxCon", i + 1,
                           describe_case(mc.g, mc.rel_idx, mc.base, "phi=" + render(f)));
    }
    return pass_result("ModalMaxCon", budget);
  });

  add("HilbertAx1", [](SuiteContext& ctx, int budget, uint64_t s) {
    CaseRng rng(s);
    for (int i = 0; i < budget; i++) {
      ModalCase mc = draw_modal(ctx, rng);
      Formula f = draw_formula(ctx, rng), g = draw_formula(ctx, rng);
      if (!ctx.eval_for(mc.g, mc.rel_idx).entails_at(mc.base, {f}, Formula::implies(g, f)))
        return fail_result("HilbertAx1", i + 1,
                           describe_case(mc.g, mc.rel_idx, mc.base, "phi=" + render(f)));
    }
    return pass_result("HilbertAx1", budget);
  });

  add("HilbertAx2", [](SuiteContext& ctx, int budget, uint64_t s) {
    CaseRng rng(s);
    for (int i = 0; i < budget; i++) {
      ModalCase mc = draw_modal(ctx, rng);
      Formula f = draw_formula(ctx, rng), g = draw_formula(ctx, rng), h = draw_formula(ctx, rng);
      Formula lhs = Formula::implies(f, Formula::implies(g, h));
      Formula rhs =
          Formula::implies(Formula::implies(f, g), Formula::implies(f, h));
      if (!ctx.eval_for(mc.g, mc.rel_idx).entails_at(mc.base, {lhs}, rhs))
        return fail_result("HilbertAx2", i + 1,
                           describe_case(mc.g, mc.rel_idx, mc.base, "phi=" + render(f)));
    }
    return pass_result("HilbertAx2", budget);
  });

  add("HilbertAx3", [](SuiteContext& ctx, int budget, uint64_t s) {
    CaseRng rng(s);
    for (int i = 0; i < budget; i++) {
      ModalCase mc = draw_modal(ctx, rng);
      Formula f = draw_formula(ctx, rng), g = draw_formula(ctx, rng);
      Formula lhs = Formula::implies(Formula::neg(f), Formula::neg(g));
      Formula rhs = Formula::implies(g, f);
      if (!ctx.eval_for(mc.g, mc.rel_idx).entails_at(mc.base, {lhs}, rhs))
        return fail_result("HilbertAx3", i + 1,
                           describe_case(mc.g, mc.rel_idx, mc.base,
                                         "phi=" + render(f) + " psi=" + render(g)));
    }
    return pass_result("HilbertAx3", budget);
  });

  add("Soundness", [](SuiteContext&, int, uint64_t) {
    const std::pair<Logic, const char*> corpus[] = {
        {Logic::K, "[]p -> p"}, {Logic::KT, "p"}, {Logic::K4, "[]p -> p"}};
    int cases = 0;
    for (const auto& [g, text] : corpus) {
      cases++;
      auto rep = falsify_in_bes(g, parse_formula(text), 2);
      if (!rep || !rep->success)
        return fail_result("Soundness", cases,
                           std::string(logic_name(g)) + " " + text +
                               (rep ? " bridge failed" : " no countermodel"));
    }
    return pass_result("Soundness", cases);
  });

  add("Euclidean", [](SuiteContext&, int, uint64_t) {
    RuleUniverse u = build_universe(AtomAlphabet({"p", "q", "r"}), 1);
    EuclidReport rep = euclidean_demo(u);
    if (!rep.success) return fail_result("Euclidean", 1, "demo did not verify");
    return pass_result("Euclidean", 1);
  });

  return reg;
}

}  // namespace

std::vector<std::string> lemma_suite_ids() {
  std::vector<std::string> ids;
  for (const Check& c : build_registry()) ids.push_back(c.id);
  return ids;
}

bool lemma_filter_matches(const std::string& pattern, const std::string& id) {
  if (pattern == "*" || pattern.empty() || pattern == id) return true;
  if (id.size() > pattern.size()) {
    if (id.compare(0, pattern.size(), pattern) == 0 && id[pattern.size()] == '.') return true;
    size_t off = id.size() - pattern.size();
    if (id.compare(off, pattern.size(), pattern) == 0 && id[off - 1] == '.') return true;
  }
  return false;
}

std::vector<LemmaResult> run_suite(const std::string& filter, int budget, uint64_t seed) {
  SuiteContext ctx(seed);
  std::vector<LemmaResult> results;
  for (const Check& c : build_registry()) {
    if (!lemma_filter_matches(filter, c.id)) continue;
    results.push_back(c.fn(ctx, budget, seed ^ fnv1a(c.id)));
  }
  return results;
}

}  // namespace bes
