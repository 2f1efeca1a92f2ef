#include "bes/json_io.hpp"

#include <bit>
#include <sstream>

#include "bes/errors.hpp"

namespace bes {

Json universe_to_json(const RuleUniverse& u) {
  return Json{{"atoms", u.alphabet().atoms}, {"max_premises", u.max_premises()}};
}

RuleUniverse universe_from_json(const Json& j) {
  return build_universe(AtomAlphabet(j.at("atoms").get<std::vector<std::string>>()),
                        j.at("max_premises").get<int>());
}

Json base_to_json(const Base& b) {
  const RuleUniverse& u = *b.universe;
  Json rules = Json::array();
  uint64_t m = b.members;
  while (m) {
    int i = std::countr_zero(m);
    m &= m - 1;
    const BaseRule& r = u.rules()[i];
    Json premises = Json::array();
    uint64_t p = r.premise_mask;
    while (p) {
      int a = std::countr_zero(p);
      p &= p - 1;
      premises.push_back(u.alphabet().atoms[a]);
    }
    rules.push_back(Json{{"premises", premises}, {"conclusion", u.alphabet().atoms[r.conclusion]}});
  }
  return Json{{"rules", rules}};
}

Base base_from_json(const RuleUniverse& u, const Json& j) {
  std::vector<BaseRule> rules;
  for (const Json& rj : j.at("rules")) {
    uint64_t premises = 0;
    for (const Json& pj : rj.at("premises")) {
      int idx = u.alphabet().index_of(pj.get<std::string>());
      if (idx < 0) throw std::invalid_argument("unknown premise atom: " + pj.get<std::string>());
      premises |= 1ULL << idx;
    }
    int c = u.alphabet().index_of(rj.at("conclusion").get<std::string>());
    if (c < 0)
      throw std::invalid_argument("unknown conclusion atom: " +
                                  rj.at("conclusion").get<std::string>());
    rules.push_back({premises, c});
  }
  return make_base(u, rules);
}

Json relation_to_json(const ExtensionalRelation& r) {
  const RuleUniverse& u = r.universe();
  // Emit only the bases that occur in pairs, in ascending member-mask order.
  std::vector<uint64_t> used;
  auto pairs = r.pairs();
  for (const auto& [x, y] : pairs) {
    used.push_back(x);
    used.push_back(y);
  }
  std::sort(used.begin(), used.end());
  used.erase(std::unique(used.begin(), used.end()), used.end());
  auto index_of = [&](uint64_t m) {
    return std::lower_bound(used.begin(), used.end(), m) - used.begin();
  };
  Json bases = Json::array();
  for (uint64_t m : used) bases.push_back(base_to_json(make_base(u, m)));
  Json pj = Json::array();
  for (const auto& [x, y] : pairs) pj.push_back(Json::array({index_of(x), index_of(y)}));
  return Json{{"bases", bases}, {"pairs", pj}};
}

ExtensionalRelation relation_from_json(const RuleUniverse& u, const Json& j) {
  std::vector<uint64_t> bases;
  for (const Json& bj : j.at("bases")) bases.push_back(base_from_json(u, bj).members);
  ExtensionalRelation r(u);
  for (const Json& pj : j.at("pairs")) r.set(bases.at(pj.at(0)), bases.at(pj.at(1)));
  return r;
}

Json relation_to_json(const GeneratedRelation& r) {
  const RuleUniverse& u = r.universe();
  Json seeds = Json::array();
  for (const auto& [x, y] : r.seeds())
    seeds.push_back(Json::array({base_to_json(make_base(u, x)), base_to_json(make_base(u, y))}));
  Json wb = Json::array();
  for (uint64_t m : r.world_bases()) wb.push_back(base_to_json(make_base(u, m)));
  return Json{{"seeds", seeds}, {"logic", logic_name(r.logic())}, {"world_bases", wb}};
}

GeneratedRelation generated_relation_from_json(const RuleUniverse& u, const Json& j) {
  std::vector<std::pair<uint64_t, uint64_t>> seeds;
  for (const Json& sj : j.at("seeds"))
    seeds.emplace_back(base_from_json(u, sj.at(0)).members, base_from_json(u, sj.at(1)).members);
  std::vector<uint64_t> wb;
  if (j.contains("world_bases"))
    for (const Json& bj : j.at("world_bases")) wb.push_back(base_from_json(u, bj).members);
  auto logic = parse_logic(j.at("logic").get<std::string>());
  if (!logic) throw std::invalid_argument("unknown logic: " + j.at("logic").get<std::string>());
  return close_relation(seeds, u, *logic, wb);
}

Json kripke_to_json(const KripkeModel& m) {
  Json rel = Json::array();
  for (size_t w = 0; w < m.worlds.size(); w++)
    for (size_t v = 0; v < m.worlds.size(); v++)
      if (m.edge(static_cast<int>(w), static_cast<int>(v)))
        rel.push_back(Json::array({m.worlds[w], m.worlds[v]}));
  Json val = Json::object();
  for (const auto& [atom, mask] : m.valuation) {
    Json where = Json::array();
    for (size_t w = 0; w < m.worlds.size(); w++)
      if ((mask >> w) & 1) where.push_back(m.worlds[w]);
    val[atom] = where;
  }
  return Json{{"worlds", m.worlds}, {"rel", rel}, {"val", val}};
}

KripkeModel kripke_from_json(const Json& j) {
  std::vector<std::pair<std::string, std::string>> edges;
  for (const Json& e : j.at("rel")) edges.emplace_back(e.at(0), e.at(1));
  std::map<std::string, std::vector<std::string>> val;
  if (j.contains("val"))
    for (auto it = j.at("val").begin(); it != j.at("val").end(); ++it)
      val[it.key()] = it.value().get<std::vector<std::string>>();
  return make_kripke_model(j.at("worlds").get<std::vector<std::string>>(), edges, val);
}

Json proof_to_json(const HilbertProof& p) {
  Json steps = Json::array();
  for (const ProofStep& s : p.steps) {
    Json sj{{"formula", render(s.formula)}};
    switch (s.by) {
      case ProofStep::By::Axiom:
        sj["by"] = axiom_name(s.axiom);
        break;
      case ProofStep::By::MP:
        sj["by"] = "MP";
        sj["refs"] = Json::array({s.ref1, s.ref2});
        break;
      case ProofStep::By::Nec:
        sj["by"] = "NEC";
        sj["refs"] = Json::array({s.ref1});
        break;
    }
    steps.push_back(sj);
  }
  return Json{{"logic", logic_name(p.logic)}, {"steps", steps}};
}

HilbertProof proof_from_json(const Json& j) {
  HilbertProof p;
  auto logic = parse_logic(j.at("logic").get<std::string>());
  if (!logic) throw std::invalid_argument("unknown logic: " + j.at("logic").get<std::string>());
  p.logic = *logic;
  for (const Json& sj : j.at("steps")) {
    ProofStep step;
    step.formula = parse_formula(sj.at("formula").get<std::string>());
    const std::string by = sj.at("by").get<std::string>();
    if (by == "MP") {
      step.by = ProofStep::By::MP;
      step.ref1 = sj.at("refs").at(0).get<int>();
      step.ref2 = sj.at("refs").at(1).get<int>();
    } else if (by == "NEC") {
      step.by = ProofStep::By::Nec;
      step.ref1 = sj.at("refs").at(0).get<int>();
    } else {
      auto ax = parse_axiom(by);
      if (!ax) throw std::invalid_argument("unknown justification: " + by);
      step.by = ProofStep::By::Axiom;
      step.axiom = *ax;
    }
    p.steps.push_back(step);
  }
  return p;
}

namespace {

Json witness_to_json(const RelationWitness& w, const RuleUniverse& u) {
  Json arr = Json::array();
  for (int i = 0; i < w.arity; i++) arr.push_back(base_to_json(make_base(u, w.bases[i])));
  return arr;
}

Json item_to_json(const ConditionItem& item, const RuleUniverse& u) {
  Json witnesses = Json::array();
  for (const RelationWitness& w : item.witnesses) witnesses.push_back(witness_to_json(w, u));
  return Json{{"pass", item.pass}, {"violations", witnesses}};
}

}  // namespace

Json condition_report_to_json(const ConditionReport& r, const RuleUniverse& u) {
  Json out = Json::object();
  if (r.has_modal) {
    out["a"] = item_to_json(r.a, u);
    out["b"] = item_to_json(r.b, u);
    out["c"] = item_to_json(r.c, u);
    out["d"] = item_to_json(r.d_adopted, u);
    out["d_literal"] = item_to_json(r.d_literal, u);
    out["modal_pass"] = r.modal_pass();
  }
  if (r.has_frame) {
    out["reflexive"] = item_to_json(r.reflexive, u);
    out["transitive"] = item_to_json(r.transitive, u);
    out["euclidean"] = item_to_json(r.euclidean, u);
    out["frame_pass"] = r.frame_pass();
  }
  out["restricted_to_probes"] = r.restricted_to_probes;
  return out;
}

Json verdict_to_json(const Verdict& v, const RuleUniverse& u) {
  Json out;
  switch (v.status) {
    case Verdict::Status::ValidOverUniverse:
      out["status"] = "valid-over-universe";
      break;
    case Verdict::Status::Invalid:
      out["status"] = "invalid";
      break;
    case Verdict::Status::NoCounterexampleFound:
      out["status"] = "no-counterexample-found";
      break;
  }
  if (v.status != Verdict::Status::ValidOverUniverse) {
    out["samples"] = v.samples;
    out["seed"] = v.seed;
  }
  if (v.status == Verdict::Status::Invalid) {
    out["witness_base"] = base_to_json(make_base(u, v.witness_base));
    if (v.witness_ext) out["witness_relation"] = relation_to_json(*v.witness_ext);
    if (v.witness_gen) out["witness_relation"] = relation_to_json(*v.witness_gen);
  }
  return out;
}

Json bridge_report_to_json(const BridgeReport& r) {
  const RuleUniverse& u = *r.universe;
  Json wb = Json::array();
  for (size_t w = 0; w < r.world_bases.size(); w++)
    wb.push_back(Json{{"world", r.freshened.worlds[w]}, {"base", base_to_json(r.world_bases[w])}});
  Json agreement = Json::array();
  for (const AgreementCell& c : r.agreement)
    agreement.push_back(Json{{"world", r.freshened.worlds[c.world]},
                             {"formula", render(c.formula)},
                             {"kripke", c.kripke},
                             {"bes", c.bes}});
  return Json{{"logic", logic_name(r.logic)},
              {"formula", render(r.phi)},
              {"countermodel", kripke_to_json(r.model)},
              {"witness_world", r.model.worlds.empty() ? "" : r.model.worlds[r.witness_world]},
              {"freshened_model", kripke_to_json(r.freshened)},
              {"universe", universe_to_json(u)},
              {"world_bases", wb},
              {"relation", relation_to_json(*r.relation)},
              {"modal_checks", condition_report_to_json(r.modal_checks, u)},
              {"frame_checks", condition_report_to_json(r.frame_checks, u)},
              {"agreement", agreement},
              {"disagreements", r.disagreement_count},
              {"formula_fails_at_witness", r.phi_fails_at_witness},
              {"verdict", r.success ? "success" : "failure"}};
}

Json euclid_report_to_json(const EuclidReport& r) {
  const RuleUniverse& u = *r.universe;
  auto pair_list = [&](const std::vector<std::pair<uint64_t, uint64_t>>& ps) {
    Json arr = Json::array();
    for (const auto& [x, y] : ps)
      arr.push_back(Json::array({base_to_json(make_base(u, x)), base_to_json(make_base(u, y))}));
    return arr;
  };
  const char* how = r.construction == EuclidReport::Construction::Literal    ? "literal"
                    : r.construction == EuclidReport::Construction::Repaired ? "repaired"
                                                                             : "not-found";
  return Json{{"universe", universe_to_json(u)},
              {"base_b", base_to_json(r.base_b)},
              {"base_c", base_to_json(r.base_c)},
              {"base_d", base_to_json(r.base_d)},
              {"base_e", base_to_json(r.base_e)},
              {"base_f", base_to_json(r.base_f)},
              {"literal_seeds", pair_list(r.literal_seeds)},
              {"added_pairs", pair_list(r.added_pairs)},
              {"modal_checks", condition_report_to_json(r.modal_checks, u)},
              {"frame_checks", condition_report_to_json(r.frame_checks, u)},
              {"diamond_p", r.diamond_p},
              {"box_diamond_p", r.box_diamond_p},
              {"construction", how},
              {"verdict", r.success ? "success" : "failure"}};
}

std::string bridge_report_to_text(const BridgeReport& r) {
  std::ostringstream os;
  os << "bridge " << logic_name(r.logic) << " \"" << render(r.phi) << "\"\n";
  os << "  countermodel: " << r.model.worlds.size() << " world(s), witness "
     << r.model.worlds[r.witness_world] << "\n";
  os << "  universe: " << r.universe->alphabet().atoms.size() << " atoms, "
     << r.universe->rule_count() << " rules\n";
  os << "  relation: modal " << (r.modal_checks.modal_pass() ? "pass" : "FAIL") << ", frame "
     << (r.frame_checks.frame_pass() ? "pass" : "FAIL") << "\n";
  os << "  agreement table (" << r.agreement.size() << " cells): " << r.disagreement_count
     << " disagreement(s)\n";
  for (const AgreementCell& c : r.agreement)
    os << "    " << r.freshened.worlds[c.world] << "  " << (c.kripke ? "T" : "F")
       << (c.bes ? "T" : "F") << "  " << render(c.formula) << "\n";
  os << "  formula fails at witness base: " << (r.phi_fails_at_witness ? "yes" : "no") << "\n";
  os << "  verdict: " << (r.success ? "success" : "failure") << "\n";
  return os.str();
}

std::string euclid_report_to_text(const EuclidReport& r) {
  std::ostringstream os;
  const char* how = r.construction == EuclidReport::Construction::Literal    ? "literal"
                    : r.construction == EuclidReport::Construction::Repaired ? "repaired"
                                                                             : "not-found";
  os << "euclidean incompleteness demo on " << r.universe->alphabet().atoms.size() << " atoms, "
     << r.universe->rule_count() << " rules\n";
  os << "  construction: " << how << " (" << r.added_pairs.size() << " pair(s) added)\n";
  os << "  modal conditions: " << (r.modal_checks.modal_pass() ? "pass" : "FAIL") << "\n";
  os << "  euclidean: " << (r.frame_checks.euclidean.pass ? "pass" : "FAIL") << "\n";
  os << "  <>p at B: " << (r.diamond_p ? "true" : "false") << "\n";
  os << "  []<>p at B: " << (r.box_diamond_p ? "true" : "false") << "\n";
  os << "  verdict: " << (r.success ? "success" : "failure") << "\n";
  return os.str();
}

}  // namespace bes
