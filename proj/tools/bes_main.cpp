#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "bes/errors.hpp"
#include "bes/json_io.hpp"
#include "bes/lemma_suite.hpp"

namespace {

using namespace bes;

struct CommonOpts {
  std::vector<std::string> atoms = {"p"};
  int max_premises = 1;
  std::string logic = "K";
  int samples = 100;
  bool exhaustive = false;
  uint64_t seed = 0;
  int max_worlds = 3;
  std::string format = "text";
  std::string out_path;
};

void add_universe_opts(CLI::App* cmd, CommonOpts& o) {
  cmd->add_option("--atoms", o.atoms, "comma-separated atom alphabet")->delimiter(',');
  cmd->add_option("--max-premises", o.max_premises, "maximum rule premise count");
}

void add_output_opts(CLI::App* cmd, CommonOpts& o) {
  cmd->add_option("--format", o.format, "output format: text or json")
      ->check(CLI::IsMember({"text", "json"}));
  cmd->add_option("--out", o.out_path, "write output to a file instead of stdout");
}

void add_logic_opt(CLI::App* cmd, CommonOpts& o) {
  cmd->add_option("--logic", o.logic, "modal logic: K, KT, K4, S4, K-euclidean")
      ->check(CLI::IsMember({"K", "KT", "K4", "S4", "K-euclidean"}));
}

Logic logic_of(const CommonOpts& o) {
  auto l = parse_logic(o.logic);
  if (!l) throw CLI::ValidationError("unknown logic " + o.logic);
  return *l;
}

void emit(const CommonOpts& o, const std::string& text) {
  if (o.out_path.empty()) {
    std::cout << text;
    if (!text.empty() && text.back() != '\n') std::cout << '\n';
  } else {
    std::ofstream f(o.out_path);
    f << text;
  }
}

Json read_json_file(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw std::invalid_argument("cannot open file: " + path);
  Json j;
  f >> j;
  return j;
}

Formula formula_arg(const std::string& inline_text, const std::string& file) {
  if (!file.empty()) {
    std::ifstream f(file);
    if (!f) throw std::invalid_argument("cannot open formula file: " + file);
    std::stringstream ss;
    ss << f.rdbuf();
    std::string text = ss.str();
    while (!text.empty() && (text.back() == '\n' || text.back() == '\r')) text.pop_back();
    return parse_formula(text);
  }
  if (inline_text.empty()) throw std::invalid_argument("no formula given");
  return parse_formula(inline_text);
}

std::string verdict_text(const Verdict& v, const RuleUniverse& u) {
  switch (v.status) {
    case Verdict::Status::ValidOverUniverse:
      return "valid-over-universe";
    case Verdict::Status::NoCounterexampleFound:
      return "no-counterexample-found(" + std::to_string(v.samples) + ")";
    case Verdict::Status::Invalid: {
      std::string s = "invalid\n  witness base: " + base_to_json(make_base(u, v.witness_base)).dump();
      return s;
    }
  }
  return "?";
}

// Either representation of a relation, as read from a file.
struct AnyRelation {
  std::optional<ExtensionalRelation> ext;
  std::optional<GeneratedRelation> gen;
};

AnyRelation read_relation(const RuleUniverse& u, const std::string& path) {
  Json j = read_json_file(path);
  AnyRelation r;
  if (j.contains("pairs"))
    r.ext = relation_from_json(u, j);
  else if (j.contains("seeds"))
    r.gen = generated_relation_from_json(u, j);
  else
    throw std::invalid_argument("relation file must contain \"pairs\" or \"seeds\"");
  return r;
}

int run(int argc, char** argv) {
  CLI::App app{"workbench for base-extension semantics of the modal logics K, KT, K4, S4"};
  app.require_subcommand(1);
  CommonOpts o;

  // eval: truth of a formula at a base, classically or under a relation
  auto* eval_cmd = app.add_subcommand("eval", "evaluate a formula at a base");
  std::string eval_formula, eval_file, eval_base, eval_rel;
  eval_cmd->add_option("formula", eval_formula, "formula text");
  eval_cmd->add_option("--file", eval_file, "read formula from file");
  eval_cmd->add_option("--base", eval_base, "base JSON file (default: empty base)");
  eval_cmd->add_option("--relation", eval_rel, "relation JSON file (omit for classical)");
  add_universe_opts(eval_cmd, o);
  add_logic_opt(eval_cmd, o);
  add_output_opts(eval_cmd, o);

  auto* valid_cmd = app.add_subcommand("valid", "validity verdict for a formula");
  std::string valid_formula, valid_file;
  valid_cmd->add_option("formula", valid_formula, "formula text");
  valid_cmd->add_option("--file", valid_file, "read formula from file");
  valid_cmd->add_flag("--exhaustive", o.exhaustive, "enumerate every modal relation");
  valid_cmd->add_option("--samples", o.samples, "number of sampled relations");
  valid_cmd->add_option("--seed", o.seed, "sampling seed");
  add_universe_opts(valid_cmd, o);
  add_logic_opt(valid_cmd, o);
  add_output_opts(valid_cmd, o);

  auto* kripke_cmd = app.add_subcommand("kripke", "Kripke-side evaluation and countermodels");
  auto* keval = kripke_cmd->add_subcommand("eval", "evaluate at a world of a model");
  std::string kmodel, kworld, kformula, kfile;
  keval->add_option("formula", kformula, "formula text");
  keval->add_option("--file", kfile, "read formula from file");
  keval->add_option("--model", kmodel, "model JSON file")->required();
  keval->add_option("--world", kworld, "world name")->required();
  add_output_opts(keval, o);
  auto* kfind = kripke_cmd->add_subcommand("find", "search for a countermodel");
  std::string ffformula, fffile;
  kfind->add_option("formula", ffformula, "formula text");
  kfind->add_option("--file", fffile, "read formula from file");
  kfind->add_option("--max-worlds", o.max_worlds, "world bound");
  add_logic_opt(kfind, o);
  add_output_opts(kfind, o);
  kripke_cmd->require_subcommand(1);

  auto* checkrel_cmd = app.add_subcommand("check-relation", "modal and frame condition report");
  std::string crel;
  checkrel_cmd->add_option("--relation", crel, "relation JSON file")->required();
  add_universe_opts(checkrel_cmd, o);
  add_logic_opt(checkrel_cmd, o);
  add_output_opts(checkrel_cmd, o);

  auto* checkproof_cmd = app.add_subcommand("check-proof", "check a Hilbert proof");
  std::string cproof;
  checkproof_cmd->add_option("--proof", cproof, "proof JSON file")->required();
  add_output_opts(checkproof_cmd, o);

  auto* bridge_cmd = app.add_subcommand("bridge", "transfer a Kripke countermodel to a base countermodel");
  std::string bformula, bfile;
  bridge_cmd->add_option("formula", bformula, "formula text");
  bridge_cmd->add_option("--file", bfile, "read formula from file");
  bridge_cmd->add_option("--max-worlds", o.max_worlds, "world bound for the countermodel search");
  add_logic_opt(bridge_cmd, o);
  add_output_opts(bridge_cmd, o);

  auto* euclid_cmd = app.add_subcommand("euclid-demo", "euclidean incompleteness demonstration");
  std::vector<std::string> euclid_atoms = {"p", "q", "r"};
  int euclid_mp = 1;
  euclid_cmd->add_option("--atoms", euclid_atoms, "atom alphabet")->delimiter(',');
  euclid_cmd->add_option("--max-premises", euclid_mp, "maximum rule premise count");
  add_output_opts(euclid_cmd, o);

  auto* lemmas_cmd = app.add_subcommand("lemmas", "run the lemma check suite");
  std::string filter = "*";
  int budget = 200;
  lemmas_cmd->add_option("--filter", filter, "check id pattern");
  lemmas_cmd->add_option("--budget", budget, "cases per check");
  lemmas_cmd->add_option("--seed", o.seed, "corpus seed");
  add_output_opts(lemmas_cmd, o);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  if (eval_cmd->parsed()) {
    RuleUniverse u = build_universe(AtomAlphabet(o.atoms), o.max_premises);
    Formula f = formula_arg(eval_formula, eval_file);
    Base b = eval_base.empty() ? make_base(u, 0) : base_from_json(u, read_json_file(eval_base));
    bool truth;
    if (eval_rel.empty()) {
      truth = holds_classical(b, f);
    } else {
      AnyRelation r = read_relation(u, eval_rel);
      truth = r.ext ? holds(b, *r.ext, f) : holds(b, *r.gen, f);
    }
    emit(o, o.format == "json" ? Json{{"holds", truth}}.dump(2) : (truth ? "true" : "false"));
    return truth ? 0 : 1;
  }

  if (valid_cmd->parsed()) {
    RuleUniverse u = build_universe(AtomAlphabet(o.atoms), o.max_premises);
    Formula f = formula_arg(valid_formula, valid_file);
    Verdict v = o.exhaustive ? valid_exhaustive(u, logic_of(o), f)
                             : valid_sampled(u, logic_of(o), f, o.samples, o.seed);
    emit(o, o.format == "json" ? verdict_to_json(v, u).dump(2) : verdict_text(v, u));
    return v.status == Verdict::Status::Invalid ? 1 : 0;
  }

  if (keval->parsed()) {
    KripkeModel m = kripke_from_json(read_json_file(kmodel));
    bool truth = eval(m, kworld, formula_arg(kformula, kfile));
    emit(o, o.format == "json" ? Json{{"holds", truth}}.dump(2) : (truth ? "true" : "false"));
    return truth ? 0 : 1;
  }

  if (kfind->parsed()) {
    Formula f = formula_arg(ffformula, fffile);
    auto found = find_countermodel(logic_of(o), f, o.max_worlds);
    if (!found) {
      emit(o, o.format == "json" ? Json{{"countermodel", nullptr}}.dump(2) : "none");
      return 0;
    }
    Json j{{"countermodel", kripke_to_json(found->first)},
           {"world", found->first.worlds[found->second]}};
    emit(o, o.format == "json"
                ? j.dump(2)
                : "countermodel at world " + found->first.worlds[found->second] + ":\n" +
                      kripke_to_json(found->first).dump(2));
    return 1;
  }

  if (checkrel_cmd->parsed()) {
    RuleUniverse u = build_universe(AtomAlphabet(o.atoms), o.max_premises);
    AnyRelation r = read_relation(u, crel);
    ConditionReport modal = r.ext ? check_modal(*r.ext) : check_modal(*r.gen);
    ConditionReport frame =
        r.ext ? check_frame(*r.ext, logic_of(o)) : check_frame(*r.gen, logic_of(o));
    Json j{{"modal", condition_report_to_json(modal, u)},
           {"frame", condition_report_to_json(frame, u)}};
    bool pass = modal.modal_pass() && frame.frame_pass();
    emit(o, o.format == "json"
                ? j.dump(2)
                : std::string("modal: ") + (modal.modal_pass() ? "pass" : "FAIL") +
                      "\nframe(" + o.logic + "): " + (frame.frame_pass() ? "pass" : "FAIL"));
    return pass ? 0 : 1;
  }

  if (checkproof_cmd->parsed()) {
    HilbertProof p = proof_from_json(read_json_file(cproof));
    ProofCheckResult res = check_proof(p);
    Json j{{"ok", res.ok}};
    if (!res.ok) {
      j["step"] = res.failed_step;
      j["reason"] = res.reason;
    }
    emit(o, o.format == "json"
                ? j.dump(2)
                : res.ok ? "ok: " + render(p.conclusion())
                         : "error at step " + std::to_string(res.failed_step) + ": " + res.reason);
    return res.ok ? 0 : 1;
  }

  if (bridge_cmd->parsed()) {
    Formula f = formula_arg(bformula, bfile);
    auto rep = falsify_in_bes(logic_of(o), f, o.max_worlds);
    if (!rep) {
      emit(o, o.format == "json" ? Json{{"report", nullptr}}.dump(2)
                                 : "no countermodel within " + std::to_string(o.max_worlds) +
                                       " worlds; nothing to transfer");
      return 0;
    }
    emit(o, o.format == "json" ? bridge_report_to_json(*rep).dump(2) : bridge_report_to_text(*rep));
    return rep->success ? 0 : 1;
  }

  if (euclid_cmd->parsed()) {
    RuleUniverse u = build_universe(AtomAlphabet(euclid_atoms), euclid_mp);
    EuclidReport rep = euclidean_demo(u);
    emit(o, o.format == "json" ? euclid_report_to_json(rep).dump(2) : euclid_report_to_text(rep));
    return rep.success ? 0 : 1;
  }

  if (lemmas_cmd->parsed()) {
    auto results = run_suite(filter, budget, o.seed);
    bool all_pass = true;
    if (o.format == "json") {
      Json arr = Json::array();
      for (const LemmaResult& r : results) {
        arr.push_back(Json{{"id", r.id}, {"pass", r.pass}, {"cases", r.cases}, {"witness", r.witness}});
        all_pass &= r.pass;
      }
      emit(o, arr.dump(2));
    } else {
      std::ostringstream os;
      for (const LemmaResult& r : results) {
        os << (r.pass ? "PASS" : "FAIL") << "  " << r.id << " (" << r.cases << " cases)";
        if (!r.pass) os << "  witness: " << r.witness;
        os << "\n";
        all_pass &= r.pass;
      }
      emit(o, os.str());
    }
    return all_pass ? 0 : 1;
  }

  return 2;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run(argc, argv);
  } catch (const bes::SizeLimitError& e) {
    std::cerr << "size limit: " << e.what() << "\n";
    return 3;
  } catch (const bes::ParseError& e) {
    std::cerr << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}
