#include "bes/bridge.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

#include "bes/errors.hpp"

namespace bes {

std::vector<std::string> fresh_world_atoms(const KripkeModel& m, Formula phi) {
  const std::vector<std::string> used = atoms_of(phi);
  std::set<std::string> taken(used.begin(), used.end());
  std::vector<std::string> out;
  for (const std::string& w : m.worlds) {
    std::string name = "q_" + w;
    while (taken.count(name)) name = "q" + name;
    taken.insert(name);
    out.push_back(name);
  }
  return out;
}

KripkeModel freshen_model(const KripkeModel& m, Formula phi) {
  KripkeModel out = m;
  const auto fresh = fresh_world_atoms(m, phi);
  const uint32_t all = (1u << m.worlds.size()) - 1;
  for (size_t v = 0; v < m.worlds.size(); v++) out.valuation[fresh[v]] = all & ~(1u << v);
  return out;
}

RuleUniverse bridge_universe(const KripkeModel& m_prime, Formula phi) {
  std::vector<std::string> alphabet = atoms_of(phi);
  // The freshened model's fresh atoms sort after the originals by construction
  // order, not name; keep phi's atoms first, then one per world.
  for (const std::string& q : fresh_world_atoms(m_prime, phi)) alphabet.push_back(q);
  if (alphabet.size() >= 5)
    throw SizeLimitError("bridge universe needs " + std::to_string(alphabet.size()) +
                         " atoms; evaluation is capped at 4");
  const int mp = std::min<int>(2, static_cast<int>(alphabet.size()));
  return build_universe(AtomAlphabet(alphabet), mp);
}

Base world_base(const KripkeModel& m_prime, int world, const RuleUniverse& u) {
  const AtomAlphabet& alpha = u.alphabet();
  const size_t n_worlds = m_prime.worlds.size();
  if (alpha.size() < n_worlds)
    throw std::invalid_argument("universe alphabet lacks the fresh world atoms");
  // Bridge alphabets end with one fresh atom per world, in world order.
  const int qw_index = static_cast<int>(alpha.size() - n_worlds) + world;
  {
    auto it = m_prime.valuation.find(alpha.atoms[qw_index]);
    const uint32_t all = (1u << n_worlds) - 1;
    if (it == m_prime.valuation.end() || it->second != (all & ~(1u << world)))
      throw std::invalid_argument("alphabet entry " + alpha.atoms[qw_index] +
                                  " is not the fresh atom of world " +
                                  m_prime.worlds[world]);
  }
  std::vector<BaseRule> rules;
  for (size_t i = 0; i < alpha.size(); i++) {
    const bool truth = m_prime.atom_true_at(alpha.atoms[i], world);
    if (truth) {
      rules.push_back({0, static_cast<int>(i)});
    } else {
      rules.push_back({1ULL << i, qw_index});
      rules.push_back({1ULL << qw_index, static_cast<int>(i)});
    }
  }
  Base a_w = make_base(u, rules);
  if (a_w.inconsistent) throw std::logic_error("world_base: seed base is inconsistent");
  if (derives_atom(a_w, qw_index))
    throw std::logic_error("world_base: seed base derives the avoided atom");
  Base b_w = extend_max_consistent_avoiding(a_w, qw_index);
  if (!is_max_consistent(b_w)) throw std::logic_error("world_base: extension is not maximal");
  for (size_t i = 0; i < alpha.size(); i++)
    if (derives_atom(b_w, static_cast<int>(i)) != m_prime.atom_true_at(alpha.atoms[i], world))
      throw std::logic_error("world_base: atom agreement failed at " + alpha.atoms[i]);
  return b_w;
}

GeneratedRelation build_bridge_relation(const KripkeModel& m_prime,
                                        const std::vector<Base>& world_bases, Logic logic) {
  std::vector<std::pair<uint64_t, uint64_t>> seeds;
  const int n = static_cast<int>(m_prime.worlds.size());
  for (int w = 0; w < n; w++)
    for (int v = 0; v < n; v++)
      if (m_prime.edge(w, v)) seeds.emplace_back(world_bases[w].members, world_bases[v].members);
  std::vector<uint64_t> wb;
  for (const Base& b : world_bases) wb.push_back(b.members);
  return close_relation(seeds, *world_bases.front().universe, logic, wb);
}

BridgeReport verify_agreement(const KripkeModel& m_prime, const std::vector<Base>& world_bases,
                              std::shared_ptr<GeneratedRelation> relation, Formula phi,
                              Logic logic, std::shared_ptr<RuleUniverse> universe) {
  BridgeReport rep;
  rep.logic = logic;
  rep.phi = phi;
  rep.freshened = m_prime;
  rep.universe = universe;
  rep.world_bases = world_bases;
  rep.relation = relation;
  rep.modal_checks = check_modal(*relation);
  rep.frame_checks = check_frame(*relation, logic);

  const auto subs = subformulas(phi);
  const int n = static_cast<int>(m_prime.worlds.size());
  if (relation->materializable()) {
    Evaluator ev(*universe, relation->materialize());
    for (int w = 0; w < n; w++)
      for (Formula s : subs) {
        bool kr = eval(m_prime, w, s);
        bool bs = ev.holds_at(world_bases[w].members, s);
        rep.agreement.push_back({w, s, kr, bs});
        if (kr != bs) rep.disagreement_count++;
      }
  } else {
    ClassEvaluator ev(*universe, *relation);
    for (int w = 0; w < n; w++)
      for (Formula s : subs) {
        bool kr = eval(m_prime, w, s);
        bool bs = ev.holds_at_world(w, s);
        rep.agreement.push_back({w, s, kr, bs});
        if (kr != bs) rep.disagreement_count++;
      }
  }
  return rep;
}

std::optional<BridgeReport> falsify_in_bes(Logic logic, Formula phi, int max_worlds) {
  auto found = find_countermodel(logic, phi, max_worlds);
  if (!found) return std::nullopt;
  const auto& [model, world] = *found;
  KripkeModel m_prime = freshen_model(model, phi);
  auto universe = std::make_shared<RuleUniverse>(bridge_universe(m_prime, phi));
  std::vector<Base> bases;
  for (int w = 0; w < static_cast<int>(m_prime.worlds.size()); w++)
    bases.push_back(world_base(m_prime, w, *universe));
  for (size_t i = 0; i < bases.size(); i++)
    for (size_t j = i + 1; j < bases.size(); j++)
      if (bases[i].members == bases[j].members)
        throw std::logic_error("distinct worlds produced identical bases");
  auto relation =
      std::make_shared<GeneratedRelation>(build_bridge_relation(m_prime, bases, logic));
  BridgeReport rep = verify_agreement(m_prime, bases, relation, phi, logic, universe);
  rep.model = model;
  rep.witness_world = world;
  for (const AgreementCell& cell : rep.agreement)
    if (cell.world == world && cell.formula == phi) rep.phi_fails_at_witness = !cell.bes;
  rep.success = rep.modal_checks.modal_pass() && rep.frame_checks.frame_pass() &&
                rep.disagreement_count == 0 && rep.phi_fails_at_witness;
  return rep;
}

namespace {

struct EuclidAttempt {
  std::shared_ptr<GeneratedRelation> relation;
  ConditionReport modal;
  ConditionReport frame;
  bool diamond_p = false;
  bool box_diamond_p = true;
  bool pass = false;
};

EuclidAttempt run_euclid_attempt(const std::shared_ptr<RuleUniverse>& u,
                                 const std::vector<std::pair<uint64_t, uint64_t>>& seeds,
                                 uint64_t base_b, Formula diamond_p, Formula box_diamond_p) {
  EuclidAttempt at;
  at.relation = std::make_shared<GeneratedRelation>(
      close_relation(seeds, *u, Logic::KEuclid, {}));
  at.modal = check_modal(*at.relation);
  at.frame = check_frame(*at.relation, Logic::KEuclid);
  Evaluator ev(*u, at.relation->materialize());
  at.diamond_p = ev.holds_at(base_b, diamond_p);
  at.box_diamond_p = ev.holds_at(base_b, box_diamond_p);
  at.pass = at.modal.modal_pass() && at.frame.euclidean.pass && at.diamond_p && !at.box_diamond_p;
  return at;
}

// All pairs the euclidean condition forces on top of the current relation,
// scanning consistent sources only (the inconsistent block is already total).
std::vector<std::pair<uint64_t, uint64_t>> euclid_forced_pairs(const ExtensionalRelation& rel) {
  const Lattice& lat = Lattice::of(rel.universe());
  std::set<std::pair<uint64_t, uint64_t>> forced;
  for (uint64_t x = 0; x < lat.base_count; x++) {
    if (lat.inconsistent.get(x)) continue;
    std::vector<uint64_t> targets;
    for (uint64_t y = 0; y < lat.base_count; y++)
      if (rel.rel(x, y)) targets.push_back(y);
    for (uint64_t y : targets)
      for (uint64_t z : targets)
        if (!rel.rel(y, z)) forced.insert({y, z});
  }
  return std::vector<std::pair<uint64_t, uint64_t>>(forced.begin(), forced.end());
}

}  // namespace

EuclidReport euclidean_demo(const RuleUniverse& universe_in) {
  auto u = std::make_shared<RuleUniverse>(universe_in);
  const int ip = u->alphabet().index_of("p");
  const int iq = u->alphabet().index_of("q");
  if (ip < 0 || iq < 0)
    throw std::invalid_argument("euclidean demo needs atoms p and q in the universe");
  if (u->rule_count() > 12)
    throw SizeLimitError("euclidean demo requires a materializable universe (<= 12 rules)");

  EuclidReport rep;
  rep.universe = u;
  const int rp = u->rule_index(0, ip);
  const int rq = u->rule_index(0, iq);
  rep.base_c = make_base(*u, 1ULL << rp);
  rep.base_d = make_base(*u, 1ULL << rq);

  const auto c_sups = max_consistent_supersets(rep.base_c);
  if (c_sups.size() < 2)
    throw std::invalid_argument(
        "euclidean demo needs two distinct maximally-consistent supersets of {=> p}; "
        "use at least three atoms");
  // Prefer a superset that also contains the fact for q, which keeps the
  // condition on sources of the forced pairs satisfiable.
  size_t e_pick = 0;
  for (size_t i = 0; i < c_sups.size(); i++)
    if (rep.base_d.subset_of(c_sups[i])) {
      e_pick = i;
      break;
    }
  rep.base_e = c_sups[e_pick];
  rep.base_f = c_sups[e_pick == 0 ? 1 : 0];
  Base b_choice = rep.base_e;
  for (const Base& m : max_consistent_bases(*u))
    if (!rep.base_c.subset_of(m) && m.members != rep.base_e.members &&
        m.members != rep.base_f.members) {
      b_choice = m;
      break;
    }
  rep.base_b = b_choice;

  rep.literal_seeds = {{rep.base_b.members, rep.base_c.members},
                       {rep.base_c.members, rep.base_c.members},
                       {rep.base_c.members, rep.base_d.members},
                       {rep.base_e.members, rep.base_d.members},
                       {rep.base_f.members, rep.base_c.members}};

  const Formula p = Formula::atom("p");
  const Formula dia_p = Formula::diamond(p);
  const Formula box_dia_p = Formula::box(dia_p);

  auto finish = [&](const EuclidAttempt& at, EuclidReport::Construction how,
                    std::vector<std::pair<uint64_t, uint64_t>> added) {
    rep.relation = at.relation;
    rep.modal_checks = at.modal;
    rep.frame_checks = at.frame;
    rep.diamond_p = at.diamond_p;
    rep.box_diamond_p = at.box_diamond_p;
    rep.construction = how;
    rep.added_pairs = std::move(added);
    rep.success = at.pass;
  };

  EuclidAttempt literal =
      run_euclid_attempt(u, rep.literal_seeds, rep.base_b.members, dia_p, box_dia_p);
  if (literal.pass) {
    finish(literal, EuclidReport::Construction::Literal, {});
    return rep;
  }

  // Repair: optionally one or two extra seed pairs over the named bases, then
  // saturate with the euclidean-forced pairs until stable, and re-check.
  std::vector<std::pair<uint64_t, uint64_t>> pool;
  for (uint64_t s : {rep.base_e.members, rep.base_f.members, rep.base_d.members,
                     rep.base_c.members, rep.base_b.members})
    for (uint64_t t : {rep.base_c.members, rep.base_d.members})
      if (std::find(rep.literal_seeds.begin(), rep.literal_seeds.end(),
                    std::make_pair(s, t)) == rep.literal_seeds.end())
        pool.emplace_back(s, t);

  std::vector<std::vector<std::pair<uint64_t, uint64_t>>> candidates = {{}};
  for (const auto& pr : pool) candidates.push_back({pr});
  for (size_t i = 0; i < pool.size(); i++)
    for (size_t j = i + 1; j < pool.size(); j++) candidates.push_back({pool[i], pool[j]});

  for (const auto& extra : candidates) {
    std::vector<std::pair<uint64_t, uint64_t>> seeds = rep.literal_seeds;
    seeds.insert(seeds.end(), extra.begin(), extra.end());
    EuclidAttempt at;
    bool stable = false;
    for (int round = 0; round < 16 && !stable; round++) {
      at = run_euclid_attempt(u, seeds, rep.base_b.members, dia_p, box_dia_p);
      auto forced = euclid_forced_pairs(at.relation->materialize());
      if (forced.empty())
        stable = true;
      else
        seeds.insert(seeds.end(), forced.begin(), forced.end());
    }
    if (stable && at.pass) {
      std::vector<std::pair<uint64_t, uint64_t>> added;
      for (const auto& pr : seeds)
        if (std::find(rep.literal_seeds.begin(), rep.literal_seeds.end(), pr) ==
            rep.literal_seeds.end())
          added.push_back(pr);
      finish(at, EuclidReport::Construction::Repaired, std::move(added));
      return rep;
    }
  }

  finish(literal, EuclidReport::Construction::NotFound, {});
  rep.success = false;
  return rep;
}

}  // namespace bes
