#include "bes/semantics.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <set>
#include <stdexcept>

#include "bes/errors.hpp"

namespace bes {

Evaluator::Evaluator(const RuleUniverse& u)
    : u_(&u), lat_(&Lattice::of(u)), rel_(nullptr) {}

Evaluator::Evaluator(const RuleUniverse& u, const ExtensionalRelation& relation)
    : u_(&u), lat_(&Lattice::of(u)), rel_(&relation) {}

const Bitvec& Evaluator::truth(Formula f) { return compute(f); }

const Bitvec& Evaluator::compute(Formula f) {
  auto it = memo_.find(f.id());
  if (it != memo_.end()) return it->second;
  const size_t n = lat_->base_count;
  Bitvec out(n);
  switch (f.kind()) {
    case Conn::Atom: {
      int idx = u_->alphabet().index_of(f.atom_name());
      if (idx < 0) throw std::invalid_argument("unknown atom: " + f.atom_name());
      for (size_t b = 0; b < n; b++) out.set(b, (lat_->closures[b] >> idx) & 1);
      break;
    }
    case Conn::Bottom:
      out = lat_->inconsistent;
      break;
    case Conn::Implies: {
      const Bitvec l = compute(f.left());   // copies: recursion may invalidate refs
      const Bitvec r = compute(f.right());
      Bitvec bad = l;
      bad &= ~r;
      out = ~superset_or(bad, lat_->rule_bits);
      break;
    }
    case Conn::Box: {
      if (!rel_) throw std::invalid_argument("modal operator in classical evaluation");
      const Bitvec body = compute(f.body());
      const Bitvec missing = ~body;
      Bitvec all_succ_good(n);
      for (size_t b = 0; b < n; b++) {
        const uint64_t* row = rel_->row(b);
        bool good = true;
        for (size_t w = 0; w < missing.w.size() && good; w++)
          if (row[w] & missing.w[w]) good = false;
        all_succ_good.set(b, good);
      }
      out = superset_and(all_succ_good, lat_->rule_bits);
      break;
    }
    case Conn::Diamond: {
      if (!rel_) throw std::invalid_argument("modal operator in classical evaluation");
      const Bitvec body = compute(f.body());
      Bitvec some_succ_good(n);
      for (size_t b = 0; b < n; b++) {
        const uint64_t* row = rel_->row(b);
        bool good = false;
        for (size_t w = 0; w < body.w.size() && !good; w++)
          if (row[w] & body.w[w]) good = true;
        some_succ_good.set(b, good);
      }
      out = superset_and(some_succ_good, lat_->rule_bits);
      break;
    }
  }
  return memo_.emplace(f.id(), std::move(out)).first->second;
}

bool Evaluator::holds_at(uint64_t base_mask, Formula f) { return truth(f).get(base_mask); }

bool Evaluator::entails_at(uint64_t base_mask, const std::vector<Formula>& gamma, Formula f) {
  const size_t n = lat_->base_count;
  Bitvec sat(n, true);
  for (Formula g : gamma) sat &= truth(g);
  Bitvec bad = sat;
  bad &= ~truth(f);
  return !superset_or(bad, lat_->rule_bits).get(base_mask);
}

// --- class evaluator ----------------------------------------------------

ClassEvaluator::ClassEvaluator(const RuleUniverse& u, const GeneratedRelation& relation)
    : u_(&u), rel_(&relation) {
  worlds_ = relation.world_bases();
  if (worlds_.empty()) throw std::invalid_argument("class evaluation needs world bases");
  std::set<uint64_t> world_set(worlds_.begin(), worlds_.end());
  if (world_set.size() != worlds_.size())
    throw std::invalid_argument("world bases must be distinct");
  for (uint64_t w : worlds_) {
    Base b = make_base(u, w);
    if (!is_max_consistent(b))
      throw std::invalid_argument("world bases must be maximally consistent");
    world_closures_.push_back(b.closure);
  }
  for (const auto& [s, t] : relation.seeds())
    if (!world_set.count(s) || !world_set.count(t))
      throw std::invalid_argument("class evaluation requires seeds between world bases");
  // World-level successor structure, with the relation's own closure rules
  // applied at this level: transitivity closes the seed graph, reflexivity
  // adds self loops (the self class is reachable through (5a)/(5c) even
  // without a seed loop).
  const size_t k = worlds_.size();
  auto windex = [&](uint64_t m) {
    return std::find(worlds_.begin(), worlds_.end(), m) - worlds_.begin();
  };
  std::vector<uint32_t> adj(k, 0);
  for (const auto& [s, t] : relation.seeds()) adj[windex(s)] |= 1u << windex(t);
  if (relation.rules().reflexive)
    for (size_t i = 0; i < k; i++) adj[i] |= 1u << i;
  if (relation.rules().transitive)
    for (size_t m = 0; m < k; m++)
      for (size_t i = 0; i < k; i++)
        if ((adj[i] >> m) & 1) adj[i] |= adj[m];
  succ_.resize(k);
  for (size_t i = 0; i < k; i++)
    for (size_t j = 0; j < k; j++)
      if ((adj[i] >> j) & 1) succ_[i].push_back(static_cast<int>(j));
}

bool ClassEvaluator::holds_at_inconsistent(Formula f) {
  auto it = memo_inc_.find(f.id());
  if (it != memo_inc_.end()) return it->second;
  bool out = true;
  switch (f.kind()) {
    case Conn::Atom:
    case Conn::Bottom:
      out = true;  // total closure derives every atom
      break;
    case Conn::Implies:
      out = !holds_at_inconsistent(f.left()) || holds_at_inconsistent(f.right());
      break;
    case Conn::Box:
    case Conn::Diamond:
      // Successors of inconsistent bases are exactly the inconsistent bases,
      // and the full base witnesses nonemptiness.
      out = holds_at_inconsistent(f.body());
      break;
  }
  memo_inc_.emplace(f.id(), out);
  return out;
}

bool ClassEvaluator::holds_at_world(int wi, Formula f) {
  auto key = std::make_pair(wi, f.id());
  auto it = memo_.find(key);
  if (it != memo_.end()) return it->second;
  bool out = false;
  switch (f.kind()) {
    case Conn::Atom: {
      int idx = u_->alphabet().index_of(f.atom_name());
      if (idx < 0) throw std::invalid_argument("unknown atom: " + f.atom_name());
      out = (world_closures_[wi] >> idx) & 1;
      break;
    }
    case Conn::Bottom:
      out = false;
      break;
    case Conn::Implies: {
      // Cone of the class = the class itself plus inconsistent bases.
      bool here = !holds_at_world(wi, f.left()) || holds_at_world(wi, f.right());
      bool inc = !holds_at_inconsistent(f.left()) || holds_at_inconsistent(f.right());
      out = here && inc;
      break;
    }
    case Conn::Box: {
      out = holds_at_inconsistent(f.body());
      for (int v : succ_[wi]) out = out && holds_at_world(v, f.body());
      break;
    }
    case Conn::Diamond: {
      out = false;
      for (int v : succ_[wi]) out = out || holds_at_world(v, f.body());
      // Inconsistent cone members always have a witnessing successor.
      break;
    }
  }
  memo_.emplace(key, out);
  return out;
}

bool ClassEvaluator::holds_at(const Base& b, Formula f) {
  if (b.inconsistent) return holds_at_inconsistent(f);
  for (size_t i = 0; i < worlds_.size(); i++)
    if (worlds_[i] == b.members) return holds_at_world(static_cast<int>(i), f);
  // A base whose unique max-consistent superset is a world base evaluates in
  // that world's class.
  auto sups = max_consistent_supersets(b);
  if (sups.size() == 1)
    for (size_t i = 0; i < worlds_.size(); i++)
      if (worlds_[i] == sups[0].members) return holds_at_world(static_cast<int>(i), f);
  throw SizeLimitError("base is outside the class quotient of this relation");
}

// --- free functions ------------------------------------------------------

bool holds_classical(const Base& b, Formula f) {
  Evaluator ev(*b.universe);
  return ev.holds_at(b.members, f);
}

bool holds(const Base& b, const ExtensionalRelation& r, Formula f) {
  Evaluator ev(*b.universe, r);
  return ev.holds_at(b.members, f);
}

bool holds(const Base& b, const GeneratedRelation& r, Formula f) {
  if (r.materializable()) {
    Evaluator ev(*b.universe, r.materialize());
    return ev.holds_at(b.members, f);
  }
  ClassEvaluator ev(*b.universe, r);
  return ev.holds_at(b, f);
}

bool entails(const Base& b, const ExtensionalRelation& r, const std::vector<Formula>& gamma,
             Formula f) {
  Evaluator ev(*b.universe, r);
  return ev.entails_at(b.members, gamma, f);
}

bool entails(const Base& b, const GeneratedRelation& r, const std::vector<Formula>& gamma,
             Formula f) {
  Evaluator ev(*b.universe, r.materialize());
  return ev.entails_at(b.members, gamma, f);
}

bool entails_classical(const Base& b, const std::vector<Formula>& gamma, Formula f) {
  Evaluator ev(*b.universe);
  return ev.entails_at(b.members, gamma, f);
}

const std::vector<ExtensionalRelation>& enumerated_relations(const RuleUniverse& u, Logic logic) {
  static std::mutex mu;
  static std::map<std::pair<std::pair<std::string, int>, Logic>,
                  std::unique_ptr<std::vector<ExtensionalRelation>>>* cache =
      new std::map<std::pair<std::pair<std::string, int>, Logic>,
                   std::unique_ptr<std::vector<ExtensionalRelation>>>();
  std::string key;
  for (const auto& a : u.alphabet().atoms) {
    key += a;
    key += ',';
  }
  std::lock_guard<std::mutex> lock(mu);
  auto& slot = (*cache)[{{key, u.max_premises()}, logic}];
  if (!slot)
    slot = std::make_unique<std::vector<ExtensionalRelation>>(enumerate_modal_relations(u, logic));
  return *slot;
}

Verdict valid_exhaustive(const RuleUniverse& u, Logic logic, Formula f) {
  const auto& relations = enumerated_relations(u, logic);
  const Lattice& lat = Lattice::of(u);
  for (const ExtensionalRelation& r : relations) {
    Evaluator ev(u, r);
    const Bitvec& t = ev.truth(f);
    for (uint64_t b = 0; b < lat.base_count; b++)
      if (!t.get(b)) {
        Verdict v;
        v.status = Verdict::Status::Invalid;
        v.witness_base = b;
        v.witness_ext = r;
        return v;
      }
  }
  return Verdict{};
}

Verdict valid_sampled(const RuleUniverse& u, Logic logic, Formula f, int n, uint64_t seed) {
  for (int i = 0; i < n; i++) {
    GeneratedRelation r = sample_modal_relation(u, logic, seed + static_cast<uint64_t>(i));
    if (r.materializable()) {
      Evaluator ev(u, r.materialize());
      const Bitvec& t = ev.truth(f);
      for (uint64_t b = 0; b < t.n; b++)
        if (!t.get(b)) {
          Verdict v;
          v.status = Verdict::Status::Invalid;
          v.samples = i + 1;
          v.seed = seed;
          v.witness_base = b;
          v.witness_gen = r;
          return v;
        }
    } else {
      ClassEvaluator ev(u, r);
      for (uint64_t w : r.world_bases())
        if (!ev.holds_at(make_base(u, w), f)) {
          Verdict v;
          v.status = Verdict::Status::Invalid;
          v.samples = i + 1;
          v.seed = seed;
          v.witness_base = w;
          v.witness_gen = r;
          return v;
        }
    }
  }
  Verdict v;
  v.status = Verdict::Status::NoCounterexampleFound;
  v.samples = n;
  v.seed = seed;
  return v;
}

}  // namespace bes
