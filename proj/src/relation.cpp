#include "bes/relation.hpp"

#include <algorithm>
#include <bit>
#include <random>
#include <set>
#include <stdexcept>

#include "bes/errors.hpp"

namespace bes {

namespace {

constexpr size_t kMaxWitnesses = 8;

void add_witness(ConditionItem& item, std::initializer_list<uint64_t> bases) {
  item.pass = false;
  if (item.witnesses.size() >= kMaxWitnesses) return;
  RelationWitness w;
  w.arity = static_cast<int>(bases.size());
  int i = 0;
  for (uint64_t b : bases) w.bases[i++] = b;
  item.witnesses.push_back(w);
}

}  // namespace

ExtensionalRelation::ExtensionalRelation(const RuleUniverse& u) : u_(&u) {
  if (u.rule_count() > 12)
    throw SizeLimitError("extensional relations require at most 4096 bases");
  n_ = 1ULL << u.rule_count();
  words_ = (n_ + 63) / 64;
  bits_.assign(n_ * words_, 0);
}

std::vector<std::pair<uint64_t, uint64_t>> ExtensionalRelation::pairs() const {
  std::vector<std::pair<uint64_t, uint64_t>> out;
  for (uint64_t x = 0; x < n_; x++)
    for (uint64_t y = 0; y < n_; y++)
      if (rel(x, y)) out.emplace_back(x, y);
  return out;
}

RelationRules RelationRules::for_logic(Logic logic) {
  RelationRules r;
  const FrameConditions fc = frame_conditions(logic);
  r.transitive = fc.transitive;
  r.reflexive = fc.reflexive;
  r.five_b = fc.reflexive;
  r.five_c = fc.reflexive;
  return r;
}

GeneratedRelation::GeneratedRelation(const RuleUniverse& u,
                                     std::vector<std::pair<uint64_t, uint64_t>> seeds,
                                     Logic logic, std::vector<uint64_t> world_bases)
    : u_(&u),
      seeds_(std::move(seeds)),
      rules_(RelationRules::for_logic(logic)),
      logic_(logic),
      world_bases_(std::move(world_bases)) {
  for (const auto& [x, y] : seeds_)
    if ((x & ~u.full_rule_mask()) || (y & ~u.full_rule_mask()))
      throw std::invalid_argument("seed pair outside universe");
}

const ExtensionalRelation& GeneratedRelation::materialize() const {
  if (dense_) return *dense_;
  if (!materializable())
    throw SizeLimitError("cannot materialize a generated relation beyond 4096 bases");
  const RuleUniverse& u = *u_;
  const Lattice& lat = Lattice::of(u);
  const size_t n = lat.base_count;
  auto rel = std::make_shared<ExtensionalRelation>(u);
  const size_t words = rel->words_per_row();

  for (const auto& [x, y] : seeds_) rel->set(x, y);

  // One-shot rules.
  if (rules_.inc_total) {
    for (uint64_t x = 0; x < n; x++)
      if (lat.inconsistent.get(x))
        for (size_t w = 0; w < words; w++) rel->row(x)[w] |= lat.inconsistent.w[w];
  }
  if (rules_.reflexive)
    for (uint64_t x = 0; x < n; x++) rel->set(x, x);
  if (rules_.five_b) {
    std::set<uint64_t> wb(world_bases_.begin(), world_bases_.end());
    for (uint64_t m = 0; m < n; m++) {
      if (!lat.maxcon.get(m) || wb.count(m)) continue;
      uint64_t s = m;
      while (true) {
        rel->set(m, s);
        if (s == 0) break;
        s = (s - 1) & m;
      }
    }
  }
  if (rules_.five_c) {
    std::set<uint64_t> wb(world_bases_.begin(), world_bases_.end());
    for (uint64_t y = 0; y < n; y++)
      if (!lat.inconsistent.get(y) && lat.maxsup_count[y] == 1 && wb.count(lat.maxsup_first[y]))
        rel->set(lat.maxsup_first[y], y);
  }

  // Iterated rules (3) and (4) until stable.
  std::vector<uint64_t> tmp(n * words);
  bool changed = true;
  while (changed) {
    changed = false;
    if (rules_.downward) {
      // tmp[x] = OR of rows of consistent supersets of x, by superset DP on rows.
      for (uint64_t x = 0; x < n; x++) {
        const uint64_t* src = rel->row(x);
        uint64_t* dst = tmp.data() + x * words;
        if (!lat.inconsistent.get(x))
          std::copy(src, src + words, dst);
        else
          std::fill(dst, dst + words, 0);
      }
      for (int d = 0; d < lat.rule_bits; d++) {
        const uint64_t bit = 1ULL << d;
        for (uint64_t x = 0; x < n; x++) {
          if (x & bit) continue;
          const uint64_t* hi = tmp.data() + (x | bit) * words;
          uint64_t* lo = tmp.data() + x * words;
          for (size_t w = 0; w < words; w++) lo[w] |= hi[w];
        }
      }
      for (uint64_t x = 0; x < n; x++) {
        uint64_t* dst = rel->row(x);
        const uint64_t* add = tmp.data() + x * words;
        for (size_t w = 0; w < words; w++) {
          uint64_t nw = dst[w] | add[w];
          if (nw != dst[w]) {
            dst[w] = nw;
            changed = true;
          }
        }
      }
    }
    if (rules_.transitive) {
      if (n > 1024) throw SizeLimitError("transitive materialization limited to 1024 bases");
      for (uint64_t k = 0; k < n; k++)
        for (uint64_t i = 0; i < n; i++)
          if (rel->rel(i, k)) {
            uint64_t* ri = rel->row(i);
            const uint64_t* rk = rel->row(k);
            for (size_t w = 0; w < words; w++) {
              uint64_t nw = ri[w] | rk[w];
              if (nw != ri[w]) {
                ri[w] = nw;
                changed = true;
              }
            }
          }
    }
  }
  dense_ = std::move(rel);
  return *dense_;
}

bool GeneratedRelation::rel(uint64_t x, uint64_t y) const {
  if (materializable()) return materialize().rel(x, y);
  return support_rel(x, y);
}

void GeneratedRelation::ensure_pooled(uint64_t base) const {
  if (pool_.empty()) {
    const RuleUniverse& u = *u_;
    if (u.alphabet().size() > 10)
      throw SizeLimitError("generated-relation membership requires at most 10 atoms");
    std::set<uint64_t> init = {0, u.full_rule_mask()};
    for (uint64_t w : world_bases_) init.insert(w);
    for (const auto& [s, t] : seeds_) {
      init.insert(s);
      init.insert(t);
    }
    for (const Base& m : max_consistent_bases(u)) init.insert(m.members);
    pool_.assign(init.begin(), init.end());
    pool_dirty_ = true;
  }
  if (std::binary_search(pool_.begin(), pool_.end(), base)) return;
  pool_.insert(std::upper_bound(pool_.begin(), pool_.end(), base), base);
  pool_dirty_ = true;
}

// Least fixpoint of the closure rules over the pool. Every derivation of a
// pair between pool members can be replayed with rule witnesses and
// transitivity middles drawn from the pool, because the pool carries all
// maximally-consistent bases, the empty base, and the full base.
// Cross-checked against full materialization on small universes in the tests.
void GeneratedRelation::refresh_pool_fixpoint() const {
  const RuleUniverse& u = *u_;
  const size_t k = pool_.size();
  if (k > 64) throw SizeLimitError("relation membership pool exceeds 64 bases");
  auto index_of = [&](uint64_t m) {
    return static_cast<size_t>(std::lower_bound(pool_.begin(), pool_.end(), m) - pool_.begin());
  };
  std::vector<bool> cons(k);
  std::vector<bool> is_maxcon(k, false);
  std::vector<int> unique_maxsup(k, -1);  // index into pool_, or -1
  const auto maxcons = max_consistent_bases(u);
  std::set<uint64_t> wb(world_bases_.begin(), world_bases_.end());
  for (size_t i = 0; i < k; i++) {
    cons[i] = u.closure_of(pool_[i]) != u.full_atom_mask();
    int count = 0;
    uint64_t first = 0;
    for (const Base& m : maxcons)
      if ((pool_[i] & ~m.members) == 0) {
        if (count == 0) first = m.members;
        if (++count > 1) break;
      }
    // Distinct max-consistent bases are incomparable: a max-consistent pool
    // base sees exactly one max-consistent superset, itself.
    is_maxcon[i] = cons[i] && count == 1 && first == pool_[i];
    if (cons[i] && count == 1) unique_maxsup[i] = static_cast<int>(index_of(first));
  }

  std::vector<uint64_t>& r = pool_rows_;
  r.assign(k, 0);
  auto set_pair = [&](size_t i, size_t j, bool& changed) {
    uint64_t bit = 1ULL << j;
    if (!(r[i] & bit)) {
      r[i] |= bit;
      changed = true;
    }
  };

  bool changed = true;
  for (const auto& [s, t] : seeds_) {
    bool dummy = false;
    set_pair(index_of(s), index_of(t), dummy);
  }
  while (changed) {
    changed = false;
    for (size_t i = 0; i < k; i++) {
      if (rules_.inc_total && !cons[i])
        for (size_t j = 0; j < k; j++)
          if (!cons[j]) set_pair(i, j, changed);
      if (rules_.reflexive) set_pair(i, i, changed);
      if (rules_.five_b && is_maxcon[i] && !wb.count(pool_[i]))
        for (size_t j = 0; j < k; j++)
          if ((pool_[j] & ~pool_[i]) == 0) set_pair(i, j, changed);
      if (rules_.five_c && cons[i] && unique_maxsup[i] >= 0 &&
          wb.count(pool_[unique_maxsup[i]]))
        set_pair(static_cast<size_t>(unique_maxsup[i]), i, changed);
      if (rules_.downward)
        for (size_t d = 0; d < k; d++)
          if (cons[d] && (pool_[i] & ~pool_[d]) == 0 && r[d])
            for (size_t j = 0; j < k; j++)
              if ((r[d] >> j) & 1) set_pair(i, j, changed);
      if (rules_.transitive)
        for (size_t m = 0; m < k; m++)
          if ((r[i] >> m) & 1)
            for (size_t j = 0; j < k; j++)
              if ((r[m] >> j) & 1) set_pair(i, j, changed);
    }
  }
  pool_dirty_ = false;
}

bool GeneratedRelation::support_rel(uint64_t x, uint64_t y) const {
  ensure_pooled(x);
  ensure_pooled(y);
  if (pool_dirty_) refresh_pool_fixpoint();
  auto index_of = [&](uint64_t m) {
    return static_cast<size_t>(std::lower_bound(pool_.begin(), pool_.end(), m) - pool_.begin());
  };
  return (pool_rows_[index_of(x)] >> index_of(y)) & 1;
}

ConditionReport check_modal(const ExtensionalRelation& rel) {
  const Lattice& lat = Lattice::of(rel.universe());
  const size_t n = lat.base_count;
  const size_t words = rel.words_per_row();
  ConditionReport rep;
  rep.has_modal = true;

  for (uint64_t b = 0; b < n; b++) {
    const uint64_t* row = rel.row(b);
    bool has_inc_succ = false;
    uint64_t bad_succ = 0;
    bool bad_found = false;
    for (size_t w = 0; w < words; w++) {
      if (row[w] & lat.inconsistent.w[w]) has_inc_succ = true;
      uint64_t bad = row[w] & ~lat.inconsistent.w[w];
      if (bad && !bad_found) {
        bad_found = true;
        bad_succ = w * 64 + std::countr_zero(bad);
      }
    }
    if (lat.inconsistent.get(b)) {
      if (!has_inc_succ) add_witness(rep.a, {b});
      if (bad_found) add_witness(rep.a, {b, bad_succ});
    } else {
      if (bad_found) add_witness(rep.b, {b, bad_succ});
    }
  }

  // Column-wise checks for (c) and (d).
  Bitvec col(n);
  for (uint64_t c = 0; c < n; c++) {
    for (uint64_t b = 0; b < n; b++) col.set(b, rel.rel(b, c));
    if (!col.any()) continue;
    const Bitvec proper_above = proper_superset_or(col, lat.rule_bits);
    const Bitvec below_all = ~subset_or(~col, lat.rule_bits);  // AND over subsets
    for (uint64_t b = 0; b < n; b++) {
      if (!col.get(b)) continue;
      const bool b_cons = !lat.inconsistent.get(b);
      if (b_cons && !lat.maxcon.get(b) && !proper_above.get(b)) add_witness(rep.c, {b, c});
      if (!below_all.get(b)) {
        if (b_cons) add_witness(rep.d_adopted, {b, c});
        add_witness(rep.d_literal, {b, c});
      }
    }
  }
  return rep;
}

ConditionReport check_frame(const ExtensionalRelation& rel, Logic logic) {
  const size_t n = rel.base_count();
  const size_t words = rel.words_per_row();
  ConditionReport rep;
  rep.has_frame = true;
  rep.required = frame_conditions(logic);

  for (uint64_t b = 0; b < n; b++)
    if (!rel.rel(b, b)) {
      add_witness(rep.reflexive, {b});
      break;
    }
  for (uint64_t x = 0; x < n && rep.transitive.pass; x++) {
    const uint64_t* rx = rel.row(x);
    for (uint64_t y = 0; y < n && rep.transitive.pass; y++) {
      if (!rel.rel(x, y)) continue;
      const uint64_t* ry = rel.row(y);
      for (size_t w = 0; w < words; w++)
        if (ry[w] & ~rx[w]) {
          uint64_t z = w * 64 + std::countr_zero(ry[w] & ~rx[w]);
          add_witness(rep.transitive, {x, y, z});
          break;
        }
    }
  }
  for (uint64_t x = 0; x < n && rep.euclidean.pass; x++) {
    const uint64_t* rx = rel.row(x);
    for (uint64_t y = 0; y < n && rep.euclidean.pass; y++) {
      if (!rel.rel(x, y)) continue;
      const uint64_t* ry = rel.row(y);
      for (size_t w = 0; w < words; w++)
        if (rx[w] & ~ry[w]) {
          uint64_t z = w * 64 + std::countr_zero(rx[w] & ~ry[w]);
          add_witness(rep.euclidean, {x, y, z});
          break;
        }
    }
  }
  return rep;
}

namespace {

// Probe bases for condition checks on non-materializable generated relations:
// world bases and their immediate inconsistent extensions, seed endpoints,
// every maximally-consistent base, a sample of near-world subsets, the empty
// base, and the full base.
std::vector<uint64_t> probe_bases(const GeneratedRelation& r) {
  const RuleUniverse& u = r.universe();
  std::set<uint64_t> probes = {0, u.full_rule_mask()};
  for (uint64_t w : r.world_bases()) {
    probes.insert(w);
    uint64_t missing = u.full_rule_mask() & ~w;
    if (missing) probes.insert(w | (missing & (~missing + 1)));  // lowest absent rule
    if (w) probes.insert(w & (w - 1));                           // drop lowest member rule
  }
  for (const auto& [s, t] : r.seeds()) {
    probes.insert(s);
    probes.insert(t);
  }
  for (const Base& m : max_consistent_bases(u)) {
    probes.insert(m.members);
    if (m.members) probes.insert(m.members & (m.members - 1));
  }
  return std::vector<uint64_t>(probes.begin(), probes.end());
}

}  // namespace

ConditionReport check_modal(const GeneratedRelation& r) {
  if (r.materializable()) return check_modal(r.materialize());
  const RuleUniverse& u = r.universe();
  const auto probes = probe_bases(r);
  ConditionReport rep;
  rep.has_modal = true;
  rep.restricted_to_probes = true;
  auto cons = [&](uint64_t m) { return u.closure_of(m) != u.full_atom_mask(); };
  std::vector<Base> maxcons = max_consistent_bases(u);
  auto is_mc = [&](uint64_t m) {
    for (const Base& b : maxcons)
      if (b.members == m) return true;
    return false;
  };
  for (uint64_t b : probes) {
    bool b_cons = cons(b);
    bool has_inc_succ = false;
    for (uint64_t c : probes) {
      if (!r.rel(b, c)) continue;
      bool c_cons = cons(c);
      if (!b_cons && !c_cons) has_inc_succ = true;
      if (!b_cons && c_cons) add_witness(rep.a, {b, c});
      if (b_cons && !c_cons) add_witness(rep.b, {b, c});
      if (b_cons) {
        if (!is_mc(b)) {
          bool found = false;
          for (uint64_t d : probes)
            if (d != b && (b & ~d) == 0 && r.rel(d, c)) {
              found = true;
              break;
            }
          if (!found) add_witness(rep.c, {b, c});
        }
        for (uint64_t d : probes)
          if ((d & ~b) == 0 && !r.rel(d, c)) add_witness(rep.d_adopted, {b, c, d});
      }
      for (uint64_t d : probes)
        if ((d & ~b) == 0 && !r.rel(d, c)) {
          add_witness(rep.d_literal, {b, c, d});
          break;
        }
    }
    if (!b_cons && !has_inc_succ) add_witness(rep.a, {b});
  }
  return rep;
}

ConditionReport check_frame(const GeneratedRelation& r, Logic logic) {
  if (r.materializable()) return check_frame(r.materialize(), logic);
  const auto probes = probe_bases(r);
  ConditionReport rep;
  rep.has_frame = true;
  rep.required = frame_conditions(logic);
  rep.restricted_to_probes = true;
  for (uint64_t b : probes)
    if (!r.rel(b, b)) {
      add_witness(rep.reflexive, {b});
      break;
    }
  for (uint64_t x : probes)
    for (uint64_t y : probes) {
      if (!r.rel(x, y)) continue;
      for (uint64_t z : probes) {
        if (rep.transitive.pass && r.rel(y, z) && !r.rel(x, z))
          add_witness(rep.transitive, {x, y, z});
        if (rep.euclidean.pass && r.rel(x, z) && !r.rel(y, z))
          add_witness(rep.euclidean, {x, y, z});
      }
    }
  return rep;
}

ExtensionalRelation minimal_modal_relation(const RuleUniverse& u) {
  const Lattice& lat = Lattice::of(u);
  ExtensionalRelation rel(u);
  for (uint64_t x = 0; x < lat.base_count; x++)
    if (lat.inconsistent.get(x))
      for (size_t w = 0; w < rel.words_per_row(); w++) rel.row(x)[w] |= lat.inconsistent.w[w];
  return rel;
}

std::vector<ExtensionalRelation> enumerate_modal_relations(const RuleUniverse& u, Logic logic) {
  const Lattice& lat = Lattice::of(u);
  if (lat.base_count > 4)
    throw SizeLimitError("relation enumeration requires at most 4 bases");
  const size_t n = lat.base_count;
  std::vector<ExtensionalRelation> out;
  const uint64_t limit = 1ULL << (n * n);
  for (uint64_t bits = 0; bits < limit; bits++) {
    ExtensionalRelation rel(u);
    for (uint64_t x = 0; x < n; x++)
      for (uint64_t y = 0; y < n; y++)
        if ((bits >> (x * n + y)) & 1) rel.set(x, y);
    if (!check_modal(rel).modal_pass()) continue;
    if (!check_frame(rel, logic).frame_pass()) continue;
    out.push_back(std::move(rel));
  }
  return out;
}

GeneratedRelation close_relation(const std::vector<std::pair<uint64_t, uint64_t>>& seed_pairs,
                                 const RuleUniverse& u, Logic logic,
                                 const std::vector<uint64_t>& world_bases) {
  return GeneratedRelation(u, seed_pairs, logic, world_bases);
}

GeneratedRelation sample_modal_relation(const RuleUniverse& u, Logic logic, uint64_t seed) {
  const FrameConditions fc = frame_conditions(logic);
  std::mt19937_64 rng(seed * 0x9e3779b97f4a7c15ULL + static_cast<uint64_t>(logic) + 1);
  const auto maxcons = max_consistent_bases(u);
  constexpr int kMaxRetries = 256;
  for (int attempt = 0; attempt < kMaxRetries; attempt++) {
    const size_t nw = 1 + rng() % std::min<size_t>(4, maxcons.size());
    std::vector<uint64_t> worlds;
    std::vector<size_t> picks;
    for (size_t i = 0; i < nw; i++) {
      size_t p = rng() % maxcons.size();
      if (std::find(picks.begin(), picks.end(), p) != picks.end()) continue;
      picks.push_back(p);
      worlds.push_back(maxcons[p].members);
    }
    const size_t k = worlds.size();
    std::vector<uint32_t> adj(k, 0);
    for (size_t i = 0; i < k; i++)
      for (size_t j = 0; j < k; j++)
        if (rng() & 1) adj[i] |= 1u << j;
    if (fc.reflexive)
      for (size_t i = 0; i < k; i++) adj[i] |= 1u << i;
    if (fc.transitive) {
      for (size_t m = 0; m < k; m++)
        for (size_t i = 0; i < k; i++)
          if ((adj[i] >> m) & 1) adj[i] |= adj[m];
    }
    std::vector<std::pair<uint64_t, uint64_t>> seeds;
    for (size_t i = 0; i < k; i++)
      for (size_t j = 0; j < k; j++)
        if ((adj[i] >> j) & 1) seeds.emplace_back(worlds[i], worlds[j]);
    GeneratedRelation rel = close_relation(seeds, u, logic, worlds);
    if (check_modal(rel).modal_pass() && check_frame(rel, logic).frame_pass()) return rel;
  }
  throw std::runtime_error("sample_modal_relation: no valid sample found within retry budget");
}

}  // namespace bes
