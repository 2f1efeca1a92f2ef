#include "bes/kripke.hpp"

#include <bit>
#include <stdexcept>

#include "bes/errors.hpp"

namespace bes {

FrameConditions frame_conditions(Logic logic) {
  switch (logic) {
    case Logic::K: return {};
    case Logic::KT: return {.reflexive = true};
    case Logic::K4: return {.transitive = true};
    case Logic::S4: return {.reflexive = true, .transitive = true};
    case Logic::KEuclid: return {.euclidean = true};
  }
  return {};
}

const char* logic_name(Logic logic) {
  switch (logic) {
    case Logic::K: return "K";
    case Logic::KT: return "KT";
    case Logic::K4: return "K4";
    case Logic::S4: return "S4";
    case Logic::KEuclid: return "K-euclidean";
  }
  return "?";
}

std::optional<Logic> parse_logic(std::string_view name) {
  if (name == "K") return Logic::K;
  if (name == "KT") return Logic::KT;
  if (name == "K4") return Logic::K4;
  if (name == "S4") return Logic::S4;
  if (name == "K-euclidean" || name == "KEuclid") return Logic::KEuclid;
  return std::nullopt;
}

int KripkeModel::world_index(std::string_view name) const {
  for (size_t i = 0; i < worlds.size(); i++)
    if (worlds[i] == name) return static_cast<int>(i);
  return -1;
}

bool KripkeModel::atom_true_at(const std::string& atom, int world) const {
  auto it = valuation.find(atom);
  if (it == valuation.end()) return false;
  return (it->second >> world) & 1;
}

KripkeModel make_kripke_model(std::vector<std::string> worlds,
                              const std::vector<std::pair<std::string, std::string>>& edges,
                              const std::map<std::string, std::vector<std::string>>& valuation) {
  KripkeModel m;
  m.worlds = std::move(worlds);
  if (m.worlds.size() > 30) throw SizeLimitError("Kripke models are limited to 30 worlds");
  m.succ.assign(m.worlds.size(), 0);
  for (const auto& [from, to] : edges) {
    int f = m.world_index(from), t = m.world_index(to);
    if (f < 0 || t < 0) throw std::invalid_argument("edge references unknown world");
    m.add_edge(f, t);
  }
  for (const auto& [atom, where] : valuation) {
    uint32_t mask = 0;
    for (const auto& w : where) {
      int idx = m.world_index(w);
      if (idx < 0) throw std::invalid_argument("valuation references unknown world");
      mask |= 1u << idx;
    }
    m.valuation[atom] = mask;
  }
  return m;
}

bool eval(const KripkeModel& m, int world, Formula f) {
  if (world < 0 || world >= static_cast<int>(m.worlds.size()))
    throw std::invalid_argument("unknown world index");
  switch (f.kind()) {
    case Conn::Atom:
      return m.atom_true_at(f.atom_name(), world);
    case Conn::Bottom:
      return false;
    case Conn::Implies:
      return !eval(m, world, f.left()) || eval(m, world, f.right());
    case Conn::Box: {
      uint32_t s = m.succ[world];
      while (s) {
        int v = std::countr_zero(s);
        s &= s - 1;
        if (!eval(m, v, f.body())) return false;
      }
      return true;
    }
    case Conn::Diamond: {
      uint32_t s = m.succ[world];
      while (s) {
        int v = std::countr_zero(s);
        s &= s - 1;
        if (eval(m, v, f.body())) return true;
      }
      return false;
    }
  }
  return false;
}

bool eval(const KripkeModel& m, const std::string& world, Formula f) {
  int idx = m.world_index(world);
  if (idx < 0) throw std::invalid_argument("unknown world: " + world);
  return eval(m, idx, f);
}

bool frame_check(const KripkeModel& m, Logic logic) {
  const FrameConditions fc = frame_conditions(logic);
  const int n = static_cast<int>(m.worlds.size());
  if (fc.reflexive)
    for (int w = 0; w < n; w++)
      if (!m.edge(w, w)) return false;
  if (fc.transitive)
    for (int w = 0; w < n; w++) {
      uint32_t s = m.succ[w];
      while (s) {
        int v = std::countr_zero(s);
        s &= s - 1;
        if (m.succ[v] & ~m.succ[w]) return false;
      }
    }
  if (fc.euclidean)
    for (int w = 0; w < n; w++) {
      uint32_t s = m.succ[w];
      while (s) {
        int v = std::countr_zero(s);
        s &= s - 1;
        if (m.succ[w] & ~m.succ[v]) return false;
      }
    }
  return true;
}

std::optional<std::pair<KripkeModel, int>> find_countermodel(Logic logic, Formula f,
                                                             int max_worlds) {
  if (max_worlds < 1) throw std::invalid_argument("max_worlds must be >= 1");
  if (max_worlds > 5) throw SizeLimitError("countermodel search is limited to 5 worlds");
  const std::vector<std::string> atoms = atoms_of(f);
  const int na = static_cast<int>(atoms.size());
  for (int n = 1; n <= max_worlds; n++) {
    KripkeModel m;
    for (int i = 0; i < n; i++) m.worlds.push_back("w" + std::to_string(i));
    const uint64_t edge_limit = 1ULL << (n * n);
    const uint64_t val_limit = 1ULL << (na * n);
    for (uint64_t edges = 0; edges < edge_limit; edges++) {
      m.succ.assign(n, 0);
      for (int i = 0; i < n; i++)
        for (int j = 0; j < n; j++)
          if ((edges >> (i * n + j)) & 1) m.add_edge(i, j);
      if (!frame_check(m, logic)) continue;
      for (uint64_t val = 0; val < val_limit; val++) {
        m.valuation.clear();
        for (int a = 0; a < na; a++) {
          uint32_t mask = static_cast<uint32_t>((val >> (a * n)) & ((1u << n) - 1));
          m.valuation[atoms[a]] = mask;
        }
        for (int w = 0; w < n; w++)
          if (!eval(m, w, f)) return std::make_pair(m, w);
      }
    }
  }
  return std::nullopt;
}

}  // namespace bes
