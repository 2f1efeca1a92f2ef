#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "bes/formula.hpp"

namespace bes {

enum class Logic { K, KT, K4, S4, KEuclid };

struct FrameConditions {
  bool reflexive = false;
  bool transitive = false;
  bool euclidean = false;
};

FrameConditions frame_conditions(Logic logic);
const char* logic_name(Logic logic);
std::optional<Logic> parse_logic(std::string_view name);

// Finite frame plus valuation. Worlds are indexed densely; `succ[w]` is the
// bitmask of worlds reachable from w.
struct KripkeModel {
  std::vector<std::string> worlds;
  std::vector<uint32_t> succ;                  // one mask per world
  std::map<std::string, uint32_t> valuation;   // atom -> world mask

  int world_index(std::string_view name) const;
  bool edge(int from, int to) const { return (succ[from] >> to) & 1; }
  void add_edge(int from, int to) { succ[from] |= 1u << to; }
  bool atom_true_at(const std::string& atom, int world) const;
};

KripkeModel make_kripke_model(std::vector<std::string> worlds,
                              const std::vector<std::pair<std::string, std::string>>& edges,
                              const std::map<std::string, std::vector<std::string>>& valuation);

bool eval(const KripkeModel& m, int world, Formula f);
bool eval(const KripkeModel& m, const std::string& world, Formula f);

bool frame_check(const KripkeModel& m, Logic logic);

// Exhaustive search over frames (by world count, then edge bitmask, then
// valuation bitmask) for the first pair (model, world) falsifying f under the
// logic's frame conditions. Valuations range over the atoms of f.
std::optional<std::pair<KripkeModel, int>> find_countermodel(Logic logic, Formula f,
                                                             int max_worlds);

}  // namespace bes
