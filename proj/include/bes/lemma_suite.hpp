#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace bes {

struct LemmaResult {
  std::string id;
  bool pass = true;
  std::string witness;  // empty when the check passes
  int cases = 0;
};

// Canonical registry: one runnable check per covered lemma.
std::vector<std::string> lemma_suite_ids();

// Pattern: "*" for all, exact id, a group prefix ("Duality"), or a leaf
// suffix ("T"). Deterministic given (filter, budget, seed).
std::vector<LemmaResult> run_suite(const std::string& filter, int budget, uint64_t seed);

bool lemma_filter_matches(const std::string& pattern, const std::string& id);

}  // namespace bes
