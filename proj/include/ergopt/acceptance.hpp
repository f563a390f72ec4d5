#pragma once

// End-to-end acceptance suite, shared by `ergopt selftest` and the
// acceptance test binary.

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "ergopt/io.hpp"
#include "ergopt/sft.hpp"

namespace ergopt {

struct CriterionResult {
  int id = 0;
  std::string name;
  bool passed = false;
  std::string summary;
  Json details;         // deterministic for a given seed
  double seconds = 0.0; // wall time, kept out of `details`
};

constexpr int kCriterionCount = 11;

/// One criterion, 1..kCriterionCount. Criterion 11 reruns criteria 1..10
/// twice and compares their serialized details.
CriterionResult run_criterion(int id, std::uint64_t seed);

/// Criteria in `ids` (all when empty), in order.
std::vector<CriterionResult> run_acceptance(std::uint64_t seed, const std::vector<int>& ids = {});

/// One line: PASS/FAIL, id, name, summary and wall time.
std::string format_line(const CriterionResult& r);

/// Report without timings, so equal seeds give equal bytes.
Json acceptance_report(std::uint64_t seed, const std::vector<CriterionResult>& results);

/// Primitive SFT with n in [n_min, n_max], entries 1 with probability
/// `density`, resampled until primitive.
TransitionStructure random_primitive_sft(std::mt19937_64& rng, int n_min, int n_max, double density = 0.7);

}  // namespace ergopt
