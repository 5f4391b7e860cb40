#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "lcl/algorithm.hpp"
#include "lcl/error.hpp"
#include "lcl/problem.hpp"

namespace lcl {

// End-to-end chain: speedup the problem, find (or take) a faster algorithm,
// slow it back down, lock it order-invariant, then simulate and verify on
// random trees of the requested sizes.
struct PipelineOptions {
  std::vector<int> sizes = {10, 100, 1000};
  int trials = 1000;       // total simulated instances, round-robin over sizes
  int remaps = 100;        // order-preserving identifier remap checks
  std::uint64_t seed = 0;
  long long n0 = 0;        // lock instance-size bound; 0 takes the largest size
  Guard guard;
  // Optional radius->=1 starting algorithm for the input problem; when set the
  // faster algorithm comes from dropping one of its rounds instead of from the
  // zero-round search on the sped-up problem.
  std::optional<LocalAlgorithm> start;
};

struct PipelineResult {
  std::shared_ptr<const Problem> sped;  // speedup applied to the input problem
  std::string fast_source;              // "zero-round-search" or "round-dropped"
  bool sped_zero_round = false;         // zero-round search outcome on sped
  LocalAlgorithm final_algorithm;       // order-invariant, radius 1
  long long n0 = 0;
  long long trials_run = 0;
  long long violations = 0;
  std::string first_violation;
  long long remap_checks = 0;
  long long remap_mismatches = 0;
};

PipelineResult run_pipeline(std::shared_ptr<const Problem> pi, const PipelineOptions& opt);

}  // namespace lcl
