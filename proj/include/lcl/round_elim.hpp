#pragma once

#include <optional>
#include <string>
#include <vector>

#include "lcl/error.hpp"
#include "lcl/numeric.hpp"
#include "lcl/problem.hpp"

namespace lcl {

// One half-step: output alphabet becomes the power set (including the empty
// set), g maps to all subsets of the former image, an edge pair qualifies
// when every cross-selection is a former edge pair, and a node configuration
// qualifies when some selection is a former node configuration.
Problem re(const Problem& p, const Guard& guard = {});

// The complementary half-step: same alphabet and g; a node configuration
// qualifies when every selection is a former node configuration (vacuously
// when any member is the empty set), an edge pair when some selection is a
// former edge pair (the empty set never yields one).
Problem rere(const Problem& p, const Guard& guard = {});

// rere(re(p)): one full speedup step at the problem level.
Problem speedup_problem(const Problem& p, const Guard& guard = {});

struct SequenceStep {
  std::string sigma_out_size;  // decimal or 2^e / 2^2^e beyond 64-bit range
  std::size_t node_config_count = 0;
  std::size_t edge_config_count = 0;
  double wall_ms = 0;  // volatile, excluded from determinism checks
};

struct ProblemSequence {
  std::vector<Problem> problems;            // materialized prefix (input first)
  std::vector<SequenceStep> stats;          // parallel to problems
  std::vector<std::string> projected_sizes; // all k+1 alphabet sizes
  bool truncated = false;
  std::string truncation_reason;
};

// k applications of speedup_problem with per-step stats; on a guard trip the
// materialized prefix is returned with truncated set and sizes still
// projected arithmetically for every step.
ProblemSequence iterate_sequence(const Problem& p, int k, const Guard& guard = {});

// Failure-probability bookkeeping for one full speedup step, entirely in
// base-2 logarithms with an exact big-integer exponent for Y = sin^(delta^T).
struct FailureBudget {
  int delta = 0;
  unsigned T = 0;
  unsigned long sin = 0, sout = 0, sre = 0;
  mpz_class delta_pow_T;
  std::string log2_Y;   // 9-decimal strings
  std::string log2_p;
  std::string log2_p1;  // after the first half-step bound
  std::string log2_p2;  // after the second
  double log2_Y_d = 0, log2_p1_d = 0, log2_p2_d = 0;
  bool has_n = false;
  unsigned long long n = 0;
  bool cond_alphabet = false;  // |sigma_out of the result| <= log2 log2 n
  bool cond_p = false;         // p2 <= 1 / log2 n
};

FailureBudget failure_budget(int delta, unsigned T, unsigned long sin, unsigned long sout,
                             unsigned long sre, double log2_p,
                             std::optional<unsigned long long> n = std::nullopt);

}  // namespace lcl
