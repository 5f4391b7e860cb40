#pragma once

#include <memory>
#include <optional>

#include "lcl/algorithm.hpp"
#include "lcl/error.hpp"
#include "lcl/problem.hpp"

namespace lcl {

// Drops one round: from a radius-t algorithm for its target problem to a
// radius-(t-1) algorithm for speedup_problem(target). Edge half-step: the set
// of labels the input algorithm can output on a half-edge over all one-hop
// completions on the root's side of the edge view. Node half-step: the set of
// edge half-step values over all completions of the neighbor's side.
// Port-numbering and order-invariant modes (the latter enumerates relative
// identifier orders); other modes are rejected.
LocalAlgorithm derive_speedup_algorithm(const LocalAlgorithm& a, const Guard& guard = {});

// Adds one round back: from a radius-(t-1) algorithm for speedup_problem(pi)
// to a radius-t algorithm for pi. Per edge, both endpoints deterministically
// agree on the lexicographically least compatible pair of label sets (the
// endpoint with the smaller (view encoding, port) goes first; a fully
// symmetric edge falls back to diagonal selections or fails with a witness).
// Per node, the least tuple drawn from the selected sets whose multiset the
// node constraint allows. Mode is preserved.
LocalAlgorithm derive_slowdown_algorithm(const LocalAlgorithm& fast,
                                         std::shared_ptr<const Problem> pi,
                                         const Guard& guard = {}, bool materialize = true);

// Complete deterministic search for a zero-round solution: a map from
// (degree, input tuple) to an output tuple such that node constraints hold
// per key, outputs obey g positionwise, and every cross-key label pair
// (including self-pairs) is edge-compatible. Returns the lexicographically
// least solution or nothing.
std::optional<ZeroRoundAlgorithm> find_zero_round(const Problem& p, const Guard& guard = {});

// Wraps an algorithm so its output depends only on the order type of the
// visible ball: identifiers are replaced by their ranks before evaluation.
// Requires ball_size_bound(delta, radius + problem_radius) * delta < n0.
LocalAlgorithm lock_order_invariant(const LocalAlgorithm& a, long long n0,
                                    int problem_radius = 1);

}  // namespace lcl
