#pragma once

#include <string>
#include <vector>

#include "lcl/algorithm.hpp"
#include "lcl/graph.hpp"
#include "lcl/problem.hpp"

namespace lcl {

struct Violation {
  enum class Kind { NodeConfig, EdgeConfig, GMismatch, BallNotAccepted };
  Kind kind;
  std::string location;
  std::string witness;

  std::string line() const;  // "VIOLATION <kind> at <loc>: <witness>"
};

// Runs a table algorithm: every node's outputs are computed from the
// canonical encoding of its radius-a.radius view alone.
HalfEdgeLabeling run_local(const LocalAlgorithm& a, const PortGraph& g);

// Node/edge/g-constraint verifier; empty result iff f solves p on g.
std::vector<Violation> verify_nec(const PortGraph& g, const HalfEdgeLabeling& f,
                                  const Problem& p);

// General-problem verifier: each node's labeled radius-l.radius ball must be
// accepted.
std::vector<Violation> verify_general(const PortGraph& g, const HalfEdgeLabeling& f,
                                      const GeneralLcl& l);

// Attaches outputs from f to an extracted input ball (by graph origin).
Ball labeled_ball(const PortGraph& g, const HalfEdgeLabeling& f, int v, int t);

}  // namespace lcl
