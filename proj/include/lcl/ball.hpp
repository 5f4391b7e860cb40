#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "lcl/label.hpp"

namespace lcl {

class PortGraph;

enum class IdMode { PortNumbering, DeterministicId, OrderInvariant, Randomized };

std::string id_mode_name(IdMode m);
std::optional<IdMode> id_mode_from(const std::string& s);

// A rooted radius-bounded tree fragment: per-node degree, per-port input
// (and optionally output) labels, adjacency with back-ports, and dangling
// ports where the opposite endpoint is unknown (beyond the radius, or a
// genuinely open half-edge of an accepted-neighborhood description).
struct Ball {
  struct Node {
    int deg = 0;
    std::vector<Label> in;    // size deg
    std::vector<Label> out;   // size deg when outputs carried, else empty
    std::vector<int> nbr;     // size deg; node index, -1 when dangling
    std::vector<int> back;    // size deg; 1-based port at the opposite node, 0 when dangling
    long long id = -1;        // raw identifier when known
  };
  std::vector<Node> nodes;    // nodes[0] is the root
  int radius = 0;             // construction radius (depth budget of the fragment)

  bool has_outputs() const { return !nodes.empty() && !nodes[0].out.empty(); }
};

struct EncodeOptions {
  IdMode mode = IdMode::PortNumbering;
  bool with_outputs = false;
  int mark_port = 0;  // >0 renders a marked half-edge prefix "@p:"
};

// Deterministic walk-tree encoding of the ball to depth t:
// `(d;in_1,…,in_d;idtok)[c_1,…,c_d]` with c_j = `-` at depth 0 or on a
// dangling port, else `b_j:` + encoding of the opposite node at depth t−1
// (parents are re-encoded like any other neighbor). With outputs, items
// render `in:out`. Equal encodings characterize port/input/id-respecting
// rooted isomorphism.
std::string encode_ball(const Ball& b, int t, const EncodeOptions& opts = {});

// Extracts the radius-t fragment around v. The graph must be a forest.
// `origin`, when non-null, receives the graph node index of each ball node.
Ball extract_ball(const PortGraph& g, int v, int t, std::vector<int>* origin = nullptr);

struct DecodeOptions {
  const Alphabet* in_order = nullptr;   // base order for parsing input labels
  const Alphabet* out_order = nullptr;  // base order for parsing output labels
  int radius_hint = -1;                 // fragment radius when known (else max walk depth)
};

// Inverse of encode_ball: folds the walk tree back into a fragment and
// verifies consistency by re-encoding. Round-trips: encode(decode(s), t) == s.
// Returns the mark port via *mark (0 when absent) if non-null.
Ball decode_ball(const std::string& enc, const DecodeOptions& opts = {}, int* mark = nullptr);

// All radius-t fragments over degrees 1..delta (plus the isolated node when
// include_isolated) with inputs drawn from sigma_in; canonical order, no
// duplicates. Guarded: throws GuardError when the count would exceed limit.
std::vector<Ball> enumerate_balls(int delta, const Alphabet& sigma_in, int t,
                                  std::uint64_t guard_limit, bool include_isolated = true);

// The radius-`depth` fragment around node `start` inside an existing
// fragment (edges to nodes beyond the new radius become dangling).
Ball subview(const Ball& b, int start, int depth);

// 1 + delta * sum_{i<R} (delta-1)^i — the maximum node count of a radius-R
// ball at maximum degree delta (as a checked 64-bit value; caps at max).
std::uint64_t ball_size_bound(int delta, int R);

}  // namespace lcl
