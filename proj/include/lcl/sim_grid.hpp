#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "lcl/algorithm.hpp"
#include "lcl/error.hpp"
#include "lcl/graph.hpp"
#include "lcl/numeric.hpp"

namespace lcl {

// A d-dimensional grid whose edges carry a dimension label and a consistent
// orientation (toward the increasing coordinate). Ports are dimension-major:
// on a torus, port 2(i-1)+1 points along +dimension-i and port 2(i-1)+2
// along -dimension-i; off the torus, absent boundary edges are skipped and
// port_meta records each port's (dimension, sign).
struct OrientedGrid {
  int d = 1;
  std::vector<int> sides;
  bool toroidal = true;
  PortGraph graph;
  std::vector<std::vector<int>> coords;                  // per node
  std::vector<std::vector<std::pair<int, int>>> port_meta;  // per node, per port: (dim 1-based, +1/-1)

  int node_at(const std::vector<int>& coord) const;
  // Port for (dim, sign) at a node; -1 when absent (non-toroidal boundary).
  int port_for(int node, int dim, int sign) const;
};

struct GridSpec {
  int d = 1;
  std::vector<int> sides;
  bool toroidal = true;
  Alphabet sigma_in;        // at least one label
  bool fixed_input = true;  // all half-edges take the first input label
  std::uint64_t seed = 0;
};

// Reproducible generation; toroidal sides must be >= 2.
OrientedGrid gen_grid(const GridSpec& spec);

// Per-dimension identifiers: value[i][coordinate] is the i-th identifier of
// every node whose i-th coordinate is that value, so two nodes share their
// i-th identifier exactly when they share their i-th coordinate.
struct ProdIds {
  int d = 0;
  long long n = 0;  // instance size the draw targeted
  int c = 1;
  std::vector<std::vector<long long>> value;

  long long of(const OrientedGrid& g, int node, int dim1) const {
    return value[dim1 - 1][static_cast<std::size_t>(g.coords[node][dim1 - 1])];
  }
};

// Draws, per dimension, a random injective map from coordinate values into
// [0, n^c). Requires n^c to cover the largest side.
ProdIds assign_prod_ids(const OrientedGrid& g, int c, std::uint64_t seed);

// I = sum_i I_i * n^(c*(i-1)) per node; exact and injective while each
// I_i < n^c (violations are rejected).
std::vector<mpz_class> combine_ids(const OrientedGrid& g, const ProdIds& ids, long long n, int c);

// Canonical window key: root at the origin, offsets of L1-norm <= t in
// lexicographic order, each slot rendering that node's half-edge inputs in
// (dimension, sign) order plus its identifier tuple (values under
// deterministic-id mode, per-dimension ranks within the window under
// order-invariant mode, nothing under port-numbering).
std::string grid_window_key(const OrientedGrid& g, int node, int t, IdMode mode,
                            const ProdIds* ids);

// Direct execution: every node answers from its radius-a.radius window key
// (table first, then the zero-round fallback on its degree and input tuple).
HalfEdgeLabeling run_prod_local(const LocalAlgorithm& a, const OrientedGrid& g,
                                const ProdIds& ids);

// Single-identifier reduction: nodes carry the combined identifier and the
// window recovers each tuple by base-n^c digit extraction; must agree with
// run_prod_local on every instance.
HalfEdgeLabeling run_prod_local_combined(const LocalAlgorithm& a, const OrientedGrid& g,
                                         const ProdIds& ids);

// An identifier slot of a window: the node's offset from the root plus a
// dimension index.
struct GridSlot {
  std::vector<int> offset;
  int dim = 1;  // 1-based
};

// The orientation-derived strict total order: dimension first, then the
// offset along that dimension, then the full offset vector lexicographically.
bool orientation_precedes(const GridSlot& a, const GridSlot& b);

// All window slots sorted by orientation_precedes. Requires every side to
// exceed 2t+1 so window positions are distinct nodes.
std::vector<GridSlot> orientation_order(const OrientedGrid& g, int t);

// Runs an order-invariant algorithm with virtual identifiers ranked purely by
// the orientation order, so no ProdIds are consulted at all. Toroidal only.
HalfEdgeLabeling run_orientation_locked(const LocalAlgorithm& a, const OrientedGrid& g);

// Exact speedup-machinery parameters for the oriented-grid model:
// p = d(2t+1); m = d(2(t+r)+1); z = sin^(2d(2t+1)^d); c = sout^(d*p!*z).
// z and c are materialized when they fit; their exact bit sizes are always
// reported.
struct RamseyGridParams {
  mpz_class p, m;
  mpz_class z_base, z_expo;
  bool z_exact = false;
  mpz_class z;            // set when z_exact
  mpz_class z_log2_ceil;  // exact ceil(log2 z) (0 when z = 1)
  mpz_class c_base, c_expo;  // c_expo set when z_exact
  bool c_exact = false;
  mpz_class c;            // set when c_exact
  mpz_class c_log2_ceil;  // exact ceil(log2 c) when computable (z exact)
};

RamseyGridParams ramsey_params_grid(unsigned long t, unsigned long d, unsigned long r,
                                    unsigned long sin, unsigned long sout);

// Grid files: the graph format with a leading `grid` header, `dim <i>
// orient +` per edge, and one `coord` line per node.
std::string serialize_grid(const OrientedGrid& g);
OrientedGrid parse_grid(const std::string& text);

// ProdIds files: `prodids d <d> n <n> c <c>` then `dimvals <i> <v,...>`.
std::string serialize_prod_ids(const ProdIds& ids);
ProdIds parse_prod_ids(const std::string& text);

}  // namespace lcl
