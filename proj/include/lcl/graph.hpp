#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "lcl/ball.hpp"
#include "lcl/label.hpp"

namespace lcl {

// A port-numbered graph: adjacency as (node, port) <-> (node, port) pairings,
// half-edge input labels, and per-node identity tokens. Immutable by
// convention once built (operations return modified copies).
class PortGraph {
public:
  struct Node {
    std::vector<int> nbr;       // size deg; node index, -1 dangling (never in generated graphs)
    std::vector<int> back;      // size deg; 1-based opposite port
    std::vector<Label> in;      // size deg; half-edge input labels
    long long id = -1;          // identifier or rank; -1 when absent
    std::uint64_t seed = 0;     // randomized mode token
  };

  int n() const { return static_cast<int>(nodes_.size()); }
  int deg(int v) const { return static_cast<int>(nodes_[v].nbr.size()); }
  const Node& node(int v) const { return nodes_[v]; }
  Node& node_mut(int v) { return nodes_[v]; }
  int add_node() {
    nodes_.emplace_back();
    return n() - 1;
  }
  // Appends a new port at each endpoint and wires them together.
  void add_edge(int u, int v, const Label& in_u, const Label& in_v);
  // Wires explicit ports (ports must be the next unused index).
  void add_half_edges(int u, int pu, int v, int pv, const Label& in_u, const Label& in_v);

  int delta = 0;              // declared degree bound
  IdMode mode = IdMode::PortNumbering;

  bool ids_distinct() const;
  std::vector<int> rank_of_ids() const;  // 1..n by id order (requires ids)

private:
  std::vector<Node> nodes_;
};

// Total map from half-edges (node, port) to output labels.
class HalfEdgeLabeling {
public:
  HalfEdgeLabeling() = default;
  explicit HalfEdgeLabeling(const PortGraph& g);  // sized, unset

  const Label& at(int v, int port) const { return out_[v][port - 1]; }
  void set(int v, int port, const Label& l) { out_[v][port - 1] = l; }
  bool total() const;
  int n() const { return static_cast<int>(out_.size()); }
  int deg(int v) const { return static_cast<int>(out_[v].size()); }

  bool operator==(const HalfEdgeLabeling& o) const;

private:
  std::vector<std::vector<Label>> out_;
};

// Line-oriented graph file:
//   n <n> delta <Δ> mode <mode>
//   node <id> deg <d> inputs <l,…> idtok <tok|->
//   edge <u>:<port> <v>:<port>
std::string serialize_graph(const PortGraph& g);
PortGraph parse_graph(const std::string& text);

// Labeling file: `out <node>:<port> <label>` lines.
std::string serialize_labeling(const HalfEdgeLabeling& f);
HalfEdgeLabeling parse_labeling(const std::string& text, const PortGraph& g);

}  // namespace lcl
