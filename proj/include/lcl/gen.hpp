#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "lcl/graph.hpp"
#include "lcl/label.hpp"

namespace lcl {

enum class Topology { UniformRandomTree, Path, Star, Caterpillar, Forest };

std::string topology_name(Topology t);
std::optional<Topology> topology_from(const std::string& s);

// Reproducible forest generation: ports are assigned 1..deg(v) in attachment
// order; half-edge inputs are drawn independently (or fixed) over sigma_in.
struct GenSpec {
  int n = 1;
  int delta = 2;
  Topology topology = Topology::UniformRandomTree;
  int forest_components = 1;  // Topology::Forest only
  Alphabet sigma_in;
  std::optional<Label> fixed_input;  // overrides random draws when set
  std::uint64_t seed = 0;
};

PortGraph generate(const GenSpec& spec);

// Identity assignment: deterministic-id draws distinct ids < n^k,
// order-invariant stores ranks (a permutation of 1..n), randomized stores
// per-node 64-bit seeds, port-numbering clears ids.
PortGraph assign_ids(const PortGraph& g, IdMode mode, int k, std::uint64_t seed);

// Fresh distinct ids with the same relative order as the current ones.
PortGraph remap_ids_order_preserving(const PortGraph& g, std::uint64_t seed);

}  // namespace lcl
