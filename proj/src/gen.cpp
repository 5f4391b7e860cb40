#include "lcl/gen.hpp"

#include <algorithm>
#include <cassert>
#include <random>
#include <set>
#include <vector>

#include "lcl/error.hpp"

namespace lcl {

std::string topology_name(Topology t) {
  switch (t) {
    case Topology::UniformRandomTree: return "uniform-random-tree";
    case Topology::Path: return "path";
    case Topology::Star: return "star";
    case Topology::Caterpillar: return "caterpillar";
    case Topology::Forest: return "forest";
  }
  return "?";
}

std::optional<Topology> topology_from(const std::string& s) {
  if (s == "uniform-random-tree" || s == "tree") return Topology::UniformRandomTree;
  if (s == "path") return Topology::Path;
  if (s == "star") return Topology::Star;
  if (s == "caterpillar") return Topology::Caterpillar;
  if (s == "forest") return Topology::Forest;
  return std::nullopt;
}

namespace {

// rng() % m is reproducible across standard libraries, unlike
// std::uniform_int_distribution; the modulo bias is irrelevant here.
std::uint64_t draw(std::mt19937_64& rng, std::uint64_t m) { return rng() % m; }

class InputDraw {
public:
  InputDraw(const GenSpec& spec, std::mt19937_64& rng) : spec_(spec), rng_(rng) {
    if (!spec.fixed_input && spec.sigma_in.size() == 0)
      throw LclError("input alphabet required to draw half-edge inputs");
  }
  Label operator()() {
    if (spec_.fixed_input) return *spec_.fixed_input;
    return spec_.sigma_in.labels()[draw(rng_, spec_.sigma_in.size())];
  }

private:
  const GenSpec& spec_;
  std::mt19937_64& rng_;
};

// Attaches nodes [first+1, first+size) one by one to a uniformly random
// earlier node of the same component with remaining degree capacity.
void grow_tree(PortGraph& g, int first, int size, int delta, InputDraw& in,
               std::mt19937_64& rng) {
  for (int i = 1; i < size; ++i) {
    int v = first + i;
    int parent = -1;
    for (int tries = 0; tries < 64 && parent < 0; ++tries) {
      int cand = first + static_cast<int>(draw(rng, i));
      if (g.deg(cand) < delta) parent = cand;
    }
    if (parent < 0) {
      std::vector<int> cands;
      for (int j = 0; j < i; ++j)
        if (g.deg(first + j) < delta) cands.push_back(first + j);
      if (cands.empty()) throw LclError("degree bound too small for tree growth");
      parent = cands[draw(rng, cands.size())];
    }
    g.add_edge(parent, v, in(), in());
  }
}

}  // namespace

PortGraph generate(const GenSpec& spec) {
  if (spec.n < 1) throw LclError("n must be positive");
  if (spec.delta < 1) throw LclError("delta must be positive");
  std::mt19937_64 rng(spec.seed);
  InputDraw in(spec, rng);
  PortGraph g;
  g.delta = spec.delta;
  g.mode = IdMode::PortNumbering;
  for (int i = 0; i < spec.n; ++i) g.add_node();
  switch (spec.topology) {
    case Topology::UniformRandomTree: {
      if (spec.n > 2 && spec.delta < 2)
        throw LclError("tree with n > 2 needs delta >= 2");
      grow_tree(g, 0, spec.n, spec.delta, in, rng);
      break;
    }
    case Topology::Path: {
      if (spec.n > 2 && spec.delta < 2)
        throw LclError("path with n > 2 needs delta >= 2");
      for (int i = 1; i < spec.n; ++i) g.add_edge(i - 1, i, in(), in());
      break;
    }
    case Topology::Star: {
      if (spec.n - 1 > spec.delta)
        throw LclError("star with n-1 > delta violates the degree bound");
      for (int i = 1; i < spec.n; ++i) g.add_edge(0, i, in(), in());
      break;
    }
    case Topology::Caterpillar: {
      if (spec.n > 2 && spec.delta < 2)
        throw LclError("caterpillar with n > 2 needs delta >= 2");
      int spine = std::max(1, (spec.n + 1) / 2);
      for (int i = 1; i < spine; ++i) g.add_edge(i - 1, i, in(), in());
      int next = 0;
      for (int v = spine; v < spec.n; ++v) {
        int scanned = 0;
        while (g.deg(next) >= spec.delta && scanned < spine) {
          next = (next + 1) % spine;
          ++scanned;
        }
        if (g.deg(next) >= spec.delta)
          throw LclError("caterpillar legs exceed spine capacity at this delta");
        g.add_edge(next, v, in(), in());
        next = (next + 1) % spine;
      }
      break;
    }
    case Topology::Forest: {
      int k = spec.forest_components;
      if (k < 1 || k > spec.n) throw LclError("forest needs 1 <= components <= n");
      if (spec.n > 2 * k && spec.delta < 2)
        throw LclError("forest components need delta >= 2 at this size");
      int base = spec.n / k, extra = spec.n % k, first = 0;
      for (int c = 0; c < k; ++c) {
        int size = base + (c < extra ? 1 : 0);
        grow_tree(g, first, size, spec.delta, in, rng);
        first += size;
      }
      break;
    }
  }
  return g;
}

PortGraph assign_ids(const PortGraph& g, IdMode mode, int k, std::uint64_t seed) {
  if (k < 1) throw LclError("id-space exponent must be >= 1");
  PortGraph out = g;
  out.mode = mode;
  std::mt19937_64 rng(seed);
  int n = g.n();
  switch (mode) {
    case IdMode::PortNumbering:
      for (int v = 0; v < n; ++v) out.node_mut(v).id = -1;
      break;
    case IdMode::OrderInvariant: {
      std::vector<long long> perm(n);
      for (int v = 0; v < n; ++v) perm[v] = v + 1;
      for (int v = n - 1; v > 0; --v)
        std::swap(perm[v], perm[draw(rng, static_cast<std::uint64_t>(v) + 1)]);
      for (int v = 0; v < n; ++v) out.node_mut(v).id = perm[v];
      break;
    }
    case IdMode::DeterministicId: {
      // Distinct ids below n^k (capped so arithmetic stays in 64 bits).
      unsigned long long space = 1;
      bool overflow = false;
      for (int i = 0; i < k; ++i) {
        if (space > (1ull << 62) / std::max(1, n)) {
          overflow = true;
          break;
        }
        space *= static_cast<unsigned long long>(n);
      }
      if (overflow) space = 1ull << 62;
      if (space < static_cast<unsigned long long>(n)) space = n;  // k=1 degenerate
      std::set<long long> used;
      for (int v = 0; v < n; ++v) {
        long long id;
        do {
          id = static_cast<long long>(draw(rng, space));
        } while (!used.insert(id).second);
        out.node_mut(v).id = id;
      }
      break;
    }
    case IdMode::Randomized:
      for (int v = 0; v < n; ++v) {
        out.node_mut(v).id = -1;
        out.node_mut(v).seed = rng();
      }
      break;
  }
  return out;
}

PortGraph remap_ids_order_preserving(const PortGraph& g, std::uint64_t seed) {
  int n = g.n();
  if (!g.ids_distinct()) throw LclError("remap requires distinct assigned ids");
  std::vector<int> idx(n);
  for (int v = 0; v < n; ++v) idx[v] = v;
  std::sort(idx.begin(), idx.end(),
            [&](int a, int b) { return g.node(a).id < g.node(b).id; });
  std::mt19937_64 rng(seed);
  // Fresh strictly increasing ids: random positive gaps keep the order type.
  std::vector<long long> fresh(n);
  long long cur = 0;
  for (int i = 0; i < n; ++i) {
    cur += 1 + static_cast<long long>(draw(rng, 1ull << 16));
    fresh[i] = cur;
  }
  PortGraph out = g;
  for (int i = 0; i < n; ++i) out.node_mut(idx[i]).id = fresh[i];
  for (int i = 1; i < n; ++i) {
    assert(out.node(idx[i - 1]).id < out.node(idx[i]).id);
  }
  return out;
}

}  // namespace lcl
