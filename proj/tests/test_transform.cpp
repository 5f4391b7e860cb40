#include <algorithm>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "doctest.h"
#include "lcl/algorithm.hpp"
#include "lcl/error.hpp"
#include "lcl/gen.hpp"
#include "lcl/graph.hpp"
#include "lcl/problem.hpp"
#include "lcl/round_elim.hpp"
#include "lcl/sim_local.hpp"
#include "lcl/transform.hpp"

using namespace lcl;

namespace {

Label L(const std::string& s) { return Label::base(s); }

const char* kTrivial =
    "delta: 2\n"
    "input: bot\n"
    "output: X\n"
    "g: bot -> X\n"
    "node 1: X\n"
    "node 2: X X\n"
    "edge: X X\n";

const char* kTwoCol =
    "delta: 2\n"
    "input: bot\n"
    "output: A B\n"
    "g: bot -> A B\n"
    "node 1: A | B\n"
    "node 2: A A | B B\n"
    "edge: A B\n";

const char* kCopy =
    "delta: 3\n"
    "input: a b\n"
    "output: A B\n"
    "g: a -> A\n"
    "g: b -> B\n"
    "node 1: A | B\n"
    "node 2: A A | A B | B B\n"
    "node 3: A A A | A A B | A B B | B B B\n"
    "edge: A A | A B | B B\n";

// Direct lexicographic search over every per-key output assignment, checking
// the three constraint families literally; first hit = least witness.
std::optional<ZeroRoundAlgorithm> oracle_zero_round(const Problem& p) {
  LabelOrder ord = p.out_order();
  std::vector<Label> outs = p.sigma_out().labels();
  sort_labels(outs, ord);

  struct Key {
    std::string name;
    int d;
    std::vector<Label> in;
  };
  std::vector<Key> keys;
  for (int d = 1; d <= p.delta(); ++d) {
    std::vector<std::size_t> pick(d, 0);
    while (true) {
      std::vector<Label> in;
      for (int j = 0; j < d; ++j) in.push_back(p.sigma_in().labels()[pick[j]]);
      keys.push_back({ZeroRoundAlgorithm::key(d, in), d, in});
      int j = d - 1;
      while (j >= 0 && pick[j] == p.sigma_in().size() - 1) --j;
      if (j < 0) break;
      ++pick[j];
      for (int k = j + 1; k < d; ++k) pick[k] = 0;
    }
  }
  std::sort(keys.begin(), keys.end(), [](const Key& a, const Key& b) { return a.name < b.name; });

  // Per key: all g-respecting, node-allowed tuples in ascending label order.
  std::vector<std::vector<std::vector<Label>>> options(keys.size());
  for (std::size_t k = 0; k < keys.size(); ++k) {
    int d = keys[k].d;
    std::vector<std::size_t> idx(d, 0);
    while (true) {
      std::vector<Label> tuple;
      for (int j = 0; j < d; ++j) tuple.push_back(outs[idx[j]]);
      bool ok = true;
      for (int j = 0; j < d && ok; ++j) ok = p.g_allows(keys[k].in[j], tuple[j]);
      if (ok && p.node_allows(d, tuple)) options[k].push_back(tuple);
      int j = d - 1;
      while (j >= 0 && idx[j] + 1 == outs.size()) --j;
      if (j < 0) break;
      ++idx[j];
      for (int t = j + 1; t < d; ++t) idx[t] = 0;
    }
    if (options[k].empty()) return std::nullopt;
  }

  // Any two assigned half-edge labels can face each other on some instance,
  // including two copies of the same (key, port).
  std::vector<std::vector<Label>> chosen(keys.size());
  auto compatible = [&](const std::vector<Label>& tuple, std::size_t upto) {
    for (const auto& a : tuple) {
      if (!p.edge_allows(a, a)) return false;
      for (const auto& b : tuple)
        if (!p.edge_allows(a, b)) return false;
      for (std::size_t k = 0; k < upto; ++k)
        for (const auto& b : chosen[k])
          if (!p.edge_allows(a, b)) return false;
    }
    return true;
  };
  std::function<std::optional<ZeroRoundAlgorithm>(std::size_t)> dfs =
      [&](std::size_t k) -> std::optional<ZeroRoundAlgorithm> {
    if (k == keys.size()) {
      ZeroRoundAlgorithm z;
      for (std::size_t i = 0; i < keys.size(); ++i) z.table[keys[i].name] = chosen[i];
      return z;
    }
    for (const auto& tuple : options[k]) {
      if (!compatible(tuple, k)) continue;
      chosen[k] = tuple;
      if (auto z = dfs(k + 1)) return z;
    }
    return std::nullopt;
  };
  return dfs(0);
}

struct Tiny {
  int delta;
  std::vector<std::string> outs, ins;
  std::map<int, std::set<std::vector<int>>> node;
  std::set<std::pair<int, int>> edge;
  std::vector<int> gmask;
};

Problem to_problem(const Tiny& t) {
  std::vector<Label> outl, inl;
  for (const auto& s : t.outs) outl.push_back(L(s));
  for (const auto& s : t.ins) inl.push_back(L(s));
  Alphabet so(outl), si(inl);
  LabelOrder ord{&so};
  std::map<int, std::vector<MultisetConfig>> node;
  for (const auto& [d, cfgs] : t.node)
    for (const auto& c : cfgs) {
      std::vector<Label> ls;
      for (int i : c) ls.push_back(outl[i]);
      node[d].emplace_back(std::move(ls), ord);
    }
  std::vector<MultisetConfig> edge;
  for (const auto& [i, j] : t.edge)
    edge.emplace_back(std::vector<Label>{outl[i], outl[j]}, ord);
  std::map<std::string, std::vector<Label>> g;
  for (std::size_t k = 0; k < t.ins.size(); ++k) {
    std::vector<Label> img;
    for (int i = 0; i < static_cast<int>(t.outs.size()); ++i)
      if (t.gmask[k] >> i & 1) img.push_back(outl[i]);
    g[t.ins[k]] = std::move(img);
  }
  return Problem(t.delta, si, so, std::move(node), std::move(edge), std::move(g));
}

Tiny random_tiny(std::mt19937_64& rng) {
  Tiny t;
  t.delta = 1 + static_cast<int>(rng() % 2);
  int s = 1 + static_cast<int>(rng() % 3);
  int si = 1 + static_cast<int>(rng() % 2);
  const char* outs[] = {"A", "B", "C"};
  const char* ins[] = {"x", "y"};
  for (int i = 0; i < s; ++i) t.outs.push_back(outs[i]);
  for (int i = 0; i < si; ++i) t.ins.push_back(ins[i]);
  for (int d = 1; d <= t.delta; ++d) {
    std::vector<int> cand(d, 0);
    std::function<void(int, int)> rec = [&](int pos, int lo) {
      if (pos == d) {
        if (rng() % 3) t.node[d].insert(cand);
        return;
      }
      for (int m = lo; m < s; ++m) {
        cand[pos] = m;
        rec(pos + 1, m);
      }
    };
    rec(0, 0);
  }
  for (int i = 0; i < s; ++i)
    for (int j = i; j < s; ++j)
      if (rng() % 2) t.edge.insert({i, j});
  for (int i = 0; i < si; ++i) t.gmask.push_back(1 + static_cast<int>(rng() % ((1 << s) - 1)));
  return t;
}

PortGraph random_forest(int n, int delta, const Alphabet& sin, std::uint64_t seed,
                        int components = 1) {
  GenSpec gs;
  gs.n = n;
  gs.delta = delta;
  gs.topology = components > 1 ? Topology::Forest : Topology::UniformRandomTree;
  gs.forest_components = components;
  gs.sigma_in = sin;
  gs.seed = seed;
  return generate(gs);
}

std::set<std::string> run_texts(const LocalAlgorithm& a, const PortGraph& g) {
  HalfEdgeLabeling f = run_local(a, g);
  std::set<std::string> texts;
  for (int v = 0; v < g.n(); ++v)
    for (int j = 0; j < g.deg(v); ++j) texts.insert(f.at(v, j + 1).text());
  return texts;
}

}  // namespace

TEST_CASE("zero-round search on the fixture problems") {
  auto p1 = parse_problem(kTrivial);
  auto z1 = find_zero_round(p1);
  REQUIRE(z1.has_value());
  CHECK(z1->table.size() == 2);
  CHECK(z1->table.at("1|bot") == std::vector<Label>{L("X")});
  CHECK(z1->table.at("2|bot,bot") == std::vector<Label>{L("X"), L("X")});
  CHECK(serialize_zero_round(*z1) ==
        "zr d=1 in=bot -> X\n"
        "zr d=2 in=bot,bot -> X,X\n");

  CHECK(!find_zero_round(parse_problem(kTwoCol)).has_value());

  auto pc = parse_problem(kCopy);
  auto zc = find_zero_round(pc);
  REQUIRE(zc.has_value());
  CHECK(zc->table.size() == 14);  // 2 + 4 + 8 input tuples
  CHECK(zc->table.at("2|a,b") == std::vector<Label>{L("A"), L("B")});
  CHECK(zc->table.at("3|b,a,b") == std::vector<Label>{L("B"), L("A"), L("B")});
}

TEST_CASE("zero-round search matches direct lexicographic enumeration") {
  std::mt19937_64 rng(2024);
  int found = 0;
  for (int trial = 0; trial < 120; ++trial) {
    Problem p = to_problem(random_tiny(rng));
    auto got = find_zero_round(p);
    auto want = oracle_zero_round(p);
    REQUIRE(got.has_value() == want.has_value());
    if (got) {
      ++found;
      CHECK(got->table == want->table);
    }
  }
  CHECK(found > 10);  // the sample exercises both outcomes
}

TEST_CASE("zero-round witnesses verify on random forests") {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 40; ++trial) {
    Problem p = to_problem(random_tiny(rng));
    auto z = find_zero_round(p);
    if (!z) continue;
    auto sp = std::make_shared<Problem>(p);
    LocalAlgorithm a = inflate_zero_round(*z, 0, sp);
    int n = p.delta() == 1 ? 2 : 1 + static_cast<int>(rng() % 20);
    PortGraph g = random_forest(n, p.delta(), p.sigma_in(), rng(),
                                p.delta() == 1 ? 1 : 1 + static_cast<int>(rng() % 2));
    CHECK(verify_nec(g, run_local(a, g), p).empty());
  }
}

TEST_CASE("dropping a round from the constant algorithm") {
  auto p1 = std::make_shared<Problem>(parse_problem(kTrivial));
  auto z1 = find_zero_round(*p1);
  REQUIRE(z1.has_value());
  LocalAlgorithm one = inflate_zero_round(*z1, 1, p1);
  LocalAlgorithm fast = derive_speedup_algorithm(one);
  CHECK(fast.radius == 0);
  CHECK(fast.mode == IdMode::PortNumbering);
  Problem sped = speedup_problem(*p1);
  REQUIRE(fast.problem != nullptr);
  CHECK(*fast.problem == sped);

  PortGraph g = random_forest(12, 2, p1->sigma_in(), 77);
  CHECK(run_texts(fast, g) == std::set<std::string>{"{{X}}"});
  CHECK(verify_nec(g, run_local(fast, g), sped).empty());
}

TEST_CASE("dropping a round from the copy algorithm") {
  auto pc = std::make_shared<Problem>(parse_problem(kCopy));
  auto zc = find_zero_round(*pc);
  REQUIRE(zc.has_value());
  LocalAlgorithm one = inflate_zero_round(*zc, 1, pc);
  Guard wide;
  wide.limit = 1ull << 26;  // the completion estimate overshoots the default
  LocalAlgorithm fast = derive_speedup_algorithm(one, wide);
  CHECK(fast.radius == 0);
  Problem sped = speedup_problem(*pc);

  for (std::uint64_t seed = 0; seed < 12; ++seed) {
    PortGraph g = random_forest(4 + static_cast<int>(seed * 2), 3, pc->sigma_in(), seed,
                                1 + static_cast<int>(seed % 3));
    HalfEdgeLabeling f = run_local(fast, g);
    CHECK(verify_nec(g, f, sped).empty());
    for (int v = 0; v < g.n(); ++v)
      for (int j = 0; j < g.deg(v); ++j) {
        bool a_in = g.node(v).in[j] == L("a");
        CHECK(f.at(v, j + 1).text() == (a_in ? "{{A}}" : "{{B}}"));
      }
  }
}

TEST_CASE("adding a round back from a zero-round set-of-sets rule") {
  auto p1 = std::make_shared<Problem>(parse_problem(kTrivial));
  Problem sped = speedup_problem(*p1);
  auto z0 = find_zero_round(sped);
  REQUIRE(z0.has_value());
  LocalAlgorithm fast = inflate_zero_round(*z0, 0, std::make_shared<Problem>(sped));
  LocalAlgorithm slow = derive_slowdown_algorithm(fast, p1);
  CHECK(slow.radius == 1);
  CHECK(slow.mode == IdMode::PortNumbering);

  for (std::uint64_t seed = 0; seed < 15; ++seed) {
    PortGraph g = random_forest(3 + static_cast<int>(seed), 2, p1->sigma_in(), 40 + seed);
    HalfEdgeLabeling f = run_local(slow, g);
    CHECK(verify_nec(g, f, *p1).empty());
    for (int v = 0; v < g.n(); ++v)
      for (int j = 0; j < g.deg(v); ++j) CHECK(f.at(v, j + 1) == L("X"));
  }
}

TEST_CASE("slowdown then speedup across the copy problem") {
  auto pc = std::make_shared<Problem>(parse_problem(kCopy));
  Problem sped = speedup_problem(*pc);
  auto z0 = find_zero_round(sped);
  REQUIRE(z0.has_value());
  LocalAlgorithm fast = inflate_zero_round(*z0, 0, std::make_shared<Problem>(sped));
  LocalAlgorithm slow = derive_slowdown_algorithm(fast, pc);
  CHECK(slow.radius == 1);

  for (std::uint64_t seed = 0; seed < 12; ++seed) {
    PortGraph g = random_forest(5 + static_cast<int>(seed * 2), 3, pc->sigma_in(), 90 + seed,
                                1 + static_cast<int>(seed % 2));
    CHECK(verify_nec(g, run_local(slow, g), *pc).empty());
  }
}

TEST_CASE("mode flag survives the slowdown") {
  auto p1 = std::make_shared<Problem>(parse_problem(kTrivial));
  Problem sped = speedup_problem(*p1);
  auto z0 = find_zero_round(sped);
  REQUIRE(z0.has_value());
  LocalAlgorithm fast = inflate_zero_round(*z0, 0, std::make_shared<Problem>(sped));
  fast.mode = IdMode::OrderInvariant;
  LocalAlgorithm slow = derive_slowdown_algorithm(fast, p1);
  CHECK(slow.mode == IdMode::OrderInvariant);
  CHECK_THROWS_AS(
      [&] {
        LocalAlgorithm r = fast;
        r.mode = IdMode::Randomized;
        return derive_slowdown_algorithm(r, p1);
      }(),
      LclError);
}

TEST_CASE("order-invariant lock normalizes identifier values") {
  auto p1 = std::make_shared<Problem>(parse_problem(kTrivial));
  auto z1 = find_zero_round(*p1);
  LocalAlgorithm one = inflate_zero_round(*z1, 1, p1);
  LocalAlgorithm locked = lock_order_invariant(one, 16);
  CHECK(locked.mode == IdMode::OrderInvariant);
  CHECK(locked.locked_n0 == 16);
  CHECK(locked.radius == one.radius);

  for (int n : {10, 40, 200}) {
    PortGraph g0 = random_forest(n, 2, p1->sigma_in(), 7 + n);
    PortGraph g = assign_ids(g0, IdMode::DeterministicId, 2, 3);
    HalfEdgeLabeling f0 = run_local(locked, g);
    CHECK(verify_nec(g, f0, *p1).empty());
    for (std::uint64_t seed = 0; seed < 5; ++seed) {
      PortGraph h = remap_ids_order_preserving(g, seed);
      CHECK(run_local(locked, h) == f0);
    }
  }
  // radius-2 views over degree-2 graphs hold 5 nodes; ranks need headroom
  CHECK_THROWS_AS(lock_order_invariant(one, 10), LclError);
}

TEST_CASE("algorithm files round trip through parse and serialize") {
  auto p1 = std::make_shared<Problem>(parse_problem(kTrivial));
  Problem sped = speedup_problem(*p1);
  auto z0 = find_zero_round(sped);
  LocalAlgorithm fast = inflate_zero_round(*z0, 0, std::make_shared<Problem>(sped));
  LocalAlgorithm slow = derive_slowdown_algorithm(fast, p1);

  std::string text = serialize_algorithm(slow);
  LocalAlgorithm back = parse_algorithm(text, ".", p1);
  CHECK(back.radius == slow.radius);
  CHECK(back.mode == slow.mode);
  CHECK(back.table == slow.table);
  CHECK(back.zr.table == slow.zr.table);
  CHECK(serialize_algorithm(back) == text);

  PortGraph g = random_forest(9, 2, p1->sigma_in(), 123);
  CHECK(run_local(back, g) == run_local(slow, g));
}
