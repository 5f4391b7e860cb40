#include <memory>
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
#include "lcl/sim_local.hpp"
#include "lcl/transform.hpp"

using namespace lcl;

namespace {

Label L(const std::string& s) { return Label::base(s); }

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

// A labeled path with the given half-edge inputs, both directions equal.
PortGraph input_path(const std::vector<Label>& node_inputs) {
  PortGraph g;
  g.delta = 2;
  for (std::size_t i = 0; i < node_inputs.size(); ++i) g.add_node();
  for (std::size_t i = 0; i + 1 < node_inputs.size(); ++i)
    g.add_edge(static_cast<int>(i), static_cast<int>(i + 1), node_inputs[i],
               node_inputs[i + 1]);
  return g;
}

LocalAlgorithm copy_algorithm(std::shared_ptr<const Problem> pc, int radius) {
  auto z = find_zero_round(*pc);
  REQUIRE(z.has_value());
  return inflate_zero_round(*z, radius, std::move(pc));
}

HalfEdgeLabeling proper_coloring(const PortGraph& g) {
  // paths generated node-by-node alternate along indices
  HalfEdgeLabeling f(g);
  for (int v = 0; v < g.n(); ++v)
    for (int j = 0; j < g.deg(v); ++j) f.set(v, j + 1, v % 2 ? L("B") : L("A"));
  return f;
}

}  // namespace

TEST_CASE("table execution maps half-edge inputs through the copy rule") {
  auto pc = std::make_shared<Problem>(parse_problem(kCopy));
  LocalAlgorithm a = copy_algorithm(pc, 0);
  PortGraph g = input_path({L("a"), L("b"), L("a")});
  HalfEdgeLabeling f = run_local(a, g);
  CHECK(f.at(0, 1) == L("A"));
  CHECK(f.at(1, 1) == L("B"));
  CHECK(f.at(1, 2) == L("B"));
  CHECK(f.at(2, 1) == L("A"));
  CHECK(verify_nec(g, f, *pc).empty());
}

TEST_CASE("verifier accepts a proper two-coloring and pinpoints breakage") {
  Problem p = parse_problem(kTwoCol);
  GenSpec gs;
  gs.n = 4;
  gs.delta = 2;
  gs.topology = Topology::Path;
  gs.sigma_in = Alphabet({L("bot")});
  PortGraph g = generate(gs);
  HalfEdgeLabeling f = proper_coloring(g);
  CHECK(verify_nec(g, f, p).empty());

  HalfEdgeLabeling bad = f;
  for (int j = 0; j < g.deg(1); ++j) bad.set(1, j + 1, L("A"));  // same as node 0
  auto viols = verify_nec(g, bad, p);
  REQUIRE(!viols.empty());
  bool saw_edge = false;
  for (const auto& v : viols)
    if (v.kind == Violation::Kind::EdgeConfig) {
      saw_edge = true;
      CHECK(v.witness == "{A,A}");
      CHECK(v.line().substr(0, 28) == "VIOLATION edge-config at edg");
    }
  CHECK(saw_edge);
}

TEST_CASE("verifier reports node and g violations with witnesses") {
  Problem p = parse_problem(kCopy);
  PortGraph g = input_path({L("a"), L("b")});
  HalfEdgeLabeling f(g);
  f.set(0, 1, L("B"));  // input a must map to A
  f.set(1, 1, L("B"));
  auto viols = verify_nec(g, f, p);
  bool saw_g = false;
  for (const auto& v : viols)
    if (v.kind == Violation::Kind::GMismatch) {
      saw_g = true;
      CHECK(v.witness == "a -> B");
      CHECK(v.location == "half-edge 0:1");
    }
  CHECK(saw_g);

  Problem p2 = parse_problem(kTwoCol);
  GenSpec gs;
  gs.n = 3;
  gs.delta = 2;
  gs.topology = Topology::Path;
  gs.sigma_in = Alphabet({L("bot")});
  PortGraph g2 = generate(gs);
  HalfEdgeLabeling f2 = proper_coloring(g2);
  f2.set(1, 2, L("A"));  // mid node now outputs {B,A}: no config matches
  auto v2 = verify_nec(g2, f2, p2);
  bool saw_node = false;
  for (const auto& v : v2)
    if (v.kind == Violation::Kind::NodeConfig) {
      saw_node = true;
      CHECK(v.witness == "{A,B}");
      CHECK(v.location == "node 1");
    }
  CHECK(saw_node);
}

TEST_CASE("degree-zero nodes are vacuously valid") {
  Problem p = parse_problem(kTwoCol);
  PortGraph g;
  g.delta = 2;
  g.add_node();
  g.add_node();
  HalfEdgeLabeling f(g);
  CHECK(f.total());
  CHECK(verify_nec(g, f, p).empty());
}

TEST_CASE("general verifier flags exactly the non-monochrome balls") {
  Alphabet sin({L("bot")});
  Alphabet sout({L("A"), L("B")});
  auto balls = enumerate_balls(2, sin, 1, 1u << 20);
  std::vector<Ball> acc;
  for (const auto& b : balls)
    for (const auto& c : sout.labels()) {
      Ball v = b;
      for (auto& nd : v.nodes) nd.out.assign(nd.deg, c);
      acc.push_back(std::move(v));
    }
  GeneralLcl l = make_general_lcl(2, 1, sin, sout, std::move(acc));

  GenSpec gs;
  gs.n = 5;
  gs.delta = 2;
  gs.topology = Topology::Path;
  gs.sigma_in = sin;
  PortGraph g = generate(gs);
  HalfEdgeLabeling f(g);
  for (int v = 0; v < g.n(); ++v)
    for (int j = 0; j < g.deg(v); ++j) f.set(v, j + 1, L("A"));
  CHECK(verify_general(g, f, l).empty());

  f.set(4, 1, L("B"));  // end node flips: its ball and its neighbor's break
  auto viols = verify_general(g, f, l);
  CHECK(viols.size() == 2);
  for (const auto& v : viols) CHECK(v.kind == Violation::Kind::BallNotAccepted);
}

TEST_CASE("labeled_ball attaches outputs by graph origin") {
  auto pc = std::make_shared<Problem>(parse_problem(kCopy));
  LocalAlgorithm a = copy_algorithm(pc, 0);
  PortGraph g = input_path({L("a"), L("b"), L("a")});
  HalfEdgeLabeling f = run_local(a, g);
  Ball b = labeled_ball(g, f, 1, 1);
  CHECK(b.has_outputs());
  EncodeOptions eo;
  eo.with_outputs = true;
  CHECK(encode_ball(b, 1, eo) == "(2;b:B,b:B;)[1:(1;a:A;)[-],1:(1;a:A;)[-]]");
}

TEST_CASE("outputs depend only on the radius-t view") {
  auto pc = std::make_shared<Problem>(parse_problem(kCopy));
  std::mt19937_64 rng(31);
  for (int radius = 0; radius <= 2; ++radius) {
    LocalAlgorithm a = copy_algorithm(pc, radius);
    for (int trial = 0; trial < 25; ++trial) {
      GenSpec gs;
      gs.n = 8 + static_cast<int>(rng() % 10);
      gs.delta = 3;
      gs.sigma_in = pc->sigma_in();
      gs.seed = rng();
      PortGraph g = generate(gs);
      HalfEdgeLabeling before = run_local(a, g);
      // pick a center, then rewrite an input strictly outside its view
      int center = static_cast<int>(rng() % g.n());
      std::set<int> inside;
      Ball b = extract_ball(g, center, radius);
      std::vector<int> origin;
      extract_ball(g, center, radius, &origin);
      for (int idx : origin) inside.insert(idx);
      std::vector<int> outside;
      for (int v = 0; v < g.n(); ++v)
        if (!inside.count(v)) outside.push_back(v);
      if (outside.empty()) continue;
      PortGraph h = g;
      int far = outside[rng() % outside.size()];
      for (int j = 0; j < h.deg(far); ++j)
        h.node_mut(far).in[j] =
            h.node_mut(far).in[j] == L("a") ? L("b") : L("a");
      HalfEdgeLabeling after = run_local(a, h);
      for (int j = 0; j < g.deg(center); ++j)
        CHECK(after.at(center, j + 1) == before.at(center, j + 1));
    }
  }
}

TEST_CASE("execution demands identifiers only when the mode reads them") {
  auto pc = std::make_shared<Problem>(parse_problem(kCopy));
  LocalAlgorithm a = copy_algorithm(pc, 1);
  a.mode = IdMode::OrderInvariant;
  PortGraph g = input_path({L("a"), L("b"), L("a")});
  CHECK_THROWS_AS(run_local(a, g), LclError);  // no ids assigned
  a.mode = IdMode::Randomized;
  CHECK_THROWS_AS(run_local(a, g), LclError);  // out of scope
}
