#include <set>
#include <string>
#include <vector>

#include "doctest.h"
#include "lcl/compiler.hpp"
#include "lcl/error.hpp"
#include "lcl/gen.hpp"
#include "lcl/graph.hpp"
#include "lcl/problem.hpp"
#include "lcl/sim_local.hpp"

using namespace lcl;

namespace {

Label L(const std::string& s) { return Label::base(s); }

// Accepts exactly the radius-1 views whose visible outputs are all equal.
GeneralLcl monochrome() {
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
  return make_general_lcl(2, 1, sin, sout, std::move(acc));
}

std::vector<int> components(const PortGraph& g) {
  std::vector<int> comp(g.n(), -1);
  int c = 0;
  for (int v = 0; v < g.n(); ++v) {
    if (comp[v] >= 0) continue;
    std::vector<int> stack{v};
    comp[v] = c;
    while (!stack.empty()) {
      int u = stack.back();
      stack.pop_back();
      for (int j = 0; j < g.deg(u); ++j)
        if (comp[g.node(u).nbr[j]] < 0) {
          comp[g.node(u).nbr[j]] = c;
          stack.push_back(g.node(u).nbr[j]);
        }
    }
    ++c;
  }
  return comp;
}

HalfEdgeLabeling color_by_component(const PortGraph& g) {
  auto comp = components(g);
  HalfEdgeLabeling f(g);
  for (int v = 0; v < g.n(); ++v)
    for (int j = 0; j < g.deg(v); ++j) f.set(v, j + 1, comp[v] % 2 ? L("B") : L("A"));
  return f;
}

}  // namespace

TEST_CASE("monochrome acceptance set deduplicates the blind isolated view") {
  GeneralLcl l = monochrome();
  // 13 input views; each gets 2 colorings except the isolated node, whose
  // two colorings render identically (no visible half-edge).
  CHECK(l.accepted.size() == 25);
  CHECK(l.delta == 2);
  CHECK(l.radius == 1);
}

TEST_CASE("marked variants pair each accepted view with a root port") {
  GeneralLcl l = monochrome();
  auto marked = enumerate_marked_balls(l);
  // per color: 3 degree-1 views and 9 degree-2 views -> 3 + 18 marks
  CHECK(marked.size() == 42);
  std::set<std::string> texts;
  for (const auto& m : marked) {
    CHECK(m.text().substr(0, 1) == "@");
    texts.insert(m.text());
  }
  CHECK(texts.size() == marked.size());
  Guard tight;
  tight.limit = 10;
  CHECK_THROWS_AS(enumerate_marked_balls(l, tight), GuardError);
}

TEST_CASE("compiling the acceptance problem shapes node constraints per view") {
  GeneralLcl l = monochrome();
  Problem p = compile_general(l);
  CHECK(p.delta() == 2);
  CHECK(p.sigma_out().size() == 42);
  CHECK(p.node_configs(1).size() == 6);    // one config per degree-1 accepted view
  CHECK(p.node_configs(2).size() == 18);
  CHECK(p.g().at("bot").size() == 42);
  // deterministic: byte-identical on recompile
  CHECK(serialize_problem(compile_general(l)) == serialize_problem(p));
}

TEST_CASE("solution transfer round-trips and both directions verify") {
  GeneralLcl l = monochrome();
  Problem p = compile_general(l);
  for (int trial = 0; trial < 30; ++trial) {
    GenSpec gs;
    gs.n = 1 + trial % 12;
    gs.delta = 2;
    gs.topology = trial % 3 == 2 ? Topology::Forest : Topology::UniformRandomTree;
    gs.forest_components = 1 + trial % 3;
    gs.sigma_in = Alphabet({L("bot")});
    gs.seed = 500 + trial;
    PortGraph g = generate(gs);
    HalfEdgeLabeling f = color_by_component(g);
    CHECK(verify_general(g, f, l).empty());
    HalfEdgeLabeling lifted = lift_solution(l, p, g, f);
    CHECK(verify_nec(g, lifted, p).empty());
    HalfEdgeLabeling back = project_solution(l, p, g, lifted);
    CHECK(back == f);
    CHECK(verify_general(g, back, l).empty());
  }
}

TEST_CASE("transfer rejects labelings that do not solve its side") {
  GeneralLcl l = monochrome();
  Problem p = compile_general(l);
  GenSpec gs;
  gs.n = 6;
  gs.delta = 2;
  gs.topology = Topology::Path;
  gs.sigma_in = Alphabet({L("bot")});
  gs.seed = 4;
  PortGraph g = generate(gs);

  HalfEdgeLabeling bad(g);
  for (int v = 0; v < g.n(); ++v)
    for (int j = 0; j < g.deg(v); ++j) bad.set(v, j + 1, v == 0 ? L("A") : L("B"));
  CHECK(!verify_general(g, bad, l).empty());
  CHECK_THROWS_AS(lift_solution(l, p, g, bad), LclError);

  HalfEdgeLabeling f = color_by_component(g);
  HalfEdgeLabeling lifted = lift_solution(l, p, g, f);
  // collapse a degree-2 node's two distinct marks onto one: no view has
  // a repeated mark, so the node constraint must reject it
  int mid = -1;
  for (int v = 0; v < g.n(); ++v)
    if (g.deg(v) == 2) mid = v;
  REQUIRE(mid >= 0);
  HalfEdgeLabeling broken = lifted;
  broken.set(mid, 2, broken.at(mid, 1));
  CHECK(!verify_nec(g, broken, p).empty());
  CHECK_THROWS_AS(project_solution(l, p, g, broken), LclError);
}
