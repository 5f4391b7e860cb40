#include <fstream>
#include <sstream>

#include "doctest.h"
#include "lcl/ball.hpp"
#include "lcl/error.hpp"
#include "lcl/problem.hpp"

using namespace lcl;

namespace {

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  REQUIRE(in.good());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

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

}  // namespace

TEST_CASE("single-output problem parses") {
  Problem p = parse_problem(kTrivial);
  CHECK(p.delta() == 2);
  CHECK(p.sigma_out().size() == 1);
  CHECK(p.sigma_in().size() == 1);
  Label X = Label::base("X");
  CHECK(p.node_allows(1, {X}));
  CHECK(p.node_allows(2, {X, X}));
  CHECK(p.edge_allows(X, X));
  CHECK(p.g_allows(Label::base("bot"), X));
}

TEST_CASE("two-coloring problem parses with 2 node configs at degree 2") {
  Problem p = parse_problem(kTwoCol);
  CHECK(p.node_configs(2).size() == 2);
  CHECK(p.node_configs(1).size() == 2);
  Label A = Label::base("A"), B = Label::base("B");
  CHECK(p.node_allows(2, {A, A}));
  CHECK(p.node_allows(2, {B, B}));
  CHECK_FALSE(p.node_allows(2, {A, B}));
  CHECK(p.edge_allows(A, B));
  CHECK(p.edge_allows(B, A));  // unordered
  CHECK_FALSE(p.edge_allows(A, A));
}

TEST_CASE("serialize/parse round trip is the identity on canonical text") {
  for (const char* text : {kTrivial, kTwoCol}) {
    Problem p = parse_problem(text);
    std::string s1 = serialize_problem(p);
    Problem q = parse_problem(s1);
    CHECK(serialize_problem(q) == s1);
    CHECK(q.delta() == p.delta());
    CHECK(q.sigma_out() == p.sigma_out());
  }
}

TEST_CASE("parse rejects malformed input") {
  CHECK_THROWS_AS(parse_problem("delta: 2\n"), ParseError);
  CHECK_THROWS_AS(parse_problem("input: a\noutput: A\ng: a -> A\n"), ParseError);
  // undeclared label in a constraint
  CHECK_THROWS_AS(parse_problem("delta: 1\ninput: a\noutput: A\ng: a -> A\nnode 1: Z\n"),
                  ParseError);
  // arity mismatch
  CHECK_THROWS_AS(parse_problem("delta: 2\ninput: a\noutput: A\ng: a -> A\nnode 2: A\n"),
                  ParseError);
  // g not total
  CHECK_THROWS_AS(parse_problem("delta: 1\ninput: a b\noutput: A\ng: a -> A\nnode 1: A\n"),
                  ParseError);
}

TEST_CASE("validate reports unsolvable degrees") {
  Problem ok = parse_problem(kTrivial);
  CHECK(validate_problem(ok).empty());

  // drop the degree-2 constraint of the two-coloring problem
  Problem broken = parse_problem(
      "delta: 2\n"
      "input: bot\n"
      "output: A B\n"
      "g: bot -> A B\n"
      "node 1: A | B\n"
      "edge: A B\n");
  auto diags = validate_problem(broken);
  REQUIRE(!diags.empty());
  bool found = false;
  for (const auto& d : diags)
    if (d.message.find("degree 2") != std::string::npos) found = true;
  CHECK(found);
}

TEST_CASE("prune_unusable is a fixed point on the single-output problem") {
  Problem p = parse_problem(kTrivial);
  Problem q = prune_unusable(p);
  CHECK(serialize_problem(q) == serialize_problem(p));
}

TEST_CASE("prune_unusable drops labels that no configuration uses") {
  Problem p = parse_problem(
      "delta: 2\n"
      "input: bot\n"
      "output: A B C\n"
      "g: bot -> A B C\n"
      "node 1: A | B\n"
      "node 2: A A | B B\n"
      "edge: A B | A C\n");
  Problem q = prune_unusable(p);
  CHECK(q.sigma_out().size() == 2);
  CHECK_FALSE(q.sigma_out().contains(Label::base("C")));
}

TEST_CASE("shipped problem files parse to the expected shapes") {
  Problem triv = parse_problem(slurp(std::string(LCL_PROBLEMS_DIR) + "/trivial.lcl"));
  CHECK(triv.sigma_out().size() == 1);
  Problem two = parse_problem(slurp(std::string(LCL_PROBLEMS_DIR) + "/twocol.lcl"));
  CHECK(two.node_configs(2).size() == 2);
  Problem copy = parse_problem(slurp(std::string(LCL_PROBLEMS_DIR) + "/copy.lcl"));
  CHECK(copy.delta() == 3);
  CHECK(copy.sigma_in().size() == 2);
  CHECK(copy.g_of(Label::base("a")).size() == 1);
}

TEST_CASE("general description round trip") {
  // a 2-node path, outputs A at the root side and B beyond
  Ball b;
  b.radius = 1;
  b.nodes.resize(2);
  b.nodes[0] = {1, {Label::base("bot")}, {Label::base("A")}, {1}, {1}, -1};
  b.nodes[1] = {1, {Label::base("bot")}, {Label::base("B")}, {0}, {1}, -1};
  EncodeOptions eo;
  eo.with_outputs = true;
  std::string text = "delta: 2\nradius: 1\ninput: bot\noutput: A B\nball: " +
                     encode_ball(b, 1, eo) + "\n";
  GeneralLcl l = parse_general(text);
  CHECK(l.delta == 2);
  CHECK(l.radius == 1);
  CHECK(l.accepted.size() == 1);
  std::string s = serialize_general(l);
  GeneralLcl l2 = parse_general(s);
  CHECK(serialize_general(l2) == s);
  CHECK(l2.accepts(encode_ball(l.accepted[0], 1, eo)));
}
