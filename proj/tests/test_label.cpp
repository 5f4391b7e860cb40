#include <vector>

#include "doctest.h"
#include "lcl/label.hpp"
#include "lcl/problem.hpp"

using namespace lcl;

TEST_CASE("base and ball rendering") {
  Label a = Label::base("A");
  CHECK(a.kind() == Label::Kind::Base);
  CHECK(a.text() == "A");
  CHECK(a == Label::base("A"));
  CHECK(a != Label::base("B"));
  Label m = Label::ball("@2:(1;a;-)");
  CHECK(m.kind() == Label::Kind::Ball);
  CHECK(m.text() == "@2:(1;a;-)");
}

TEST_CASE("set labels sort and dedup") {
  Label A = Label::base("A"), B = Label::base("B");
  Label s1 = Label::set({B, A, B}, nullptr);
  Label s2 = Label::set({A, B}, nullptr);
  CHECK(s1 == s2);
  CHECK(s1.elements().size() == 2);
  CHECK(s1.elements()[0] == A);
  Label empty = Label::set({}, nullptr);
  CHECK(empty.text() == "{}");
  CHECK(empty.is_set());
}

TEST_CASE("set rendering respects an alphabet's declaration order") {
  Alphabet alpha({Label::base("Z"), Label::base("A")});
  Label s = Label::set({Label::base("A"), Label::base("Z")}, &alpha);
  // Z is declared first, so it renders first.
  CHECK(s.elements()[0] == Label::base("Z"));
  CHECK(s.elements()[1] == Label::base("A"));
}

TEST_CASE("canonical order: base < ball < set, sets by cardinality") {
  Label A = Label::base("A"), B = Label::base("B");
  Label ball = Label::ball("@1:(1;a;-)");
  Label sAB = Label::set({A, B}, nullptr);
  Label sA = Label::set({A}, nullptr);
  LabelOrder ord;
  CHECK(ord.less(A, ball));
  CHECK(ord.less(ball, sA));
  CHECK(ord.less(sA, sAB));  // smaller cardinality first
  CHECK(ord.less(A, B));
  CHECK_FALSE(ord.less(B, A));
  CHECK_FALSE(ord.less(A, A));

  Alphabet rev({B, A});
  LabelOrder ord2{&rev};
  CHECK(ord2.less(B, A));  // declaration rank wins over symbol order
}

TEST_CASE("alphabet lookups") {
  Alphabet alpha({Label::base("a"), Label::base("b")});
  CHECK(alpha.size() == 2);
  CHECK(alpha.contains(Label::base("a")));
  CHECK_FALSE(alpha.contains(Label::base("c")));
  CHECK(alpha.rank_of(Label::base("b")) == 1);
  CHECK(alpha.rank_of(Label::base("z")) == -1);
  REQUIRE(alpha.find_text("a") != nullptr);
  CHECK(*alpha.find_text("a") == Label::base("a"));
  CHECK(alpha.find_text("zz") == nullptr);
}

TEST_CASE("parse_label_token round trip") {
  Label s = parse_label_token("{A,B}", nullptr);
  CHECK(s.is_set());
  CHECK(s.elements().size() == 2);
  CHECK(parse_label_token(s.text(), nullptr) == s);
  Label nested = parse_label_token("{{A},{A,B}}", nullptr);
  CHECK(nested.elements().size() == 2);
  CHECK(nested.elements()[0].text() == "{A}");  // cardinality order
  Label b = parse_label_token("X", nullptr);
  CHECK(b.kind() == Label::Kind::Base);
}

TEST_CASE("render_labels joins canonical texts") {
  std::vector<Label> ls = {Label::base("A"), Label::set({Label::base("B")}, nullptr)};
  CHECK(render_labels(ls) == "A {B}");
  CHECK(render_labels(ls, ",") == "A,{B}");
}
