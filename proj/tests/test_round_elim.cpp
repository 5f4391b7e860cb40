#include <algorithm>
#include <functional>
#include <map>
#include <random>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "doctest.h"
#include "lcl/error.hpp"
#include "lcl/label.hpp"
#include "lcl/problem.hpp"
#include "lcl/round_elim.hpp"

using namespace lcl;

namespace {

Label L(const std::string& s) { return Label::base(s); }

// Independent miniature problem representation over label indexes, used to
// drive a bitmask oracle that checks the quantified conditions literally.
struct Tiny {
  int delta = 2;
  std::vector<std::string> outs;
  std::vector<std::string> ins;
  std::map<int, std::set<std::vector<int>>> node;  // degree -> sorted index tuples
  std::set<std::pair<int, int>> edge;              // i <= j
  std::vector<int> gmask;                          // per input, nonzero
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

// Shape of a power-set problem with subset labels written as bitmasks.
struct PowShape {
  std::map<int, std::set<std::vector<int>>> node;
  std::set<std::pair<int, int>> edge;
  std::vector<std::set<int>> g;

  bool operator==(const PowShape& o) const {
    return node == o.node && edge == o.edge && g == o.g;
  }
};

std::vector<int> bits_of(int mask) {
  std::vector<int> out;
  for (int i = 0; mask >> i; ++i)
    if (mask >> i & 1) out.push_back(i);
  return out;
}

// Evaluates the quantifier over all selections from the given masks.
bool quantified(const std::vector<int>& masks, bool exists,
                const std::function<bool(const std::vector<int>&)>& pred) {
  std::vector<std::vector<int>> members;
  for (int m : masks) {
    members.push_back(bits_of(m));
    if (members.back().empty()) return !exists;  // empty selection space
  }
  std::vector<std::size_t> idx(masks.size(), 0);
  std::vector<int> pick(masks.size());
  while (true) {
    for (std::size_t j = 0; j < masks.size(); ++j) pick[j] = members[j][idx[j]];
    bool ok = pred(pick);
    if (exists && ok) return true;
    if (!exists && !ok) return false;
    std::size_t j = 0;
    while (j < masks.size() && ++idx[j] == members[j].size()) idx[j++] = 0;
    if (j == masks.size()) return !exists;
  }
}

PowShape oracle_half(const Tiny& t, bool node_exists, bool edge_exists) {
  PowShape out;
  int full = 1 << t.outs.size();
  auto node_pred = [&](int d) {
    return [&, d](const std::vector<int>& pick) {
      std::vector<int> srt = pick;
      std::sort(srt.begin(), srt.end());
      auto it = t.node.find(d);
      return it != t.node.end() && it->second.count(srt) > 0;
    };
  };
  for (int d = 1; d <= t.delta; ++d) {
    std::vector<int> cand(d, 0);
    std::function<void(int, int)> rec = [&](int pos, int lo) {
      if (pos == d) {
        if (quantified(cand, node_exists, node_pred(d))) out.node[d].insert(cand);
        return;
      }
      for (int m = lo; m < full; ++m) {
        cand[pos] = m;
        rec(pos + 1, m);
      }
    };
    rec(0, 0);
  }
  for (int m1 = 0; m1 < full; ++m1)
    for (int m2 = m1; m2 < full; ++m2) {
      bool ok = quantified({m1, m2}, edge_exists, [&](const std::vector<int>& pick) {
        int a = std::min(pick[0], pick[1]), b = std::max(pick[0], pick[1]);
        return t.edge.count({a, b}) > 0;
      });
      if (ok) out.edge.insert({m1, m2});
    }
  for (int gm : t.gmask) {
    std::set<int> subs;
    int sub = gm;
    while (true) {
      subs.insert(sub);
      if (sub == 0) break;
      sub = (sub - 1) & gm;
    }
    out.g.push_back(std::move(subs));
  }
  return out;
}

int mask_of(const Label& l, const std::map<std::string, int>& base_idx) {
  int m = 0;
  for (const auto& e : l.elements()) m |= 1 << base_idx.at(e.text());
  return m;
}

PowShape shape_of(const Problem& q, const Tiny& t) {
  std::map<std::string, int> base_idx;
  for (int i = 0; i < static_cast<int>(t.outs.size()); ++i) base_idx[t.outs[i]] = i;
  PowShape out;
  for (int d = 1; d <= q.delta(); ++d)
    for (const auto& c : q.node_configs(d)) {
      std::vector<int> masks;
      for (const auto& l : c.labels()) masks.push_back(mask_of(l, base_idx));
      std::sort(masks.begin(), masks.end());
      out.node[d].insert(std::move(masks));
    }
  for (const auto& c : q.edge_constraint()) {
    int a = mask_of(c.labels()[0], base_idx);
    int b = mask_of(c.labels()[1], base_idx);
    out.edge.insert({std::min(a, b), std::max(a, b)});
  }
  for (const auto& in_name : t.ins) {
    std::set<int> subs;
    for (const auto& l : q.g().at(in_name)) subs.insert(mask_of(l, base_idx));
    out.g.push_back(std::move(subs));
  }
  return out;
}

Tiny tiny_trivial() {
  Tiny t;
  t.delta = 2;
  t.outs = {"X"};
  t.ins = {"bot"};
  t.node[1] = {{0}};
  t.node[2] = {{0, 0}};
  t.edge = {{0, 0}};
  t.gmask = {1};
  return t;
}

Tiny tiny_twocol() {
  Tiny t;
  t.delta = 2;
  t.outs = {"A", "B"};
  t.ins = {"bot"};
  t.node[1] = {{0}, {1}};
  t.node[2] = {{0, 0}, {1, 1}};
  t.edge = {{0, 1}};
  t.gmask = {3};
  return t;
}

Tiny random_tiny(std::mt19937_64& rng) {
  Tiny t;
  t.delta = 1 + static_cast<int>(rng() % 3);
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
        if (rng() % 2) t.node[d].insert(cand);
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

}  // namespace

TEST_CASE("first half-step on the single-label problem") {
  Tiny t = tiny_trivial();
  Problem r = re(to_problem(t));
  CHECK(r.sigma_out().size() == 2);
  std::set<std::string> names;
  for (const auto& l : r.sigma_out().labels()) names.insert(l.text());
  CHECK(names == std::set<std::string>{"{}", "{X}"});
  PowShape got = shape_of(r, t);
  CHECK(got.node[1] == std::set<std::vector<int>>{{1}});
  CHECK(got.node[2] == std::set<std::vector<int>>{{1, 1}});
  CHECK(got.edge == std::set<std::pair<int, int>>{{0, 0}, {0, 1}, {1, 1}});
  CHECK(got.g[0] == std::set<int>{0, 1});
  CHECK(got == oracle_half(t, true, false));
}

TEST_CASE("second half-step on the single-label problem") {
  Tiny t = tiny_trivial();
  Problem r = rere(to_problem(t));
  PowShape got = shape_of(r, t);
  CHECK(got.edge == std::set<std::pair<int, int>>{{1, 1}});
  CHECK(got.node[1] == std::set<std::vector<int>>{{0}, {1}});
  CHECK(got.node[2] == std::set<std::vector<int>>{{0, 0}, {0, 1}, {1, 1}});
  CHECK(got == oracle_half(t, false, true));
}

TEST_CASE("first half-step on the two-coloring problem") {
  Tiny t = tiny_twocol();
  Problem r = re(to_problem(t));
  PowShape got = shape_of(r, t);
  // masks: 0 = {}, 1 = {A}, 2 = {B}, 3 = {A,B}
  std::set<std::pair<int, int>> nonempty;
  for (const auto& [a, b] : got.edge)
    if (a != 0 && b != 0) nonempty.insert({a, b});
  CHECK(nonempty == std::set<std::pair<int, int>>{{1, 2}});
  CHECK(got.node[2] ==
        std::set<std::vector<int>>{{1, 1}, {2, 2}, {1, 3}, {2, 3}, {3, 3}});
  CHECK(got == oracle_half(t, true, false));
}

TEST_CASE("second half-step on the two-coloring problem") {
  Tiny t = tiny_twocol();
  Problem r = rere(to_problem(t));
  PowShape got = shape_of(r, t);
  CHECK(got.edge == std::set<std::pair<int, int>>{{1, 2}, {1, 3}, {2, 3}, {3, 3}});
  CHECK(got.node[2] == std::set<std::vector<int>>{{0, 0}, {0, 1}, {0, 2}, {0, 3}, {1, 1}, {2, 2}});
  CHECK(got == oracle_half(t, false, true));
}

TEST_CASE("half-steps match the bitmask oracle on random problems") {
  std::mt19937_64 rng(99);
  for (int trial = 0; trial < 200; ++trial) {
    Tiny t = random_tiny(rng);
    Problem p = to_problem(t);
    Problem r1 = re(p);
    Problem r2 = rere(p);
    CHECK(r1.sigma_out().size() == (std::size_t(1) << t.outs.size()));
    CHECK(r2.sigma_out().size() == (std::size_t(1) << t.outs.size()));
    CHECK(shape_of(r1, t) == oracle_half(t, true, false));
    CHECK(shape_of(r2, t) == oracle_half(t, false, true));
  }
}

TEST_CASE("constraint monotonicity carries through the half-steps") {
  std::mt19937_64 rng(7);
  auto subset_shape = [](const PowShape& a, const PowShape& b) {
    for (const auto& [d, cfgs] : a.node)
      for (const auto& c : cfgs)
        if (!b.node.count(d) || !b.node.at(d).count(c)) return false;
    return std::includes(b.edge.begin(), b.edge.end(), a.edge.begin(), a.edge.end());
  };
  for (int trial = 0; trial < 30; ++trial) {
    Tiny q = random_tiny(rng);
    Tiny p = q;
    for (auto& [d, cfgs] : p.node) {
      std::set<std::vector<int>> kept;
      for (const auto& c : cfgs)
        if (rng() % 2) kept.insert(c);
      cfgs = std::move(kept);
    }
    std::set<std::pair<int, int>> kept_e;
    for (const auto& e : p.edge)
      if (rng() % 2) kept_e.insert(e);
    p.edge = std::move(kept_e);
    CHECK(subset_shape(shape_of(re(to_problem(p)), p), shape_of(re(to_problem(q)), q)));
    CHECK(subset_shape(shape_of(rere(to_problem(p)), p), shape_of(rere(to_problem(q)), q)));
  }
}

TEST_CASE("full step composes the half-steps") {
  std::mt19937_64 rng(1234);
  for (int trial = 0; trial < 50; ++trial) {
    Tiny t = random_tiny(rng);
    if (t.outs.size() > 2) t.outs.resize(2);  // keep 2^2^s small
    for (auto& m : t.gmask) m &= (1 << t.outs.size()) - 1;
    for (auto& m : t.gmask)
      if (!m) m = 1;
    Tiny clean;  // drop configs over removed labels
    clean = t;
    clean.node.clear();
    for (const auto& [d, cfgs] : t.node)
      for (const auto& c : cfgs)
        if (std::all_of(c.begin(), c.end(),
                        [&](int i) { return i < static_cast<int>(t.outs.size()); }))
          clean.node[d].insert(c);
    clean.edge.clear();
    for (const auto& [a, b] : t.edge)
      if (b < static_cast<int>(t.outs.size())) clean.edge.insert({a, b});
    Problem p = to_problem(clean);
    CHECK(speedup_problem(p) == rere(re(p)));
  }
  Problem p1 = to_problem(tiny_trivial());
  Problem p2 = to_problem(tiny_twocol());
  CHECK(speedup_problem(p1).sigma_out().size() == 4);
  CHECK(speedup_problem(p2).sigma_out().size() == 16);
}

TEST_CASE("iterated speedup reports sizes and truncates at the guard") {
  Problem p1 = to_problem(tiny_trivial());
  auto seq = iterate_sequence(p1, 2);
  CHECK(seq.projected_sizes == std::vector<std::string>{"1", "4", "65536"});
  CHECK(seq.truncated);
  CHECK(!seq.truncation_reason.empty());
  CHECK(seq.problems.size() == 2);  // the 65536-label step is never materialized
  CHECK(seq.stats.size() == seq.problems.size());
  CHECK(seq.stats[1].sigma_out_size == "4");

  Problem p2 = to_problem(tiny_twocol());
  auto seq2 = iterate_sequence(p2, 1);
  CHECK(!seq2.truncated);
  CHECK(seq2.projected_sizes == std::vector<std::string>{"2", "16"});
  CHECK(seq2.problems.size() == 2);
  CHECK(seq2.problems[1].sigma_out().size() == 16);

  auto seq0 = iterate_sequence(p1, 0);
  CHECK(seq0.problems.size() == 1);
  CHECK(!seq0.truncated);
  CHECK(seq0.problems[0] == p1);
}

TEST_CASE("projected sizes go symbolic past 64 bits") {
  Tiny t = tiny_twocol();
  auto seq = iterate_sequence(to_problem(t), 3);
  CHECK(seq.truncated);
  REQUIRE(seq.projected_sizes.size() == 4);
  CHECK(seq.projected_sizes[2] == "2^65536");
  CHECK(seq.projected_sizes[3] == "2^2^2^65536");
}

TEST_CASE("size guard trips on oversized alphabets") {
  Tiny t = tiny_twocol();
  Problem p = to_problem(t);
  Guard tight;
  tight.limit = 4;
  CHECK_THROWS_AS(re(p, tight), GuardError);
}

TEST_CASE("pruning drops the unusable empty set") {
  Problem p1 = to_problem(tiny_trivial());
  Problem r = prune_unusable(re(p1));
  REQUIRE(r.sigma_out().size() == 1);
  CHECK(r.sigma_out().labels()[0].text() == "{X}");
  CHECK(r.edge_constraint().size() == 1);
  CHECK(r.g_of(L("bot")).size() == 1);

  Problem rr = prune_unusable(rere(p1));
  REQUIRE(rr.sigma_out().size() == 1);
  CHECK(rr.sigma_out().labels()[0].text() == "{X}");
  CHECK(rr.node_configs(2).size() == 1);
}

TEST_CASE("failure budget freezes the worked exponent") {
  auto b = failure_budget(3, 2, 2, 2, 4, -40);
  CHECK(b.delta_pow_T == 9);
  CHECK(b.log2_Y == "9.000000000");  // Y = 2^(3^2) = 512
  CHECK(b.log2_p == "-40.000000000");

  auto one = failure_budget(3, 5, 1, 2, 4, -40);
  CHECK(one.log2_Y == "0.000000000");
  auto zero_t = failure_budget(2, 0, 2, 2, 4, -40);
  CHECK(zero_t.log2_Y == "1.000000000");
}

TEST_CASE("failure budget moves monotonically in its arguments") {
  auto base = failure_budget(3, 2, 2, 2, 4, -40);
  CHECK(failure_budget(3, 2, 2, 2, 4, -60).log2_p2_d < base.log2_p2_d);
  CHECK(failure_budget(3, 2, 3, 2, 4, -40).log2_p2_d >= base.log2_p2_d);
  CHECK(failure_budget(3, 2, 2, 3, 4, -40).log2_p2_d >= base.log2_p2_d);
  CHECK(failure_budget(3, 2, 2, 2, 5, -40).log2_p2_d >= base.log2_p2_d);
}

TEST_CASE("failure budget validates its inputs") {
  CHECK_THROWS_AS(failure_budget(1, 2, 2, 2, 4, -40), LclError);
  CHECK_THROWS_AS(failure_budget(3, 2, 0, 2, 4, -40), LclError);
  CHECK_THROWS_AS(failure_budget(3, 2, 2, 2, 4, 1.0), LclError);
}

TEST_CASE("failure budget side conditions react to n") {
  // 2^sre <= log2 log2 n and p2 <= 1/log2 n both need enormous n; at small n
  // with modest parameters they fail, and with sin=sout=sre=1, tiny failure
  // probability, and astronomically large n the alphabet condition holds.
  auto small = failure_budget(3, 2, 2, 2, 4, -40, 100);
  CHECK(small.has_n);
  CHECK(!small.cond_alphabet);
  auto big = failure_budget(2, 0, 1, 1, 1, -200, 1ull << 62);
  CHECK(big.cond_alphabet);  // 2^1 = 2 <= log2(62) ~ 5.95
  CHECK(big.cond_p);
}
