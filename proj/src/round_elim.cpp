#include "lcl/round_elim.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <functional>

namespace lcl {

namespace {

void guard_check(const Guard& guard, const mpz_class& estimate, const std::string& what) {
  if (estimate > mpz_class(static_cast<unsigned long>(guard.limit)))
    throw GuardError(estimate.get_str(), guard.limit, what);
}

// Estimated materialization volume of a power-set step over s labels:
// subset labels plus candidate edge pairs plus candidate node multisets.
mpz_class powerset_items(unsigned long s, int delta) {
  mpz_class big;
  mpz_ui_pow_ui(big.get_mpz_t(), 2, s);
  mpz_class items = big;
  items += binomial(big + 1, 2);
  for (int i = 1; i <= delta; ++i) items += multiset_count(big, static_cast<unsigned long>(i));
  return items;
}

// All subsets of p's output alphabet as canonical set labels, plus the new
// alphabet (sorted by cardinality then rendering).
struct PowerSet {
  std::vector<Label> subsets;  // indexed by bitmask over p.sigma_out
  Alphabet alphabet;
};

PowerSet power_alphabet(const Problem& p) {
  const auto& base = p.sigma_out().labels();
  std::size_t s = base.size();
  PowerSet out;
  out.subsets.resize(std::size_t(1) << s);
  for (std::size_t mask = 0; mask < out.subsets.size(); ++mask) {
    std::vector<Label> elems;
    for (std::size_t i = 0; i < s; ++i)
      if (mask & (std::size_t(1) << i)) elems.push_back(base[i]);
    out.subsets[mask] = Label::set(std::move(elems), &p.sigma_out());
  }
  std::vector<Label> sorted = out.subsets;
  LabelOrder ord{&p.sigma_out()};
  sort_labels(sorted, ord);
  out.alphabet = Alphabet(sorted);
  return out;
}

// Tests the quantified selection condition on a tuple of set labels:
// exists=true: some selection satisfies pred; exists=false: every selection
// does (vacuously true when any member is empty and exists is false... the
// empty member makes the selection space empty, so "every" holds and "some"
// fails).
bool selection_check(const std::vector<Label>& sets, bool exists,
                     const std::function<bool(const std::vector<Label>&)>& pred) {
  std::size_t k = sets.size();
  std::vector<std::size_t> idx(k, 0);
  for (const auto& s : sets)
    if (s.elements().empty()) return !exists;
  std::vector<Label> pick(k);
  while (true) {
    for (std::size_t j = 0; j < k; ++j) pick[j] = sets[j].elements()[idx[j]];
    bool ok = pred(pick);
    if (exists && ok) return true;
    if (!exists && !ok) return false;
    std::size_t j = 0;
    while (j < k) {
      if (++idx[j] < sets[j].elements().size()) break;
      idx[j] = 0;
      ++j;
    }
    if (j == k) return !exists;
  }
}

// Shared construction for both half-steps: only the two quantifier polarities
// differ (node_exists / edge_exists).
Problem half_step(const Problem& p, bool node_exists, bool edge_exists, const Guard& guard,
                  const std::string& what) {
  guard_check(guard, powerset_items(p.sigma_out().size(), p.delta()), what);
  PowerSet ps = power_alphabet(p);
  const auto& labels = ps.alphabet.labels();
  LabelOrder ord{&ps.alphabet};

  std::map<std::string, std::vector<Label>> g;
  for (const auto& in_l : p.sigma_in().labels()) {
    const auto& image = p.g_of(in_l);
    std::vector<Label> sub;
    for (std::size_t mask = 0; mask < (std::size_t(1) << image.size()); ++mask) {
      std::vector<Label> elems;
      for (std::size_t i = 0; i < image.size(); ++i)
        if (mask & (std::size_t(1) << i)) elems.push_back(image[i]);
      sub.push_back(Label::set(std::move(elems), &p.sigma_out()));
    }
    g[in_l.text()] = std::move(sub);
  }

  std::vector<MultisetConfig> edge;
  for (std::size_t i = 0; i < labels.size(); ++i)
    for (std::size_t j = i; j < labels.size(); ++j) {
      std::vector<Label> pair = {labels[i], labels[j]};
      bool ok = selection_check(pair, edge_exists, [&](const std::vector<Label>& pick) {
        return p.edge_allows(pick[0], pick[1]);
      });
      if (ok) edge.emplace_back(std::move(pair), ord);
    }

  std::map<int, std::vector<MultisetConfig>> node;
  for (int d = 1; d <= p.delta(); ++d) {
    // Multisets of arity d over the new alphabet: nondecreasing index tuples.
    std::vector<std::size_t> idx(d, 0);
    while (true) {
      std::vector<Label> tuple;
      for (int j = 0; j < d; ++j) tuple.push_back(labels[idx[j]]);
      bool ok = selection_check(tuple, node_exists, [&](const std::vector<Label>& pick) {
        return p.node_allows(d, pick);
      });
      if (ok) node[d].emplace_back(std::move(tuple), ord);
      int j = d - 1;
      while (j >= 0 && idx[j] == labels.size() - 1) --j;
      if (j < 0) break;
      ++idx[j];
      for (int t = j + 1; t < d; ++t) idx[t] = idx[j];
    }
  }

  return Problem(p.delta(), p.sigma_in(), ps.alphabet, std::move(node), std::move(edge),
                 std::move(g));
}

}  // namespace

Problem re(const Problem& p, const Guard& guard) {
  return half_step(p, /*node_exists=*/true, /*edge_exists=*/false, guard, "re");
}

Problem rere(const Problem& p, const Guard& guard) {
  return half_step(p, /*node_exists=*/false, /*edge_exists=*/true, guard, "rere");
}

Problem speedup_problem(const Problem& p, const Guard& guard) {
  return rere(re(p, guard), guard);
}

namespace {

// |sigma_out| after j speedup steps from base size s: iterate e -> 2^(2^e).
// Rendered exactly below 2^64, then as 2^e, then as 2^2^e.
std::string project_size(unsigned long s, int steps) {
  mpz_class cur(static_cast<unsigned long>(s));
  for (int j = 0; j < steps; ++j) {
    // cur' = 2^(2^cur)
    if (cur <= 6) {
      unsigned long e = 1ul << cur.get_ui();
      mpz_class next;
      mpz_ui_pow_ui(next.get_mpz_t(), 2, e);
      cur = next;
    } else {
      // Beyond materialization: finish symbolically.
      mpz_class exp2;
      if (cur <= 64) {
        mpz_ui_pow_ui(exp2.get_mpz_t(), 2, cur.get_ui());
        std::string inner = exp2.get_str();
        for (int rest = j + 1; rest < steps; ++rest) inner = "2^2^" + inner;
        return "2^" + inner;
      }
      std::string inner = cur.get_str();
      for (int rest = j; rest < steps; ++rest) inner = "2^2^" + inner;
      return inner;
    }
  }
  return cur.get_str();
}

}  // namespace

ProblemSequence iterate_sequence(const Problem& p, int k, const Guard& guard) {
  ProblemSequence seq;
  unsigned long s0 = p.sigma_out().size();
  for (int j = 0; j <= k; ++j) seq.projected_sizes.push_back(project_size(s0, j));
  seq.problems.push_back(p);
  auto push_stats = [&](const Problem& q, double ms) {
    SequenceStep st;
    st.sigma_out_size = std::to_string(q.sigma_out().size());
    st.edge_config_count = q.edge_constraint().size();
    for (const auto& [d, configs] : q.node_constraint()) st.node_config_count += configs.size();
    st.wall_ms = ms;
    seq.stats.push_back(st);
  };
  push_stats(p, 0);
  for (int j = 1; j <= k; ++j) {
    auto start = std::chrono::steady_clock::now();
    try {
      Problem next = speedup_problem(seq.problems.back(), guard);
      double ms = std::chrono::duration<double, std::milli>(
                      std::chrono::steady_clock::now() - start)
                      .count();
      push_stats(next, ms);
      seq.problems.push_back(std::move(next));
    } catch (const GuardError& e) {
      seq.truncated = true;
      seq.truncation_reason = e.what();
      break;
    }
  }
  return seq;
}

FailureBudget failure_budget(int delta, unsigned T, unsigned long sin, unsigned long sout,
                             unsigned long sre, double log2_p,
                             std::optional<unsigned long long> n) {
  if (delta < 2) throw LclError("budget needs delta >= 2");
  if (sin < 1 || sout < 1 || sre < 1) throw LclError("alphabet sizes must be >= 1");
  if (log2_p > 0) throw LclError("log2_p must be <= 0");
  FailureBudget b;
  b.delta = delta;
  b.T = T;
  b.sin = sin;
  b.sout = sout;
  b.sre = sre;
  mpz_ui_pow_ui(b.delta_pow_T.get_mpz_t(), static_cast<unsigned long>(delta), T);

  mpfr_prec_t prec = std::max<mpfr_prec_t>(
      192, static_cast<mpfr_prec_t>(mpz_sizeinbase(b.delta_pow_T.get_mpz_t(), 2)) + 160);
  BigFloat log2_sin(prec);
  log2_sin.log2_of(mpz_class(sin));
  BigFloat y(prec);
  y.set(b.delta_pow_T);
  y.mul(y, log2_sin);  // log2(Y) = delta^T * log2(sin)

  // One bound application: log2(out) = 1 + (d*(log2 d + log2 s + log2 Y) + log2 in)/(d+1).
  auto apply = [&](const BigFloat& log2_in, unsigned long s) {
    BigFloat acc(prec), t(prec);
    acc.log2_of(mpz_class(static_cast<unsigned long>(delta)));
    t.log2_of(mpz_class(s));
    acc.add(acc, t);
    acc.add(acc, y);
    acc.mul_ui(acc, static_cast<unsigned long>(delta));
    acc.add(acc, log2_in);
    acc.div_ui(acc, static_cast<unsigned long>(delta) + 1);
    acc.add_ui(acc, 1);
    return acc;
  };
  BigFloat lp(prec);
  lp.set(log2_p);
  BigFloat lp1 = apply(lp, sout);
  BigFloat lp2 = apply(lp1, sre);

  b.log2_Y = y.to_decimal(9);
  b.log2_p = lp.to_decimal(9);
  b.log2_p1 = lp1.to_decimal(9);
  b.log2_p2 = lp2.to_decimal(9);
  b.log2_Y_d = y.to_double();
  b.log2_p1_d = lp1.to_double();
  b.log2_p2_d = lp2.to_double();

  if (n) {
    b.has_n = true;
    b.n = *n;
    double log2_n = std::log2(static_cast<double>(*n));
    double loglog = log2_n > 0 ? std::log2(log2_n) : -1;
    // Result alphabet has 2^sre labels.
    b.cond_alphabet = sre < 63 && std::ldexp(1.0, static_cast<int>(sre)) <= loglog;
    b.cond_p = b.log2_p2_d <= -loglog;
  }
  return b;
}

}  // namespace lcl
