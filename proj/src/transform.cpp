#include "lcl/transform.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "lcl/numeric.hpp"
#include "lcl/round_elim.hpp"

namespace lcl {

namespace {

void guard_check(const Guard& guard, const mpz_class& estimate, const std::string& what) {
  if (estimate > mpz_class(static_cast<unsigned long>(guard.limit)))
    throw GuardError(estimate.get_str(), guard.limit, what);
}

// The visible summary of a not-yet-seen neighbor: degree, which of its ports
// points back, and its input labels.
struct Rec {
  int deg;
  int back;
  std::vector<Label> in;
};

std::vector<Rec> all_records(int delta, const Alphabet& sin) {
  std::vector<Rec> recs;
  for (int c = 1; c <= delta; ++c) {
    std::vector<std::size_t> pick(c, 0);
    while (true) {
      std::vector<Label> in;
      for (int j = 0; j < c; ++j) in.push_back(sin.labels()[pick[j]]);
      for (int b = 1; b <= c; ++b) recs.push_back({c, b, in});
      int j = c - 1;
      while (j >= 0 && pick[j] == sin.size() - 1) --j;
      if (j < 0) break;
      ++pick[j];
      for (int k = j + 1; k < c; ++k) pick[k] = 0;
    }
  }
  return recs;
}

int attach(Ball& b, int node, int port, const Rec& r) {
  int child = static_cast<int>(b.nodes.size());
  Ball::Node nd;
  nd.deg = r.deg;
  nd.in = r.in;
  nd.nbr.assign(r.deg, -1);
  nd.back.assign(r.deg, 0);
  nd.nbr[r.back - 1] = node;
  nd.back[r.back - 1] = port;
  b.nodes.push_back(std::move(nd));
  b.nodes[node].nbr[port - 1] = child;
  b.nodes[node].back[port - 1] = r.back;
  return child;
}

std::vector<int> depths_from_root(const Ball& b) {
  std::vector<int> depth(b.nodes.size(), -1);
  std::vector<int> order{0};
  depth[0] = 0;
  for (std::size_t h = 0; h < order.size(); ++h) {
    int u = order[h];
    for (int w : b.nodes[u].nbr)
      if (w >= 0 && depth[w] < 0) {
        depth[w] = depth[u] + 1;
        order.push_back(w);
      }
  }
  return depth;
}

// Dangling half-edges (node, port) whose node lies at depth <= limit.
std::vector<std::pair<int, int>> dangling_upto(const Ball& b, int limit) {
  auto depth = depths_from_root(b);
  std::vector<std::pair<int, int>> out;
  for (std::size_t u = 0; u < b.nodes.size(); ++u) {
    if (depth[u] < 0 || depth[u] > limit) continue;
    for (int j = 0; j < b.nodes[u].deg; ++j)
      if (b.nodes[u].nbr[j] < 0) out.emplace_back(static_cast<int>(u), j + 1);
  }
  return out;
}

// Enumerates record fills for the given half-edges; calls fn on each filled
// ball (the ball is restored between iterations by truncation).
void for_each_fill(Ball& b, const std::vector<std::pair<int, int>>& slots,
                   const std::vector<Rec>& recs,
                   const std::function<void(Ball&)>& fn) {
  if (slots.empty()) {
    fn(b);
    return;
  }
  std::size_t base = b.nodes.size();
  std::vector<std::size_t> pick(slots.size(), 0);
  while (true) {
    for (std::size_t i = 0; i < slots.size(); ++i)
      attach(b, slots[i].first, slots[i].second, recs[pick[i]]);
    fn(b);
    for (std::size_t i = 0; i < slots.size(); ++i) {
      b.nodes[slots[i].first].nbr[slots[i].second - 1] = -1;
      b.nodes[slots[i].first].back[slots[i].second - 1] = 0;
    }
    b.nodes.resize(base);
    std::size_t i = 0;
    while (i < slots.size()) {
      if (++pick[i] < recs.size()) break;
      pick[i] = 0;
      ++i;
    }
    if (i == slots.size()) return;
  }
}

// Enumerates all strict total orders of b's nodes that preserve the relative
// order of nodes already carrying ids; assigns ranks 1..m as ids and calls
// fn. Ballast for order-invariant tables: the algorithm may react to any
// relative identifier order of the nodes it sees.
void for_each_rank_pattern(Ball& b, const std::function<void(Ball&)>& fn) {
  int m = static_cast<int>(b.nodes.size());
  std::vector<int> fixed;   // node indices with ids, in increasing id order
  std::vector<int> added;   // nodes without ids
  for (int i = 0; i < m; ++i) (b.nodes[i].id >= 0 ? fixed : added).push_back(i);
  std::sort(fixed.begin(), fixed.end(),
            [&](int x, int y) { return b.nodes[x].id < b.nodes[y].id; });
  std::vector<long long> saved(m);
  for (int i = 0; i < m; ++i) saved[i] = b.nodes[i].id;
  // seq holds node indices in rank order; insert added nodes in all ways.
  std::vector<int> seq = fixed;
  std::function<void(std::size_t)> rec = [&](std::size_t k) {
    if (k == added.size()) {
      for (int r = 0; r < m; ++r) b.nodes[seq[r]].id = r + 1;
      fn(b);
      return;
    }
    for (std::size_t pos = 0; pos <= seq.size(); ++pos) {
      seq.insert(seq.begin() + pos, added[k]);
      rec(k + 1);
      seq.erase(seq.begin() + pos);
    }
  };
  rec(0);
  for (int i = 0; i < m; ++i) b.nodes[i].id = saved[i];
}

// Evaluates fn over all fill/rank configurations appropriate for the mode.
void for_each_completion(Ball& b, const std::vector<std::pair<int, int>>& slots,
                         const std::vector<Rec>& recs, bool order_invariant,
                         const std::function<void(Ball&)>& fn) {
  for_each_fill(b, slots, recs, [&](Ball& filled) {
    if (!order_invariant) {
      fn(filled);
      return;
    }
    for_each_rank_pattern(filled, fn);
  });
}

mpz_class factorial(unsigned long k) {
  mpz_class f;
  mpz_fac_ui(f.get_mpz_t(), k);
  return f;
}

}  // namespace

LocalAlgorithm derive_speedup_algorithm(const LocalAlgorithm& a, const Guard& guard) {
  if (!a.problem) throw LclError("speedup derivation needs the algorithm's target problem");
  if (a.radius < 1) throw LclError("speedup needs radius >= 1");
  if (a.mode == IdMode::Randomized || a.mode == IdMode::DeterministicId)
    throw LclError("speedup derivation accepts deterministic port-numbering or "
                   "order-invariant algorithms only");
  bool oi = a.mode == IdMode::OrderInvariant;
  const Problem& pi = *a.problem;
  int t = a.radius;
  int delta = pi.delta();
  auto recs = all_records(delta, pi.sigma_in());
  auto views = enumerate_balls(delta, pi.sigma_in(), t - 1, guard.limit);

  // Work estimate: each view/port pair costs |recs|^(dangling half-edges),
  // times the rank-pattern count of the largest filled ball when
  // order-invariant.
  {
    mpz_class total = 0;
    for (const auto& v : views) {
      auto slots = dangling_upto(v, t - 1);
      mpz_class evals;
      mpz_ui_pow_ui(evals.get_mpz_t(), recs.size(), slots.size() + 1);
      if (oi)
        evals *= factorial(static_cast<unsigned long>(v.nodes.size() + slots.size() + 1));
      total += evals * std::max(1, v.nodes[0].deg);
    }
    guard_check(guard, total, "derive-speedup completion enumeration");
  }

  LocalAlgorithm out;
  out.radius = t - 1;
  out.mode = a.mode;
  out.problem = std::make_shared<Problem>(speedup_problem(pi, guard));
  const Alphabet& re_out = out.problem->sigma_out();

  EncodeOptions view_eo;
  view_eo.mode = a.mode;

  // Edge half-step, memoized on the (union view, port) encoding: the set of
  // labels the input algorithm can output at the root's given port over all
  // completions of the root-side unknown half-edges.
  std::map<std::string, Label> edge_memo;
  auto edge_stage = [&](Ball& u_view, int port) -> Label {
    EncodeOptions key_eo;
    key_eo.mode = oi ? IdMode::DeterministicId : IdMode::PortNumbering;
    key_eo.mark_port = port;
    std::string key = encode_ball(u_view, t, key_eo);
    auto hit = edge_memo.find(key);
    if (hit != edge_memo.end()) return hit->second;
    auto depth = depths_from_root(u_view);
    std::vector<std::pair<int, int>> slots;
    for (std::size_t w = 0; w < u_view.nodes.size(); ++w) {
      if (depth[w] < 0 || depth[w] > t - 1) continue;
      for (int j = 0; j < u_view.nodes[w].deg; ++j)
        if (u_view.nodes[w].nbr[j] < 0) slots.emplace_back(static_cast<int>(w), j + 1);
    }
    std::set<std::string> seen;
    std::vector<Label> members;
    for_each_completion(u_view, slots, recs, oi, [&](Ball& filled) {
      Label l = a.outputs_for(filled)[port - 1];
      if (seen.insert(l.text()).second) members.push_back(l);
    });
    Label value = Label::set(std::move(members), &pi.sigma_out());
    edge_memo.emplace(std::move(key), value);
    return value;
  };

  auto derive_outputs = [&](Ball view) -> std::vector<Label> {
    int d = view.nodes[0].deg;
    std::vector<Label> outs;
    auto depth = depths_from_root(view);
    for (int j = 1; j <= d; ++j) {
      // The neighbor-side completion: dangling half-edges in the port-j
      // subtree (at radius >= 1 those sit at depth t-1; at radius 0 the
      // subtree is the root port itself).
      std::vector<std::pair<int, int>> j_slots;
      if (t - 1 == 0) {
        j_slots.emplace_back(0, j);
      } else {
        int vj = view.nodes[0].nbr[j - 1];
        if (vj < 0) throw LclError("derive-speedup: view has an unwired root port");
        // Mark the j-subtree by BFS from vj avoiding the root.
        std::vector<bool> in_sub(view.nodes.size(), false);
        std::vector<int> stack{vj};
        in_sub[vj] = true;
        while (!stack.empty()) {
          int w = stack.back();
          stack.pop_back();
          for (int x : view.nodes[w].nbr)
            if (x > 0 && !in_sub[x] && x != 0) {
              in_sub[x] = true;
              stack.push_back(x);
            }
        }
        for (std::size_t w = 0; w < view.nodes.size(); ++w) {
          if (!in_sub[w] || depth[w] > t - 1) continue;
          for (int p = 0; p < view.nodes[w].deg; ++p)
            if (view.nodes[w].nbr[p] < 0) j_slots.emplace_back(static_cast<int>(w), p + 1);
        }
      }
      std::set<std::string> seen;
      std::vector<Label> members;
      for_each_completion(view, j_slots, recs, oi, [&](Ball& u_view) {
        Label b = edge_stage(u_view, j);
        if (seen.insert(b.text()).second) members.push_back(b);
      });
      Label aj = Label::set(std::move(members), nullptr);
      if (!re_out.contains(aj))
        throw LclError("derived label not in the speedup alphabet: " + aj.text());
      outs.push_back(*re_out.find_text(aj.text()));
    }
    return outs;
  };

  for (auto& view : views) {
    if (!oi) {
      out.table[encode_ball(view, t - 1, view_eo)] = derive_outputs(view);
      continue;
    }
    Ball v = view;
    for_each_rank_pattern(v, [&](Ball& patterned) {
      out.table[encode_ball(patterned, t - 1, view_eo)] = derive_outputs(patterned);
    });
  }
  return out;
}

namespace {

// True when every cross pair drawn from the two set labels is edge-allowed.
bool cross_ok(const Problem& pi, const Label& x, const Label& y) {
  for (const auto& a : x.elements())
    for (const auto& b : y.elements())
      if (!pi.edge_allows(a, b)) return false;
  return true;
}

struct EdgePick {
  Label here;   // set label selected for this endpoint
  Label there;  // for the opposite endpoint
};

EdgePick stage_one(const Problem& pi, const Label& a_here, int port_here,
                   const std::string& enc_here, const Label& a_there, int port_there,
                   const std::string& enc_there) {
  auto elems = [](const Label& l) { return l.elements(); };
  bool tie = enc_here == enc_there && port_here == port_there;
  if (tie) {
    // Symmetric edge: both endpoints run the identical computation, so only
    // a diagonal selection can be consistent.
    for (const auto& p : elems(a_here)) {
      if (p.elements().empty()) continue;
      if (a_there == a_here && cross_ok(pi, p, p)) return {p, p};
    }
    throw LclError("no diagonal edge selection on a symmetric edge; sets " + a_here.text() +
                   " / " + a_there.text());
  }
  bool here_first =
      enc_here < enc_there || (enc_here == enc_there && port_here < port_there);
  const Label& first = here_first ? a_here : a_there;
  const Label& second = here_first ? a_there : a_here;
  for (const auto& f : elems(first)) {
    if (f.elements().empty()) continue;
    for (const auto& s : elems(second)) {
      if (s.elements().empty()) continue;
      if (cross_ok(pi, f, s)) return here_first ? EdgePick{f, s} : EdgePick{s, f};
    }
  }
  throw LclError("no edge selection with all cross pairs allowed; sets " + a_here.text() +
                 " / " + a_there.text());
}

std::vector<Label> stage_two(const Problem& pi, const std::vector<Label>& picks,
                             const std::string& where) {
  int d = static_cast<int>(picks.size());
  std::vector<const std::vector<Label>*> options(d);
  for (int j = 0; j < d; ++j) {
    options[j] = &picks[j].elements();
    if (options[j]->empty())
      throw LclError("empty selected set at " + where + ": " + picks[j].text());
  }
  std::vector<std::size_t> idx(d, 0);
  while (true) {
    std::vector<Label> tuple;
    for (int j = 0; j < d; ++j) tuple.push_back((*options[j])[idx[j]]);
    if (pi.node_allows(d, tuple)) return tuple;
    int j = d - 1;
    while (j >= 0 && idx[j] + 1 == options[j]->size()) --j;
    if (j < 0) break;
    ++idx[j];
    for (int k = j + 1; k < d; ++k) idx[k] = 0;
  }
  std::string sets;
  for (const auto& p : picks) sets += (sets.empty() ? "" : " ") + p.text();
  throw LclError("no node selection in the node constraint at " + where + "; sets " + sets);
}

std::vector<Label> slowdown_eval(const LocalAlgorithm& fast, const Problem& pi, const Ball& b,
                                 int t) {
  int d = b.nodes[0].deg;
  if (d == 0) return {};
  EncodeOptions eo;
  eo.mode = fast.mode;
  Ball here = subview(b, 0, t - 1);
  std::string enc_here = encode_ball(here, t - 1, eo);
  std::vector<Label> a_here = fast.outputs_for(here);
  std::vector<Label> picks;
  for (int j = 1; j <= d; ++j) {
    int v = b.nodes[0].nbr[j - 1];
    if (v < 0) throw LclError("slowdown: unwired root port " + std::to_string(j));
    int q = b.nodes[0].back[j - 1];
    Ball there = subview(b, v, t - 1);
    std::string enc_there = encode_ball(there, t - 1, eo);
    std::vector<Label> a_there = fast.outputs_for(there);
    EdgePick pick = stage_one(pi, a_here[j - 1], j, enc_here, a_there[q - 1], q, enc_there);
    picks.push_back(pick.here);
  }
  return stage_two(pi, picks, "view " + encode_ball(b, t, eo));
}

}  // namespace

LocalAlgorithm derive_slowdown_algorithm(const LocalAlgorithm& fast,
                                         std::shared_ptr<const Problem> pi,
                                         const Guard& guard, bool materialize) {
  if (!pi) throw LclError("slowdown derivation needs the target problem");
  if (fast.mode == IdMode::Randomized || fast.mode == IdMode::DeterministicId)
    throw LclError("slowdown derivation accepts deterministic port-numbering or "
                   "order-invariant algorithms only");
  int t = fast.radius + 1;
  LocalAlgorithm out;
  out.radius = t;
  out.mode = fast.mode;
  out.problem = pi;
  auto inner = std::make_shared<LocalAlgorithm>(fast);
  out.rule = [inner, pi, t](const Ball& b) -> std::optional<std::vector<Label>> {
    return slowdown_eval(*inner, *pi, b, t);
  };
  if (materialize && fast.mode == IdMode::PortNumbering) {
    // Materialize only when the view count is modest; the rule covers the
    // rest, so a large view space just means a rule-backed result.
    std::uint64_t cap = std::min<std::uint64_t>(guard.limit, 16384);
    try {
      EncodeOptions eo;
      for (auto& view : enumerate_balls(pi->delta(), pi->sigma_in(), t, cap))
        out.table[encode_ball(view, t, eo)] = slowdown_eval(fast, *pi, view, t);
    } catch (const GuardError&) {
      out.table.clear();
    }
  }
  return out;
}

std::optional<ZeroRoundAlgorithm> find_zero_round(const Problem& p, const Guard& guard) {
  {
    mpz_class total = 0;
    for (int d = 1; d <= p.delta(); ++d) {
      mpz_class keys, tuples;
      mpz_ui_pow_ui(keys.get_mpz_t(), p.sigma_in().size(), d);
      mpz_ui_pow_ui(tuples.get_mpz_t(), p.sigma_out().size(), d);
      total += keys * tuples;
    }
    guard_check(guard, total, "zero-round search");
  }
  LabelOrder ord = p.out_order();

  // Any label the assignment uses meets itself and every other used label
  // across some edge of some instance, so the used set must be a clique of
  // the self-loop-filtered compatibility graph. Complete search = best
  // per-key choice within each maximal clique.
  std::vector<Label> verts;
  for (const auto& l : p.sigma_out().labels())
    if (p.edge_allows(l, l)) verts.push_back(l);
  std::vector<std::vector<bool>> adj(verts.size(), std::vector<bool>(verts.size(), false));
  for (std::size_t i = 0; i < verts.size(); ++i)
    for (std::size_t j = 0; j < verts.size(); ++j)
      adj[i][j] = p.edge_allows(verts[i], verts[j]);

  std::vector<std::vector<int>> cliques;
  std::function<void(std::vector<int>&, std::vector<int>&, std::vector<int>&)> bk =
      [&](std::vector<int>& r, std::vector<int>& cand, std::vector<int>& excl) {
        if (cand.empty() && excl.empty()) {
          cliques.push_back(r);
          return;
        }
        std::vector<int> cand_copy = cand;
        for (int v : cand_copy) {
          std::vector<int> nc, ne;
          for (int w : cand)
            if (adj[v][w] && w != v) nc.push_back(w);
          for (int w : excl)
            if (adj[v][w]) ne.push_back(w);
          r.push_back(v);
          bk(r, nc, ne);
          r.pop_back();
          cand.erase(std::remove(cand.begin(), cand.end(), v), cand.end());
          excl.push_back(v);
        }
      };
  {
    std::vector<int> r, cand(verts.size()), excl;
    for (std::size_t i = 0; i < verts.size(); ++i) cand[i] = static_cast<int>(i);
    bk(r, cand, excl);
  }

  // All keys (degree, input tuple).
  struct Key {
    int d;
    std::vector<Label> in;
  };
  std::vector<Key> keys;
  for (int d = 1; d <= p.delta(); ++d) {
    std::vector<std::size_t> pick(d, 0);
    while (true) {
      std::vector<Label> in;
      for (int j = 0; j < d; ++j) in.push_back(p.sigma_in().labels()[pick[j]]);
      keys.push_back({d, std::move(in)});
      int j = d - 1;
      while (j >= 0 && pick[j] == p.sigma_in().size() - 1) --j;
      if (j < 0) break;
      ++pick[j];
      for (int k = j + 1; k < d; ++k) pick[k] = 0;
    }
  }

  auto solve_clique = [&](const std::vector<int>& clique)
      -> std::optional<ZeroRoundAlgorithm> {
    std::vector<Label> allowed;
    for (int v : clique) allowed.push_back(verts[v]);
    sort_labels(allowed, ord);
    ZeroRoundAlgorithm z;
    for (const auto& key : keys) {
      std::vector<std::vector<Label>> options(key.d);
      for (int j = 0; j < key.d; ++j) {
        for (const auto& l : allowed)
          if (p.g_allows(key.in[j], l)) options[j].push_back(l);
        if (options[j].empty()) return std::nullopt;
      }
      std::vector<std::size_t> idx(key.d, 0);
      bool found = false;
      while (true) {
        std::vector<Label> tuple;
        for (int j = 0; j < key.d; ++j) tuple.push_back(options[j][idx[j]]);
        if (p.node_allows(key.d, tuple)) {
          z.table[ZeroRoundAlgorithm::key(key.d, key.in)] = std::move(tuple);
          found = true;
          break;
        }
        int j = key.d - 1;
        while (j >= 0 && idx[j] + 1 == options[j].size()) --j;
        if (j < 0) break;
        ++idx[j];
        for (int k = j + 1; k < key.d; ++k) idx[k] = 0;
      }
      if (!found) return std::nullopt;
    }
    return z;
  };

  auto less_assignment = [&](const ZeroRoundAlgorithm& x, const ZeroRoundAlgorithm& y) {
    auto ix = x.table.begin();
    auto iy = y.table.begin();
    for (; ix != x.table.end(); ++ix, ++iy) {
      for (std::size_t j = 0; j < ix->second.size(); ++j) {
        if (ord(ix->second[j], iy->second[j])) return true;
        if (ord(iy->second[j], ix->second[j])) return false;
      }
    }
    return false;
  };

  std::optional<ZeroRoundAlgorithm> best;
  for (const auto& clique : cliques) {
    auto z = solve_clique(clique);
    if (z && (!best || less_assignment(*z, *best))) best = std::move(z);
  }
  return best;
}

LocalAlgorithm lock_order_invariant(const LocalAlgorithm& a, long long n0, int problem_radius) {
  if (a.mode == IdMode::Randomized || a.mode == IdMode::DeterministicId)
    throw LclError("lock requires an order-invariant or port-numbering algorithm");
  if (!a.problem) throw LclError("lock needs the algorithm's target problem");
  int delta = a.problem->delta();
  std::uint64_t bound = ball_size_bound(delta, a.radius + problem_radius);
  if (n0 <= 0 ||
      mpz_class(static_cast<unsigned long>(bound)) * delta >= mpz_class(std::to_string(n0)))
    throw LclError("n0 too small: the radius-" + std::to_string(a.radius + problem_radius) +
                   " ball can hold " + std::to_string(bound) + " nodes and " +
                   std::to_string(bound) + " * " + std::to_string(delta) +
                   " >= " + std::to_string(n0));
  LocalAlgorithm out = a;
  out.mode = IdMode::OrderInvariant;
  out.locked_n0 = n0;
  auto inner = std::make_shared<LocalAlgorithm>(a);
  out.rule = [inner](const Ball& b) -> std::optional<std::vector<Label>> {
    // Virtual identifiers: the rank of each visible node's identifier. Any
    // two order-indistinguishable id assignments collapse to the same ranks.
    Ball c = b;
    std::vector<std::size_t> with_id;
    for (std::size_t i = 0; i < c.nodes.size(); ++i)
      if (c.nodes[i].id >= 0) with_id.push_back(i);
    std::sort(with_id.begin(), with_id.end(), [&](std::size_t x, std::size_t y) {
      return c.nodes[x].id < c.nodes[y].id;
    });
    for (std::size_t r = 0; r < with_id.size(); ++r)
      c.nodes[with_id[r]].id = static_cast<long long>(r) + 1;
    if (inner->mode == IdMode::PortNumbering)
      for (auto& nd : c.nodes) nd.id = -1;
    return inner->outputs_for(c);
  };
  return out;
}

}  // namespace lcl
