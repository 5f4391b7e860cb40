#include "lcl/sim_volume.hpp"

#include <algorithm>
#include <memory>

namespace lcl {

namespace {

std::string render_id(long long id) { return id < 0 ? "-" : std::to_string(id); }

std::string render_inputs(const std::vector<Label>& in) {
  if (in.empty()) return "-";
  std::string s;
  for (std::size_t i = 0; i < in.size(); ++i) s += (i ? "," : "") + in[i].text();
  return s;
}

ProbeRecord make_record(const PortGraph& g, int v, int arrival) {
  ProbeRecord r;
  r.id = g.node(v).id;
  r.degree = g.deg(v);
  r.arrival_port = arrival;
  r.inputs = g.node(v).in;
  return r;
}

}  // namespace

std::vector<std::string> ProbeTranscript::probe_lines() const {
  std::vector<std::string> out;
  for (std::size_t k = 0; k < probes_made.size(); ++k) {
    const ProbeRecord& r = records[k + 1];
    out.push_back("probe " + std::to_string(probes_made[k].first) + ":" +
                  std::to_string(probes_made[k].second) + " -> id=" + render_id(r.id) +
                  " deg=" + std::to_string(r.degree) + " in=" + render_inputs(r.inputs));
  }
  return out;
}

std::pair<Label, ProbeTranscript> run_volume(const ProbeStrategy& s, const PortGraph& g, int v,
                                             int port) {
  if (v < 0 || v >= g.n()) throw LclError("queried node out of range");
  if (port < 1 || port > g.deg(v)) throw LclError("query of nonexistent port");
  if (!s.step) throw LclError("strategy has no step function");
  ProbeTranscript tr;
  tr.query_port = port;
  tr.records.push_back(make_record(g, v, 0));
  std::vector<int> origin{v};
  while (true) {
    ProbeAction act = s.step(tr);
    if (act.answer) {
      if (static_cast<int>(act.outputs.size()) != g.deg(v))
        throw LclError("answer arity mismatch: " + std::to_string(act.outputs.size()) +
                       " labels for a degree-" + std::to_string(g.deg(v)) + " node");
      return {act.outputs[port - 1], tr};
    }
    if (tr.probes >= s.budget) throw LclError("probe budget exceeded");
    if (act.node < 0 || act.node >= static_cast<int>(tr.records.size()))
      throw LclError("disconnected probe: record " + std::to_string(act.node) +
                     " has not been revealed");
    int u = origin[act.node];
    if (act.port < 1 || act.port > g.deg(u))
      throw LclError("probe of nonexistent port " + std::to_string(act.node) + ":" +
                     std::to_string(act.port));
    int w = g.node(u).nbr[act.port - 1];
    if (w < 0) throw LclError("probe of a dangling half-edge");
    ++tr.probes;
    tr.probes_made.emplace_back(act.node, act.port);
    tr.records.push_back(make_record(g, w, g.node(u).back[act.port - 1]));
    origin.push_back(w);
  }
}

std::uint64_t probe_bound(int delta, int t) {
  std::uint64_t total = 0, level = static_cast<std::uint64_t>(std::max(delta, 0));
  for (int i = 1; i <= t; ++i) {
    total += level;
    level *= static_cast<std::uint64_t>(std::max(delta - 1, 0));
  }
  return total;
}

ProbeStrategy ball_scan_strategy(const LocalAlgorithm& a) {
  if (a.mode == IdMode::Randomized)
    throw LclError("ball scan needs a deterministic algorithm");
  if (!a.problem) throw LclError("ball scan needs the algorithm's target problem");
  int t = a.radius;
  ProbeStrategy s;
  s.budget = probe_bound(a.problem->delta(), t);
  LocalAlgorithm alg = a;
  s.step = [alg, t](const ProbeTranscript& tr) -> ProbeAction {
    const auto& rec = tr.records;
    // Regenerate the breadth-first probe plan the transcript prefix follows:
    // record k answers plan[k-1]; nodes short of the radius expand all ports
    // except the one the probe arrived by.
    std::vector<int> depth{0};
    std::vector<std::pair<int, int>> plan;
    for (std::size_t u = 0; u < rec.size(); ++u) {
      if (u > 0) {
        if (u - 1 >= plan.size()) throw LclError("transcript does not match the ball scan");
        depth.push_back(depth[plan[u - 1].first] + 1);
      }
      if (depth[u] >= t) continue;
      for (int p = 1; p <= rec[u].degree; ++p) {
        if (u > 0 && p == rec[u].arrival_port) continue;
        plan.emplace_back(static_cast<int>(u), p);
      }
    }
    if (rec.size() - 1 < plan.size()) {
      auto [u, p] = plan[rec.size() - 1];
      return {false, u, p, {}};
    }
    Ball b;
    b.radius = t;
    b.nodes.resize(rec.size());
    for (std::size_t u = 0; u < rec.size(); ++u) {
      auto& nd = b.nodes[u];
      nd.deg = rec[u].degree;
      nd.in = rec[u].inputs;
      nd.id = rec[u].id;
      nd.nbr.assign(nd.deg, -1);
      nd.back.assign(nd.deg, -1);
    }
    for (std::size_t k = 1; k < rec.size(); ++k) {
      auto [u, p] = plan[k - 1];
      int ap = rec[k].arrival_port;
      b.nodes[u].nbr[p - 1] = static_cast<int>(k);
      b.nodes[u].back[p - 1] = ap;
      b.nodes[k].nbr[ap - 1] = u;
      b.nodes[k].back[ap - 1] = p;
    }
    return {true, 0, 0, alg.outputs_for(b)};
  };
  return s;
}

ProbeStrategy lock_order_invariant_volume(const ProbeStrategy& s, long long n0) {
  if (!s.step) throw LclError("strategy has no step function");
  if (n0 <= 0 || static_cast<std::uint64_t>(n0) <= s.budget)
    throw LclError("n0 below the feasibility bound: need n0 > the declared probe budget " +
                   std::to_string(s.budget));
  auto inner = std::make_shared<ProbeStrategy>(s);
  ProbeStrategy out;
  out.budget = s.budget;
  out.step = [inner](const ProbeTranscript& tr) {
    ProbeTranscript v = tr;
    std::vector<std::pair<long long, std::size_t>> order;
    for (std::size_t i = 0; i < v.records.size(); ++i) order.emplace_back(v.records[i].id, i);
    std::sort(order.begin(), order.end());
    long long rank = 0;
    for (std::size_t k = 0; k < order.size(); ++k) {
      if (k == 0 || order[k].first != order[k - 1].first) ++rank;
      v.records[order[k].second].id = rank;
    }
    return inner->step(v);
  };
  return out;
}

RamseyVolumeParams ramsey_params_volume(unsigned long tau, unsigned long delta, unsigned long r,
                                        unsigned long sin, unsigned long sout) {
  if (tau < 1 || delta < 1 || r < 1 || sin < 1 || sout < 1)
    throw LclError("probe-model parameters must all be >= 1");
  RamseyVolumeParams out;
  out.p = mpz_class(tau) + 1;
  mpz_class dp;
  mpz_ui_pow_ui(dp.get_mpz_t(), delta, r + 1);
  out.m = out.p * dp;

  unsigned long pu = out.p.get_ui();
  mpz_class pfac, dfac, pow2, mix;
  mpz_fac_ui(pfac.get_mpz_t(), pu);
  mpz_fac_ui(dfac.get_mpz_t(), delta);
  mpz_ui_pow_ui(pow2.get_mpz_t(), 2, pu * (pu - 1) / 2);
  mpz_pow_ui(mix.get_mpz_t(), mpz_class(dfac * sin).get_mpz_t(), pu);
  out.z_bound = pfac * pfac * pow2 * mix;

  out.c_base = mpz_class(sout) + 1;
  out.c_expo = out.z_bound;
  out.c_log2_ceil = ceil_log2_pow(out.c_base, out.c_expo);
  if (out.c_log2_ceil <= (1u << 24)) {
    mpz_pow_ui(out.c.get_mpz_t(), out.c_base.get_mpz_t(), out.c_expo.get_ui());
    out.c_exact = true;
  }

  out.log_star_p = log_star(out.p);
  out.log_star_m = log_star(out.m);
  out.log_star_z = log_star(out.z_bound);
  out.log_star_c = out.c_exact ? log_star(out.c) : 1 + log_star(out.c_log2_ceil);
  out.log_star_sum = static_cast<unsigned long>(out.log_star_m) + out.log_star_c;
  out.sum_below_p = mpz_class(out.log_star_sum) < out.p;
  return out;
}

}  // namespace lcl
