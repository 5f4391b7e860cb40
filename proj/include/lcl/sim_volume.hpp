#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "lcl/algorithm.hpp"
#include "lcl/error.hpp"
#include "lcl/graph.hpp"
#include "lcl/numeric.hpp"

namespace lcl {

// What one probe answer reveals about a node: its identifier, degree and
// per-port input labels, plus the port at which the probed edge arrives
// (the query root carries arrival_port 0).
struct ProbeRecord {
  long long id = -1;
  int degree = 0;
  int arrival_port = 0;
  std::vector<Label> inputs;
};

// The full interaction for one queried half-edge. records[0] is the queried
// node's own record (free); records[k] answers probes_made[k-1]. Probes
// address previously revealed nodes by record index, so the revealed set is
// connected by construction.
struct ProbeTranscript {
  int query_port = 0;
  std::vector<ProbeRecord> records;
  std::vector<std::pair<int, int>> probes_made;  // (record index, 1-based port)
  std::uint64_t probes = 0;

  // "probe <idx>:<port> -> id=<...> deg=<...> in=<...>" per probe.
  std::vector<std::string> probe_lines() const;
};

// One strategy decision: either the next probe (record index, port) or the
// final answer, given as the queried node's full output vector.
struct ProbeAction {
  bool answer = false;
  int node = 0;
  int port = 0;
  std::vector<Label> outputs;
};

// A probe strategy: a pure function of the transcript so far, with a declared
// probe budget that the runner enforces.
struct ProbeStrategy {
  std::uint64_t budget = 0;
  std::function<ProbeAction(const ProbeTranscript&)> step;
};

// Answers one half-edge query by running the strategy against the graph,
// enforcing connectivity (probes address revealed records only), port
// validity, and the declared budget. Returns the label for the queried
// half-edge plus the transcript.
std::pair<Label, ProbeTranscript> run_volume(const ProbeStrategy& s, const PortGraph& g, int v,
                                             int port);

// Probes breadth-first until the whole radius-a.radius view of the queried
// node is revealed, then answers per the algorithm. On trees the probe count
// never exceeds probe_bound(delta, a.radius).
ProbeStrategy ball_scan_strategy(const LocalAlgorithm& a);

// Sum over levels i = 1..t of delta * (delta-1)^(i-1).
std::uint64_t probe_bound(int delta, int t);

// Wraps an order-invariant strategy so it only ever sees rank-normalized
// identifiers (1..k in id order over the revealed records), pinning behavior
// to the instance size n0. Requires n0 > the declared probe budget so the
// virtual ranks fit any instance of size >= n0.
ProbeStrategy lock_order_invariant_volume(const ProbeStrategy& s, long long n0);

// Exact speedup-machinery parameters for the probe model. c = c_base^c_expo
// is materialized only when it fits comfortably (c_exact); its ceil(log2) is
// always exact. log_star_sum reports log*(m) + log*(c) next to p.
struct RamseyVolumeParams {
  mpz_class p, m, z_bound;
  mpz_class c_base, c_expo;
  bool c_exact = false;
  mpz_class c;             // set when c_exact
  mpz_class c_log2_ceil;   // exact ceil(log2 c)
  unsigned log_star_p = 0, log_star_m = 0, log_star_z = 0, log_star_c = 0;
  unsigned long log_star_sum = 0;
  bool sum_below_p = false;
};

// p = tau+1; m = p*delta^(r+1); z_bound = p!*p!*2^C(p,2)*(delta!*sin)^p;
// c = (sout+1)^z_bound. All inputs must be >= 1.
RamseyVolumeParams ramsey_params_volume(unsigned long tau, unsigned long delta, unsigned long r,
                                        unsigned long sin, unsigned long sout);

}  // namespace lcl
