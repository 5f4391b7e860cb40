#include "lcl/sim_local.hpp"

#include <algorithm>
#include <sstream>

#include "lcl/error.hpp"

namespace lcl {

namespace {

const char* kind_name(Violation::Kind k) {
  switch (k) {
    case Violation::Kind::NodeConfig: return "node-config";
    case Violation::Kind::EdgeConfig: return "edge-config";
    case Violation::Kind::GMismatch: return "g-mismatch";
    case Violation::Kind::BallNotAccepted: return "ball-not-accepted";
  }
  return "?";
}

std::string brace_multiset(std::vector<Label> labels, const LabelOrder& ord) {
  std::sort(labels.begin(), labels.end(), ord);
  std::string out = "{";
  for (std::size_t i = 0; i < labels.size(); ++i) out += (i ? "," : "") + labels[i].text();
  return out + "}";
}

}  // namespace

std::string Violation::line() const {
  return std::string("VIOLATION ") + kind_name(kind) + " at " + location + ": " + witness;
}

HalfEdgeLabeling run_local(const LocalAlgorithm& a, const PortGraph& g) {
  bool needs_ids =
      a.mode == IdMode::DeterministicId || a.mode == IdMode::OrderInvariant;
  if (a.mode == IdMode::Randomized)
    throw LclError("randomized table execution is out of scope");
  if (needs_ids && !g.ids_distinct())
    throw LclError("algorithm mode " + id_mode_name(a.mode) +
                   " needs distinct node identifiers");
  HalfEdgeLabeling f(g);
  for (int v = 0; v < g.n(); ++v) {
    Ball b = extract_ball(g, v, a.radius);
    std::vector<Label> outs = a.outputs_for(b);
    if (static_cast<int>(outs.size()) != g.deg(v))
      throw LclError("algorithm output arity mismatch at node " + std::to_string(v));
    for (int j = 1; j <= g.deg(v); ++j) f.set(v, j, outs[j - 1]);
  }
  return f;
}

std::vector<Violation> verify_nec(const PortGraph& g, const HalfEdgeLabeling& f,
                                  const Problem& p) {
  std::vector<Violation> out;
  LabelOrder ord = p.out_order();
  for (int v = 0; v < g.n(); ++v) {
    int d = g.deg(v);
    std::vector<Label> outs;
    for (int j = 1; j <= d; ++j) outs.push_back(f.at(v, j));
    if (d > 0 && !p.node_allows(d, outs))
      out.push_back({Violation::Kind::NodeConfig, "node " + std::to_string(v),
                     brace_multiset(outs, ord)});
    const auto& nd = g.node(v);
    for (int j = 1; j <= d; ++j) {
      const Label& l = f.at(v, j);
      if (!p.g_allows(nd.in[j - 1], l))
        out.push_back({Violation::Kind::GMismatch,
                       "half-edge " + std::to_string(v) + ":" + std::to_string(j),
                       nd.in[j - 1].text() + " -> " + l.text()});
      int w = nd.nbr[j - 1];
      int pw = nd.back[j - 1];
      if (w < 0) continue;
      if (w < v || (w == v && pw <= j)) continue;  // each edge once
      if (!p.edge_allows(l, f.at(w, pw)))
        out.push_back({Violation::Kind::EdgeConfig,
                       "edge " + std::to_string(v) + ":" + std::to_string(j) + "-" +
                           std::to_string(w) + ":" + std::to_string(pw),
                       brace_multiset({l, f.at(w, pw)}, ord)});
    }
  }
  return out;
}

Ball labeled_ball(const PortGraph& g, const HalfEdgeLabeling& f, int v, int t) {
  std::vector<int> origin;
  Ball b = extract_ball(g, v, t, &origin);
  for (std::size_t i = 0; i < b.nodes.size(); ++i) {
    auto& nd = b.nodes[i];
    nd.out.clear();
    for (int j = 1; j <= nd.deg; ++j) nd.out.push_back(f.at(origin[i], j));
  }
  return b;
}

std::vector<Violation> verify_general(const PortGraph& g, const HalfEdgeLabeling& f,
                                      const GeneralLcl& l) {
  std::vector<Violation> out;
  EncodeOptions eo;
  eo.with_outputs = true;
  for (int v = 0; v < g.n(); ++v) {
    Ball b = labeled_ball(g, f, v, l.radius);
    std::string enc = encode_ball(b, l.radius, eo);
    if (!l.accepts(enc))
      out.push_back({Violation::Kind::BallNotAccepted, "node " + std::to_string(v), enc});
  }
  return out;
}

}  // namespace lcl
