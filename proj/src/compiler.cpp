#include "lcl/compiler.hpp"

#include <algorithm>
#include <map>
#include <string>
#include <utility>

#include "lcl/sim_local.hpp"

namespace lcl {

namespace {

std::vector<int> ball_depths(const Ball& b) {
  std::vector<int> d(b.nodes.size(), -1);
  std::vector<int> q{0};
  d[0] = 0;
  for (std::size_t h = 0; h < q.size(); ++h) {
    int u = q[h];
    for (int w : b.nodes[u].nbr)
      if (w >= 0 && d[w] < 0) {
        d[w] = d[u] + 1;
        q.push_back(w);
      }
  }
  return d;
}

// True when gluing A's marked port p onto B's marked port q yields one
// consistent view: on the overlap both balls agree on degree, inputs,
// outputs and wiring; past either ball's radius the other is unconstrained.
bool merge_compatible(const Ball& A, const std::vector<int>& depA, int p, const Ball& B,
                      const std::vector<int>& depB, int q, int r) {
  if (A.nodes[0].nbr[p - 1] < 0 || B.nodes[0].nbr[q - 1] < 0) return false;
  if (A.nodes[0].back[p - 1] != q || B.nodes[0].back[q - 1] != p) return false;
  std::vector<int> pair_of(A.nodes.size(), -1);
  std::vector<std::pair<int, int>> todo{{0, B.nodes[0].nbr[q - 1]}};
  pair_of[0] = B.nodes[0].nbr[q - 1];
  for (std::size_t h = 0; h < todo.size(); ++h) {
    auto [xa, xb] = todo[h];
    const auto& na = A.nodes[xa];
    const auto& nb = B.nodes[xb];
    if (na.deg != nb.deg || na.in != nb.in || na.out != nb.out) return false;
    for (int i = 0; i < na.deg; ++i) {
      int ya = na.nbr[i], yb = nb.nbr[i];
      bool cut_a = ya < 0 && depA[xa] == r;
      bool cut_b = yb < 0 && depB[xb] == r;
      if (cut_a || cut_b) continue;
      if ((ya < 0) != (yb < 0)) return false;
      if (ya < 0) continue;
      if (na.back[i] != nb.back[i]) return false;
      if (pair_of[ya] >= 0) {
        if (pair_of[ya] != yb) return false;
        continue;
      }
      pair_of[ya] = yb;
      todo.emplace_back(ya, yb);
    }
  }
  return true;
}

struct MarkedEntry {
  int ball;  // index into l.accepted
  int port;
  Label label;
};

std::vector<MarkedEntry> marked_entries(const GeneralLcl& l, const Guard& guard) {
  EncodeOptions eo;
  eo.with_outputs = true;
  std::uint64_t count = 0;
  for (const auto& b : l.accepted) count += static_cast<std::uint64_t>(b.nodes[0].deg);
  guard.check(count, "marked-ball enumeration");
  std::vector<MarkedEntry> out;
  for (std::size_t i = 0; i < l.accepted.size(); ++i) {
    std::string enc = encode_ball(l.accepted[i], l.radius, eo);
    for (int p = 1; p <= l.accepted[i].nodes[0].deg; ++p)
      out.push_back({static_cast<int>(i), p, Label::ball("@" + std::to_string(p) + ":" + enc)});
  }
  std::sort(out.begin(), out.end(),
            [](const MarkedEntry& a, const MarkedEntry& b) { return a.label.text() < b.label.text(); });
  return out;
}

}  // namespace

std::vector<Label> enumerate_marked_balls(const GeneralLcl& l, const Guard& guard) {
  std::vector<Label> out;
  for (auto& e : marked_entries(l, guard)) out.push_back(e.label);
  return out;
}

Problem compile_general(const GeneralLcl& l, const Guard& guard) {
  auto marked = marked_entries(l, guard);
  std::uint64_t m = marked.size();
  guard.check(m + m * (m + 1) / 2, "compiled constraint enumeration");

  std::vector<Label> alpha;
  for (auto& e : marked) alpha.push_back(e.label);
  Alphabet sigma_out(alpha);
  LabelOrder ord{&sigma_out};

  std::vector<std::vector<int>> depths;
  for (const auto& b : l.accepted) depths.push_back(ball_depths(b));

  // One node configuration per accepted ball: all its marks together.
  std::map<int, std::vector<MultisetConfig>> node_constraint;
  for (int d = 1; d <= l.delta; ++d) node_constraint[d];
  std::map<int, std::vector<Label>> marks_of;  // ball index -> its marked labels
  for (auto& e : marked) marks_of[e.ball].push_back(e.label);
  for (auto& [bi, labels] : marks_of)
    node_constraint[l.accepted[bi].nodes[0].deg].push_back(MultisetConfig(labels, ord));

  std::vector<MultisetConfig> edge_constraint;
  for (std::size_t i = 0; i < marked.size(); ++i)
    for (std::size_t j = i; j < marked.size(); ++j) {
      const auto& a = marked[i];
      const auto& b = marked[j];
      if (merge_compatible(l.accepted[a.ball], depths[a.ball], a.port, l.accepted[b.ball],
                           depths[b.ball], b.port, l.radius))
        edge_constraint.push_back(MultisetConfig({a.label, b.label}, ord));
    }

  std::map<std::string, std::vector<Label>> g;
  for (const auto& t : l.sigma_in.labels()) {
    auto& image = g[t.text()];
    for (auto& e : marked)
      if (l.accepted[e.ball].nodes[0].in[e.port - 1] == t) image.push_back(e.label);
  }

  return Problem(l.delta, l.sigma_in, std::move(sigma_out), std::move(node_constraint),
                 std::move(edge_constraint), std::move(g));
}

HalfEdgeLabeling lift_solution(const GeneralLcl& l, const Problem& compiled, const PortGraph& g,
                               const HalfEdgeLabeling& f) {
  auto viols = verify_general(g, f, l);
  if (!viols.empty())
    throw LclError("labeling does not solve the ball problem; first: " + viols[0].line());
  EncodeOptions eo;
  eo.with_outputs = true;
  HalfEdgeLabeling out(g);
  for (int v = 0; v < g.n(); ++v) {
    std::string enc = encode_ball(labeled_ball(g, f, v, l.radius), l.radius, eo);
    for (int j = 1; j <= g.deg(v); ++j) {
      const Label* lab = compiled.sigma_out().find_text("@" + std::to_string(j) + ":" + enc);
      if (!lab) throw LclError("neighborhood missing from the compiled alphabet: " + enc);
      out.set(v, j, *lab);
    }
  }
  return out;
}

HalfEdgeLabeling project_solution(const GeneralLcl& l, const Problem& compiled,
                                  const PortGraph& g, const HalfEdgeLabeling& f2) {
  auto viols = verify_nec(g, f2, compiled);
  if (!viols.empty())
    throw LclError("labeling does not solve the compiled problem; first: " + viols[0].line());
  DecodeOptions dopt;
  dopt.in_order = &l.sigma_in;
  dopt.out_order = &l.sigma_out;
  dopt.radius_hint = l.radius;
  std::map<std::string, Label> memo;
  HalfEdgeLabeling out(g);
  for (int v = 0; v < g.n(); ++v)
    for (int j = 1; j <= g.deg(v); ++j) {
      const std::string& text = f2.at(v, j).text();
      auto hit = memo.find(text);
      if (hit == memo.end()) {
        auto colon = text.find(':');
        if (text.size() < 3 || text[0] != '@' || colon == std::string::npos)
          throw LclError("not a marked-ball label: " + text);
        int p = std::stoi(text.substr(1, colon - 1));
        Ball b = decode_ball(text.substr(colon + 1), dopt);
        if (!b.has_outputs() || p < 1 || p > b.nodes[0].deg)
          throw LclError("marked port out of range in " + text);
        hit = memo.emplace(text, b.nodes[0].out[p - 1]).first;
      }
      out.set(v, j, hit->second);
    }
  return out;
}

}  // namespace lcl
