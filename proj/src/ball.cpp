#include "lcl/ball.hpp"

#include <gmpxx.h>

#include <algorithm>
#include <deque>
#include <memory>

#include "lcl/error.hpp"
#include "lcl/graph.hpp"
#include "lcl/problem.hpp"

namespace lcl {

std::string id_mode_name(IdMode m) {
  switch (m) {
    case IdMode::PortNumbering: return "port-numbering";
    case IdMode::DeterministicId: return "deterministic-id";
    case IdMode::OrderInvariant: return "order-invariant";
    case IdMode::Randomized: return "randomized";
  }
  return "?";
}

std::optional<IdMode> id_mode_from(const std::string& s) {
  if (s == "port-numbering") return IdMode::PortNumbering;
  if (s == "deterministic-id") return IdMode::DeterministicId;
  if (s == "order-invariant") return IdMode::OrderInvariant;
  if (s == "randomized") return IdMode::Randomized;
  return std::nullopt;
}

namespace {

std::vector<std::string> ball_tokens(const Ball& b, IdMode mode) {
  std::vector<std::string> tok(b.nodes.size());
  if (mode == IdMode::PortNumbering) return tok;
  if (mode == IdMode::OrderInvariant) {
    // Rank within the visible fragment, 1-based by identifier order.
    std::vector<std::size_t> idx(b.nodes.size());
    for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = i;
    std::sort(idx.begin(), idx.end(),
              [&](std::size_t a, std::size_t c) { return b.nodes[a].id < b.nodes[c].id; });
    for (std::size_t r = 0; r < idx.size(); ++r) tok[idx[r]] = std::to_string(r + 1);
    return tok;
  }
  for (std::size_t i = 0; i < b.nodes.size(); ++i)
    tok[i] = b.nodes[i].id >= 0 ? std::to_string(b.nodes[i].id) : "";
  return tok;
}

void encode_rec(const Ball& b, int v, int depth_left, const std::vector<std::string>& tok,
                bool with_outputs, std::string& s) {
  const Ball::Node& nd = b.nodes[v];
  s += '(';
  s += std::to_string(nd.deg);
  s += ';';
  for (int j = 0; j < nd.deg; ++j) {
    if (j) s += ',';
    s += nd.in[j].text();
    if (with_outputs) {
      if (nd.out.empty()) throw LclError("ball encoding requested outputs but none are present");
      s += ':';
      s += nd.out[j].text();
    }
  }
  s += ';';
  s += tok[v];
  s += ")[";
  for (int j = 0; j < nd.deg; ++j) {
    if (j) s += ',';
    if (depth_left == 0 || nd.nbr[j] < 0) {
      s += '-';
    } else {
      s += std::to_string(nd.back[j]);
      s += ':';
      encode_rec(b, nd.nbr[j], depth_left - 1, tok, with_outputs, s);
    }
  }
  s += ']';
}

}  // namespace

std::string encode_ball(const Ball& b, int t, const EncodeOptions& opts) {
  if (b.nodes.empty()) throw LclError("cannot encode an empty ball");
  std::vector<std::string> tok = ball_tokens(b, opts.mode);
  std::string s;
  if (opts.mark_port > 0) {
    s += '@';
    s += std::to_string(opts.mark_port);
    s += ':';
  }
  encode_rec(b, 0, t, tok, opts.with_outputs, s);
  return s;
}

Ball extract_ball(const PortGraph& g, int v, int t, std::vector<int>* origin) {
  Ball b;
  b.radius = t;
  if (origin) origin->clear();
  std::vector<int> ball_idx(g.n(), -1);
  struct Item { int node; int depth; };
  std::deque<Item> queue;
  auto add = [&](int u) {
    const PortGraph::Node& gn = g.node(u);
    Ball::Node nd;
    nd.deg = static_cast<int>(gn.nbr.size());
    nd.in = gn.in;
    nd.nbr.assign(nd.deg, -1);
    nd.back.assign(nd.deg, 0);
    nd.id = gn.id;
    b.nodes.push_back(std::move(nd));
    if (origin) origin->push_back(u);
    ball_idx[u] = static_cast<int>(b.nodes.size()) - 1;
    return ball_idx[u];
  };
  add(v);
  queue.push_back({v, 0});
  while (!queue.empty()) {
    auto [u, depth] = queue.front();
    queue.pop_front();
    if (depth == t) continue;
    const PortGraph::Node& gn = g.node(u);
    for (std::size_t j = 0; j < gn.nbr.size(); ++j) {
      int w = gn.nbr[j];
      if (w < 0) continue;
      if (ball_idx[w] < 0) {
        add(w);
        queue.push_back({w, depth + 1});
      }
      b.nodes[ball_idx[u]].nbr[j] = ball_idx[w];
      b.nodes[ball_idx[u]].back[j] = gn.back[j];
      // Mirror the edge on the opposite side (covers boundary parents).
      b.nodes[ball_idx[w]].nbr[gn.back[j] - 1] = ball_idx[u];
      b.nodes[ball_idx[w]].back[gn.back[j] - 1] = static_cast<int>(j) + 1;
    }
  }
  return b;
}

namespace {

struct WalkNode {
  int deg = 0;
  std::vector<std::string> in_txt, out_txt;
  std::string idtok;
  std::vector<int> back;                            // 0 for dash
  std::vector<std::unique_ptr<WalkNode>> child;     // null for dash
  int depth = 0;
};

// Splits s on `sep` at nesting depth 0 w.r.t. (), [], {}.
std::vector<std::string> split_top(const std::string& s, char sep) {
  std::vector<std::string> parts;
  int depth = 0;
  std::string cur;
  for (char c : s) {
    if (c == '(' || c == '[' || c == '{') ++depth;
    if (c == ')' || c == ']' || c == '}') --depth;
    if (c == sep && depth == 0) {
      parts.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  parts.push_back(cur);
  return parts;
}

std::unique_ptr<WalkNode> parse_walk(const std::string& s, std::size_t& pos, int depth) {
  auto fail = [&](const std::string& why) {
    throw ParseError("ball encoding: " + why + " near position " + std::to_string(pos));
  };
  if (pos >= s.size() || s[pos] != '(') fail("expected '('");
  // Find the matching ')' of the header.
  std::size_t hdr_start = ++pos;
  int depth_paren = 1;
  while (pos < s.size() && depth_paren > 0) {
    if (s[pos] == '(') ++depth_paren;
    if (s[pos] == ')') --depth_paren;
    ++pos;
  }
  if (depth_paren != 0) fail("unbalanced header");
  std::string header = s.substr(hdr_start, pos - 1 - hdr_start);
  auto fields = split_top(header, ';');
  if (fields.size() != 3) fail("header needs 3 ';'-fields");
  auto node = std::make_unique<WalkNode>();
  node->depth = depth;
  try {
    node->deg = std::stoi(fields[0]);
  } catch (...) {
    fail("bad degree");
  }
  if (node->deg < 0) fail("negative degree");
  if (!fields[1].empty() || node->deg == 0) {
    auto items = fields[1].empty() ? std::vector<std::string>{} : split_top(fields[1], ',');
    if (static_cast<int>(items.size()) != node->deg) fail("item count != degree");
    for (const auto& item : items) {
      auto halves = split_top(item, ':');
      if (halves.size() == 1) {
        node->in_txt.push_back(halves[0]);
      } else if (halves.size() == 2) {
        node->in_txt.push_back(halves[0]);
        node->out_txt.push_back(halves[1]);
      } else {
        fail("bad half-edge item");
      }
    }
    if (!node->out_txt.empty() && static_cast<int>(node->out_txt.size()) != node->deg)
      fail("outputs must cover all ports or none");
  } else {
    fail("missing inputs");
  }
  node->idtok = fields[2];
  if (pos >= s.size() || s[pos] != '[') fail("expected '['");
  ++pos;
  for (int j = 0; j < node->deg; ++j) {
    if (j) {
      if (pos >= s.size() || s[pos] != ',') fail("expected ','");
      ++pos;
    }
    if (pos < s.size() && s[pos] == '-') {
      ++pos;
      node->back.push_back(0);
      node->child.push_back(nullptr);
      continue;
    }
    std::size_t colon = s.find(':', pos);
    if (colon == std::string::npos) fail("expected back-port");
    int bp = 0;
    try {
      bp = std::stoi(s.substr(pos, colon - pos));
    } catch (...) {
      fail("bad back-port");
    }
    pos = colon + 1;
    node->back.push_back(bp);
    node->child.push_back(parse_walk(s, pos, depth + 1));
  }
  if (node->deg == 0) {
    // nothing to consume
  }
  if (pos >= s.size() || s[pos] != ']') fail("expected ']'");
  ++pos;
  return node;
}

int max_depth(const WalkNode* w) {
  int d = w->depth;
  for (const auto& c : w->child)
    if (c) d = std::max(d, max_depth(c.get()));
  return d;
}

Label parse_ball_label(const std::string& txt, const Alphabet* order) {
  return parse_label_token(txt, order);
}

void fold_walk(const WalkNode* w, Ball& b, int self, int parent, int parent_port, int via_back,
               const DecodeOptions& opts) {
  Ball::Node& nd = b.nodes[self];
  nd.deg = w->deg;
  nd.nbr.assign(w->deg, -1);
  nd.back.assign(w->deg, 0);
  for (int j = 0; j < w->deg; ++j) {
    nd.in.push_back(parse_ball_label(w->in_txt[j], opts.in_order));
    if (!w->out_txt.empty()) nd.out.push_back(parse_ball_label(w->out_txt[j], opts.out_order));
  }
  if (!w->idtok.empty()) {
    try {
      nd.id = std::stoll(w->idtok);
    } catch (...) {
      throw ParseError("ball encoding: non-numeric id token '" + w->idtok + "'");
    }
  }
  if (parent >= 0) {
    if (via_back < 1 || via_back > w->deg)
      throw ParseError("ball encoding: back-port out of range");
    nd.nbr[via_back - 1] = parent;
    nd.back[via_back - 1] = parent_port;
  }
  for (int j = 0; j < w->deg; ++j) {
    if (parent >= 0 && j + 1 == via_back) continue;  // parent re-encoding subtree
    if (!w->child[j]) continue;
    b.nodes.emplace_back();
    int c = static_cast<int>(b.nodes.size()) - 1;
    // Note: b.nodes may reallocate inside recursion; re-reference after.
    fold_walk(w->child[j].get(), b, c, self, j + 1, w->back[j], opts);
    b.nodes[self].nbr[j] = c;
    b.nodes[self].back[j] = w->back[j];
  }
}

}  // namespace

Ball decode_ball(const std::string& enc, const DecodeOptions& opts, int* mark) {
  std::size_t pos = 0;
  int mark_port = 0;
  if (!enc.empty() && enc[0] == '@') {
    std::size_t colon = enc.find(':');
    if (colon == std::string::npos) throw ParseError("ball encoding: bad mark prefix");
    try {
      mark_port = std::stoi(enc.substr(1, colon - 1));
    } catch (...) {
      throw ParseError("ball encoding: bad mark port");
    }
    pos = colon + 1;
  }
  auto walk = parse_walk(enc, pos, 0);
  if (pos != enc.size()) throw ParseError("ball encoding: trailing characters");
  Ball b;
  b.radius = opts.radius_hint >= 0 ? opts.radius_hint : max_depth(walk.get());
  b.nodes.emplace_back();
  fold_walk(walk.get(), b, 0, -1, 0, 0, opts);
  // Consistency: the folded fragment must reproduce the input walk tree.
  bool with_out = b.has_outputs();
  bool has_tok = false;
  for (auto& nd : b.nodes)
    if (nd.id >= 0) has_tok = true;
  EncodeOptions eo;
  eo.mode = has_tok ? IdMode::DeterministicId : IdMode::PortNumbering;
  eo.with_outputs = with_out;
  eo.mark_port = mark_port;
  int t = opts.radius_hint >= 0 ? opts.radius_hint : max_depth(walk.get());
  if (encode_ball(b, t, eo) != enc)
    throw ParseError("ball encoding: inconsistent walk tree (re-encoding differs)");
  if (mark) *mark = mark_port;
  return b;
}

Ball subview(const Ball& b, int start, int depth) {
  Ball out;
  out.radius = depth;
  std::vector<int> new_idx(b.nodes.size(), -1);
  std::vector<int> order;          // old indices in BFS order
  std::vector<int> depth_of(b.nodes.size(), -1);
  order.push_back(start);
  new_idx[start] = 0;
  depth_of[start] = 0;
  for (std::size_t h = 0; h < order.size(); ++h) {
    int u = order[h];
    if (depth_of[u] == depth) continue;
    for (int w : b.nodes[u].nbr) {
      if (w < 0 || new_idx[w] >= 0) continue;
      new_idx[w] = static_cast<int>(order.size());
      depth_of[w] = depth_of[u] + 1;
      order.push_back(w);
    }
  }
  for (int u : order) {
    const Ball::Node& src = b.nodes[u];
    Ball::Node nd;
    nd.deg = src.deg;
    nd.in = src.in;
    nd.out = src.out;
    nd.id = src.id;
    nd.nbr.assign(src.deg, -1);
    nd.back.assign(src.deg, 0);
    for (int j = 0; j < src.deg; ++j) {
      int w = src.nbr[j];
      if (w >= 0 && new_idx[w] >= 0) {
        nd.nbr[j] = new_idx[w];
        nd.back[j] = src.back[j];
      }
    }
    out.nodes.push_back(std::move(nd));
  }
  return out;
}

std::uint64_t ball_size_bound(int delta, int R) {
  std::uint64_t total = 1, layer = 1;
  for (int i = 0; i < R; ++i) {
    layer = layer * static_cast<std::uint64_t>(i == 0 ? delta : delta - 1);
    if (layer > (1ull << 60)) return ~0ull;
    total += layer;
    if (total > (1ull << 60)) return ~0ull;
  }
  return total;
}

namespace {

// Child records: (degree c, back-port b, inputs), the unit of one-hop growth.
struct ChildRecord {
  int deg;
  int back;
  std::vector<Label> in;
};

std::vector<ChildRecord> child_records(int delta, const Alphabet& sigma_in) {
  std::vector<ChildRecord> out;
  int s = static_cast<int>(sigma_in.size());
  for (int c = 1; c <= delta; ++c) {
    std::vector<int> pick(c, 0);
    while (true) {
      std::vector<Label> in;
      in.reserve(c);
      for (int j = 0; j < c; ++j) in.push_back(sigma_in.labels()[pick[j]]);
      for (int b = 1; b <= c; ++b) out.push_back({c, b, in});
      int j = c - 1;
      while (j >= 0 && pick[j] == s - 1) pick[j--] = 0;
      if (j < 0) break;
      ++pick[j];
    }
  }
  return out;
}

mpz_class count_child_options(int delta, int s, int depth) {
  if (depth == 0) return 1;
  mpz_class total = 0;
  for (int c = 1; c <= delta; ++c) {
    mpz_class inputs;
    mpz_ui_pow_ui(inputs.get_mpz_t(), s, c);
    mpz_class sub = count_child_options(delta, s, depth - 1);
    mpz_class subpow;
    mpz_pow_ui(subpow.get_mpz_t(), sub.get_mpz_t(), c - 1);
    total += c * inputs * subpow;
  }
  return total;
}

// Attaches one child per dangling port of the frontier, in all ways, layer by
// layer until depth_left reaches 0 (odometer over the dangling-port list).
void expand_layer(Ball& ball, const std::vector<int>& frontier, int depth_left,
                  const std::vector<ChildRecord>& recs, std::vector<Ball>& out) {
  if (depth_left == 0) {
    out.push_back(ball);
    return;
  }
  std::vector<std::pair<int, int>> dangling;  // (node, port index)
  for (int v : frontier)
    for (int j = 0; j < ball.nodes[v].deg; ++j)
      if (ball.nodes[v].nbr[j] < 0) dangling.emplace_back(v, j);
  if (dangling.empty()) {
    out.push_back(ball);
    return;
  }
  std::vector<std::size_t> pick(dangling.size(), 0);
  while (true) {
    Ball b = ball;
    std::vector<int> next;
    for (std::size_t k = 0; k < dangling.size(); ++k) {
      const ChildRecord& r = recs[pick[k]];
      auto [v, j] = dangling[k];
      b.nodes.emplace_back();
      int c = static_cast<int>(b.nodes.size()) - 1;
      Ball::Node& cn = b.nodes[c];
      cn.deg = r.deg;
      cn.in = r.in;
      cn.nbr.assign(r.deg, -1);
      cn.back.assign(r.deg, 0);
      cn.nbr[r.back - 1] = v;
      cn.back[r.back - 1] = j + 1;
      b.nodes[v].nbr[j] = c;
      b.nodes[v].back[j] = r.back;
      next.push_back(c);
    }
    expand_layer(b, next, depth_left - 1, recs, out);
    std::size_t k = dangling.size();
    while (k > 0 && pick[k - 1] == recs.size() - 1) pick[--k] = 0;
    if (k == 0) break;
    ++pick[k - 1];
  }
}

}  // namespace

std::vector<Ball> enumerate_balls(int delta, const Alphabet& sigma_in, int t,
                                  std::uint64_t guard_limit, bool include_isolated) {
  int s = static_cast<int>(sigma_in.size());
  mpz_class count = include_isolated ? 1 : 0;
  mpz_class child = count_child_options(delta, s, t);
  for (int d = 1; d <= delta; ++d) {
    mpz_class inputs;
    mpz_ui_pow_ui(inputs.get_mpz_t(), s, d);
    mpz_class cpow;
    mpz_pow_ui(cpow.get_mpz_t(), child.get_mpz_t(), d);
    count += inputs * cpow;
  }
  if (count > mpz_class(static_cast<unsigned long>(guard_limit)))
    throw GuardError(count.get_str(), guard_limit, "ball enumeration");

  std::vector<Ball> out;
  if (include_isolated) {
    Ball b;
    b.radius = t;
    b.nodes.emplace_back();
    out.push_back(std::move(b));
  }
  auto recs = child_records(delta, sigma_in);
  for (int d = 1; d <= delta; ++d) {
    std::vector<int> pick(d, 0);
    while (true) {
      Ball root;
      root.radius = t;
      root.nodes.emplace_back();
      Ball::Node& rn = root.nodes[0];
      rn.deg = d;
      rn.nbr.assign(d, -1);
      rn.back.assign(d, 0);
      for (int j = 0; j < d; ++j) rn.in.push_back(sigma_in.labels()[pick[j]]);
      expand_layer(root, {0}, t, recs, out);
      int j = d - 1;
      while (j >= 0 && pick[j] == s - 1) pick[j--] = 0;
      if (j < 0) break;
      ++pick[j];
    }
  }
  return out;
}

}  // namespace lcl
