#include "lcl/graph.hpp"

#include <algorithm>
#include <array>
#include <numeric>
#include <sstream>

#include "lcl/error.hpp"
#include "lcl/problem.hpp"

namespace lcl {

void PortGraph::add_edge(int u, int v, const Label& in_u, const Label& in_v) {
  Node& nu = nodes_[u];
  Node& nv = nodes_[v];
  int pu = static_cast<int>(nu.nbr.size()) + 1;
  int pv = static_cast<int>(nv.nbr.size()) + 1;
  if (u == v) ++pv;  // self-loops never occur in forests, but keep ports sane
  nu.nbr.push_back(v);
  nu.back.push_back(pv);
  nu.in.push_back(in_u);
  nv.nbr.push_back(u);
  nv.back.push_back(pu);
  nv.in.push_back(in_v);
}

void PortGraph::add_half_edges(int u, int pu, int v, int pv, const Label& in_u,
                               const Label& in_v) {
  auto place = [](Node& node, int port, int nbr, int back, const Label& in) {
    if (static_cast<int>(node.nbr.size()) < port) {
      node.nbr.resize(port, -1);
      node.back.resize(port, 0);
      node.in.resize(port, Label());
    }
    node.nbr[port - 1] = nbr;
    node.back[port - 1] = back;
    node.in[port - 1] = in;
  };
  place(nodes_[u], pu, v, pv, in_u);
  place(nodes_[v], pv, u, pu, in_v);
}

bool PortGraph::ids_distinct() const {
  std::vector<long long> ids;
  ids.reserve(nodes_.size());
  for (const auto& nd : nodes_) {
    if (nd.id < 0) return false;
    ids.push_back(nd.id);
  }
  std::sort(ids.begin(), ids.end());
  return std::adjacent_find(ids.begin(), ids.end()) == ids.end();
}

std::vector<int> PortGraph::rank_of_ids() const {
  std::vector<int> idx(nodes_.size());
  std::iota(idx.begin(), idx.end(), 0);
  std::sort(idx.begin(), idx.end(),
            [&](int a, int b) { return nodes_[a].id < nodes_[b].id; });
  std::vector<int> rank(nodes_.size());
  for (std::size_t i = 0; i < idx.size(); ++i) rank[idx[i]] = static_cast<int>(i) + 1;
  return rank;
}

HalfEdgeLabeling::HalfEdgeLabeling(const PortGraph& g) {
  out_.resize(g.n());
  for (int v = 0; v < g.n(); ++v) out_[v].resize(g.deg(v));
}

bool HalfEdgeLabeling::total() const {
  for (const auto& row : out_)
    for (const auto& l : row)
      if (!l.valid()) return false;
  return true;
}

bool HalfEdgeLabeling::operator==(const HalfEdgeLabeling& o) const {
  if (out_.size() != o.out_.size()) return false;
  for (std::size_t v = 0; v < out_.size(); ++v) {
    if (out_[v].size() != o.out_[v].size()) return false;
    for (std::size_t j = 0; j < out_[v].size(); ++j)
      if (out_[v][j] != o.out_[v][j]) return false;
  }
  return true;
}

namespace {

std::vector<std::string> split_ws(const std::string& s) {
  std::istringstream in(s);
  std::vector<std::string> out;
  std::string tok;
  while (in >> tok) out.push_back(tok);
  return out;
}

std::pair<int, int> parse_half_edge(const std::string& tok, int line_no) {
  auto colon = tok.find(':');
  if (colon == std::string::npos)
    throw ParseError("expected <node>:<port>, got '" + tok + "'", line_no);
  try {
    return {std::stoi(tok.substr(0, colon)), std::stoi(tok.substr(colon + 1))};
  } catch (...) {
    throw ParseError("bad <node>:<port> '" + tok + "'", line_no);
  }
}

}  // namespace

std::string serialize_graph(const PortGraph& g) {
  std::ostringstream out;
  out << "n " << g.n() << " delta " << g.delta << " mode " << id_mode_name(g.mode) << "\n";
  for (int v = 0; v < g.n(); ++v) {
    const auto& nd = g.node(v);
    out << "node " << v << " deg " << nd.nbr.size() << " inputs ";
    if (nd.in.empty()) {
      out << "-";
    } else {
      for (std::size_t j = 0; j < nd.in.size(); ++j) out << (j ? "," : "") << nd.in[j].text();
    }
    out << " idtok ";
    if (nd.id >= 0)
      out << nd.id;
    else
      out << "-";
    out << "\n";
  }
  for (int v = 0; v < g.n(); ++v) {
    const auto& nd = g.node(v);
    for (std::size_t j = 0; j < nd.nbr.size(); ++j) {
      int w = nd.nbr[j];
      int pw = nd.back[j];
      if (w < 0) continue;
      // Emit each edge once, from its lexicographically smaller endpoint.
      if (w > v || (w == v && static_cast<int>(j) + 1 < pw))
        out << "edge " << v << ":" << j + 1 << " " << w << ":" << pw << "\n";
    }
  }
  return out.str();
}

PortGraph parse_graph(const std::string& text) {
  std::istringstream in(text);
  std::string raw;
  int line_no = 0;
  PortGraph g;
  int declared_n = -1;
  struct Pending {
    int deg;
    std::vector<Label> in;
    long long id;
  };
  std::vector<Pending> pendings;
  std::vector<std::array<int, 4>> edges;
  while (std::getline(in, raw)) {
    ++line_no;
    auto hash = raw.find('#');
    if (hash != std::string::npos) raw = raw.substr(0, hash);
    auto toks = split_ws(raw);
    if (toks.empty()) continue;
    if (toks[0] == "n") {
      if (toks.size() != 6 || toks[2] != "delta" || toks[4] != "mode")
        throw ParseError("bad header (expect: n <n> delta <D> mode <mode>)", line_no);
      try {
        declared_n = std::stoi(toks[1]);
        g.delta = std::stoi(toks[3]);
      } catch (...) {
        throw ParseError("bad header numbers", line_no);
      }
      auto mode = id_mode_from(toks[5]);
      if (!mode) throw ParseError("unknown mode '" + toks[5] + "'", line_no);
      g.mode = *mode;
    } else if (toks[0] == "node") {
      if (toks.size() != 8 || toks[2] != "deg" || toks[4] != "inputs" || toks[6] != "idtok")
        throw ParseError("bad node line (expect: node <i> deg <d> inputs <l,..|-> idtok <tok|->)",
                         line_no);
      int idx, deg;
      try {
        idx = std::stoi(toks[1]);
        deg = std::stoi(toks[3]);
      } catch (...) {
        throw ParseError("bad node numbers", line_no);
      }
      if (idx != static_cast<int>(pendings.size()))
        throw ParseError("node lines must appear in index order", line_no);
      Pending p;
      p.deg = deg;
      if (toks[5] != "-") {
        std::istringstream ls(toks[5]);
        std::string item;
        while (std::getline(ls, item, ','))
          p.in.push_back(parse_label_token(item, nullptr));
      }
      if (static_cast<int>(p.in.size()) != deg)
        throw ParseError("inputs count != deg", line_no);
      p.id = -1;
      if (toks[7] != "-") {
        try {
          p.id = std::stoll(toks[7]);
        } catch (...) {
          throw ParseError("bad idtok '" + toks[7] + "'", line_no);
        }
      }
      pendings.push_back(std::move(p));
    } else if (toks[0] == "edge") {
      if (toks.size() != 3) throw ParseError("bad edge line", line_no);
      auto [u, pu] = parse_half_edge(toks[1], line_no);
      auto [v, pv] = parse_half_edge(toks[2], line_no);
      edges.push_back({u, pu, v, pv});
    } else {
      throw ParseError("unknown graph line '" + toks[0] + "'", line_no);
    }
  }
  if (declared_n < 0) throw ParseError("missing graph header");
  if (declared_n != static_cast<int>(pendings.size()))
    throw ParseError("header n does not match node count");
  for (const auto& p : pendings) {
    int v = g.add_node();
    auto& nd = g.node_mut(v);
    nd.nbr.assign(p.deg, -1);
    nd.back.assign(p.deg, 0);
    nd.in = p.in;
    nd.id = p.id;
  }
  for (const auto& [u, pu, v, pv] : edges) {
    if (u < 0 || u >= g.n() || v < 0 || v >= g.n())
      throw ParseError("edge endpoint out of range");
    if (pu < 1 || pu > g.deg(u) || pv < 1 || pv > g.deg(v))
      throw ParseError("edge port out of range");
    auto& nu = g.node_mut(u);
    auto& nv = g.node_mut(v);
    if (nu.nbr[pu - 1] != -1 || nv.nbr[pv - 1] != -1)
      throw ParseError("port wired twice");
    nu.nbr[pu - 1] = v;
    nu.back[pu - 1] = pv;
    nv.nbr[pv - 1] = u;
    nv.back[pv - 1] = pu;
  }
  for (int v = 0; v < g.n(); ++v) {
    const auto& nd = g.node(v);
    if (static_cast<int>(nd.nbr.size()) > g.delta)
      throw ParseError("node degree exceeds delta");
    for (std::size_t j = 0; j < nd.nbr.size(); ++j)
      if (nd.nbr[j] < 0) throw ParseError("unwired port " + std::to_string(j + 1) +
                                          " at node " + std::to_string(v));
  }
  return g;
}

std::string serialize_labeling(const HalfEdgeLabeling& f) {
  std::ostringstream out;
  for (int v = 0; v < f.n(); ++v)
    for (int j = 1; j <= f.deg(v); ++j)
      out << "out " << v << ":" << j << " " << f.at(v, j).text() << "\n";
  return out.str();
}

HalfEdgeLabeling parse_labeling(const std::string& text, const PortGraph& g) {
  HalfEdgeLabeling f(g);
  std::istringstream in(text);
  std::string raw;
  int line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    auto hash = raw.find('#');
    if (hash != std::string::npos) raw = raw.substr(0, hash);
    auto toks = split_ws(raw);
    if (toks.empty()) continue;
    if (toks[0] != "out" || toks.size() != 3)
      throw ParseError("expected: out <node>:<port> <label>", line_no);
    auto [v, port] = parse_half_edge(toks[1], line_no);
    if (v < 0 || v >= g.n() || port < 1 || port > g.deg(v))
      throw ParseError("half-edge out of range", line_no);
    f.set(v, port, parse_label_token(toks[2], nullptr));
  }
  return f;
}

}  // namespace lcl
