#include "lcl/sim_grid.hpp"

#include <algorithm>
#include <cstdlib>
#include <limits>
#include <map>
#include <random>
#include <set>
#include <sstream>

namespace lcl {

namespace {

std::vector<std::string> split_ws(const std::string& line) {
  std::istringstream ss(line);
  std::vector<std::string> toks;
  std::string t;
  while (ss >> t) toks.push_back(t);
  return toks;
}

std::vector<std::string> split_on(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : s) {
    if (c == sep) {
      out.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  out.push_back(cur);
  return out;
}

std::string join_ints(const std::vector<int>& v) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + std::to_string(v[i]);
  return s;
}

std::vector<std::vector<int>> window_offsets(int d, int t) {
  std::vector<std::vector<int>> out;
  std::vector<int> o(d, -t);
  while (true) {
    int s = 0;
    for (int x : o) s += std::abs(x);
    if (s <= t) out.push_back(o);
    int i = d - 1;
    while (i >= 0 && o[i] == t) {
      o[i] = -t;
      --i;
    }
    if (i < 0) break;
    ++o[i];
  }
  return out;
}

}  // namespace

int OrientedGrid::node_at(const std::vector<int>& coord) const {
  int idx = 0;
  for (int i = d - 1; i >= 0; --i) idx = idx * sides[i] + coord[i];
  return idx;
}

int OrientedGrid::port_for(int node, int dim, int sign) const {
  const auto& meta = port_meta[node];
  for (std::size_t p = 0; p < meta.size(); ++p)
    if (meta[p].first == dim && meta[p].second == sign) return static_cast<int>(p) + 1;
  return -1;
}

OrientedGrid gen_grid(const GridSpec& spec) {
  if (spec.d < 1) throw LclError("grid dimension must be >= 1");
  if (static_cast<int>(spec.sides.size()) != spec.d)
    throw LclError("need one side length per dimension");
  for (int s : spec.sides) {
    if (spec.toroidal && s < 2) throw LclError("toroidal sides must be >= 2");
    if (s < 1) throw LclError("sides must be >= 1");
  }
  if (spec.sigma_in.size() == 0) throw LclError("grid generation needs an input alphabet");
  OrientedGrid g;
  g.d = spec.d;
  g.sides = spec.sides;
  g.toroidal = spec.toroidal;
  long long n = 1;
  for (int s : spec.sides) {
    n *= s;
    if (n > (1 << 22)) throw LclError("grid too large");
  }
  g.graph.delta = 2 * spec.d;
  g.coords.resize(n);
  g.port_meta.resize(n);
  for (long long k = 0; k < n; ++k) {
    g.graph.add_node();
    auto& c = g.coords[k];
    c.resize(spec.d);
    long long rem = k;
    for (int i = 0; i < spec.d; ++i) {
      c[i] = static_cast<int>(rem % spec.sides[i]);
      rem /= spec.sides[i];
    }
  }
  // Canonical port layout: per dimension, + then -, skipping absent edges.
  for (long long k = 0; k < n; ++k) {
    for (int i = 1; i <= spec.d; ++i) {
      bool plus = spec.toroidal || g.coords[k][i - 1] + 1 < spec.sides[i - 1];
      bool minus = spec.toroidal || g.coords[k][i - 1] > 0;
      if (spec.sides[i - 1] == 1) plus = minus = false;
      if (plus) g.port_meta[k].emplace_back(i, +1);
      if (minus) g.port_meta[k].emplace_back(i, -1);
    }
    auto& nd = g.graph.node_mut(static_cast<int>(k));
    nd.nbr.assign(g.port_meta[k].size(), -1);
    nd.back.assign(g.port_meta[k].size(), -1);
    nd.in.assign(g.port_meta[k].size(), Label());
  }
  // Wire every dimension-i edge from its + side.
  for (long long k = 0; k < n; ++k)
    for (int i = 1; i <= spec.d; ++i) {
      int pu = g.port_for(static_cast<int>(k), i, +1);
      if (pu < 0) continue;
      std::vector<int> vc = g.coords[k];
      vc[i - 1] = (vc[i - 1] + 1) % spec.sides[i - 1];
      int v = g.node_at(vc);
      int pv = g.port_for(v, i, -1);
      auto& nu = g.graph.node_mut(static_cast<int>(k));
      auto& nv = g.graph.node_mut(v);
      nu.nbr[pu - 1] = v;
      nu.back[pu - 1] = pv;
      nv.nbr[pv - 1] = static_cast<int>(k);
      nv.back[pv - 1] = pu;
    }
  std::mt19937_64 rng(spec.seed);
  const auto& labels = spec.sigma_in.labels();
  for (long long k = 0; k < n; ++k) {
    auto& nd = g.graph.node_mut(static_cast<int>(k));
    for (auto& in : nd.in)
      in = spec.fixed_input ? labels[0] : labels[rng() % labels.size()];
  }
  return g;
}

ProdIds assign_prod_ids(const OrientedGrid& g, int c, std::uint64_t seed) {
  if (c < 1) throw LclError("id exponent c must be >= 1");
  long long n = g.graph.n();
  long long space = 1;
  for (int i = 0; i < c; ++i) {
    if (n > 0 && space > (1LL << 62) / n) {
      space = 1LL << 62;
      break;
    }
    space *= std::max(n, 1LL);
  }
  ProdIds ids;
  ids.d = g.d;
  ids.n = n;
  ids.c = c;
  ids.value.resize(g.d);
  std::mt19937_64 rng(seed);
  for (int i = 0; i < g.d; ++i) {
    int side = g.sides[i];
    if (space < side)
      throw LclError("identifier space n^c smaller than side " + std::to_string(side));
    std::set<long long> used;
    ids.value[i].resize(side);
    for (int v = 0; v < side; ++v) {
      long long x;
      do {
        x = static_cast<long long>(rng() % static_cast<std::uint64_t>(space));
      } while (!used.insert(x).second);
      ids.value[i][v] = x;
    }
  }
  return ids;
}

std::vector<mpz_class> combine_ids(const OrientedGrid& g, const ProdIds& ids, long long n,
                                   int c) {
  if (ids.d != g.d) throw LclError("identifier dimension mismatch");
  mpz_class base;
  mpz_ui_pow_ui(base.get_mpz_t(), static_cast<unsigned long>(std::max(n, 0LL)),
                static_cast<unsigned long>(c));
  std::vector<mpz_class> out(g.graph.n());
  for (int v = 0; v < g.graph.n(); ++v) {
    mpz_class acc = 0, mult = 1;
    for (int i = 1; i <= g.d; ++i) {
      long long xi = ids.of(g, v, i);
      if (xi < 0 || mpz_class(static_cast<long>(xi)) >= base)
        throw LclError("identifier " + std::to_string(xi) + " is not below n^c");
      acc += mpz_class(static_cast<long>(xi)) * mult;
      mult *= base;
    }
    out[v] = acc;
  }
  return out;
}

std::string grid_window_key(const OrientedGrid& g, int node, int t, IdMode mode,
                            const ProdIds* ids) {
  if (mode == IdMode::Randomized) throw LclError("randomized window keys are not supported");
  if (mode != IdMode::PortNumbering && !ids)
    throw LclError("window key needs identifiers in this mode");
  auto offsets = window_offsets(g.d, t);
  std::vector<int> target(offsets.size(), -1);
  for (std::size_t k = 0; k < offsets.size(); ++k) {
    std::vector<int> c = g.coords[node];
    bool ok = true;
    for (int i = 0; i < g.d; ++i) {
      c[i] += offsets[k][i];
      if (g.toroidal) {
        c[i] = ((c[i] % g.sides[i]) + g.sides[i]) % g.sides[i];
      } else if (c[i] < 0 || c[i] >= g.sides[i]) {
        ok = false;
        break;
      }
    }
    if (ok) target[k] = g.node_at(c);
  }
  std::vector<std::vector<long long>> ranks(g.d);
  if (mode == IdMode::OrderInvariant) {
    for (int i = 0; i < g.d; ++i) {
      auto& vals = ranks[i];
      for (std::size_t k = 0; k < offsets.size(); ++k)
        if (target[k] >= 0) vals.push_back(ids->of(g, target[k], i + 1));
      std::sort(vals.begin(), vals.end());
      vals.erase(std::unique(vals.begin(), vals.end()), vals.end());
    }
  }
  std::string key = "g(d=" + std::to_string(g.d) + ";t=" + std::to_string(t) + ")";
  for (std::size_t k = 0; k < offsets.size(); ++k) {
    key += "|(" + join_ints(offsets[k]) + ")";
    if (target[k] < 0) {
      key += ":-";
      continue;
    }
    key += ":";
    const auto& nd = g.graph.node(target[k]);
    bool first = true;
    for (int i = 1; i <= g.d; ++i)
      for (int sign : {+1, -1}) {
        int p = g.port_for(target[k], i, sign);
        key += (first ? "" : ",");
        key += p < 0 ? "-" : nd.in[p - 1].text();
        first = false;
      }
    if (mode == IdMode::DeterministicId) {
      key += ":";
      for (int i = 1; i <= g.d; ++i)
        key += (i > 1 ? "," : "") + std::to_string(ids->of(g, target[k], i));
    } else if (mode == IdMode::OrderInvariant) {
      key += ":";
      for (int i = 1; i <= g.d; ++i) {
        long long v = ids->of(g, target[k], i);
        auto it = std::lower_bound(ranks[i - 1].begin(), ranks[i - 1].end(), v);
        key += (i > 1 ? "," : "") +
               std::to_string(static_cast<long long>(it - ranks[i - 1].begin()) + 1);
      }
    }
  }
  return key;
}

namespace {

std::vector<Label> answer_window(const LocalAlgorithm& a, const OrientedGrid& g, int v,
                                 const std::string& key) {
  auto it = a.table.find(key);
  if (it != a.table.end()) return it->second;
  const auto& nd = g.graph.node(v);
  if (!a.zr.empty()) {
    auto z = a.zr.lookup(static_cast<int>(nd.nbr.size()), nd.in);
    if (z) return *z;
  }
  throw LclError("window not in table: " + key);
}

HalfEdgeLabeling run_windows(const LocalAlgorithm& a, const OrientedGrid& g,
                             const ProdIds* ids) {
  HalfEdgeLabeling f(g.graph);
  for (int v = 0; v < g.graph.n(); ++v) {
    std::vector<Label> outs =
        answer_window(a, g, v, grid_window_key(g, v, a.radius, a.mode, ids));
    if (static_cast<int>(outs.size()) != g.graph.deg(v))
      throw LclError("answer arity mismatch at node " + std::to_string(v));
    for (int j = 1; j <= g.graph.deg(v); ++j) f.set(v, j, outs[j - 1]);
  }
  return f;
}

}  // namespace

HalfEdgeLabeling run_prod_local(const LocalAlgorithm& a, const OrientedGrid& g,
                                const ProdIds& ids) {
  if (a.mode == IdMode::Randomized) throw LclError("randomized execution is not supported");
  return run_windows(a, g, &ids);
}

HalfEdgeLabeling run_prod_local_combined(const LocalAlgorithm& a, const OrientedGrid& g,
                                         const ProdIds& ids) {
  auto comb = combine_ids(g, ids, ids.n, ids.c);
  mpz_class base;
  mpz_ui_pow_ui(base.get_mpz_t(), static_cast<unsigned long>(std::max(ids.n, 0LL)),
                static_cast<unsigned long>(ids.c));
  ProdIds rec;
  rec.d = g.d;
  rec.n = ids.n;
  rec.c = ids.c;
  rec.value.resize(g.d);
  for (int i = 0; i < g.d; ++i) rec.value[i].assign(g.sides[i], -1);
  for (int v = 0; v < g.graph.n(); ++v) {
    mpz_class rem = comb[v];
    for (int i = 0; i < g.d; ++i) {
      mpz_class digit = rem % base;
      rem /= base;
      if (!digit.fits_slong_p()) throw LclError("extracted identifier does not fit");
      rec.value[i][g.coords[v][i]] = digit.get_si();
    }
  }
  return run_windows(a, g, &rec);
}

bool orientation_precedes(const GridSlot& a, const GridSlot& b) {
  if (a.dim != b.dim) return a.dim < b.dim;
  int i = a.dim - 1;
  if (a.offset[i] != b.offset[i]) return a.offset[i] < b.offset[i];
  return a.offset < b.offset;
}

std::vector<GridSlot> orientation_order(const OrientedGrid& g, int t) {
  for (int s : g.sides)
    if (s <= 2 * t + 1)
      throw LclError("window too large for side lengths: need sides > " +
                     std::to_string(2 * t + 1));
  std::vector<GridSlot> slots;
  for (const auto& o : window_offsets(g.d, t))
    for (int i = 1; i <= g.d; ++i) slots.push_back({o, i});
  std::sort(slots.begin(), slots.end(), orientation_precedes);
  return slots;
}

HalfEdgeLabeling run_orientation_locked(const LocalAlgorithm& a, const OrientedGrid& g) {
  if (a.mode != IdMode::OrderInvariant)
    throw LclError("the orientation lock applies to order-invariant algorithms only");
  if (!g.toroidal) throw LclError("the orientation lock refuses non-toroidal grids");
  orientation_order(g, a.radius);  // validates side lengths
  int t = a.radius;
  HalfEdgeLabeling f(g.graph);
  ProdIds virt;
  virt.d = g.d;
  virt.n = g.graph.n();
  virt.c = 1;
  virt.value.resize(g.d);
  for (int v = 0; v < g.graph.n(); ++v) {
    // Virtual identifiers ranked by window position along each dimension.
    for (int i = 0; i < g.d; ++i) {
      virt.value[i].assign(g.sides[i], 0);
      for (int o = -t; o <= t; ++o) {
        int c = ((g.coords[v][i] + o) % g.sides[i] + g.sides[i]) % g.sides[i];
        virt.value[i][c] = o + t + 1;
      }
    }
    std::vector<Label> outs =
        answer_window(a, g, v, grid_window_key(g, v, t, IdMode::OrderInvariant, &virt));
    if (static_cast<int>(outs.size()) != g.graph.deg(v))
      throw LclError("answer arity mismatch at node " + std::to_string(v));
    for (int j = 1; j <= g.graph.deg(v); ++j) f.set(v, j, outs[j - 1]);
  }
  return f;
}

RamseyGridParams ramsey_params_grid(unsigned long t, unsigned long d, unsigned long r,
                                    unsigned long sin, unsigned long sout) {
  if (d < 1 || r < 1 || sin < 1 || sout < 1)
    throw LclError("grid parameters d, r, sin and sout must all be >= 1");
  RamseyGridParams out;
  out.p = mpz_class(d) * (2 * mpz_class(t) + 1);
  out.m = mpz_class(d) * (2 * (mpz_class(t) + r) + 1);
  mpz_class w = 2 * mpz_class(t) + 1;
  mpz_class wd;
  mpz_pow_ui(wd.get_mpz_t(), w.get_mpz_t(), d);
  out.z_base = sin;
  out.z_expo = 2 * mpz_class(d) * wd;
  if (sin == 1) {
    out.z = 1;
    out.z_exact = true;
    out.z_log2_ceil = 0;
  } else {
    out.z_log2_ceil = ceil_log2_pow(out.z_base, out.z_expo);
    if (out.z_log2_ceil <= (1u << 24)) {
      mpz_pow_ui(out.z.get_mpz_t(), out.z_base.get_mpz_t(), out.z_expo.get_ui());
      out.z_exact = true;
    }
  }
  out.c_base = sout;
  if (out.z_exact) {
    mpz_class pfac;
    mpz_fac_ui(pfac.get_mpz_t(), out.p.get_ui());
    out.c_expo = mpz_class(d) * pfac * out.z;
    if (sout == 1) {
      out.c = 1;
      out.c_exact = true;
      out.c_log2_ceil = 0;
    } else {
      out.c_log2_ceil = ceil_log2_pow(out.c_base, out.c_expo);
      if (out.c_log2_ceil <= (1u << 24) && mpz_fits_ulong_p(out.c_expo.get_mpz_t())) {
        mpz_pow_ui(out.c.get_mpz_t(), out.c_base.get_mpz_t(), out.c_expo.get_ui());
        out.c_exact = true;
      }
    }
  }
  return out;
}

std::string serialize_grid(const OrientedGrid& g) {
  std::string s = "grid d " + std::to_string(g.d) + " sides ";
  s += join_ints(g.sides);
  s += " toroidal " + std::to_string(g.toroidal ? 1 : 0) + "\n";
  s += "n " + std::to_string(g.graph.n()) + " delta " + std::to_string(g.graph.delta) +
       " mode " + id_mode_name(g.graph.mode) + "\n";
  for (int v = 0; v < g.graph.n(); ++v) {
    const auto& nd = g.graph.node(v);
    std::string in;
    for (std::size_t j = 0; j < nd.in.size(); ++j) in += (j ? "," : "") + nd.in[j].text();
    s += "node " + std::to_string(v) + " deg " + std::to_string(g.graph.deg(v)) + " inputs " +
         (nd.in.empty() ? "-" : in) + " idtok " +
         (nd.id < 0 ? "-" : std::to_string(nd.id)) + "\n";
  }
  for (int v = 0; v < g.graph.n(); ++v)
    s += "coord " + std::to_string(v) + " " + join_ints(g.coords[v]) + "\n";
  for (int v = 0; v < g.graph.n(); ++v) {
    const auto& nd = g.graph.node(v);
    for (std::size_t p = 0; p < g.port_meta[v].size(); ++p)
      if (g.port_meta[v][p].second > 0)
        s += "edge " + std::to_string(v) + ":" + std::to_string(p + 1) + " " +
             std::to_string(nd.nbr[p]) + ":" + std::to_string(nd.back[p]) + " dim " +
             std::to_string(g.port_meta[v][p].first) + " orient +\n";
  }
  return s;
}

OrientedGrid parse_grid(const std::string& text) {
  OrientedGrid g;
  std::istringstream ss(text);
  std::string line;
  bool saw_grid = false, saw_header = false;
  long long n = 0;
  std::vector<int> degs;
  while (std::getline(ss, line)) {
    auto hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    auto toks = split_ws(line);
    if (toks.empty()) continue;
    if (toks[0] == "grid") {
      if (toks.size() != 7 || toks[1] != "d" || toks[3] != "sides" || toks[5] != "toroidal")
        throw ParseError("bad grid header: " + line);
      g.d = std::stoi(toks[2]);
      for (auto& p : split_on(toks[4], ',')) g.sides.push_back(std::stoi(p));
      g.toroidal = toks[6] != "0";
      if (static_cast<int>(g.sides.size()) != g.d)
        throw ParseError("side count does not match dimension: " + line);
      saw_grid = true;
    } else if (toks[0] == "n") {
      if (toks.size() != 6 || toks[2] != "delta" || toks[4] != "mode")
        throw ParseError("bad graph header: " + line);
      n = std::stoll(toks[1]);
      g.graph.delta = std::stoi(toks[3]);
      { auto md = id_mode_from(toks[5]); if (!md) throw ParseError("unknown mode: " + toks[5]); g.graph.mode = *md; }
      for (long long k = 0; k < n; ++k) g.graph.add_node();
      g.coords.assign(n, {});
      g.port_meta.assign(n, {});
      degs.assign(n, 0);
      saw_header = true;
    } else if (toks[0] == "node") {
      if (!saw_header) throw ParseError("node before header: " + line);
      if (toks.size() != 8 || toks[2] != "deg" || toks[4] != "inputs" || toks[6] != "idtok")
        throw ParseError("bad node line: " + line);
      int v = std::stoi(toks[1]);
      if (v < 0 || v >= n) throw ParseError("node index out of range: " + line);
      int deg = std::stoi(toks[3]);
      auto& nd = g.graph.node_mut(v);
      nd.nbr.assign(deg, -1);
      nd.back.assign(deg, -1);
      nd.in.assign(deg, Label());
      degs[v] = deg;
      if (toks[5] != "-") {
        auto parts = split_on(toks[5], ',');
        if (static_cast<int>(parts.size()) != deg)
          throw ParseError("input count does not match degree: " + line);
        for (int j = 0; j < deg; ++j) nd.in[j] = Label::base(parts[j]);
      } else if (deg != 0) {
        throw ParseError("missing inputs: " + line);
      }
      nd.id = toks[7] == "-" ? -1 : std::stoll(toks[7]);
      g.port_meta[v].assign(deg, {0, 0});
    } else if (toks[0] == "coord") {
      if (toks.size() != 3) throw ParseError("bad coord line: " + line);
      int v = std::stoi(toks[1]);
      if (v < 0 || v >= n) throw ParseError("coord index out of range: " + line);
      for (auto& p : split_on(toks[2], ',')) g.coords[v].push_back(std::stoi(p));
      if (static_cast<int>(g.coords[v].size()) != g.d)
        throw ParseError("coordinate arity mismatch: " + line);
    } else if (toks[0] == "edge") {
      if (toks.size() != 7 || toks[3] != "dim" || toks[5] != "orient" || toks[6] != "+")
        throw ParseError("bad edge line: " + line);
      auto u_part = split_on(toks[1], ':');
      auto v_part = split_on(toks[2], ':');
      if (u_part.size() != 2 || v_part.size() != 2) throw ParseError("bad edge endpoints: " + line);
      int u = std::stoi(u_part[0]), pu = std::stoi(u_part[1]);
      int v = std::stoi(v_part[0]), pv = std::stoi(v_part[1]);
      int dim = std::stoi(toks[4]);
      if (u < 0 || u >= n || v < 0 || v >= n) throw ParseError("edge endpoint out of range: " + line);
      if (pu < 1 || pu > degs[u] || pv < 1 || pv > degs[v])
        throw ParseError("edge port out of range: " + line);
      if (dim < 1 || dim > g.d) throw ParseError("edge dimension out of range: " + line);
      auto& nu = g.graph.node_mut(u);
      auto& nv = g.graph.node_mut(v);
      if (nu.nbr[pu - 1] >= 0 || nv.nbr[pv - 1] >= 0)
        throw ParseError("port wired twice: " + line);
      nu.nbr[pu - 1] = v;
      nu.back[pu - 1] = pv;
      nv.nbr[pv - 1] = u;
      nv.back[pv - 1] = pu;
      g.port_meta[u][pu - 1] = {dim, +1};
      g.port_meta[v][pv - 1] = {dim, -1};
    } else {
      throw ParseError("unknown line kind: " + toks[0] + " in: " + line);
    }
  }
  if (!saw_grid || !saw_header) throw LclError("missing grid or graph header");
  for (int v = 0; v < g.graph.n(); ++v) {
    const auto& nd = g.graph.node(v);
    for (int j = 0; j < degs[v]; ++j) {
      if (nd.nbr[j] < 0) throw LclError("unwired port " + std::to_string(v) + ":" + std::to_string(j + 1));
      if (g.port_meta[v][j].first == 0) throw LclError("port without dimension annotation");
    }
    if (static_cast<int>(g.coords[v].size()) != g.d)
      throw LclError("node " + std::to_string(v) + " has no coordinates");
  }
  // Orientation consistency: a + port must step its dimension's coordinate up by one.
  for (int v = 0; v < g.graph.n(); ++v)
    for (std::size_t p = 0; p < g.port_meta[v].size(); ++p) {
      if (g.port_meta[v][p].second <= 0) continue;
      int dim = g.port_meta[v][p].first;
      int w = g.graph.node(v).nbr[p];
      for (int i = 0; i < g.d; ++i) {
        int expect = g.coords[v][i];
        if (i == dim - 1) expect = (expect + 1) % g.sides[i];
        if (g.coords[w][i] != expect)
          throw LclError("inconsistent orientation on a dimension-" + std::to_string(dim) +
                         " edge at node " + std::to_string(v));
      }
    }
  return g;
}

std::string serialize_prod_ids(const ProdIds& ids) {
  std::string s = "prodids d " + std::to_string(ids.d) + " n " + std::to_string(ids.n) + " c " +
                  std::to_string(ids.c) + "\n";
  for (int i = 0; i < ids.d; ++i) {
    s += "dimvals " + std::to_string(i + 1) + " ";
    for (std::size_t v = 0; v < ids.value[i].size(); ++v)
      s += (v ? "," : "") + std::to_string(ids.value[i][v]);
    s += "\n";
  }
  return s;
}

ProdIds parse_prod_ids(const std::string& text) {
  ProdIds ids;
  std::istringstream ss(text);
  std::string line;
  bool saw_header = false;
  while (std::getline(ss, line)) {
    auto toks = split_ws(line);
    if (toks.empty()) continue;
    if (toks[0] == "prodids") {
      if (toks.size() != 7 || toks[1] != "d" || toks[3] != "n" || toks[5] != "c")
        throw ParseError("bad prodids header: " + line);
      ids.d = std::stoi(toks[2]);
      ids.n = std::stoll(toks[4]);
      ids.c = std::stoi(toks[6]);
      ids.value.resize(ids.d);
      saw_header = true;
    } else if (toks[0] == "dimvals") {
      if (!saw_header || toks.size() != 3) throw ParseError("bad dimvals line: " + line);
      int i = std::stoi(toks[1]);
      if (i < 1 || i > ids.d) throw ParseError("dimension out of range: " + line);
      for (auto& p : split_on(toks[2], ',')) ids.value[i - 1].push_back(std::stoll(p));
    } else {
      throw ParseError("unknown line kind: " + toks[0] + " in: " + line);
    }
  }
  if (!saw_header) throw LclError("missing prodids header");
  return ids;
}

}  // namespace lcl
