#include "lcl/algorithm.hpp"

#include <filesystem>
#include <fstream>
#include <sstream>

#include "lcl/error.hpp"
#include "lcl/numeric.hpp"

namespace lcl {

std::string ZeroRoundAlgorithm::key(int d, const std::vector<Label>& in) {
  std::string k = std::to_string(d) + "|";
  for (std::size_t j = 0; j < in.size(); ++j) k += (j ? "," : "") + in[j].text();
  return k;
}

const std::vector<Label>* ZeroRoundAlgorithm::lookup(int d, const std::vector<Label>& in) const {
  auto it = table.find(key(d, in));
  return it == table.end() ? nullptr : &it->second;
}

std::string LocalAlgorithm::encode_view(const Ball& b) const {
  EncodeOptions eo;
  eo.mode = mode;
  return encode_ball(b, radius, eo);
}

std::vector<Label> LocalAlgorithm::outputs_for(const Ball& b) const {
  std::string key = encode_view(b);
  auto it = table.find(key);
  if (it != table.end()) return it->second;
  if (!zr.empty() && !b.nodes.empty()) {
    if (const auto* out = zr.lookup(b.nodes[0].deg, b.nodes[0].in)) return *out;
  }
  if (rule) {
    if (auto out = rule(b)) return *out;
  }
  throw LclError("ball not in table: " + key);
}

LocalAlgorithm inflate_zero_round(const ZeroRoundAlgorithm& zr, int radius,
                                  std::shared_ptr<const Problem> problem) {
  LocalAlgorithm a;
  a.radius = radius;
  a.mode = IdMode::PortNumbering;
  a.problem = std::move(problem);
  a.zr = zr;
  return a;
}

namespace {

std::vector<std::string> split_ws(const std::string& s) {
  std::istringstream in(s);
  std::vector<std::string> out;
  std::string tok;
  while (in >> tok) out.push_back(tok);
  return out;
}

std::string trim(const std::string& s) {
  std::size_t a = s.find_first_not_of(" \t\r");
  if (a == std::string::npos) return "";
  std::size_t b = s.find_last_not_of(" \t\r");
  return s.substr(a, b - a + 1);
}

Label resolve_label(const Alphabet& alpha, const std::string& text, int line_no,
                    const char* which) {
  if (const Label* l = alpha.find_text(text)) return *l;
  throw ParseError(std::string("label '") + text + "' not in " + which + " alphabet", line_no);
}

std::vector<Label> resolve_comma_list(const Alphabet& alpha, const std::string& text,
                                      int line_no, const char* which) {
  std::vector<Label> out;
  std::string cur;
  int depth = 0;
  for (char c : text) {
    if (c == '(' || c == '[' || c == '{') ++depth;
    if (c == ')' || c == ']' || c == '}') --depth;
    if (c == ',' && depth == 0) {
      out.push_back(resolve_label(alpha, trim(cur), line_no, which));
      cur.clear();
    } else {
      cur += c;
    }
  }
  if (!trim(cur).empty()) out.push_back(resolve_label(alpha, trim(cur), line_no, which));
  return out;
}

std::string problem_hash(const Problem& p) { return "hash:" + fnv1a_hex(serialize_problem(p)); }

}  // namespace

LocalAlgorithm parse_algorithm(const std::string& text, const std::string& base_dir,
                               std::shared_ptr<const Problem> fallback) {
  LocalAlgorithm a;
  bool saw_radius = false, saw_mode = false;
  std::vector<std::pair<int, std::string>> ball_lines, zr_lines;
  std::istringstream in(text);
  std::string raw;
  int line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    auto hash = raw.find('#');
    if (hash != std::string::npos) raw = raw.substr(0, hash);
    std::string line = trim(raw);
    if (line.empty()) continue;
    if (line.rfind("radius:", 0) == 0) {
      try {
        a.radius = std::stoi(trim(line.substr(7)));
      } catch (...) {
        throw ParseError("bad radius", line_no);
      }
      saw_radius = true;
    } else if (line.rfind("mode:", 0) == 0) {
      auto m = id_mode_from(trim(line.substr(5)));
      if (!m) throw ParseError("unknown mode '" + trim(line.substr(5)) + "'", line_no);
      a.mode = *m;
      saw_mode = true;
    } else if (line.rfind("problem:", 0) == 0) {
      a.problem_ref = trim(line.substr(8));
    } else if (line.rfind("ball ", 0) == 0) {
      ball_lines.emplace_back(line_no, line.substr(5));
    } else if (line.rfind("zr ", 0) == 0) {
      zr_lines.emplace_back(line_no, line.substr(3));
    } else {
      throw ParseError("unknown algorithm line", line_no);
    }
  }
  if (!saw_radius) throw ParseError("missing radius");
  if (!saw_mode) throw ParseError("missing mode");
  if (a.radius < 0) throw ParseError("radius must be >= 0");

  // Resolve the problem reference.
  if (a.problem_ref.rfind("hash:", 0) == 0) {
    if (!fallback) throw ParseError("algorithm references a problem by hash; supply the problem");
    if (problem_hash(*fallback) != a.problem_ref)
      throw ParseError("supplied problem does not match the algorithm's problem hash");
    a.problem = std::move(fallback);
  } else if (!a.problem_ref.empty()) {
    std::filesystem::path p(a.problem_ref);
    if (p.is_relative() && !base_dir.empty()) p = std::filesystem::path(base_dir) / p;
    std::ifstream f(p);
    if (!f) throw ParseError("cannot open problem file '" + p.string() + "'");
    std::stringstream buf;
    buf << f.rdbuf();
    a.problem = std::make_shared<Problem>(parse_problem(buf.str()));
  } else if (fallback) {
    a.problem = std::move(fallback);
  } else {
    throw ParseError("missing problem reference");
  }

  for (const auto& [no, body] : ball_lines) {
    auto arrow = body.find(" -> ");
    std::size_t rest;
    if (arrow != std::string::npos) {
      rest = arrow + 4;
    } else if (body.size() >= 3 && body.compare(body.size() - 3, 3, " ->") == 0) {
      arrow = body.size() - 3;  // empty tuple (degree-0 view)
      rest = body.size();
    } else {
      throw ParseError("ball line needs ' -> '", no);
    }
    std::string key = trim(body.substr(0, arrow));
    DecodeOptions opts;
    opts.in_order = &a.problem->sigma_in();
    opts.radius_hint = a.radius;
    Ball b;
    try {
      b = decode_ball(key, opts);
    } catch (const ParseError& e) {
      throw ParseError(std::string("bad ball encoding: ") + e.what(), no);
    }
    std::vector<Label> outs;
    for (const auto& tok : split_ws(body.substr(rest)))
      outs.push_back(resolve_label(a.problem->sigma_out(), tok, no, "output"));
    if (static_cast<int>(outs.size()) != b.nodes[0].deg)
      throw ParseError("output arity != root degree", no);
    if (!a.table.emplace(key, std::move(outs)).second)
      throw ParseError("duplicate table key", no);
  }
  for (const auto& [no, body] : zr_lines) {
    auto toks = split_ws(body);
    // d=<d> in=<s,...> -> <t,...>
    if (toks.size() != 4 || toks[0].rfind("d=", 0) != 0 || toks[1].rfind("in=", 0) != 0 ||
        toks[2] != "->")
      throw ParseError("zr line needs: d=<d> in=<s,…> -> <t,…>", no);
    int d;
    try {
      d = std::stoi(toks[0].substr(2));
    } catch (...) {
      throw ParseError("bad zr degree", no);
    }
    auto ins = resolve_comma_list(a.problem->sigma_in(), toks[1].substr(3), no, "input");
    auto outs = resolve_comma_list(a.problem->sigma_out(), toks[3], no, "output");
    if (static_cast<int>(ins.size()) != d || static_cast<int>(outs.size()) != d)
      throw ParseError("zr arity mismatch", no);
    if (!a.zr.table.emplace(ZeroRoundAlgorithm::key(d, ins), std::move(outs)).second)
      throw ParseError("duplicate zr key", no);
  }
  return a;
}

std::string serialize_algorithm(const LocalAlgorithm& a) {
  std::ostringstream out;
  out << "radius: " << a.radius << "\n";
  out << "mode: " << id_mode_name(a.mode) << "\n";
  if (!a.problem_ref.empty())
    out << "problem: " << a.problem_ref << "\n";
  else if (a.problem)
    out << "problem: " << problem_hash(*a.problem) << "\n";
  for (const auto& [key, outs] : a.table)
    out << "ball " << key << " -> " << render_labels(outs) << "\n";
  out << serialize_zero_round(a.zr);
  return out.str();
}

std::string serialize_zero_round(const ZeroRoundAlgorithm& z) {
  std::ostringstream out;
  for (const auto& [key, outs] : z.table) {
    auto bar = key.find('|');
    out << "zr d=" << key.substr(0, bar) << " in=" << key.substr(bar + 1) << " -> ";
    for (std::size_t j = 0; j < outs.size(); ++j) out << (j ? "," : "") << outs[j].text();
    out << "\n";
  }
  return out.str();
}

}  // namespace lcl
