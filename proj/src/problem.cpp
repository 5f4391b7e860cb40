#include "lcl/problem.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

#include "lcl/error.hpp"

namespace lcl {

namespace {

bool is_base_symbol(const std::string& s) {
  if (s.empty()) return false;
  for (char c : s)
    if (!std::isalnum(static_cast<unsigned char>(c)) && c != '_') return false;
  return true;
}

std::vector<std::string> split_depth0(const std::string& s, char sep) {
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

std::string trim(const std::string& s) {
  std::size_t a = s.find_first_not_of(" \t\r");
  if (a == std::string::npos) return "";
  std::size_t b = s.find_last_not_of(" \t\r");
  return s.substr(a, b - a + 1);
}

// Splits a whitespace-separated token list, keeping braces/parens intact.
std::vector<std::string> tokenize(const std::string& s) {
  std::vector<std::string> out;
  int depth = 0;
  std::string cur;
  for (char c : s) {
    if (c == '(' || c == '[' || c == '{') ++depth;
    if (c == ')' || c == ']' || c == '}') --depth;
    if ((c == ' ' || c == '\t') && depth == 0) {
      if (!cur.empty()) out.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  if (!cur.empty()) out.push_back(cur);
  return out;
}

}  // namespace

Label parse_label_token(const std::string& token, const Alphabet* base_order) {
  if (token.empty()) throw ParseError("empty label token");
  if (token.front() == '{') {
    if (token.back() != '}') throw ParseError("unbalanced set label: " + token);
    std::string inner = token.substr(1, token.size() - 2);
    std::vector<Label> elems;
    if (!trim(inner).empty())
      for (const auto& part : split_depth0(inner, ','))
        elems.push_back(parse_label_token(trim(part), base_order));
    return Label::set(std::move(elems), base_order);
  }
  if (token.front() == '@' || token.front() == '(') return Label::ball(token);
  if (!is_base_symbol(token)) throw ParseError("bad label symbol: " + token);
  return Label::base(token);
}

MultisetConfig::MultisetConfig(std::vector<Label> labels, const LabelOrder& ord)
    : labels_(std::move(labels)) {
  std::sort(labels_.begin(), labels_.end(), ord);
  key_ = render_labels(labels_);
}

Problem::Problem(int delta, Alphabet sigma_in, Alphabet sigma_out,
                 std::map<int, std::vector<MultisetConfig>> node_constraint,
                 std::vector<MultisetConfig> edge_constraint,
                 std::map<std::string, std::vector<Label>> g)
    : delta_(delta),
      sigma_in_(std::move(sigma_in)),
      sigma_out_(std::move(sigma_out)),
      node_constraint_(std::move(node_constraint)),
      edge_constraint_(std::move(edge_constraint)),
      g_(std::move(g)) {
  LabelOrder ord{&sigma_out_};
  for (int d = 1; d <= delta_; ++d) node_constraint_[d];  // keys exactly 1..delta
  for (auto& [d, configs] : node_constraint_) {
    std::sort(configs.begin(), configs.end());
    configs.erase(std::unique(configs.begin(), configs.end()), configs.end());
    for (const auto& c : configs) node_keys_[d].insert(c.key());
  }
  std::sort(edge_constraint_.begin(), edge_constraint_.end());
  edge_constraint_.erase(std::unique(edge_constraint_.begin(), edge_constraint_.end()),
                         edge_constraint_.end());
  for (const auto& c : edge_constraint_) edge_keys_.insert(c.key());
  for (auto& [in, image] : g_) {
    std::sort(image.begin(), image.end(), ord);
    image.erase(std::unique(image.begin(), image.end()), image.end());
    auto& keys = g_keys_[in];
    for (const auto& l : image) keys.insert(l.text());
  }
}

const std::vector<MultisetConfig>& Problem::node_configs(int d) const {
  static const std::vector<MultisetConfig> kEmpty;
  auto it = node_constraint_.find(d);
  return it == node_constraint_.end() ? kEmpty : it->second;
}

const std::vector<Label>& Problem::g_of(const Label& in) const {
  static const std::vector<Label> kEmpty;
  auto it = g_.find(in.text());
  return it == g_.end() ? kEmpty : it->second;
}

bool Problem::node_allows(int d, std::vector<Label> multiset) const {
  auto it = node_keys_.find(d);
  if (it == node_keys_.end()) return false;
  LabelOrder ord{&sigma_out_};
  std::sort(multiset.begin(), multiset.end(), ord);
  return it->second.count(render_labels(multiset)) > 0;
}

bool Problem::edge_allows(const Label& a, const Label& b) const {
  LabelOrder ord{&sigma_out_};
  std::string key = ord(a, b) || a == b ? a.text() + " " + b.text() : b.text() + " " + a.text();
  return edge_keys_.count(key) > 0;
}

bool Problem::g_allows(const Label& in, const Label& out) const {
  auto it = g_keys_.find(in.text());
  return it != g_keys_.end() && it->second.count(out.text()) > 0;
}

bool Problem::operator==(const Problem& o) const {
  if (delta_ != o.delta_ || !(sigma_in_ == o.sigma_in_) || !(sigma_out_ == o.sigma_out_))
    return false;
  if (node_constraint_.size() != o.node_constraint_.size()) return false;
  for (const auto& [d, configs] : node_constraint_) {
    auto it = o.node_constraint_.find(d);
    if (it == o.node_constraint_.end() || !(configs == it->second)) return false;
  }
  if (!(edge_constraint_ == o.edge_constraint_)) return false;
  if (g_.size() != o.g_.size()) return false;
  for (const auto& [in, image] : g_) {
    auto it = o.g_.find(in);
    if (it == o.g_.end() || image.size() != it->second.size()) return false;
    for (std::size_t i = 0; i < image.size(); ++i)
      if (image[i] != it->second[i]) return false;
  }
  return true;
}

namespace {

// Recovers base-symbol declaration order from set-label renderings: adjacent
// siblings at any nesting level yield precedence pairs; a stable topological
// sort (first appearance breaks ties, cycles fall back to first appearance)
// restores the original order for canonically written files.
class OrderRecovery {
public:
  void scan(const std::string& token) {
    if (token.empty()) return;
    if (token.front() != '{') {
      see(token);
      return;
    }
    std::string inner = token.substr(1, token.size() - 2);
    if (trim(inner).empty()) return;
    auto parts = split_depth0(inner, ',');
    std::string prev;
    for (auto& raw : parts) {
      std::string part = trim(raw);
      scan(part);
      if (part.empty() || part.front() == '{') {
        prev.clear();
        continue;
      }
      if (!prev.empty()) edges_.emplace_back(prev, part);
      prev = part;
    }
  }

  std::vector<std::string> order() const {
    std::map<std::string, std::vector<std::string>> succ;
    std::map<std::string, int> indeg;
    for (const auto& s : appearance_) indeg[s];
    for (const auto& [a, b] : edges_) {
      succ[a].push_back(b);
      ++indeg[b];
    }
    std::vector<std::string> result;
    std::vector<bool> used(appearance_.size(), false);
    while (result.size() < appearance_.size()) {
      std::size_t pick = appearance_.size();
      for (std::size_t i = 0; i < appearance_.size(); ++i)
        if (!used[i] && indeg[appearance_[i]] == 0) {
          pick = i;
          break;
        }
      if (pick == appearance_.size()) return appearance_;  // cycle: fall back
      used[pick] = true;
      result.push_back(appearance_[pick]);
      indeg[appearance_[pick]] = -1;
      for (const auto& b : succ[appearance_[pick]]) --indeg[b];
    }
    return result;
  }

  bool saw_sets() const { return saw_sets_; }
  void note_set() { saw_sets_ = true; }

private:
  void see(const std::string& s) {
    if (seen_.insert(s).second) appearance_.push_back(s);
  }
  std::vector<std::string> appearance_;
  std::unordered_set<std::string> seen_;
  std::vector<std::pair<std::string, std::string>> edges_;
  bool saw_sets_ = false;
};

Alphabet recover_and_parse_alphabet(const std::vector<std::string>& tokens) {
  OrderRecovery rec;
  bool any_set = false;
  for (const auto& t : tokens) {
    if (!t.empty() && t.front() == '{') any_set = true;
    rec.scan(t);
  }
  std::vector<Label> labels;
  if (any_set) {
    std::vector<Label> base;
    for (const auto& s : rec.order()) base.push_back(Label::base(s));
    Alphabet base_alpha(base.empty() ? std::vector<Label>{} : base);
    for (const auto& t : tokens) labels.push_back(parse_label_token(t, &base_alpha));
  } else {
    for (const auto& t : tokens) labels.push_back(parse_label_token(t, nullptr));
  }
  return Alphabet(std::move(labels));
}

struct Line {
  int no;
  std::string key;    // "delta", "input", "output", "g", "node", "edge", "radius", "ball"
  int arg = 0;        // node degree
  std::string value;  // text after ':'
};

std::vector<Line> read_lines(const std::string& text) {
  std::vector<Line> out;
  std::istringstream in(text);
  std::string raw;
  int no = 0;
  while (std::getline(in, raw)) {
    ++no;
    std::string line = raw;
    // Strip comments outside of any label nesting.
    int depth = 0;
    for (std::size_t i = 0; i < line.size(); ++i) {
      char c = line[i];
      if (c == '(' || c == '[' || c == '{') ++depth;
      if (c == ')' || c == ']' || c == '}') --depth;
      if (c == '#' && depth == 0) {
        line = line.substr(0, i);
        break;
      }
    }
    line = trim(line);
    if (line.empty()) continue;
    std::size_t colon = line.find(':');
    // Label text can contain ':' only inside nesting; the section colon is the
    // first depth-0 colon.
    {
      int d2 = 0;
      for (std::size_t i = 0; i < line.size(); ++i) {
        char c = line[i];
        if (c == '(' || c == '[' || c == '{') ++d2;
        if (c == ')' || c == ']' || c == '}') --d2;
        if (c == ':' && d2 == 0) {
          colon = i;
          break;
        }
      }
    }
    if (colon == std::string::npos) throw ParseError("missing ':'", no);
    std::string head = trim(line.substr(0, colon));
    Line l;
    l.no = no;
    l.value = trim(line.substr(colon + 1));
    auto head_tokens = tokenize(head);
    if (head_tokens.empty()) throw ParseError("missing section name", no);
    l.key = head_tokens[0];
    if (l.key == "node") {
      if (head_tokens.size() != 2) throw ParseError("node section needs a degree", no);
      try {
        l.arg = std::stoi(head_tokens[1]);
      } catch (...) {
        throw ParseError("bad node degree '" + head_tokens[1] + "'", no);
      }
    } else if (head_tokens.size() != 1) {
      throw ParseError("unexpected tokens after section name", no);
    }
    out.push_back(std::move(l));
  }
  return out;
}

void check_declared(const Label& l, const Alphabet& alpha, int line_no) {
  if (!alpha.contains(l)) throw ParseError("undeclared label " + l.text(), line_no);
}

}  // namespace

Problem parse_problem(const std::string& text) {
  auto lines = read_lines(text);
  int delta = 0;
  bool saw_delta = false;
  std::vector<std::string> in_tokens, out_tokens;
  std::vector<std::pair<int, std::string>> g_lines, edge_lines;
  std::vector<std::pair<int, std::pair<int, std::string>>> node_lines;
  for (const auto& l : lines) {
    if (l.key == "delta") {
      try {
        delta = std::stoi(l.value);
      } catch (...) {
        throw ParseError("bad delta '" + l.value + "'", l.no);
      }
      saw_delta = true;
    } else if (l.key == "input") {
      auto t = tokenize(l.value);
      in_tokens.insert(in_tokens.end(), t.begin(), t.end());
    } else if (l.key == "output") {
      auto t = tokenize(l.value);
      out_tokens.insert(out_tokens.end(), t.begin(), t.end());
    } else if (l.key == "g") {
      g_lines.emplace_back(l.no, l.value);
    } else if (l.key == "node") {
      node_lines.emplace_back(l.no, std::make_pair(l.arg, l.value));
    } else if (l.key == "edge") {
      edge_lines.emplace_back(l.no, l.value);
    } else {
      throw ParseError("unknown section '" + l.key + "'", l.no);
    }
  }
  if (!saw_delta) throw ParseError("missing delta section");
  if (delta < 1) throw ParseError("delta must be positive");
  if (in_tokens.empty()) throw ParseError("missing input alphabet");
  if (out_tokens.empty()) throw ParseError("missing output alphabet");

  Alphabet sigma_in = recover_and_parse_alphabet(in_tokens);
  Alphabet sigma_out = recover_and_parse_alphabet(out_tokens);
  // Base order context for re-parsing constraint tokens canonically.
  OrderRecovery rec;
  for (const auto& t : out_tokens) rec.scan(t);
  std::vector<Label> base_labels;
  for (const auto& s : rec.order()) base_labels.push_back(Label::base(s));
  Alphabet out_base(base_labels);
  const Alphabet* out_ctx = base_labels.empty() ? nullptr : &out_base;

  LabelOrder ord{&sigma_out};
  std::map<std::string, std::vector<Label>> g;
  for (const auto& [no, value] : g_lines) {
    auto arrow = value.find("->");
    if (arrow == std::string::npos) throw ParseError("g line needs '->'", no);
    std::string key_txt = trim(value.substr(0, arrow));
    Label key = parse_label_token(key_txt, nullptr);
    check_declared(key, sigma_in, no);
    std::vector<Label> image;
    for (const auto& t : tokenize(trim(value.substr(arrow + 2)))) {
      Label l = parse_label_token(t, out_ctx);
      check_declared(l, sigma_out, no);
      image.push_back(l);
    }
    auto& slot = g[key.text()];
    slot.insert(slot.end(), image.begin(), image.end());
  }
  for (const auto& in_l : sigma_in.labels())
    if (!g.count(in_l.text()))
      throw ParseError("g is not total: missing image for " + in_l.text());

  std::map<int, std::vector<MultisetConfig>> node_constraint;
  for (const auto& [no, dv] : node_lines) {
    auto [d, value] = dv;
    if (d < 1 || d > delta) throw ParseError("node degree out of range 1..delta", no);
    for (const auto& alt : split_depth0(value, '|')) {
      std::string a = trim(alt);
      if (a.empty()) continue;
      std::vector<Label> labels;
      for (const auto& t : tokenize(a)) {
        Label l = parse_label_token(t, out_ctx);
        check_declared(l, sigma_out, no);
        labels.push_back(l);
      }
      if (static_cast<int>(labels.size()) != d)
        throw ParseError("node configuration arity != degree", no);
      node_constraint[d].emplace_back(std::move(labels), ord);
    }
  }
  std::vector<MultisetConfig> edge_constraint;
  for (const auto& [no, value] : edge_lines) {
    for (const auto& alt : split_depth0(value, '|')) {
      std::string a = trim(alt);
      if (a.empty()) continue;
      std::vector<Label> labels;
      for (const auto& t : tokenize(a)) {
        Label l = parse_label_token(t, out_ctx);
        check_declared(l, sigma_out, no);
        labels.push_back(l);
      }
      if (labels.size() != 2) throw ParseError("edge configuration needs 2 labels", no);
      edge_constraint.emplace_back(std::move(labels), ord);
    }
  }
  return Problem(delta, std::move(sigma_in), std::move(sigma_out), std::move(node_constraint),
                 std::move(edge_constraint), std::move(g));
}

std::string serialize_problem(const Problem& p) {
  std::ostringstream out;
  out << "delta: " << p.delta() << "\n";
  out << "input: " << render_labels(p.sigma_in().labels()) << "\n";
  out << "output: " << render_labels(p.sigma_out().labels()) << "\n";
  for (const auto& in_l : p.sigma_in().labels())
    out << "g: " << in_l.text() << " -> " << render_labels(p.g_of(in_l)) << "\n";
  for (int d = 1; d <= p.delta(); ++d) {
    out << "node " << d << ":";
    const auto& configs = p.node_configs(d);
    for (std::size_t i = 0; i < configs.size(); ++i)
      out << (i ? " | " : " ") << configs[i].key();
    out << "\n";
  }
  out << "edge:";
  const auto& edges = p.edge_constraint();
  for (std::size_t i = 0; i < edges.size(); ++i) out << (i ? " | " : " ") << edges[i].key();
  out << "\n";
  return out.str();
}

GeneralLcl make_general_lcl(int delta, int radius, Alphabet sigma_in, Alphabet sigma_out,
                            std::vector<Ball> accepted) {
  GeneralLcl l;
  l.delta = delta;
  l.radius = radius;
  l.sigma_in = std::move(sigma_in);
  l.sigma_out = std::move(sigma_out);
  EncodeOptions eo;
  eo.with_outputs = true;
  std::map<std::string, Ball> by_key;
  for (auto& b : accepted) by_key.emplace(encode_ball(b, radius, eo), std::move(b));
  for (auto& [key, ball] : by_key) {
    l.accepted_keys.insert(key);
    l.accepted.push_back(std::move(ball));
  }
  return l;
}

GeneralLcl parse_general(const std::string& text) {
  auto lines = read_lines(text);
  int delta = 0, radius = 0;
  std::vector<std::string> in_tokens, out_tokens;
  std::vector<std::pair<int, std::string>> ball_lines;
  for (const auto& l : lines) {
    if (l.key == "delta") {
      delta = std::stoi(l.value);
    } else if (l.key == "radius") {
      radius = std::stoi(l.value);
    } else if (l.key == "input") {
      auto t = tokenize(l.value);
      in_tokens.insert(in_tokens.end(), t.begin(), t.end());
    } else if (l.key == "output") {
      auto t = tokenize(l.value);
      out_tokens.insert(out_tokens.end(), t.begin(), t.end());
    } else if (l.key == "ball") {
      ball_lines.emplace_back(l.no, l.value);
    } else {
      throw ParseError("unknown section '" + l.key + "' in general problem", l.no);
    }
  }
  if (delta < 1) throw ParseError("missing or bad delta");
  if (radius < 1) throw ParseError("missing or bad radius");
  if (in_tokens.empty() || out_tokens.empty()) throw ParseError("missing alphabets");
  Alphabet sigma_in = recover_and_parse_alphabet(in_tokens);
  Alphabet sigma_out = recover_and_parse_alphabet(out_tokens);
  std::vector<Ball> accepted;
  for (const auto& [no, value] : ball_lines) {
    DecodeOptions opts;
    opts.in_order = &sigma_in;
    opts.out_order = &sigma_out;
    opts.radius_hint = radius;
    Ball b;
    try {
      b = decode_ball(value, opts);
    } catch (const ParseError& e) {
      throw ParseError(std::string(e.what()), no);
    }
    for (const auto& nd : b.nodes) {
      if (nd.deg > delta) throw ParseError("ball exceeds delta", no);
      if (nd.out.empty() && nd.deg > 0) throw ParseError("ball is missing output labels", no);
      for (const auto& l : nd.in) check_declared(l, sigma_in, no);
      for (const auto& l : nd.out) check_declared(l, sigma_out, no);
    }
    accepted.push_back(std::move(b));
  }
  return make_general_lcl(delta, radius, std::move(sigma_in), std::move(sigma_out),
                          std::move(accepted));
}

std::string serialize_general(const GeneralLcl& l) {
  std::ostringstream out;
  out << "delta: " << l.delta << "\n";
  out << "radius: " << l.radius << "\n";
  out << "input: " << render_labels(l.sigma_in.labels()) << "\n";
  out << "output: " << render_labels(l.sigma_out.labels()) << "\n";
  EncodeOptions eo;
  eo.with_outputs = true;
  std::vector<std::string> keys;
  for (const auto& b : l.accepted) keys.push_back(encode_ball(b, l.radius, eo));
  std::sort(keys.begin(), keys.end());
  for (const auto& k : keys) out << "ball: " << k << "\n";
  return out.str();
}

std::vector<Diagnostic> validate_problem(const Problem& p) {
  std::vector<Diagnostic> out;
  auto error = [&](const std::string& m) {
    out.push_back({Diagnostic::Severity::Error, m});
  };
  auto warning = [&](const std::string& m) {
    out.push_back({Diagnostic::Severity::Warning, m});
  };
  if (p.delta() < 1) error("delta must be positive");
  if (p.sigma_in().size() == 0) error("empty input alphabet");
  if (p.sigma_out().size() == 0) error("empty output alphabet");
  for (const auto& [d, configs] : p.node_constraint()) {
    if (d < 1 || d > p.delta()) error("node constraint degree " + std::to_string(d) + " out of range");
    for (const auto& c : configs) {
      if (c.arity() != d) error("node configuration arity mismatch at degree " + std::to_string(d));
      for (const auto& l : c.labels())
        if (!p.sigma_out().contains(l)) error("node configuration uses undeclared label " + l.text());
    }
    if (configs.empty() && d >= 1 && d <= p.delta())
      warning("degree " + std::to_string(d) + " unsolvable (no node configurations)");
  }
  for (int d = 1; d <= p.delta(); ++d)
    if (!p.node_constraint().count(d)) warning("degree " + std::to_string(d) + " unsolvable (no node configurations)");
  for (const auto& c : p.edge_constraint()) {
    if (c.arity() != 2) error("edge configuration arity != 2");
    for (const auto& l : c.labels())
      if (!p.sigma_out().contains(l)) error("edge configuration uses undeclared label " + l.text());
  }
  for (const auto& in_l : p.sigma_in().labels()) {
    if (!p.g().count(in_l.text())) {
      error("g is not total: missing image for " + in_l.text());
      continue;
    }
    const auto& image = p.g_of(in_l);
    if (image.empty()) warning("g image of " + in_l.text() + " is empty");
    for (const auto& l : image)
      if (!p.sigma_out().contains(l)) error("g image of " + in_l.text() + " contains label " + l.text() + " not in output alphabet");
  }
  return out;
}

Problem prune_unusable(const Problem& p) {
  std::unordered_set<std::string> alive;
  for (const auto& l : p.sigma_out().labels()) alive.insert(l.text());
  bool changed = true;
  while (changed) {
    changed = false;
    std::unordered_set<std::string> next;
    for (const auto& l : p.sigma_out().labels()) {
      if (!alive.count(l.text())) continue;
      bool in_node = false;
      for (const auto& [d, configs] : p.node_constraint()) {
        for (const auto& c : configs) {
          bool all_alive = true, uses = false;
          for (const auto& m : c.labels()) {
            if (!alive.count(m.text())) all_alive = false;
            if (m == l) uses = true;
          }
          if (all_alive && uses) {
            in_node = true;
            break;
          }
        }
        if (in_node) break;
      }
      bool edge_ok = false;
      for (const auto& m : p.sigma_out().labels()) {
        if (!alive.count(m.text())) continue;
        if (p.edge_allows(l, m)) {
          edge_ok = true;
          break;
        }
      }
      if (in_node && edge_ok) next.insert(l.text());
    }
    if (next.size() != alive.size()) changed = true;
    alive = std::move(next);
  }

  std::vector<Label> kept;
  for (const auto& l : p.sigma_out().labels())
    if (alive.count(l.text())) kept.push_back(l);
  Alphabet sigma_out(kept);
  LabelOrder ord{&sigma_out};
  std::map<int, std::vector<MultisetConfig>> node_constraint;
  for (const auto& [d, configs] : p.node_constraint()) {
    for (const auto& c : configs) {
      bool ok = true;
      for (const auto& m : c.labels())
        if (!alive.count(m.text())) ok = false;
      if (ok) node_constraint[d].emplace_back(c.labels(), ord);
    }
    node_constraint[d];
  }
  std::vector<MultisetConfig> edge_constraint;
  for (const auto& c : p.edge_constraint()) {
    bool ok = true;
    for (const auto& m : c.labels())
      if (!alive.count(m.text())) ok = false;
    if (ok) edge_constraint.emplace_back(c.labels(), ord);
  }
  std::map<std::string, std::vector<Label>> g;
  for (const auto& in_l : p.sigma_in().labels()) {
    std::vector<Label> image;
    for (const auto& l : p.g_of(in_l))
      if (alive.count(l.text())) image.push_back(l);
    g[in_l.text()] = std::move(image);
  }
  return Problem(p.delta(), p.sigma_in(), std::move(sigma_out), std::move(node_constraint),
                 std::move(edge_constraint), std::move(g));
}

}  // namespace lcl
