#pragma once

#include <map>
#include <optional>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "lcl/ball.hpp"
#include "lcl/label.hpp"

namespace lcl {

// A sorted label multiset (node configuration, or an unordered edge pair at
// arity 2).
class MultisetConfig {
public:
  MultisetConfig() = default;
  MultisetConfig(std::vector<Label> labels, const LabelOrder& ord);

  const std::vector<Label>& labels() const { return labels_; }
  int arity() const { return static_cast<int>(labels_.size()); }
  const std::string& key() const { return key_; }  // canonical space-joined rendering

  bool operator==(const MultisetConfig& o) const { return key_ == o.key_; }
  bool operator<(const MultisetConfig& o) const { return key_ < o.key_; }

private:
  std::vector<Label> labels_;
  std::string key_;
};

struct Diagnostic {
  enum class Severity { Error, Warning };
  Severity severity;
  std::string message;
};

// Node-edge-checkable problem: (sigma_in, sigma_out, node constraints per
// degree, unordered edge pairs, g) with degree bound delta. Constraint sets
// are canonically sorted and hash-indexed at construction; instances are
// immutable afterwards.
class Problem {
public:
  Problem() = default;
  Problem(int delta, Alphabet sigma_in, Alphabet sigma_out,
          std::map<int, std::vector<MultisetConfig>> node_constraint,
          std::vector<MultisetConfig> edge_constraint,
          std::map<std::string, std::vector<Label>> g);

  int delta() const { return delta_; }
  const Alphabet& sigma_in() const { return sigma_in_; }
  const Alphabet& sigma_out() const { return sigma_out_; }
  const std::map<int, std::vector<MultisetConfig>>& node_constraint() const {
    return node_constraint_;
  }
  const std::vector<MultisetConfig>& node_configs(int d) const;
  const std::vector<MultisetConfig>& edge_constraint() const { return edge_constraint_; }
  const std::map<std::string, std::vector<Label>>& g() const { return g_; }
  const std::vector<Label>& g_of(const Label& in) const;

  LabelOrder out_order() const { return LabelOrder{&sigma_out_}; }

  bool node_allows(int d, std::vector<Label> multiset) const;
  bool edge_allows(const Label& a, const Label& b) const;
  bool g_allows(const Label& in, const Label& out) const;

  bool operator==(const Problem& o) const;

private:
  int delta_ = 0;
  Alphabet sigma_in_;
  Alphabet sigma_out_;
  std::map<int, std::vector<MultisetConfig>> node_constraint_;
  std::vector<MultisetConfig> edge_constraint_;
  std::map<std::string, std::vector<Label>> g_;
  std::map<int, std::unordered_set<std::string>> node_keys_;
  std::unordered_set<std::string> edge_keys_;
  std::unordered_map<std::string, std::unordered_set<std::string>> g_keys_;
};

// A general radius-r problem: accepted output-labeled r-balls.
struct GeneralLcl {
  int delta = 0;
  int radius = 1;
  Alphabet sigma_in;
  Alphabet sigma_out;
  std::vector<Ball> accepted;                       // canonical, deduplicated
  std::unordered_set<std::string> accepted_keys;    // encodings with outputs

  bool accepts(const std::string& ball_encoding) const {
    return accepted_keys.count(ball_encoding) > 0;
  }
};

GeneralLcl make_general_lcl(int delta, int radius, Alphabet sigma_in, Alphabet sigma_out,
                            std::vector<Ball> accepted);

// Problem file grammar (UTF-8, line-oriented, `#` comments):
//   delta: 3
//   input: x y
//   output: A B C
//   g: x -> A B
//   node 1: A | B
//   node 2: A A | B C
//   edge: A B | C C
// Set labels render as {A,B}, nested {{A},{A,B}}, empty {}.
Problem parse_problem(const std::string& text);
std::string serialize_problem(const Problem& p);

// General problem files add `radius: r` and one `ball: <encoding>` line per
// accepted ball (encodings carry outputs: `(d;in_1:out_1,…;)[…]`).
GeneralLcl parse_general(const std::string& text);
std::string serialize_general(const GeneralLcl& l);

std::vector<Diagnostic> validate_problem(const Problem& p);

// Drops output labels that occur in no node configuration or are
// edge-incompatible with every label (including themselves); edge pairs and
// g-images are filtered accordingly. Valid labelings are unchanged.
Problem prune_unusable(const Problem& p);

// Parses one label token ({...} set or base symbol) under a base order.
Label parse_label_token(const std::string& token, const Alphabet* base_order);

}  // namespace lcl
