#pragma once

#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "lcl/ball.hpp"
#include "lcl/problem.hpp"

namespace lcl {

// Constant-round algorithm mapping the canonical encoding of a node's zero-
// or-positive-radius view to an output tuple indexed by the root's ports.
struct ZeroRoundAlgorithm {
  // key: "<d>|<in_1>,<in_2>,…" in port order
  std::map<std::string, std::vector<Label>> table;

  static std::string key(int d, const std::vector<Label>& in);
  const std::vector<Label>* lookup(int d, const std::vector<Label>& in) const;
  bool empty() const { return table.empty(); }
};

struct LocalAlgorithm {
  int radius = 0;
  IdMode mode = IdMode::PortNumbering;
  std::shared_ptr<const Problem> problem;  // target problem (may be null)
  std::string problem_ref;                 // path or "hash:<fnv64>" for files

  // Table keyed by mode-appropriate input-ball encodings.
  std::map<std::string, std::vector<Label>> table;
  // Degree/input-tuple fallback (zero-round core, consulted after the table).
  ZeroRoundAlgorithm zr;
  // Programmatic fallback for generator-backed algorithms.
  std::function<std::optional<std::vector<Label>>(const Ball&)> rule;
  // Set by lock_order_invariant: the instance size the lock was taken at.
  long long locked_n0 = 0;

  // Encodes b at this algorithm's radius and mode, then resolves an output
  // tuple: table, then zr (root degree/inputs), then rule. Throws on a miss.
  std::vector<Label> outputs_for(const Ball& b) const;
  std::string encode_view(const Ball& b) const;
};

// Wraps a zero-round core as a radius-r algorithm (the wider view is read but
// ignored); used to feed zero-round solutions into radius >= 1 machinery.
LocalAlgorithm inflate_zero_round(const ZeroRoundAlgorithm& zr, int radius,
                                  std::shared_ptr<const Problem> problem);

// Algorithm file format:
//   radius: 1
//   mode: port-numbering
//   problem: <path or hash:...>
//   ball <encoding> -> <l_1> … <l_d>
//   zr d=<d> in=<s_1,…,s_d> -> <t_1,…,t_d>
// `fallback` resolves a hash problem reference (and is checked against it);
// a path reference is loaded relative to base_dir.
LocalAlgorithm parse_algorithm(const std::string& text, const std::string& base_dir,
                               std::shared_ptr<const Problem> fallback = nullptr);
std::string serialize_algorithm(const LocalAlgorithm& a);

std::string serialize_zero_round(const ZeroRoundAlgorithm& z);

}  // namespace lcl
