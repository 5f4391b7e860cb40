#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace lcl {

// Domain error: invalid input, impossible selection, missing table entry, ...
class LclError : public std::runtime_error {
public:
  explicit LclError(std::string msg) : std::runtime_error(std::move(msg)) {}
};

// Text didn't conform to a file grammar.
class ParseError : public LclError {
public:
  ParseError(std::string msg, int line = 0)
      : LclError(line > 0 ? "line " + std::to_string(line) + ": " + msg : std::move(msg)),
        line_(line) {}
  int line() const { return line_; }

private:
  int line_;
};

// An enumeration would materialize more items than the configured cap allows.
class GuardError : public LclError {
public:
  GuardError(std::string estimate, std::uint64_t limit, const std::string& what)
      : LclError("size guard exceeded in " + what + ": estimated " + estimate +
                 " items > limit " + std::to_string(limit)),
        estimate_(std::move(estimate)), limit_(limit) {}
  const std::string& estimate() const { return estimate_; }
  std::uint64_t limit() const { return limit_; }

private:
  std::string estimate_;
  std::uint64_t limit_;
};

// Cap on materialized items (labels + candidate configurations, candidate
// balls, search-space sizes). One default for the whole library, overridable
// per call and via the CLI's --guard / LCL_GUARD.
struct Guard {
  std::uint64_t limit = 1u << 20;

  void check(std::uint64_t estimate, const std::string& what) const {
    if (estimate > limit) throw GuardError(std::to_string(estimate), limit, what);
  }
};

}  // namespace lcl
