#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

namespace lcl {

// Ordered key/value run summary. Keys starting with '#' are volatile
// (timestamps, wall time) and are skipped by the reproducible body.
struct RunReport {
  std::vector<std::pair<std::string, std::string>> entries;

  void add(const std::string& key, const std::string& value);
  void add(const std::string& key, long long value);
  void add_volatile(const std::string& key, const std::string& value);

  // All lines, in insertion order, as "key: value".
  std::string render() const;
  // Same, with volatile keys dropped; this is the byte-reproducible part.
  std::string body() const;
};

// FNV-1a digest of raw input text, for the "inputs" report key.
std::string input_digest(const std::string& text);

}  // namespace lcl
