#include "lcl/report.hpp"

#include "lcl/numeric.hpp"

namespace lcl {

void RunReport::add(const std::string& key, const std::string& value) {
  entries.emplace_back(key, value);
}

void RunReport::add(const std::string& key, long long value) {
  entries.emplace_back(key, std::to_string(value));
}

void RunReport::add_volatile(const std::string& key, const std::string& value) {
  entries.emplace_back("#" + key, value);
}

std::string RunReport::render() const {
  std::string s;
  for (const auto& [k, v] : entries) s += k + ": " + v + "\n";
  return s;
}

std::string RunReport::body() const {
  std::string s;
  for (const auto& [k, v] : entries)
    if (!k.empty() && k[0] != '#') s += k + ": " + v + "\n";
  return s;
}

std::string input_digest(const std::string& text) { return fnv1a_hex(text); }

}  // namespace lcl
