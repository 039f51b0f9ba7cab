// Plain-text key-value run configuration: `key = value` lines, '#'
// comments, insertion order preserved for catalog entries, FNV-1a hash of
// the canonical text for report provenance.
#ifndef WKP_CONFIG_HPP
#define WKP_CONFIG_HPP

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "wkp/symbolic.hpp"

namespace wkp {

class Config {
 public:
  Config() = default;
  static Config parse_text(const std::string& text);
  /// Throws std::runtime_error when the file cannot be read.
  static Config parse_file(const std::string& path);

  void set(const std::string& key, const std::string& value);
  bool has(const std::string& key) const;
  std::string str(const std::string& key) const;
  std::string str_or(const std::string& key, const std::string& fallback) const;
  double num(const std::string& key) const;
  double num_or(const std::string& key, double fallback) const;
  int integer_or(const std::string& key, int fallback) const;
  std::vector<double> num_list(const std::string& key) const;  // space-separated
  std::vector<int> int_list(const std::string& key) const;

  /// Entries whose key starts with the prefix, in file order, with the
  /// prefix stripped.
  std::vector<std::pair<std::string, std::string>> with_prefix(const std::string& prefix) const;

  /// Sorted `key = value` lines; what the hash covers.
  std::string canonical_text() const;
  std::uint64_t hash() const;
  std::string hash_hex() const;

 private:
  std::vector<std::pair<std::string, std::string>> items_;  // insertion order
};

/// Function specs: "const 1", "poly 0 1", "abs", "heaviside 0",
/// "power <cx> [cy] <a>", "bump <cx> [cy] <r>" (the 2-coordinate forms when
/// dim == 2).
SymbolicFunction parse_function(const std::string& spec, int dim);

}  // namespace wkp

#endif
