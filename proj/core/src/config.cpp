#include "wkp/config.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace wkp {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

}  // namespace

Config Config::parse_text(const std::string& text) {
  Config cfg;
  std::stringstream ss(text);
  std::string line;
  int lineno = 0;
  while (std::getline(ss, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw std::runtime_error("config line " + std::to_string(lineno) +
                               ": expected key = value");
    cfg.set(trim(line.substr(0, eq)), trim(line.substr(eq + 1)));
  }
  return cfg;
}

Config Config::parse_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot read config file: " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_text(buf.str());
}

void Config::set(const std::string& key, const std::string& value) {
  for (auto& [k, v] : items_)
    if (k == key) {
      v = value;
      return;
    }
  items_.emplace_back(key, value);
}

bool Config::has(const std::string& key) const {
  return std::any_of(items_.begin(), items_.end(),
                     [&](const auto& kv) { return kv.first == key; });
}

std::string Config::str(const std::string& key) const {
  for (const auto& [k, v] : items_)
    if (k == key) return v;
  throw std::runtime_error("missing config key: " + key);
}

std::string Config::str_or(const std::string& key, const std::string& fallback) const {
  return has(key) ? str(key) : fallback;
}

double Config::num(const std::string& key) const {
  const std::string v = str(key);
  std::size_t used = 0;
  const double x = std::stod(v, &used);
  if (trim(v.substr(used)).size())
    throw std::runtime_error("config key " + key + " is not a number: " + v);
  return x;
}

double Config::num_or(const std::string& key, double fallback) const {
  return has(key) ? num(key) : fallback;
}

int Config::integer_or(const std::string& key, int fallback) const {
  if (!has(key)) return fallback;
  return static_cast<int>(num(key));
}

std::vector<double> Config::num_list(const std::string& key) const {
  std::stringstream ss(str(key));
  std::vector<double> out;
  double x;
  while (ss >> x) out.push_back(x);
  return out;
}

std::vector<int> Config::int_list(const std::string& key) const {
  std::vector<int> out;
  for (double x : num_list(key)) out.push_back(static_cast<int>(x));
  return out;
}

std::vector<std::pair<std::string, std::string>> Config::with_prefix(
    const std::string& prefix) const {
  std::vector<std::pair<std::string, std::string>> out;
  for (const auto& [k, v] : items_)
    if (k.rfind(prefix, 0) == 0) out.emplace_back(k.substr(prefix.size()), v);
  return out;
}

std::string Config::canonical_text() const {
  auto sorted = items_;
  std::sort(sorted.begin(), sorted.end());
  std::string text;
  for (const auto& [k, v] : sorted) text += k + " = " + v + "\n";
  return text;
}

std::uint64_t Config::hash() const {
  // FNV-1a
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char c : canonical_text()) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

std::string Config::hash_hex() const {
  char buf[24];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(hash()));
  return buf;
}

SymbolicFunction parse_function(const std::string& spec, int dim) {
  std::stringstream ss(spec);
  std::string kind;
  ss >> kind;
  std::vector<double> args;
  double x;
  while (ss >> x) args.push_back(x);
  auto need = [&](std::size_t n) {
    if (args.size() != n)
      throw std::runtime_error("function spec '" + spec + "': expected " + std::to_string(n) +
                               " numeric arguments");
  };
  if (kind == "const") {
    need(1);
    return SymbolicFunction::constant(args[0]);
  }
  if (kind == "poly") {
    if (args.empty()) throw std::runtime_error("poly needs coefficients");
    return SymbolicFunction::polynomial(args);
  }
  if (kind == "abs") {
    need(0);
    return SymbolicFunction::abs_value();
  }
  if (kind == "heaviside") {
    need(1);
    return SymbolicFunction::heaviside(args[0]);
  }
  if (kind == "power") {
    need(static_cast<std::size_t>(dim) + 1);
    if (dim == 1) return SymbolicFunction::power({args[0], 0.0}, args[1]);
    return SymbolicFunction::power({args[0], args[1]}, args[2]);
  }
  if (kind == "bump") {
    need(static_cast<std::size_t>(dim) + 1);
    if (dim == 1) return SymbolicFunction::bump({args[0], 0.0}, args[1]);
    return SymbolicFunction::bump({args[0], args[1]}, args[2]);
  }
  throw std::runtime_error("unknown function family: " + kind);
}

}  // namespace wkp
