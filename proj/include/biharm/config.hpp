#pragma once

/**
 * @file config.hpp
 * @brief Run settings resolved as flag > environment > config file > default.
 *
 * Keys (environment variable in parentheses):
 *   abs_tol  (BIHARM_ABS_TOL)   quadrature absolute tolerance      1e-10
 *   rel_tol  (BIHARM_REL_TOL)   quadrature relative tolerance      1e-10
 *   tau      (BIHARM_TAU)       verification tolerance             1e-6
 *   samples  (BIHARM_SAMPLES)   default sample count               50
 *   seed     (BIHARM_SEED)      sampler seed                       20240901
 *   format   (BIHARM_FORMAT)    json | csv | table                 table
 *
 * The config file holds `key = value` lines; `#` starts a comment.
 */

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cstdint>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "biharm/jets.hpp"

namespace biharm {

class ConfigError : public DomainError {
 public:
  using DomainError::DomainError;
};

struct Config {
  double abs_tol = 1e-10;
  double rel_tol = 1e-10;
  double tau = 1e-6;
  int samples = 50;
  std::uint64_t seed = 20240901;
  std::string format = "table";
};

namespace detail {

inline std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

template <class T>
T parse_number(const std::string& key, const std::string& text) {
  T v{};
  const std::string t = trim(text);
  const auto [end, ec] = std::from_chars(t.data(), t.data() + t.size(), v);
  if (ec != std::errc() || end != t.data() + t.size())
    throw ConfigError("config key '" + key + "': cannot parse '" + text + "'");
  return v;
}

}  // namespace detail

inline const std::vector<std::string>& config_keys() {
  static const std::vector<std::string> keys = {"abs_tol", "rel_tol", "tau", "samples", "seed", "format"};
  return keys;
}

/// key = value pairs from a config file.
inline std::map<std::string, std::string> read_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file '" + path + "'");
  std::map<std::string, std::string> out;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    line = detail::trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw ConfigError(path + ":" + std::to_string(lineno) + ": expected key = value");
    const std::string key = detail::trim(line.substr(0, eq));
    const auto& keys = config_keys();
    if (std::find(keys.begin(), keys.end(), key) == keys.end())
      throw ConfigError(path + ":" + std::to_string(lineno) + ": unknown key '" + key + "'");
    out[key] = detail::trim(line.substr(eq + 1));
  }
  return out;
}

inline void apply_setting(Config& c, const std::string& key, const std::string& value) {
  if (key == "abs_tol") c.abs_tol = detail::parse_number<double>(key, value);
  else if (key == "rel_tol") c.rel_tol = detail::parse_number<double>(key, value);
  else if (key == "tau") c.tau = detail::parse_number<double>(key, value);
  else if (key == "samples") c.samples = detail::parse_number<int>(key, value);
  else if (key == "seed") c.seed = detail::parse_number<std::uint64_t>(key, value);
  else if (key == "format") c.format = detail::trim(value);
  else throw ConfigError("unknown config key '" + key + "'");
}

inline void check(const Config& c) {
  if (!(c.abs_tol > 0) || !(c.rel_tol > 0)) throw ConfigError("quadrature tolerances must be positive");
  if (!(c.tau > 0)) throw ConfigError("tau must be positive");
  if (c.samples < 1) throw ConfigError("samples must be >= 1");
  if (c.format != "json" && c.format != "csv" && c.format != "table")
    throw ConfigError("format must be json, csv or table");
}

using EnvLookup = std::function<std::optional<std::string>(const std::string&)>;

inline std::optional<std::string> process_env(const std::string& name) {
  if (const char* v = std::getenv(name.c_str())) return std::string(v);
  return std::nullopt;
}

inline std::string env_name(const std::string& key) {
  std::string n = "BIHARM_";
  for (char ch : key) n += static_cast<char>(std::toupper(static_cast<unsigned char>(ch)));
  return n;
}

/// Defaults, then the file (if any), then the environment, then the flags.
inline Config resolve_config(const std::map<std::string, std::string>& flags,
                             const std::optional<std::string>& file = std::nullopt,
                             const EnvLookup& env = process_env) {
  Config c;
  if (file) {
    for (const auto& [k, v] : read_config_file(*file)) apply_setting(c, k, v);
  }
  for (const auto& key : config_keys())
    if (auto v = env(env_name(key))) apply_setting(c, key, *v);
  for (const auto& [k, v] : flags) apply_setting(c, k, v);
  check(c);
  return c;
}

}  // namespace biharm
