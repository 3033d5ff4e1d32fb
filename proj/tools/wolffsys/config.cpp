// Copyright 2026 The wolffsys Authors
// SPDX-License-Identifier: Apache-2.0

#include "config.hpp"

#include <cerrno>
#include <cstdlib>
#include <fstream>
#include <set>
#include <sstream>

namespace wolffsys_cli {

namespace {

const std::set<std::string>& known_keys() {
  static const std::set<std::string> keys = [] {
    std::set<std::string> k = {
        "system.n", "system.k", "system.alpha", "system.p", "system.q1", "system.q2",
        "grid.r_min", "grid.r_max", "grid.nodes",
        "solver.tol", "solver.max_iter", "solver.divergence_factor", "solver.monotone_tol",
        "solver.override_capacity_check",
        "quad.rel_tol", "quad.abs_tol", "quad.max_subdivisions", "quad.t_min_fraction",
        "dirichlet.R", "lemma_a.r_min", "lemma_a.r_max",
        "verify.exploratory", "verify.r", "verify.s", "verify.x", "verify.R_min", "verify.R_max", "verify.R_nodes",
    };
    for (const char* m : {"sigma", "mu", "nu", "omega"})
      for (const char* f : {"kind", "mass", "position", "positions", "masses", "radius", "density", "amplitude", "q",
                            "beta", "scale"})
        k.insert(std::string("measure.") + m + "." + f);
    return k;
  }();
  return keys;
}

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

}  // namespace

Config Config::load(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot open config file " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse(buf.str(), path);
}

Config Config::parse(const std::string& text, const std::string& origin) {
  Config c;
  c.origin_ = origin;
  std::istringstream in(text);
  std::string line;
  int number = 0;
  while (std::getline(in, line)) {
    ++number;
    const std::string t = trim(line);
    if (t.empty() || t.front() == '#') continue;
    const auto eq = t.find('=');
    const std::string at = origin + ":" + std::to_string(number);
    if (eq == std::string::npos) throw ConfigError(at + ": expected key = value");
    const std::string key = trim(t.substr(0, eq));
    const std::string value = trim(t.substr(eq + 1));
    if (!known_keys().count(key)) throw ConfigError(at + ": unknown key '" + key + "'");
    if (c.values_.count(key)) throw ConfigError(at + ": duplicate key '" + key + "'");
    c.values_[key] = value;
    c.lines_[key] = number;
  }
  return c;
}

std::string Config::where(const std::string& key) const {
  const auto it = lines_.find(key);
  if (it == lines_.end()) return origin_ + ": key '" + key + "'";
  return origin_ + ":" + std::to_string(it->second) + ": key '" + key + "'";
}

std::string Config::str(const std::string& key) const {
  const auto it = values_.find(key);
  if (it == values_.end()) throw ConfigError(origin_ + ": missing required key '" + key + "'");
  return it->second;
}

std::string Config::str(const std::string& key, const std::string& fallback) const {
  return has(key) ? str(key) : fallback;
}

double Config::real(const std::string& key) const {
  const std::string s = str(key);
  char* end = nullptr;
  errno = 0;
  const double x = std::strtod(s.c_str(), &end);
  if (s.empty() || *end != '\0' || errno == ERANGE) throw ConfigError(where(key) + ": not a number: '" + s + "'");
  return x;
}

double Config::real(const std::string& key, double fallback) const { return has(key) ? real(key) : fallback; }

int Config::integer(const std::string& key) const {
  const std::string s = str(key);
  char* end = nullptr;
  errno = 0;
  const long v = std::strtol(s.c_str(), &end, 10);
  if (s.empty() || *end != '\0' || errno == ERANGE || v < -1000000000L || v > 1000000000L)
    throw ConfigError(where(key) + ": not an integer: '" + s + "'");
  return static_cast<int>(v);
}

int Config::integer(const std::string& key, int fallback) const { return has(key) ? integer(key) : fallback; }

bool Config::flag(const std::string& key, bool fallback) const {
  if (!has(key)) return fallback;
  const std::string s = str(key);
  if (s == "true" || s == "1" || s == "yes") return true;
  if (s == "false" || s == "0" || s == "no") return false;
  throw ConfigError(where(key) + ": not a boolean: '" + s + "'");
}

std::vector<double> Config::reals(const std::string& key) const {
  const std::string s = str(key);
  std::vector<double> out;
  std::istringstream in(s);
  std::string item;
  while (std::getline(in, item, ',')) {
    item = trim(item);
    char* end = nullptr;
    const double x = std::strtod(item.c_str(), &end);
    if (item.empty() || *end != '\0') throw ConfigError(where(key) + ": bad list entry '" + item + "'");
    out.push_back(x);
  }
  if (out.empty()) throw ConfigError(where(key) + ": empty list");
  return out;
}

std::uint64_t Config::hash() const {
  std::uint64_t h = 1469598103934665603ULL;
  for (const auto& [k, v] : values_)
    for (const std::string& part : {k, std::string("="), v, std::string("\n")})
      for (unsigned char ch : part) {
        h ^= ch;
        h *= 1099511628211ULL;
      }
  return h;
}

}  // namespace wolffsys_cli
