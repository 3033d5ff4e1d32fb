// Copyright 2026 The wolffsys Authors
// SPDX-License-Identifier: Apache-2.0

// Text form of the report structs: "key=value" lines in a fixed order.

#include <charconv>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <string>
#include <string_view>
#include <vector>

#include "wolffsys/error.hpp"
#include "wolffsys/solver.hpp"
#include "wolffsys/verify.hpp"

namespace wolffsys {

namespace {

std::string num(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

double to_double(std::string_view s, std::string_view key) {
  const std::string tmp(s);
  char* end = nullptr;
  const double x = std::strtod(tmp.c_str(), &end);
  if (tmp.empty() || end != tmp.c_str() + tmp.size())
    throw DomainError("report text: bad number for " + std::string(key) + ": '" + tmp + "'");
  return x;
}

long long to_int(std::string_view s, std::string_view key) {
  long long v = 0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size())
    throw DomainError("report text: bad integer for " + std::string(key));
  return v;
}

bool to_bool(std::string_view s, std::string_view key) {
  if (s == "1") return true;
  if (s == "0") return false;
  throw DomainError("report text: bad flag for " + std::string(key));
}

std::string escape(std::string_view s) {
  std::string out;
  for (char c : s) {
    if (c == '\\') out += "\\\\";
    else if (c == '\n') out += "\\n";
    else out += c;
  }
  return out;
}

std::string unescape(std::string_view s) {
  std::string out;
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (s[i] == '\\' && i + 1 < s.size()) {
      ++i;
      out += s[i] == 'n' ? '\n' : s[i];
    } else {
      out += s[i];
    }
  }
  return out;
}

std::string list(const std::vector<double>& v) {
  std::string out;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) out += ',';
    out += num(v[i]);
  }
  return out;
}

std::vector<double> parse_list(std::string_view s, std::string_view key) {
  std::vector<double> out;
  if (s.empty()) return out;
  std::size_t start = 0;
  for (;;) {
    const std::size_t comma = s.find(',', start);
    out.push_back(to_double(s.substr(start, comma - start), key));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return out;
}

template <class F>
void for_each_line(std::string_view text, F&& f) {
  std::size_t start = 0;
  while (start < text.size()) {
    std::size_t end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    const std::string_view line = text.substr(start, end - start);
    start = end + 1;
    if (line.empty() || line.front() == '#') continue;
    const std::size_t eq = line.find('=');
    if (eq == std::string_view::npos) throw DomainError("report text: line without '=': " + std::string(line));
    f(line.substr(0, eq), line.substr(eq + 1));
  }
}

Termination to_termination(std::string_view s) {
  for (Termination t : {Termination::converged, Termination::max_iter, Termination::diverged})
    if (s == to_string(t)) return t;
  throw DomainError("report text: unknown termination '" + std::string(s) + "'");
}

}  // namespace

std::string serialize(const EstimateReport& r) {
  std::string out;
  out += "id=" + escape(r.id) + "\n";
  out += "pass=" + std::string(r.pass ? "1" : "0") + "\n";
  out += "exploratory=" + std::string(r.exploratory ? "1" : "0") + "\n";
  out += "worst_node=" + std::to_string(r.worst_node) + "\n";
  out += "worst_radius=" + num(r.worst_radius) + "\n";
  out += "note=" + escape(r.note) + "\n";
  for (const auto& [k, v] : r.constants) out += "constant." + escape(k) + "=" + num(v) + "\n";
  for (std::size_t i = 0; i < r.radii.size(); ++i) out += "node=" + num(r.radii[i]) + "," + num(r.margins[i]) + "\n";
  return out;
}

EstimateReport parse_estimate_report(std::string_view text) {
  EstimateReport r;
  for_each_line(text, [&](std::string_view key, std::string_view value) {
    if (key == "id") r.id = unescape(value);
    else if (key == "pass") r.pass = to_bool(value, key);
    else if (key == "exploratory") r.exploratory = to_bool(value, key);
    else if (key == "worst_node") r.worst_node = static_cast<std::size_t>(to_int(value, key));
    else if (key == "worst_radius") r.worst_radius = to_double(value, key);
    else if (key == "note") r.note = unescape(value);
    else if (key.starts_with("constant.")) r.constants.emplace_back(unescape(key.substr(9)), to_double(value, key));
    else if (key == "node") {
      const auto pair = parse_list(value, key);
      if (pair.size() != 2) throw DomainError("report text: node needs radius,margin");
      r.radii.push_back(pair[0]);
      r.margins.push_back(pair[1]);
    } else {
      throw DomainError("report text: unknown key '" + std::string(key) + "'");
    }
  });
  return r;
}

std::string serialize(const SolveReport& r) {
  std::string out;
  out += "termination=" + std::string(to_string(r.termination)) + "\n";
  out += "iterations=" + std::to_string(r.iterations) + "\n";
  out += "residual_u=" + list(r.residual_u) + "\n";
  out += "residual_v=" + list(r.residual_v) + "\n";
  out += "monotonicity_violations=" + std::to_string(r.monotonicity_violations) + "\n";
  out += "worst_monotonicity=" + num(r.worst_monotonicity) + "\n";
  out += "lambda_sub=" + num(r.lambda_sub) + "\n";
  out += "lambda_super=" + num(r.lambda_super) + "\n";
  out += "c_lower=" + num(r.c_lower) + "\n";
  out += "c_upper=" + num(r.c_upper) + "\n";
  out += "c_sigma=" + num(r.c_sigma) + "\n";
  out += "capacity_override=" + std::string(r.capacity_override ? "1" : "0") + "\n";
  out += "note=" + escape(r.note) + "\n";
  return out;
}

SolveReport parse_solve_report(std::string_view text) {
  SolveReport r;
  for_each_line(text, [&](std::string_view key, std::string_view value) {
    if (key == "termination") r.termination = to_termination(value);
    else if (key == "iterations") r.iterations = static_cast<int>(to_int(value, key));
    else if (key == "residual_u") r.residual_u = parse_list(value, key);
    else if (key == "residual_v") r.residual_v = parse_list(value, key);
    else if (key == "monotonicity_violations") r.monotonicity_violations = static_cast<int>(to_int(value, key));
    else if (key == "worst_monotonicity") r.worst_monotonicity = to_double(value, key);
    else if (key == "lambda_sub") r.lambda_sub = to_double(value, key);
    else if (key == "lambda_super") r.lambda_super = to_double(value, key);
    else if (key == "c_lower") r.c_lower = to_double(value, key);
    else if (key == "c_upper") r.c_upper = to_double(value, key);
    else if (key == "c_sigma") r.c_sigma = to_double(value, key);
    else if (key == "capacity_override") r.capacity_override = to_bool(value, key);
    else if (key == "note") r.note = unescape(value);
    else throw DomainError("report text: unknown key '" + std::string(key) + "'");
  });
  return r;
}

}  // namespace wolffsys
