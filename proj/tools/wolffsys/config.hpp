// Copyright 2026 The wolffsys Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace wolffsys_cli {

class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Flat "section.key = value" configuration. Lines starting with '#' are
/// comments; every key must be known and may appear once.
class Config {
 public:
  static Config load(const std::string& path);
  static Config parse(const std::string& text, const std::string& origin = "<config>");

  bool has(const std::string& key) const { return values_.count(key) != 0; }
  std::string str(const std::string& key) const;
  std::string str(const std::string& key, const std::string& fallback) const;
  double real(const std::string& key) const;
  double real(const std::string& key, double fallback) const;
  int integer(const std::string& key) const;
  int integer(const std::string& key, int fallback) const;
  bool flag(const std::string& key, bool fallback) const;
  /// Comma-separated reals.
  std::vector<double> reals(const std::string& key) const;

  const std::map<std::string, std::string>& values() const noexcept { return values_; }
  /// FNV-1a 64 of the normalised "key=value\n" lines in key order.
  std::uint64_t hash() const;

 private:
  std::string where(const std::string& key) const;

  std::map<std::string, std::string> values_;
  std::map<std::string, int> lines_;
  std::string origin_;
};

}  // namespace wolffsys_cli
