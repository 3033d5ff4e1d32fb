// Copyright 2026 The wolffsys Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <stdexcept>
#include <string>

namespace wolffsys {

enum class ErrorKind {
  domain,
  quadrature_failure,
  calibration_failure,
  diverged,
  max_iter,
  infeasible,
};

const char* to_string(ErrorKind kind) noexcept;

/// Base of every exception thrown by the library.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

  /// True for failures of the numerics rather than of the inputs.
  bool is_numerical() const noexcept {
    return kind_ != ErrorKind::domain && kind_ != ErrorKind::infeasible;
  }

 private:
  ErrorKind kind_;
};

class DomainError : public Error {
 public:
  explicit DomainError(const std::string& what) : Error(ErrorKind::domain, what) {}
};

class QuadratureFailure : public Error {
 public:
  explicit QuadratureFailure(const std::string& what)
      : Error(ErrorKind::quadrature_failure, what) {}
};

class CalibrationFailure : public Error {
 public:
  explicit CalibrationFailure(const std::string& what)
      : Error(ErrorKind::calibration_failure, what) {}
};

class Infeasible : public Error {
 public:
  explicit Infeasible(const std::string& what) : Error(ErrorKind::infeasible, what) {}
};

}  // namespace wolffsys
