// Copyright 2026 The blobflow Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef BLOBFLOW_ERROR_HPP
#define BLOBFLOW_ERROR_HPP

#include <stdexcept>
#include <string>

namespace blobflow {

/// Error categories. The numeric values double as CLI exit codes and as the
/// C API status codes.
enum class ErrorKind : int {
  kConfig = 2,
  kSolver = 3,
  kResolution = 4,
  kMetric = 5,
  kIo = 6,
};

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what) : std::runtime_error(what), kind_{kind} {}

  [[nodiscard]] ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

/// Invalid parameters (grid, datum, model, time controls, sweep, fit).
class ConfigError : public Error {
 public:
  explicit ConfigError(const std::string& what) : Error(ErrorKind::kConfig, what) {}
};

/// Malformed or unreadable files.
class ParseError : public Error {
 public:
  explicit ParseError(const std::string& what) : Error(ErrorKind::kIo, what) {}
};

/// The time integrator produced a state that violates a solver invariant.
class SolverError : public Error {
 public:
  explicit SolverError(const std::string& what) : Error(ErrorKind::kSolver, what) {}
};

/// A cell value fell below the rounding threshold after a step.
class NegativeDensity : public SolverError {
 public:
  NegativeDensity(int cell, double value);

  [[nodiscard]] int cell() const noexcept { return cell_; }
  [[nodiscard]] double value() const noexcept { return value_; }

 private:
  int cell_;
  double value_;
};

/// NaN or infinity in an intermediate solver quantity.
class NonFiniteState : public SolverError {
 public:
  explicit NonFiniteState(const std::string& what) : SolverError(what) {}
};

/// The sweep grid is coarser than the smallest kernel width.
class ResolutionViolation : public Error {
 public:
  ResolutionViolation(double dx, double min_eps);

  [[nodiscard]] double dx() const noexcept { return dx_; }
  [[nodiscard]] double min_eps() const noexcept { return min_eps_; }

 private:
  double dx_;
  double min_eps_;
};

/// Densities passed to the transport distance carry different mass.
class MassMismatch : public Error {
 public:
  MassMismatch(double mass_a, double mass_b);
};

/// A density with no mass where a probability-like measure is required.
class ZeroMass : public Error {
 public:
  ZeroMass() : Error(ErrorKind::kMetric, "density has zero mass") {}
};

}  // namespace blobflow

#endif  // BLOBFLOW_ERROR_HPP
