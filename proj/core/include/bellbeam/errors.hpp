// Copyright bellbeam contributors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <stdexcept>
#include <string>

namespace bellbeam {

/// A density matrix violated one of its invariants (hermiticity, unit trace,
/// positive semidefiniteness).
class StateError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Nonlinear peak fit did not converge within the iteration cap. Carries the
/// best residual RMS reached so callers can report how close it got.
class FitError : public std::runtime_error {
 public:
  FitError(const std::string& what, double best_rms)
      : std::runtime_error(what), best_rms_(best_rms) {}
  double best_rms() const noexcept { return best_rms_; }

 private:
  double best_rms_;
};

/// The two angular densities of a scattering channel are too similar: the
/// decoding-kernel denominators fall below the 1e-9 floor, so continuous
/// outcomes cannot be decoded into +-1 correlations.
class IndistinguishabilityError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// An estimate was requested from an empty (or single-record) sub-ensemble.
class InsufficientDataError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A configuration document failed to parse or validate.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace bellbeam
