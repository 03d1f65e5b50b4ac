// Copyright (c) 2026 The gausstail authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <stdexcept>
#include <string>

namespace gausstail {

/// Numerical oracle failure: uncertifiable truncation remainder, envelope
/// breach in rejection sampling, grid underflow, and similar.
struct OracleError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Plain Monte Carlo observed no hits; the target event is too rare for the
/// configured budget.
struct ZeroHitError : OracleError {
  using OracleError::OracleError;
};

/// An iteration budget was exhausted before reaching the requested tolerance.
struct ConvergenceError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace gausstail
