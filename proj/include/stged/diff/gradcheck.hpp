#pragma once

#include <cstddef>
#include <functional>
#include <string>

#include "stged/diff/parameter.hpp"
#include "stged/diff/tape.hpp"

namespace stged::diff {

/// Builds a scalar on the given tape from the current parameter values.
using ScalarFunction = std::function<Var(Tape&)>;

struct GradCheckResult {
  double max_error = 0.0;  // max |analytic - numeric| / max(1, |analytic|)
  std::string worst_parameter;
  std::size_t worst_index = 0;
  std::size_t entries_checked = 0;
};

/// Compares reverse-mode gradients of `f` with central differences.
///
/// `max_entries_per_parameter` = 0 checks every entry; otherwise an evenly
/// strided subset of that many entries per parameter (always including the
/// first and last). Parameter gradients are left as they were on entry.
/// Throws ContractError for eps outside (0, 1e-3] and NumericError, naming
/// the parameter, if f is non-finite at a perturbed point.
GradCheckResult grad_check(const ScalarFunction& f, ParameterStore& params, double eps,
                           std::size_t max_entries_per_parameter = 0);

}  // namespace stged::diff
