#pragma once

#include <cstddef>
#include <functional>
#include <vector>

#include "household/types.hpp"

namespace household {

/// Stationarity residuals of the Lagrangian system at a candidate allocation,
/// with the multiplier implied by the consumption condition.
struct FocResiduals {
  double lambda_hat = 0.0;  // gamma1 / c
  double r_children = 0.0;
  double r_education = 0.0;
  double r_health = 0.0;
  double r_savings = 0.0;
  double r_pension = 0.0;
  double r_budget = 0.0;

  /// Largest absolute residual, budget included.
  double max_abs() const noexcept;
};

struct OracleResult {
  Allocation allocation;
  double utility = 0.0;
  std::size_t iterations = 0;
  bool converged = false;
  /// Start utility plus the accumulated line-search gains after every
  /// cycle; non-decreasing by construction.
  std::vector<double> trace;
};

struct OracleOptions {
  /// Relative utility gain of a full cycle below which the search may stop.
  double tol = 1e-10;
  /// Largest relative coordinate move in a cycle below which it may stop.
  double step_tol = 1e-10;
  std::size_t max_iter = 20000;
};

/// Maximises lifetime utility over (c, s, p, q, n) > 0 with education per
/// child eliminated through the budget, by cyclic coordinate ascent using a
/// derivative-free bracketed line search per coordinate. Starts from an equal
/// split of net income at n = 0.5 / tau, never from the closed form.
///
/// Throws NotInteriorError outside the interior and NoFeasibleStart if no
/// strictly positive start exists. Running out of iterations is not an
/// exception: the partial result comes back with converged == false.
OracleResult maximize_numerically(const PreferenceWeights &prefs, const EconomyParams &econ,
                                  const OracleOptions &options = {},
                                  const ValidationOptions &validation = {});

/// Throws ModelError(NonPositiveArgument) if any component is not positive.
FocResiduals foc_residuals(const Allocation &alloc, const PreferenceWeights &prefs,
                           const EconomyParams &econ);

using ClosedFormSolver =
    std::function<Allocation(const PreferenceWeights &, const EconomyParams &)>;

struct CrossValidation {
  Allocation closed_form;
  OracleResult numerical;
  double max_component_gap = 0.0;  // relative, worst of the six decisions
  double utility_gap = 0.0;        // relative
  double max_residual_closed_form = 0.0;
  double max_residual_numerical = 0.0;
  bool pass = false;
};

inline constexpr double kCrossValidationGap = 1e-4;
inline constexpr double kCrossValidationResidual = 1e-5;

/// Runs the closed form and the numerical maximiser on the same instance and
/// compares them. PASS iff the oracle converged, the component gap is within
/// 1e-4 and both residual sets are within 1e-5. `solver` replaces the closed
/// form, which lets tests confirm that a wrong solver is caught.
CrossValidation cross_validate(const PreferenceWeights &prefs, const EconomyParams &econ,
                               const OracleOptions &options = {},
                               const ValidationOptions &validation = {},
                               const ClosedFormSolver &solver = {});

}  // namespace household
