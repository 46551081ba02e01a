#include "household/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>

#include <boost/math/tools/minima.hpp>
#include <fmt/format.h>

#include "household/errors.hpp"
#include "household/model.hpp"

namespace household {

double FocResiduals::max_abs() const noexcept {
  return std::max({std::abs(r_children), std::abs(r_education), std::abs(r_health),
                   std::abs(r_savings), std::abs(r_pension), std::abs(r_budget)});
}

namespace {

constexpr int kLineSearchBits = std::numeric_limits<double>::digits / 2;
constexpr std::uintmax_t kLineSearchIterations = 200;
constexpr double kPatternReach = 64.0;

enum Coordinate : std::size_t { kC = 0, kS, kP, kQ, kN, kCoordinateCount };

using Point = std::array<double, kCoordinateCount>;

/// Lifetime utility with education per child eliminated through the budget.
/// Writing e = R / n with the education pool R = w(1 - tau n) - c - s - p - q,
/// utility is a weighted sum of logs of c, s, p, q, n and R plus a constant,
/// and R is linear in the coordinates. Gains along a direction are therefore
/// evaluated exactly with log1p instead of as a difference of two utilities.
class ReducedObjective {
 public:
  ReducedObjective(const PreferenceWeights &prefs, const EconomyParams &econ)
      : econ_(econ),
        coefficients_{prefs[Weight::Consumption], prefs[Weight::Savings], prefs[Weight::Health],
                      prefs[Weight::Pension],
                      prefs[Weight::Children] + prefs[Weight::FutureEarnings] -
                          prefs[Weight::Education]},
        pool_coefficient_(prefs[Weight::Education]) {}

  double pool(const Point &x) const noexcept {
    return econ_.wage * (1.0 - econ_.child_cost * x[kN]) - x[kC] - x[kS] - x[kP] - x[kQ];
  }

  double pool_slope(const Point &d) const noexcept {
    return -econ_.wage * econ_.child_cost * d[kN] - d[kC] - d[kS] - d[kP] - d[kQ];
  }

  bool feasible(const Point &x) const noexcept {
    for (double v : x) {
      if (!(v > 0.0)) return false;
    }
    return pool(x) > 0.0;
  }

  /// Utility change from x to x + alpha d; -inf if that point is infeasible.
  double gain(const Point &x, const Point &d, double alpha) const noexcept {
    double g = 0.0;
    for (std::size_t i = 0; i < kCoordinateCount; ++i) {
      if (d[i] == 0.0) continue;
      const double ratio = alpha * d[i] / x[i];
      if (!(ratio > -1.0)) return -std::numeric_limits<double>::infinity();
      g += coefficients_[i] * std::log1p(ratio);
    }
    const double ratio = alpha * pool_slope(d) / pool(x);
    if (!(ratio > -1.0)) return -std::numeric_limits<double>::infinity();
    return g + pool_coefficient_ * std::log1p(ratio);
  }

  /// Open interval of alpha keeping x + alpha d strictly feasible.
  std::pair<double, double> feasible_range(const Point &x, const Point &d) const noexcept {
    double lo = -std::numeric_limits<double>::infinity();
    double hi = std::numeric_limits<double>::infinity();
    const auto clip = [&](double value, double slope) {
      if (slope > 0.0) lo = std::max(lo, -value / slope);
      if (slope < 0.0) hi = std::min(hi, -value / slope);
    };
    for (std::size_t i = 0; i < kCoordinateCount; ++i) clip(x[i], d[i]);
    clip(pool(x), pool_slope(d));
    return {lo, hi};
  }

 private:
  const EconomyParams &econ_;
  std::array<double, kCoordinateCount> coefficients_;
  double pool_coefficient_;
};

struct LineStep {
  double alpha = 0.0;
  double gain = 0.0;
};

/// Brent search for the best alpha in [lo, hi] (lo <= 0 <= hi). Only a strict
/// improvement over staying put is returned.
LineStep line_search(const ReducedObjective &f, const Point &x, const Point &d, double lo,
                     double hi) {
  std::uintmax_t iterations = kLineSearchIterations;
  const double width = hi - lo;
  const auto loss = [&](double frac) {
    const double g = f.gain(x, d, lo + frac * width);
    return std::isfinite(g) ? -g : std::numeric_limits<double>::max();
  };
  const auto [frac, neg] =
      boost::math::tools::brent_find_minima(loss, 0.0, 1.0, kLineSearchBits, iterations);
  if (-neg > 0.0) return {lo + frac * width, -neg};
  return {};
}

Allocation to_allocation(const Point &x, const ReducedObjective &f) {
  Allocation a;
  a.consumption = x[kC];
  a.savings = x[kS];
  a.health = x[kP];
  a.pension = x[kQ];
  a.children = x[kN];
  a.education = f.pool(x) / x[kN];
  return a;
}

}  // namespace

OracleResult maximize_numerically(const PreferenceWeights &prefs, const EconomyParams &econ,
                                  const OracleOptions &options,
                                  const ValidationOptions &validation) {
  const RegimeClassification regime = validate(prefs, econ, validation);
  if (regime.regime != Regime::Interior) throw NotInteriorError(regime);

  const ReducedObjective f(prefs, econ);

  // Equal split of net income across c, s, p, q and the education pool.
  Point x{};
  x[kN] = 0.5 / econ.child_cost;
  const double net_income = econ.wage * (1.0 - econ.child_cost * x[kN]);
  for (std::size_t i = kC; i <= kQ; ++i) x[i] = net_income / 5.0;
  if (!f.feasible(x)) {
    throw ModelError(ErrorKind::NoFeasibleStart,
                     fmt::format("no strictly positive feasible start (w = {}, tau = {})",
                                 econ.wage, econ.child_cost));
  }

  OracleResult result;
  double u = evaluate_utility(to_allocation(x, f), prefs, econ);
  result.trace.push_back(u);

  // Per-coordinate search radius; starts unbounded, shrinks with the steps.
  std::array<double, kCoordinateCount> radius;
  radius.fill(std::numeric_limits<double>::infinity());

  int quiet_cycles = 0;
  while (result.iterations < options.max_iter) {
    const Point start = x;
    double cycle_gain = 0.0;

    for (std::size_t i = 0; i < kCoordinateCount; ++i) {
      Point d{};
      d[i] = 1.0;
      auto [lo, hi] = f.feasible_range(x, d);
      lo = std::max(lo, -radius[i]);
      hi = std::min(hi, radius[i]);
      const LineStep step = line_search(f, x, d, lo, hi);
      const double moved = std::abs(step.alpha);
      if (step.gain > 0.0) {
        x[i] += step.alpha;
        cycle_gain += step.gain;
      }
      // Grow the bracket when the step ran into it, otherwise track the step.
      radius[i] = moved >= 0.5 * radius[i] ? 4.0 * radius[i]
                                           : std::max(8.0 * moved, 1e-12 * x[i]);
    }

    // Pattern move along the net displacement of the cycle.
    Point d{};
    bool moved_any = false;
    for (std::size_t i = 0; i < kCoordinateCount; ++i) {
      d[i] = x[i] - start[i];
      moved_any = moved_any || d[i] != 0.0;
    }
    if (moved_any) {
      const double hi = f.feasible_range(x, d).second;
      const LineStep step = line_search(f, x, d, 0.0, std::min(hi, kPatternReach));
      if (step.gain > 0.0) {
        for (std::size_t i = 0; i < kCoordinateCount; ++i) x[i] += step.alpha * d[i];
        cycle_gain += step.gain;
      }
    }

    ++result.iterations;
    u += cycle_gain;
    result.trace.push_back(u);

    double max_move = 0.0;
    for (std::size_t i = 0; i < kCoordinateCount; ++i) {
      max_move = std::max(max_move, std::abs(x[i] - start[i]) / x[i]);
    }
    const bool quiet = cycle_gain <= options.tol * std::max(1.0, std::abs(u)) &&
                       max_move <= options.step_tol;
    quiet_cycles = quiet ? quiet_cycles + 1 : 0;
    if (quiet_cycles >= 2) {
      result.converged = true;
      break;
    }
  }

  result.allocation = to_allocation(x, f);
  result.utility = evaluate_utility(result.allocation, prefs, econ);
  return result;
}

FocResiduals foc_residuals(const Allocation &alloc, const PreferenceWeights &prefs,
                           const EconomyParams &econ) {
  for (Decision d : kAllDecisions) {
    if (!(alloc[d] > 0.0)) {
      throw ModelError(ErrorKind::NonPositiveArgument,
                       fmt::format("{} must be positive to evaluate first-order conditions, "
                                   "got {}",
                                   decision_symbol(d), alloc[d]));
    }
  }
  FocResiduals r;
  r.lambda_hat = prefs[Weight::Consumption] / alloc.consumption;
  r.r_health = prefs[Weight::Health] / alloc.health - r.lambda_hat;
  r.r_savings = prefs[Weight::Savings] / alloc.savings - r.lambda_hat;
  r.r_pension = prefs[Weight::Pension] / alloc.pension - r.lambda_hat;
  r.r_children = (prefs[Weight::Children] + prefs[Weight::FutureEarnings]) / alloc.children -
                 r.lambda_hat * (econ.child_cost * econ.wage + alloc.education);
  r.r_education = prefs[Weight::Education] / alloc.education - r.lambda_hat * alloc.children;
  r.r_budget = budget_residual(alloc, econ);
  return r;
}

CrossValidation cross_validate(const PreferenceWeights &prefs, const EconomyParams &econ,
                               const OracleOptions &options,
                               const ValidationOptions &validation,
                               const ClosedFormSolver &solver) {
  CrossValidation out;
  out.closed_form = solver ? solver(prefs, econ) : solve_closed_form(prefs, econ, validation);
  out.numerical = maximize_numerically(prefs, econ, options, validation);

  for (Decision d : kAllDecisions) {
    const double ref = out.closed_form[d];
    const double gap = std::abs(out.numerical.allocation[d] - ref) / std::abs(ref);
    out.max_component_gap = std::max(out.max_component_gap, gap);
  }
  const double u_closed = evaluate_utility(out.closed_form, prefs, econ);
  out.utility_gap =
      std::abs(out.numerical.utility - u_closed) / std::max(1.0, std::abs(u_closed));
  out.max_residual_closed_form = foc_residuals(out.closed_form, prefs, econ).max_abs();
  out.max_residual_numerical = foc_residuals(out.numerical.allocation, prefs, econ).max_abs();

  out.pass = out.numerical.converged && out.max_component_gap <= kCrossValidationGap &&
             out.max_residual_closed_form <= kCrossValidationResidual &&
             out.max_residual_numerical <= kCrossValidationResidual;
  return out;
}

}  // namespace household
