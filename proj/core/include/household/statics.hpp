#pragma once

#include <array>
#include <string>
#include <utility>
#include <vector>

#include "household/types.hpp"

namespace household {

/// 6x7 matrix of d(decision)/d(gamma_i), rows in (c, n, e, p, s, q) order.
/// Cells a finite-difference run could not evaluate hold NaN.
struct SensitivityMatrix {
  std::array<std::array<double, kWeightCount>, kDecisionCount> entries{};
  /// w / S^2, the shorthand the tabulated formulas are written in.
  double beta = 0.0;

  double operator()(Decision d, Weight w) const noexcept { return entries[index(d)][index(w)]; }
  double &operator()(Decision d, Weight w) noexcept { return entries[index(d)][index(w)]; }

  bool available(Decision d, Weight w) const noexcept;
};

enum class Sign { Negative = -1, Zero = 0, Positive = 1 };

char sign_symbol(Sign s) noexcept;

struct SignPattern {
  std::array<std::array<Sign, kWeightCount>, kDecisionCount> signs{};

  Sign operator()(Decision d, Weight w) const noexcept { return signs[index(d)][index(w)]; }
  bool operator==(const SignPattern &) const = default;
};

/// Exact partial derivatives of the closed-form allocation.
SensitivityMatrix analytic_jacobian(const PreferenceWeights &prefs, const EconomyParams &econ,
                                    const ValidationOptions &options = {});

/// The published sensitivity table transcribed cell by cell, typos included.
/// Kept verbatim so the discrepancy audit stays reproducible.
SensitivityMatrix tabulated_jacobian(const PreferenceWeights &prefs, const EconomyParams &econ,
                                     const ValidationOptions &options = {});

/// Central differences of solve_closed_form with step h * max(1, |gamma_i|).
/// The discount range is not enforced at perturbed points. Columns whose
/// perturbed instances leave the interior are NaN. Throws InvalidStep for
/// h <= 0 or non-finite h.
SensitivityMatrix finite_difference_jacobian(const PreferenceWeights &prefs,
                                             const EconomyParams &econ,
                                             double h = Tolerances{}.fd_step,
                                             const ValidationOptions &options = {});

SignPattern sign_pattern(const SensitivityMatrix &m,
                         double zero_tolerance = Tolerances{}.sign_zero) noexcept;

/// One comparative-statics claim and whether the analytic matrix upholds it.
struct ClaimVerdict {
  std::string id;
  std::string statement;
  bool pass = false;
  std::vector<std::pair<std::string, double>> witnesses;
};

struct ClaimReport {
  std::vector<ClaimVerdict> claims;

  bool all_pass() const noexcept;
  const ClaimVerdict *find(std::string_view id) const noexcept;
};

/// Evaluates the nine sign/equality claim groups on the analytic matrix:
///
///   own_weight_positive          dc/dg1, dn/dg2, de/dg3, dp/dg4, ds/dg6, dq/dg7 > 0
///   education_weight_neutral     dc, ds, dp, dq wrt g3 are exactly 0
///   education_independence       de wrt g1, g4, g6, g7 is exactly 0
///   quantity_cross_equal         dn/dg1 = dn/dg4 = dn/dg6 < 0, bitwise equal
///   pension_weight_crowds_out    dc/dg7, dp/dg7, dn/dg7 < 0
///   pension_weight_cuts_savings  ds/dg7 < 0
///   education_weight_cuts_children   dn/dg3 < 0
///   children_weight_cuts_education   de/dg2 < 0
///   future_earnings_reallocation dc, ds, dp, dq wrt g5 < 0 and dn/dg5 > 0
ClaimReport verify_claims(const PreferenceWeights &prefs, const EconomyParams &econ,
                          const ValidationOptions &options = {});

struct DiscrepancyRow {
  Decision decision;
  Weight weight;
  double analytic = 0.0;
  double tabulated = 0.0;
  double finite_difference = 0.0;
  double abs_diff = 0.0;
  bool flagged = false;
  /// "agree", "fd_sides_analytic", "fd_sides_tabulated" or "fd_unavailable".
  std::string verdict;
};

struct DiscrepancyReport {
  std::vector<DiscrepancyRow> rows;  // all 42 cells, row-major

  std::vector<DiscrepancyRow> flagged() const;
};

/// Three-way comparison of analytic, tabulated and finite-difference cells.
/// A cell is flagged iff |analytic - tabulated| > tol * max(1, |analytic|).
DiscrepancyReport discrepancy_report(const PreferenceWeights &prefs, const EconomyParams &econ,
                                     const Tolerances &tolerances = {},
                                     const ValidationOptions &options = {});

}  // namespace household
