#pragma once

#include <array>
#include <filesystem>
#include <optional>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

#include "household/types.hpp"

namespace household {

/// Quantities a sweep can vary: the seven weights, tau, and the wage.
enum class Parameter {
  Gamma1, Gamma2, Gamma3, Gamma4, Gamma5, Gamma6, Gamma7,
  Tau,
  Wage,
};

/// "gamma1".."gamma7", "tau", "w"
std::string_view parameter_name(Parameter p) noexcept;
/// Accepts the canonical names above (and "γ1".."γ7").
std::optional<Parameter> parse_parameter(std::string_view name) noexcept;
std::optional<Weight> as_weight(Parameter p) noexcept;
Parameter from_weight(Weight w) noexcept;

double get(Parameter p, const PreferenceWeights &prefs, const EconomyParams &econ) noexcept;
void set(Parameter p, double value, PreferenceWeights &prefs, EconomyParams &econ) noexcept;

/// d(decision)/d(parameter) at an interior instance, in (c, n, e, p, s, q)
/// order. Weight columns come from analytic_jacobian; w and tau are
/// differentiated from the closed forms directly.
std::array<double, kDecisionCount> parameter_sensitivity(const PreferenceWeights &prefs,
                                                         const EconomyParams &econ,
                                                         Parameter p,
                                                         const ValidationOptions &options = {});

/// n points from `from` to `to` inclusive, evenly spaced. Requires n >= 2.
std::vector<double> linear_grid(double from, double to, std::size_t n);

enum class Trend { Increasing, Decreasing, Constant, Mixed, Undetermined };

std::string_view to_string(Trend t) noexcept;

struct SweepSpec {
  PreferenceWeights prefs;
  EconomyParams econ;
  Parameter swept = Parameter::Gamma7;
  std::vector<double> grid;  // strictly increasing, positive
  ValidationOptions validation;
  double budget_tolerance = Tolerances{}.budget;
  double monotone_tolerance = Tolerances{}.monotone;
};

struct SweepRow {
  double value = 0.0;
  /// "Interior", "Corner", "Singular", or the ErrorKind name that refused
  /// the point (e.g. "DiscountOutOfRange").
  std::string regime;
  std::optional<Allocation> allocation;  // present iff regime == "Interior"
  double utility = 0.0;
  std::array<double, kDecisionCount> sensitivity{};

  bool interior() const noexcept { return allocation.has_value(); }
};

struct TrendVerdict {
  Decision decision;
  Trend observed = Trend::Undetermined;
  /// Sign the theory predicts along the sweep; empty when there is none.
  std::optional<Trend> expected;
  double min = 0.0;
  double max = 0.0;

  bool matches() const noexcept;
};

struct ScenarioResult {
  std::string name;
  Parameter swept = Parameter::Gamma7;
  std::vector<SweepRow> rows;  // grid order
  std::vector<TrendVerdict> verdicts;

  std::size_t skipped() const noexcept;
  bool all_verdicts_match() const noexcept;
  const TrendVerdict *verdict(Decision d) const noexcept;
};

/// Evaluates the closed form at every grid point. Points outside the interior
/// or refused by validation are recorded as skipped rows, never dropped.
/// Each decision's observed trend is compared against the sign of its
/// analytic sensitivity, which must be the same at every interior row.
///
/// Throws EmptyGrid, InvalidGrid, or BaseNotInterior.
ScenarioResult run_sweep(const SweepSpec &spec);

/// gamma7 sweep: savings, consumption, health and children fall; pension
/// premiums rise. Rows carry ds/dgamma7 in their sensitivity column.
ScenarioResult crowd_out_analysis(const PreferenceWeights &prefs, const EconomyParams &econ,
                                  std::vector<double> gamma7_grid,
                                  const ValidationOptions &validation = {});

/// gamma3 sweep: n falls and e rises. gamma2 sweep: n rises and e falls.
/// Throws InvalidArgument for any other weight.
ScenarioResult quantity_quality_frontier(const PreferenceWeights &prefs,
                                         const EconomyParams &econ, Weight swept,
                                         std::vector<double> grid,
                                         const ValidationOptions &validation = {});

/// gamma5 sweep: c, s, p, q and e fall, n rises. The discount range is always
/// enforced; a grid point above 1 throws DiscountOutOfRange up front.
ScenarioResult future_earnings_scenario(const PreferenceWeights &prefs,
                                        const EconomyParams &econ,
                                        std::vector<double> gamma5_grid);

inline constexpr std::string_view kCsvHeader = "param,value,c,s,p,q,n,e,utility,regime";

/// Shortest round-trip decimal representation.
std::string format_double(double x);

void write_csv(const ScenarioResult &result, std::ostream &out);
/// Throws ModelError(IoError) if the file cannot be written.
void export_csv(const ScenarioResult &result, const std::filesystem::path &destination);

}  // namespace household
