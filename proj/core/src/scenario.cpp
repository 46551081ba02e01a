#include "household/scenario.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <stdexcept>

#include <fmt/format.h>

#include "household/errors.hpp"
#include "household/model.hpp"
#include "household/statics.hpp"

namespace household {

namespace {

constexpr std::array<std::string_view, 9> kParameterNames = {
    "gamma1", "gamma2", "gamma3", "gamma4", "gamma5", "gamma6", "gamma7", "tau", "w"};

Trend trend_of_sign(double x, double zero_tolerance) noexcept {
  if (x > zero_tolerance) return Trend::Increasing;
  if (x < -zero_tolerance) return Trend::Decreasing;
  return Trend::Constant;
}

Trend observed_trend(const std::vector<double> &values, double tolerance) noexcept {
  if (values.size() < 2) return Trend::Undetermined;
  bool up = true, down = true, flat = true;
  for (std::size_t i = 1; i < values.size(); ++i) {
    const double diff = values[i] - values[i - 1];
    up = up && diff > tolerance;
    down = down && diff < -tolerance;
    flat = flat && std::abs(diff) <= tolerance;
  }
  if (up) return Trend::Increasing;
  if (down) return Trend::Decreasing;
  if (flat) return Trend::Constant;
  return Trend::Mixed;
}

void check_grid(const std::vector<double> &grid) {
  if (grid.empty()) throw ModelError(ErrorKind::EmptyGrid, "sweep grid is empty");
  for (std::size_t i = 0; i < grid.size(); ++i) {
    if (!std::isfinite(grid[i]) || grid[i] <= 0.0) {
      throw ModelError(ErrorKind::InvalidGrid,
                       fmt::format("grid point {} must be positive and finite, got {}", i,
                                   grid[i]));
    }
    if (i > 0 && !(grid[i] > grid[i - 1])) {
      throw ModelError(ErrorKind::InvalidGrid,
                       fmt::format("grid must be strictly increasing: point {} ({}) does not "
                                   "exceed point {} ({})",
                                   i, grid[i], i - 1, grid[i - 1]));
    }
  }
}

SweepRow evaluate_point(const SweepSpec &spec, double value) {
  PreferenceWeights prefs = spec.prefs;
  EconomyParams econ = spec.econ;
  set(spec.swept, value, prefs, econ);

  SweepRow row;
  row.value = value;
  try {
    row.allocation = solve_closed_form(prefs, econ, spec.validation);
  } catch (const NotInteriorError &e) {
    row.regime = std::string(to_string(e.classification().regime));
    return row;
  } catch (const ModelError &e) {
    row.regime = std::string(to_string(e.kind()));
    return row;
  }
  row.regime = std::string(to_string(Regime::Interior));
  row.utility = evaluate_utility(*row.allocation, prefs, econ);
  row.sensitivity = parameter_sensitivity(prefs, econ, spec.swept, spec.validation);
  if (!on_budget(*row.allocation, econ, spec.budget_tolerance)) {
    throw std::logic_error(fmt::format("closed form off budget at {} = {} (residual {})",
                                       parameter_name(spec.swept), value,
                                       budget_residual(*row.allocation, econ)));
  }
  return row;
}

ScenarioResult with_expected(ScenarioResult result,
                             std::initializer_list<std::pair<Decision, Trend>> expected) {
  for (auto [d, t] : expected) {
    for (auto &v : result.verdicts) {
      if (v.decision == d) v.expected = t;
    }
  }
  return result;
}

}  // namespace

std::string_view parameter_name(Parameter p) noexcept {
  return kParameterNames[static_cast<std::size_t>(p)];
}

std::optional<Parameter> parse_parameter(std::string_view name) noexcept {
  for (std::size_t i = 0; i < kParameterNames.size(); ++i) {
    if (name == kParameterNames[i]) return static_cast<Parameter>(i);
  }
  static constexpr std::array<std::string_view, 7> greek = {"γ1", "γ2", "γ3", "γ4",
                                                            "γ5", "γ6", "γ7"};
  for (std::size_t i = 0; i < greek.size(); ++i) {
    if (name == greek[i]) return static_cast<Parameter>(i);
  }
  return std::nullopt;
}

std::optional<Weight> as_weight(Parameter p) noexcept {
  const auto i = static_cast<std::size_t>(p);
  if (i < kWeightCount) return static_cast<Weight>(i);
  return std::nullopt;
}

Parameter from_weight(Weight w) noexcept { return static_cast<Parameter>(index(w)); }

double get(Parameter p, const PreferenceWeights &prefs, const EconomyParams &econ) noexcept {
  if (auto w = as_weight(p)) return prefs[*w];
  return p == Parameter::Tau ? econ.child_cost : econ.wage;
}

void set(Parameter p, double value, PreferenceWeights &prefs, EconomyParams &econ) noexcept {
  if (auto w = as_weight(p)) {
    prefs[*w] = value;
  } else if (p == Parameter::Tau) {
    econ.child_cost = value;
  } else {
    econ.wage = value;
  }
}

std::array<double, kDecisionCount> parameter_sensitivity(const PreferenceWeights &prefs,
                                                         const EconomyParams &econ,
                                                         Parameter p,
                                                         const ValidationOptions &options) {
  std::array<double, kDecisionCount> out{};
  if (auto w = as_weight(p)) {
    const SensitivityMatrix m = analytic_jacobian(prefs, econ, options);
    for (Decision d : kAllDecisions) out[index(d)] = m(d, *w);
    return out;
  }
  const Allocation a = solve_closed_form(prefs, econ, options);
  if (p == Parameter::Tau) {
    out[index(Decision::Children)] = -a.children / econ.child_cost;
    out[index(Decision::Education)] = a.education / econ.child_cost;
  } else {
    for (Decision d : kAllDecisions) {
      if (d != Decision::Children) out[index(d)] = a[d] / econ.wage;
    }
  }
  return out;
}

std::vector<double> linear_grid(double from, double to, std::size_t n) {
  if (n < 2) {
    throw ModelError(ErrorKind::InvalidGrid,
                     fmt::format("a grid needs at least 2 points, got {}", n));
  }
  std::vector<double> grid(n);
  const double step = (to - from) / static_cast<double>(n - 1);
  for (std::size_t i = 0; i < n; ++i) grid[i] = from + step * static_cast<double>(i);
  grid.back() = to;
  return grid;
}

std::string_view to_string(Trend t) noexcept {
  switch (t) {
    case Trend::Increasing: return "increasing";
    case Trend::Decreasing: return "decreasing";
    case Trend::Constant: return "constant";
    case Trend::Mixed: return "mixed";
    case Trend::Undetermined: return "undetermined";
  }
  return "unknown";
}

bool TrendVerdict::matches() const noexcept {
  if (!expected || observed == Trend::Undetermined) return true;
  return observed == *expected;
}

std::size_t ScenarioResult::skipped() const noexcept {
  std::size_t n = 0;
  for (const auto &r : rows) n += r.interior() ? 0 : 1;
  return n;
}

bool ScenarioResult::all_verdicts_match() const noexcept {
  for (const auto &v : verdicts) {
    if (!v.matches()) return false;
  }
  return true;
}

const TrendVerdict *ScenarioResult::verdict(Decision d) const noexcept {
  for (const auto &v : verdicts) {
    if (v.decision == d) return &v;
  }
  return nullptr;
}

ScenarioResult run_sweep(const SweepSpec &spec) {
  check_grid(spec.grid);
  const RegimeClassification base = validate(spec.prefs, spec.econ, spec.validation);
  if (base.regime != Regime::Interior) {
    throw ModelError(ErrorKind::BaseNotInterior,
                     fmt::format("base instance is {} (gamma2 + gamma5 - gamma3 = {:.6g})",
                                 to_string(base.regime), base.mqqt_margin));
  }

  ScenarioResult result;
  result.name = "sweep";
  result.swept = spec.swept;
  result.rows.reserve(spec.grid.size());
  for (double value : spec.grid) result.rows.push_back(evaluate_point(spec, value));

  for (Decision d : kAllDecisions) {
    TrendVerdict v{d, Trend::Undetermined, std::nullopt, 0.0, 0.0};
    std::vector<double> values;
    std::optional<Trend> expected;
    bool consistent = true;
    for (const auto &row : result.rows) {
      if (!row.interior()) continue;
      const double x = (*row.allocation)[d];
      v.min = values.empty() ? x : std::min(v.min, x);
      v.max = values.empty() ? x : std::max(v.max, x);
      values.push_back(x);
      const Trend t = trend_of_sign(row.sensitivity[index(d)], Tolerances{}.sign_zero);
      if (expected && *expected != t) consistent = false;
      expected = t;
    }
    v.observed = observed_trend(values, spec.monotone_tolerance);
    if (consistent) v.expected = expected;
    result.verdicts.push_back(v);
  }
  return result;
}

ScenarioResult crowd_out_analysis(const PreferenceWeights &prefs, const EconomyParams &econ,
                                  std::vector<double> gamma7_grid,
                                  const ValidationOptions &validation) {
  SweepSpec spec{prefs, econ, Parameter::Gamma7, std::move(gamma7_grid), validation};
  ScenarioResult result = with_expected(run_sweep(spec), {{Decision::Savings, Trend::Decreasing},
                                                          {Decision::Consumption, Trend::Decreasing},
                                                          {Decision::Health, Trend::Decreasing},
                                                          {Decision::Children, Trend::Decreasing},
                                                          {Decision::Pension, Trend::Increasing},
                                                          {Decision::Education, Trend::Constant}});
  result.name = "crowd_out";
  return result;
}

ScenarioResult quantity_quality_frontier(const PreferenceWeights &prefs,
                                         const EconomyParams &econ, Weight swept,
                                         std::vector<double> grid,
                                         const ValidationOptions &validation) {
  if (swept != Weight::Education && swept != Weight::Children) {
    throw ModelError(ErrorKind::InvalidArgument,
                     fmt::format("quantity-quality frontier sweeps gamma2 or gamma3, not {}",
                                 weight_name(swept)));
  }
  SweepSpec spec{prefs, econ, from_weight(swept), std::move(grid), validation};
  const bool education = swept == Weight::Education;
  ScenarioResult result = with_expected(
      run_sweep(spec),
      {{Decision::Children, education ? Trend::Decreasing : Trend::Increasing},
       {Decision::Education, education ? Trend::Increasing : Trend::Decreasing}});
  result.name = "qq_frontier";
  return result;
}

ScenarioResult future_earnings_scenario(const PreferenceWeights &prefs,
                                        const EconomyParams &econ,
                                        std::vector<double> gamma5_grid) {
  for (double g : gamma5_grid) {
    if (g > 1.0) {
      throw ModelError(ErrorKind::DiscountOutOfRange,
                       fmt::format("gamma5 is a discount factor; grid point {} exceeds 1", g));
    }
  }
  SweepSpec spec{prefs, econ, Parameter::Gamma5, std::move(gamma5_grid), ValidationOptions{}};
  ScenarioResult result = with_expected(run_sweep(spec), {{Decision::Consumption, Trend::Decreasing},
                                                          {Decision::Savings, Trend::Decreasing},
                                                          {Decision::Health, Trend::Decreasing},
                                                          {Decision::Pension, Trend::Decreasing},
                                                          {Decision::Children, Trend::Increasing},
                                                          {Decision::Education, Trend::Decreasing}});
  result.name = "future_earnings";
  return result;
}

std::string format_double(double x) {
  std::array<char, 64> buf{};
  const auto [end, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), x);
  return std::string(buf.data(), end);
}

void write_csv(const ScenarioResult &result, std::ostream &out) {
  out << kCsvHeader << '\n';
  const std::string_view param = parameter_name(result.swept);
  for (const auto &row : result.rows) {
    out << param << ',' << format_double(row.value);
    if (row.interior()) {
      const Allocation &a = *row.allocation;
      for (double x : {a.consumption, a.savings, a.health, a.pension, a.children, a.education,
                       row.utility}) {
        out << ',' << format_double(x);
      }
    } else {
      out << ",,,,,,,";
    }
    out << ',' << row.regime << '\n';
  }
}

void export_csv(const ScenarioResult &result, const std::filesystem::path &destination) {
  std::ofstream file(destination, std::ios::binary | std::ios::trunc);
  if (!file) {
    throw ModelError(ErrorKind::IoError,
                     fmt::format("cannot open {} for writing", destination.string()));
  }
  write_csv(result, file);
  file.flush();
  if (!file) {
    throw ModelError(ErrorKind::IoError, fmt::format("failed writing {}", destination.string()));
  }
}

}  // namespace household
