#pragma once

#include <array>
#include <cstddef>
#include <string_view>

namespace household {

/// Utility weights, in the order they multiply the log terms of lifetime
/// utility: consumption, number of children, per-child education, health,
/// children's future earnings, savings, pension premiums.
enum class Weight : std::size_t {
  Consumption = 0,
  Children,
  Education,
  Health,
  FutureEarnings,
  Savings,
  Pension,
};

inline constexpr std::size_t kWeightCount = 7;
inline constexpr std::array<Weight, kWeightCount> kAllWeights = {
    Weight::Consumption,    Weight::Children, Weight::Education,
    Weight::Health,         Weight::FutureEarnings, Weight::Savings,
    Weight::Pension};

/// Decision variables, in sensitivity-table row order (c, n, e, p, s, q).
enum class Decision : std::size_t {
  Consumption = 0,
  Children,
  Education,
  Health,
  Savings,
  Pension,
};

inline constexpr std::size_t kDecisionCount = 6;
inline constexpr std::array<Decision, kDecisionCount> kAllDecisions = {
    Decision::Consumption, Decision::Children, Decision::Education,
    Decision::Health,      Decision::Savings,  Decision::Pension};

constexpr std::size_t index(Weight w) noexcept { return static_cast<std::size_t>(w); }
constexpr std::size_t index(Decision d) noexcept { return static_cast<std::size_t>(d); }

/// "gamma1".."gamma7"
std::string_view weight_name(Weight w) noexcept;
/// Single-letter symbol: c, n, e, p, s, q.
std::string_view decision_symbol(Decision d) noexcept;

struct PreferenceWeights {
  std::array<double, kWeightCount> gamma{};

  static PreferenceWeights uniform(double value) noexcept {
    PreferenceWeights p;
    p.gamma.fill(value);
    return p;
  }

  double operator[](Weight w) const noexcept { return gamma[index(w)]; }
  double &operator[](Weight w) noexcept { return gamma[index(w)]; }

  PreferenceWeights with(Weight w, double value) const noexcept {
    PreferenceWeights copy = *this;
    copy[w] = value;
    return copy;
  }

  PreferenceWeights scaled(double k) const noexcept {
    PreferenceWeights copy = *this;
    for (double &g : copy.gamma) g *= k;
    return copy;
  }
};

struct EconomyParams {
  double wage = 1.0;              // w_t
  double child_cost = 0.1;        // tau, fraction of the wage per child
  double child_wage = 1.0;        // w_{t+1}
  double interest = 1.0;          // gross R_{t+1}
  double pension_interest = 1.0;  // gross R^p_{t+1}
};

struct Allocation {
  double consumption = 0.0;
  double savings = 0.0;
  double health = 0.0;
  double pension = 0.0;
  double children = 0.0;   // continuous, not rounded
  double education = 0.0;  // per child

  double operator[](Decision d) const noexcept;
  double &operator[](Decision d) noexcept;
};

enum class Regime { Interior, Corner, Singular };

std::string_view to_string(Regime r) noexcept;

struct RegimeClassification {
  Regime regime = Regime::Interior;
  /// gamma2 + gamma5 - gamma3
  double mqqt_margin = 0.0;
};

/// Numerical thresholds shared across the library. Defaults are the module
/// constants; the CLI may override budget and fd_step from a config file.
struct Tolerances {
  double budget = 1e-10;        // relative to w_t
  double margin = 1e-12;        // absolute, on gamma2 + gamma5 - gamma3
  double sign_zero = 1e-12;     // absolute
  double fd_step = 1e-6;        // relative central-difference step
  double table_match = 1e-8;    // relative, analytic vs tabulated cells
  double monotone = 1e-12;      // absolute, consecutive sweep rows
};

struct ValidationOptions {
  double margin_tolerance = Tolerances{}.margin;
  /// Require gamma5, gamma6, gamma7 <= 1. The closed forms themselves are
  /// defined for any positive weights.
  bool enforce_discount_range = true;
};

}  // namespace household
