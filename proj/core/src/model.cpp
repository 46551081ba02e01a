#include "household/model.hpp"

#include <cmath>
#include <string>

#include <fmt/format.h>

namespace household {

namespace {

void require_positive(double value, std::string_view name) {
  if (!std::isfinite(value) || value <= 0.0) {
    throw ModelError(ErrorKind::NonPositiveParameter,
                     fmt::format("{} must be a positive finite number, got {}", name, value));
  }
}

}  // namespace

NotInteriorError::NotInteriorError(const RegimeClassification &classification)
    : ModelError(ErrorKind::NotInterior,
                 fmt::format("{} regime (gamma2 + gamma5 - gamma3 = {:.6g}); no interior "
                             "allocation exists",
                             to_string(classification.regime), classification.mqqt_margin)),
      classification_(classification) {}

RegimeClassification validate(const PreferenceWeights &prefs, const EconomyParams &econ,
                              const ValidationOptions &options) {
  for (Weight w : kAllWeights) require_positive(prefs[w], weight_name(w));
  require_positive(econ.wage, "w");
  require_positive(econ.child_cost, "tau");
  require_positive(econ.child_wage, "w_next");
  require_positive(econ.interest, "R_next");
  require_positive(econ.pension_interest, "Rp_next");

  if (options.enforce_discount_range) {
    for (Weight w : {Weight::FutureEarnings, Weight::Savings, Weight::Pension}) {
      if (prefs[w] > 1.0) {
        throw ModelError(ErrorKind::DiscountOutOfRange,
                         fmt::format("{} is a discount factor and must lie in (0, 1], got {}",
                                     weight_name(w), prefs[w]));
      }
    }
  }

  RegimeClassification out;
  out.mqqt_margin =
      prefs[Weight::Children] + prefs[Weight::FutureEarnings] - prefs[Weight::Education];
  if (std::abs(out.mqqt_margin) <= options.margin_tolerance) {
    out.regime = Regime::Singular;
  } else if (out.mqqt_margin < 0.0) {
    out.regime = Regime::Corner;
  } else {
    out.regime = Regime::Interior;
  }
  return out;
}

double utility_weight_sum(const PreferenceWeights &prefs) noexcept {
  return prefs[Weight::Consumption] + prefs[Weight::Children] + prefs[Weight::Health] +
         prefs[Weight::FutureEarnings] + prefs[Weight::Savings] + prefs[Weight::Pension];
}

void require_positive_net_income(double children, const EconomyParams &econ) {
  const double net = 1.0 - econ.child_cost * children;
  if (!(net > 0.0)) {
    throw ModelError(ErrorKind::NetIncomeNonPositive,
                     fmt::format("child costs exhaust income: 1 - tau * n = {:.6g} "
                                 "(tau = {}, n = {:.6g})",
                                 net, econ.child_cost, children));
  }
}

Allocation solve_closed_form(const PreferenceWeights &prefs, const EconomyParams &econ,
                             const ValidationOptions &options) {
  const RegimeClassification regime = validate(prefs, econ, options);
  if (regime.regime != Regime::Interior) throw NotInteriorError(regime);

  const double S = utility_weight_sum(prefs);
  const double w = econ.wage;
  const double tau = econ.child_cost;
  const double margin = regime.mqqt_margin;

  Allocation a;
  a.consumption = prefs[Weight::Consumption] * w / S;
  a.savings = prefs[Weight::Savings] * w / S;
  a.health = prefs[Weight::Health] * w / S;
  a.pension = prefs[Weight::Pension] * w / S;
  a.children = margin / (tau * S);
  a.education = prefs[Weight::Education] * w * tau / margin;

  require_positive_net_income(a.children, econ);
  return a;
}

double evaluate_utility(const Allocation &alloc, const PreferenceWeights &prefs,
                        const EconomyParams &econ) {
  struct Term {
    Weight weight;
    double argument;
    std::string_view label;
  };
  const std::array<Term, kWeightCount> terms = {{
      {Weight::Consumption, alloc.consumption, "c"},
      {Weight::Children, alloc.children, "n"},
      {Weight::Education, alloc.education, "e"},
      {Weight::Health, alloc.health, "p"},
      {Weight::FutureEarnings, alloc.children * econ.child_wage, "n * w_next"},
      {Weight::Savings, econ.interest * alloc.savings, "R_next * s"},
      {Weight::Pension, econ.pension_interest * alloc.pension, "Rp_next * q"},
  }};

  double u = 0.0;
  for (const Term &t : terms) {
    if (!(t.argument > 0.0)) {
      throw ModelError(ErrorKind::NonPositiveArgument,
                       fmt::format("log argument {} must be positive, got {}", t.label,
                                   t.argument));
    }
    u += prefs[t.weight] * std::log(t.argument);
  }
  return u;
}

double budget_residual(const Allocation &alloc, const EconomyParams &econ) noexcept {
  const double income = econ.wage * (1.0 - econ.child_cost * alloc.children);
  const double spending = alloc.consumption + alloc.savings + alloc.education * alloc.children +
                          alloc.health + alloc.pension;
  return income - spending;
}

bool on_budget(const Allocation &alloc, const EconomyParams &econ, double tolerance) noexcept {
  return std::abs(budget_residual(alloc, econ)) <= tolerance * econ.wage;
}

}  // namespace household
