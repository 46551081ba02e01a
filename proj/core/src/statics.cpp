#include "household/statics.hpp"

#include <cmath>
#include <limits>

#include <fmt/format.h>

#include "household/model.hpp"

namespace household {

namespace {

using D = Decision;
using W = Weight;

constexpr std::array<std::pair<D, W>, 4> kShareGoods = {{
    {D::Consumption, W::Consumption},
    {D::Health, W::Health},
    {D::Savings, W::Savings},
    {D::Pension, W::Pension},
}};

constexpr std::array<W, 4> kOutsideWeights = {W::Consumption, W::Health, W::Savings, W::Pension};

void require_interior(const PreferenceWeights &prefs, const EconomyParams &econ,
                      const ValidationOptions &options) {
  const RegimeClassification r = validate(prefs, econ, options);
  if (r.regime != Regime::Interior) throw NotInteriorError(r);
}

}  // namespace

bool SensitivityMatrix::available(Decision d, Weight w) const noexcept {
  return !std::isnan((*this)(d, w));
}

char sign_symbol(Sign s) noexcept {
  switch (s) {
    case Sign::Negative: return '-';
    case Sign::Zero: return '0';
    case Sign::Positive: return '+';
  }
  return '?';
}

SensitivityMatrix analytic_jacobian(const PreferenceWeights &prefs, const EconomyParams &econ,
                                    const ValidationOptions &options) {
  require_interior(prefs, econ, options);

  const double S = utility_weight_sum(prefs);
  const double S2 = S * S;
  const double w = econ.wage;
  const double tau = econ.child_cost;
  const double margin = prefs[W::Children] + prefs[W::FutureEarnings] - prefs[W::Education];

  SensitivityMatrix m;
  m.beta = w / S2;

  // x = gamma_x w / S for the four share goods.
  for (auto [decision, own] : kShareGoods) {
    for (W j : kAllWeights) {
      if (j == W::Education) {
        m(decision, j) = 0.0;
      } else if (j == own) {
        m(decision, j) = w * (S - prefs[own]) / S2;
      } else {
        m(decision, j) = -prefs[own] * w / S2;
      }
    }
  }

  // n = margin / (tau S)
  const double dn_outside = -margin / (tau * S2);
  for (W j : kOutsideWeights) m(D::Children, j) = dn_outside;
  const double dn_quantity = (S - margin) / (tau * S2);
  m(D::Children, W::Children) = dn_quantity;
  m(D::Children, W::FutureEarnings) = dn_quantity;
  m(D::Children, W::Education) = -1.0 / (tau * S);

  // e = gamma3 w tau / margin
  const double margin2 = margin * margin;
  for (W j : kOutsideWeights) m(D::Education, j) = 0.0;
  const double de_quantity = -prefs[W::Education] * w * tau / margin2;
  m(D::Education, W::Children) = de_quantity;
  m(D::Education, W::FutureEarnings) = de_quantity;
  m(D::Education, W::Education) =
      w * tau * (prefs[W::Children] + prefs[W::FutureEarnings]) / margin2;

  return m;
}

SensitivityMatrix tabulated_jacobian(const PreferenceWeights &prefs, const EconomyParams &econ,
                                     const ValidationOptions &options) {
  require_interior(prefs, econ, options);

  const double S = utility_weight_sum(prefs);
  const double w = econ.wage;
  const double tau = econ.child_cost;
  const double g2 = prefs[W::Children];
  const double g3 = prefs[W::Education];
  const double g5 = prefs[W::FutureEarnings];
  const double beta = w / (S * S);

  SensitivityMatrix m;
  m.beta = beta;

  // Share-good columns: diagonal printed as (S - (gamma_x + gamma3)) / beta^-1,
  // off-diagonals as -beta gamma_x, education row 0.
  for (auto [decision, own] : kShareGoods) {
    for (W j : kAllWeights) {
      if (j == W::Education) {
        m(decision, j) = 0.0;
      } else if (j == own) {
        m(decision, j) = (S - (prefs[own] + g3)) / (1.0 / beta);
      } else {
        m(decision, j) = -beta * prefs[own];
      }
    }
  }

  for (W j : kOutsideWeights) m(D::Children, j) = -(g2 + g5 - g3) / (tau * S * S);
  m(D::Children, W::Children) = (S - (g2 + g5)) / (tau * S * S);
  m(D::Children, W::FutureEarnings) = (S - (g2 + g5)) / (tau * S * S);
  m(D::Children, W::Education) = -1.0 / (tau * S);

  const double denom = (g2 + g5 - g3) * (g2 + g5 - g3);
  for (W j : kOutsideWeights) m(D::Education, j) = 0.0;
  m(D::Education, W::Children) = -(w * g3 * tau) / denom;
  m(D::Education, W::FutureEarnings) = -(w * g3 * tau) / denom;
  m(D::Education, W::Education) = (w * tau * (1.0 + g3)) / denom;

  return m;
}

SensitivityMatrix finite_difference_jacobian(const PreferenceWeights &prefs,
                                             const EconomyParams &econ, double h,
                                             const ValidationOptions &options) {
  if (!std::isfinite(h) || h <= 0.0) {
    throw ModelError(ErrorKind::InvalidStep,
                     fmt::format("finite-difference step must be positive, got {}", h));
  }
  require_interior(prefs, econ, options);

  ValidationOptions perturbed_options = options;
  perturbed_options.enforce_discount_range = false;

  SensitivityMatrix m;
  const double S = utility_weight_sum(prefs);
  m.beta = econ.wage / (S * S);

  for (W j : kAllWeights) {
    const double step = h * std::max(1.0, std::abs(prefs[j]));
    const PreferenceWeights up = prefs.with(j, prefs[j] + step);
    const PreferenceWeights down = prefs.with(j, prefs[j] - step);
    try {
      const Allocation hi = solve_closed_form(up, econ, perturbed_options);
      const Allocation lo = solve_closed_form(down, econ, perturbed_options);
      // Divide by the realised step, not the nominal one.
      const double span = up[j] - down[j];
      for (D d : kAllDecisions) m(d, j) = (hi[d] - lo[d]) / span;
    } catch (const ModelError &) {
      for (D d : kAllDecisions) m(d, j) = std::numeric_limits<double>::quiet_NaN();
    }
  }
  return m;
}

SignPattern sign_pattern(const SensitivityMatrix &m, double zero_tolerance) noexcept {
  SignPattern out;
  for (D d : kAllDecisions) {
    for (W j : kAllWeights) {
      const double x = m(d, j);
      Sign s = Sign::Zero;
      if (x > zero_tolerance) {
        s = Sign::Positive;
      } else if (x < -zero_tolerance) {
        s = Sign::Negative;
      }
      out.signs[index(d)][index(j)] = s;
    }
  }
  return out;
}

bool ClaimReport::all_pass() const noexcept {
  for (const auto &c : claims) {
    if (!c.pass) return false;
  }
  return !claims.empty();
}

const ClaimVerdict *ClaimReport::find(std::string_view id) const noexcept {
  for (const auto &c : claims) {
    if (c.id == id) return &c;
  }
  return nullptr;
}

namespace {

std::string cell_label(D d, W w) {
  return fmt::format("d{}/d{}", decision_symbol(d), weight_name(w));
}

/// Builds a verdict for a list of cells that must all satisfy `predicate`.
template <typename Predicate>
ClaimVerdict cells_claim(const SensitivityMatrix &m, std::string id, std::string statement,
                         std::initializer_list<std::pair<D, W>> cells, Predicate predicate) {
  ClaimVerdict v{std::move(id), std::move(statement), true, {}};
  for (auto [d, w] : cells) {
    const double x = m(d, w);
    v.witnesses.emplace_back(cell_label(d, w), x);
    v.pass = v.pass && predicate(x);
  }
  return v;
}

}  // namespace

ClaimReport verify_claims(const PreferenceWeights &prefs, const EconomyParams &econ,
                          const ValidationOptions &options) {
  const SensitivityMatrix m = analytic_jacobian(prefs, econ, options);
  const auto positive = [](double x) { return x > 0.0; };
  const auto negative = [](double x) { return x < 0.0; };
  const auto zero = [](double x) { return x == 0.0; };

  ClaimReport report;
  report.claims.push_back(cells_claim(
      m, "own_weight_positive", "each decision rises with its own utility weight",
      {{D::Consumption, W::Consumption},
       {D::Children, W::Children},
       {D::Education, W::Education},
       {D::Health, W::Health},
       {D::Savings, W::Savings},
       {D::Pension, W::Pension}},
      positive));

  report.claims.push_back(cells_claim(
      m, "education_weight_neutral", "the education weight leaves c, s, p, q unchanged",
      {{D::Consumption, W::Education},
       {D::Savings, W::Education},
       {D::Health, W::Education},
       {D::Pension, W::Education}},
      zero));

  report.claims.push_back(cells_claim(
      m, "education_independence",
      "education spending does not respond to gamma1, gamma4, gamma6, gamma7",
      {{D::Education, W::Consumption},
       {D::Education, W::Health},
       {D::Education, W::Savings},
       {D::Education, W::Pension}},
      zero));

  {
    ClaimVerdict v = cells_claim(
        m, "quantity_cross_equal",
        "dn/dgamma1 = dn/dgamma4 = dn/dgamma6, equal and negative",
        {{D::Children, W::Consumption}, {D::Children, W::Health}, {D::Children, W::Savings}},
        negative);
    const double a = m(D::Children, W::Consumption);
    v.pass = v.pass && a == m(D::Children, W::Health) && a == m(D::Children, W::Savings);
    report.claims.push_back(std::move(v));
  }

  report.claims.push_back(cells_claim(
      m, "pension_weight_crowds_out", "the pension weight lowers c, p and n",
      {{D::Consumption, W::Pension}, {D::Health, W::Pension}, {D::Children, W::Pension}},
      negative));

  report.claims.push_back(cells_claim(m, "pension_weight_cuts_savings",
                                      "the pension weight lowers private savings",
                                      {{D::Savings, W::Pension}}, negative));

  report.claims.push_back(cells_claim(m, "education_weight_cuts_children",
                                      "the education weight lowers the number of children",
                                      {{D::Children, W::Education}}, negative));

  report.claims.push_back(cells_claim(m, "children_weight_cuts_education",
                                      "the children weight lowers education per child",
                                      {{D::Education, W::Children}}, negative));

  {
    ClaimVerdict v = cells_claim(
        m, "future_earnings_reallocation",
        "the future-earnings weight lowers c, s, p, q and raises n",
        {{D::Consumption, W::FutureEarnings},
         {D::Savings, W::FutureEarnings},
         {D::Health, W::FutureEarnings},
         {D::Pension, W::FutureEarnings}},
        negative);
    const double dn = m(D::Children, W::FutureEarnings);
    v.witnesses.emplace_back(cell_label(D::Children, W::FutureEarnings), dn);
    v.pass = v.pass && dn > 0.0;
    report.claims.push_back(std::move(v));
  }

  return report;
}

std::vector<DiscrepancyRow> DiscrepancyReport::flagged() const {
  std::vector<DiscrepancyRow> out;
  for (const auto &row : rows) {
    if (row.flagged) out.push_back(row);
  }
  return out;
}

DiscrepancyReport discrepancy_report(const PreferenceWeights &prefs, const EconomyParams &econ,
                                     const Tolerances &tolerances,
                                     const ValidationOptions &options) {
  const SensitivityMatrix analytic = analytic_jacobian(prefs, econ, options);
  const SensitivityMatrix tabulated = tabulated_jacobian(prefs, econ, options);
  const SensitivityMatrix fd = finite_difference_jacobian(prefs, econ, tolerances.fd_step, options);

  DiscrepancyReport report;
  report.rows.reserve(kDecisionCount * kWeightCount);
  for (D d : kAllDecisions) {
    for (W j : kAllWeights) {
      DiscrepancyRow row{d, j, analytic(d, j), tabulated(d, j), fd(d, j), 0.0, false, "agree"};
      row.abs_diff = std::abs(row.analytic - row.tabulated);
      row.flagged = row.abs_diff > tolerances.table_match * std::max(1.0, std::abs(row.analytic));
      if (row.flagged) {
        if (!fd.available(d, j)) {
          row.verdict = "fd_unavailable";
        } else if (std::abs(row.finite_difference - row.analytic) <
                   std::abs(row.finite_difference - row.tabulated)) {
          row.verdict = "fd_sides_analytic";
        } else {
          row.verdict = "fd_sides_tabulated";
        }
      }
      report.rows.push_back(std::move(row));
    }
  }
  return report;
}

}  // namespace household
