// Randomized invariants over interior instances. Each property runs on a
// fixed seed range so failures reproduce.
#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "household/model.hpp"
#include "household/oracle.hpp"
#include "household/sampling.hpp"
#include "household/scenario.hpp"
#include "household/statics.hpp"

namespace household {
namespace {

constexpr int kCases = 200;

ValidationOptions relaxed() {
  ValidationOptions o;
  o.enforce_discount_range = false;
  return o;
}

TEST(Properties, BudgetIdentityAndNetIncome) {
  InstanceSampler gen(1);
  for (int i = 0; i < kCases; ++i) {
    const Instance in = gen.next();
    const Allocation a = solve_closed_form(in.prefs, in.econ);
    EXPECT_LE(std::abs(budget_residual(a, in.econ)), 1e-10 * in.econ.wage);
    EXPECT_GT(1.0 - in.econ.child_cost * a.children, 0.0);
    for (Decision d : kAllDecisions) EXPECT_GT(a[d], 0.0);
  }
}

TEST(Properties, HomogeneousInWage) {
  InstanceSampler gen(2);
  for (int i = 0; i < kCases; ++i) {
    const Instance in = gen.next();
    EconomyParams scaled = in.econ;
    scaled.wage *= 3.7;
    const Allocation a = solve_closed_form(in.prefs, in.econ);
    const Allocation b = solve_closed_form(in.prefs, scaled);
    for (Decision d : {Decision::Consumption, Decision::Savings, Decision::Health,
                       Decision::Pension, Decision::Education}) {
      EXPECT_NEAR(b[d], 3.7 * a[d], 1e-12 * 3.7 * a[d]);
    }
    EXPECT_EQ(b.children, a.children);
  }
}

TEST(Properties, WeightScaleInvariance) {
  InstanceSampler gen(3);
  for (int i = 0; i < kCases; ++i) {
    const Instance in = gen.next();
    const Allocation a = solve_closed_form(in.prefs, in.econ);
    for (double k : {0.5, 2.0, 10.0}) {
      const Allocation b = solve_closed_form(in.prefs.scaled(k), in.econ, relaxed());
      for (Decision d : kAllDecisions) EXPECT_NEAR(b[d], a[d], 1e-12 * a[d]);
    }
  }
}

TEST(Properties, ShareStructure) {
  InstanceSampler gen(4);
  for (int i = 0; i < kCases; ++i) {
    const Instance in = gen.next();
    const Allocation a = solve_closed_form(in.prefs, in.econ);
    const double unit = a.consumption / in.prefs[Weight::Consumption];
    EXPECT_NEAR(a.savings / in.prefs[Weight::Savings], unit, 1e-14 * unit);
    EXPECT_NEAR(a.health / in.prefs[Weight::Health], unit, 1e-14 * unit);
    EXPECT_NEAR(a.pension / in.prefs[Weight::Pension], unit, 1e-14 * unit);
  }
}

TEST(Properties, ClosedFormBeatsFeasiblePerturbations) {
  InstanceSampler gen(5);
  std::mt19937_64 rng(55);
  std::uniform_real_distribution<double> unit(-1.0, 1.0);
  for (int i = 0; i < kCases; ++i) {
    const Instance in = gen.next();
    const Allocation best = solve_closed_form(in.prefs, in.econ);
    const double u_best = evaluate_utility(best, in.prefs, in.econ);
    for (int trial = 0; trial < 10; ++trial) {
      Allocation a = best;
      for (Decision d : {Decision::Consumption, Decision::Savings, Decision::Health,
                         Decision::Pension, Decision::Children}) {
        a[d] *= 1.0 + 1e-3 * unit(rng);
      }
      // Education absorbs the rest of the budget.
      a.education = (in.econ.wage * (1.0 - in.econ.child_cost * a.children) - a.consumption -
                     a.savings - a.health - a.pension) /
                    a.children;
      ASSERT_GT(a.education, 0.0);
      EXPECT_LE(std::abs(budget_residual(a, in.econ)), 1e-12 * in.econ.wage);
      EXPECT_GE(u_best, evaluate_utility(a, in.prefs, in.econ));
    }
  }
}

TEST(Properties, FocRatioChain) {
  InstanceSampler gen(6);
  for (int i = 0; i < kCases; ++i) {
    const Instance in = gen.next();
    const Allocation a = solve_closed_form(in.prefs, in.econ);
    const double lambda = utility_weight_sum(in.prefs) / in.econ.wage;
    const double tol = 1e-13 * lambda;
    EXPECT_NEAR(in.prefs[Weight::Consumption] / a.consumption, lambda, tol);
    EXPECT_NEAR(in.prefs[Weight::Health] / a.health, lambda, tol);
    EXPECT_NEAR(in.prefs[Weight::Savings] / a.savings, lambda, tol);
    EXPECT_NEAR(in.prefs[Weight::Pension] / a.pension, lambda, tol);
    EXPECT_LE(foc_residuals(a, in.prefs, in.econ).max_abs(), 1e-9);
  }
}

TEST(Properties, JacobianMatchesFiniteDifferences) {
  InstanceSampler gen(7);
  for (int i = 0; i < kCases; ++i) {
    const Instance in = gen.next();
    const SensitivityMatrix an = analytic_jacobian(in.prefs, in.econ);
    const SensitivityMatrix fd = finite_difference_jacobian(in.prefs, in.econ, 1e-6);
    for (Decision d : kAllDecisions) {
      for (Weight w : kAllWeights) {
        ASSERT_TRUE(fd.available(d, w));
        EXPECT_NEAR(fd(d, w), an(d, w), 1e-5 * std::max(1.0, std::abs(an(d, w))))
            << "case " << i << " " << decision_symbol(d) << "/" << weight_name(w);
      }
    }
  }
}

TEST(Properties, ChildrenCrossSensitivitiesIdentical) {
  InstanceSampler gen(8);
  for (int i = 0; i < kCases; ++i) {
    const Instance in = gen.next();
    const SensitivityMatrix m = analytic_jacobian(in.prefs, in.econ);
    const double x = m(Decision::Children, Weight::Consumption);
    EXPECT_LT(x, 0.0);
    EXPECT_EQ(m(Decision::Children, Weight::Health), x);
    EXPECT_EQ(m(Decision::Children, Weight::Savings), x);
    EXPECT_EQ(m(Decision::Children, Weight::Pension), x);
  }
}

TEST(Properties, SignPatternStableAndClaimsHold) {
  const EconomyParams e{1.0, 0.1, 1.0, 1.0, 1.0};
  const SignPattern reference =
      sign_pattern(analytic_jacobian(PreferenceWeights::uniform(1.0), e));
  InstanceSampler gen(9);
  for (int i = 0; i < kCases; ++i) {
    const Instance in = gen.next();
    EXPECT_EQ(sign_pattern(analytic_jacobian(in.prefs, in.econ)), reference) << "case " << i;
    const ClaimReport claims = verify_claims(in.prefs, in.econ);
    for (const auto &c : claims.claims) EXPECT_TRUE(c.pass) << "case " << i << " " << c.id;
  }
}

TEST(Properties, ChildrenDiagonalPositiveInCorrectedForm) {
  InstanceSampler gen(10);
  for (int i = 0; i < kCases; ++i) {
    const Instance in = gen.next();
    const SensitivityMatrix m = analytic_jacobian(in.prefs, in.econ);
    const double S = utility_weight_sum(in.prefs);
    const double margin = in.prefs[Weight::Children] + in.prefs[Weight::FutureEarnings] -
                          in.prefs[Weight::Education];
    const double expected = (S - margin) / (in.econ.child_cost * S * S);
    EXPECT_NEAR(m(Decision::Children, Weight::Children), expected, 1e-14 * expected);
    EXPECT_GT(m(Decision::Children, Weight::Children), 0.0);
  }
}

TEST(Properties, OracleAgreesWithClosedForm) {
  InstanceSampler gen(11);
  for (int i = 0; i < 100; ++i) {
    const Instance in = gen.next();
    const CrossValidation cv = cross_validate(in.prefs, in.econ);
    EXPECT_TRUE(cv.pass) << "case " << i << " gap " << cv.max_component_gap << " residual "
                         << cv.max_residual_numerical;
    EXPECT_LE(cv.utility_gap, 1e-10);
    const auto &trace = cv.numerical.trace;
    for (std::size_t k = 1; k < trace.size(); ++k) EXPECT_GE(trace[k], trace[k - 1]);
  }
}

TEST(Properties, SweepTrendsFollowJacobianSigns) {
  InstanceSampler gen(12);
  for (int i = 0; i < 50; ++i) {
    const Instance in = gen.next();
    for (Weight w : kAllWeights) {
      const double g = in.prefs[w];
      SweepSpec spec{in.prefs, in.econ, from_weight(w), linear_grid(0.8 * g, 1.2 * g, 5),
                     relaxed()};
      const ScenarioResult r = run_sweep(spec);
      for (const auto &v : r.verdicts) {
        if (v.observed == Trend::Undetermined) continue;
        EXPECT_TRUE(v.matches()) << "case " << i << " " << weight_name(w) << " "
                                 << decision_symbol(v.decision);
      }
      for (const auto &row : r.rows) {
        if (row.interior()) EXPECT_TRUE(on_budget(*row.allocation, in.econ));
      }
    }
  }
}

TEST(Properties, SweepIndependentOfEvaluationOrder) {
  // Rows are pure functions of their grid value: evaluating one point alone
  // yields the same row as evaluating it within the full grid.
  InstanceSampler gen(13);
  const Instance in = gen.next();
  SweepSpec full{in.prefs, in.econ, Parameter::Tau, linear_grid(0.05, 0.45, 9)};
  const ScenarioResult all = run_sweep(full);
  for (std::size_t k = 0; k < full.grid.size(); ++k) {
    SweepSpec single = full;
    single.grid = {full.grid[k]};
    const ScenarioResult one = run_sweep(single);
    ASSERT_TRUE(one.rows[0].interior());
    for (Decision d : kAllDecisions) {
      EXPECT_EQ((*one.rows[0].allocation)[d], (*all.rows[k].allocation)[d]);
    }
  }
}

}  // namespace
}  // namespace household
