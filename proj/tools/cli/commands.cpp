#include "cli/commands.hpp"

#include <CLI11.hpp>
#include <fmt/format.h>
#include <fmt/ostream.h>

#include <algorithm>
#include <sstream>

#include "cli/config.hpp"
#include "household/model.hpp"
#include "household/oracle.hpp"
#include "household/sampling.hpp"
#include "household/scenario.hpp"
#include "household/statics.hpp"

namespace household::cli {

namespace {

std::string num(double x) { return fmt::format("{:.6g}", x); }

/// Runs a command body and maps failures onto exit codes.
template <typename Body>
int guarded(std::ostream &err, Body &&body) {
  try {
    return body();
  } catch (const ConfigError &e) {
    fmt::print(err, "error: {}\n", e.what());
    return kExitUsage;
  } catch (const NotInteriorError &e) {
    fmt::print(err, "error: {}\n", e.what());
    return kExitNotInterior;
  } catch (const ModelError &e) {
    fmt::print(err, "error: {}: {}\n", to_string(e.kind()), e.what());
    return e.kind() == ErrorKind::BaseNotInterior ? kExitNotInterior : kExitUsage;
  } catch (const std::exception &e) {
    fmt::print(err, "error: {}\n", e.what());
    return kExitUsage;
  }
}

void print_matrix(std::ostream &out, const SensitivityMatrix &m) {
  fmt::print(out, "{:>4}", "");
  for (Weight w : kAllWeights) fmt::print(out, " {:>13}", weight_name(w));
  fmt::print(out, "\n");
  for (Decision d : kAllDecisions) {
    fmt::print(out, "{:>4}", decision_symbol(d));
    for (Weight w : kAllWeights) {
      fmt::print(out, " {:>13}", m.available(d, w) ? num(m(d, w)) : std::string("n/a"));
    }
    fmt::print(out, "\n");
  }
}

void print_signs(std::ostream &out, const SignPattern &p) {
  fmt::print(out, "{:>4}", "");
  for (Weight w : kAllWeights) fmt::print(out, " {:>7}", weight_name(w));
  fmt::print(out, "\n");
  for (Decision d : kAllDecisions) {
    fmt::print(out, "{:>4}", decision_symbol(d));
    for (Weight w : kAllWeights) fmt::print(out, " {:>7}", sign_symbol(p(d, w)));
    fmt::print(out, "\n");
  }
}

}  // namespace

int cmd_solve(const std::filesystem::path &config, std::ostream &out, std::ostream &err) {
  return guarded(err, [&] {
    const ModelConfig cfg = load_config(config);
    const RegimeClassification regime = validate(cfg.prefs, cfg.econ);
    fmt::print(out, "regime: {} (gamma2 + gamma5 - gamma3 = {})\n", to_string(regime.regime),
               num(regime.mqqt_margin));
    if (regime.regime != Regime::Interior) {
      fmt::print(err, "error: {} regime has no interior allocation\n",
                 to_string(regime.regime));
      return static_cast<int>(kExitNotInterior);
    }
    const Allocation a = solve_closed_form(cfg.prefs, cfg.econ);
    fmt::print(out, "utility weight sum S = {}\n\n", num(utility_weight_sum(cfg.prefs)));
    fmt::print(out, "{:<10} {:>13}\n", "decision", "value");
    for (Decision d : {Decision::Consumption, Decision::Savings, Decision::Health,
                       Decision::Pension, Decision::Children, Decision::Education}) {
      fmt::print(out, "{:<10} {:>13}\n", decision_symbol(d), num(a[d]));
    }
    const double residual = budget_residual(a, cfg.econ);
    fmt::print(out, "\nutility: {}\n", num(evaluate_utility(a, cfg.prefs, cfg.econ)));
    fmt::print(out, "budget residual: {} ({})\n", num(residual),
               on_budget(a, cfg.econ, cfg.tolerances.budget) ? "on budget" : "OFF BUDGET");
    return static_cast<int>(kExitOk);
  });
}

int cmd_statics(const std::filesystem::path &config, const StaticsOptions &options,
                std::ostream &out, std::ostream &err) {
  return guarded(err, [&] {
    const ModelConfig cfg = load_config(config);
    const RegimeClassification regime = validate(cfg.prefs, cfg.econ);
    if (regime.regime != Regime::Interior) throw NotInteriorError(regime);

    const SensitivityMatrix analytic = analytic_jacobian(cfg.prefs, cfg.econ);
    fmt::print(out, "analytic sensitivities d(decision)/d(weight), beta = w/S^2 = {}\n",
               num(analytic.beta));
    print_matrix(out, analytic);
    int code = kExitOk;

    if (options.table) {
      fmt::print(out, "\ntabulated sensitivities (published formulas)\n");
      print_matrix(out, tabulated_jacobian(cfg.prefs, cfg.econ));
      const DiscrepancyReport report = discrepancy_report(cfg.prefs, cfg.econ, cfg.tolerances);
      const auto flagged = report.flagged();
      fmt::print(out, "\ndiscrepancies: {} of {} cells\n", flagged.size(), report.rows.size());
      if (!flagged.empty()) {
        fmt::print(out, "{:<12} {:>13} {:>13} {:>13} {:>13}  {}\n", "cell", "analytic",
                   "tabulated", "finite-diff", "|diff|", "verdict");
      }
      for (const auto &row : flagged) {
        fmt::print(out, "{:<12} {:>13} {:>13} {:>13} {:>13}  {}\n",
                   fmt::format("({},{})", decision_symbol(row.decision), weight_name(row.weight)),
                   num(row.analytic), num(row.tabulated), num(row.finite_difference),
                   num(row.abs_diff), row.verdict);
      }
    }

    if (options.signs) {
      fmt::print(out, "\nsign pattern\n");
      print_signs(out, sign_pattern(analytic));
      const ClaimReport claims = verify_claims(cfg.prefs, cfg.econ);
      fmt::print(out, "\nclaims\n");
      for (const auto &c : claims.claims) {
        fmt::print(out, "{:<32} {}  {}\n", c.id, c.pass ? "PASS" : "FAIL", c.statement);
      }
      if (!claims.all_pass()) code = kExitVerifyFailed;
    }
    return code;
  });
}

int cmd_verify(const std::filesystem::path &config, const VerifyOptions &options,
               std::ostream &out, std::ostream &err) {
  return guarded(err, [&] {
    const ModelConfig cfg = load_config(config);
    const RegimeClassification regime = validate(cfg.prefs, cfg.econ);
    if (regime.regime != Regime::Interior) throw NotInteriorError(regime);

    ClosedFormSolver solver;
    if (options.inject_fault) {
      solver = [](const PreferenceWeights &p, const EconomyParams &e) {
        Allocation a = solve_closed_form(p, e);
        a.consumption *= 1.01;
        return a;
      };
    }
    const OracleOptions oracle{options.tol};
    const ValidationOptions validation{};

    std::size_t passed = 0;
    std::size_t total = 0;
    double worst_gap = 0.0, worst_residual = 0.0, worst_utility = 0.0;
    const auto check = [&](const std::string &label, const PreferenceWeights &p,
                           const EconomyParams &e, bool verbose) {
      const CrossValidation cv = cross_validate(p, e, oracle, validation, solver);
      ++total;
      passed += cv.pass ? 1 : 0;
      worst_gap = std::max(worst_gap, cv.max_component_gap);
      worst_residual = std::max({worst_residual, cv.max_residual_closed_form,
                                 cv.max_residual_numerical});
      worst_utility = std::max(worst_utility, cv.utility_gap);
      if (verbose || !cv.pass) {
        fmt::print(out,
                   "{}: {} (component gap {}, utility gap {}, residual closed-form {}, "
                   "numerical {}, cycles {})\n",
                   label, cv.pass ? "PASS" : "FAIL", num(cv.max_component_gap),
                   num(cv.utility_gap), num(cv.max_residual_closed_form),
                   num(cv.max_residual_numerical), cv.numerical.iterations);
      }
    };

    check("config", cfg.prefs, cfg.econ, true);
    for (std::size_t k = 0; k < options.seeds; ++k) {
      InstanceSampler sampler(options.seed + k);
      const Instance inst = sampler.next();
      check(fmt::format("seed {}", options.seed + k), inst.prefs, inst.econ, false);
    }

    fmt::print(out,
               "\n{} of {} instances PASS (thresholds: component gap {}, residual {})\n"
               "max component gap {}, max utility gap {}, max residual {}\n",
               passed, total, num(kCrossValidationGap), num(kCrossValidationResidual),
               num(worst_gap), num(worst_utility), num(worst_residual));
    return passed == total ? static_cast<int>(kExitOk) : static_cast<int>(kExitVerifyFailed);
  });
}

namespace {

struct ScenarioDefaults {
  Parameter param;
  double from;
  double to;
  std::size_t steps;
};

std::optional<ScenarioDefaults> scenario_defaults(std::string_view scenario,
                                                  std::optional<Parameter> requested) {
  if (scenario == "crowd_out") return ScenarioDefaults{Parameter::Gamma7, 0.1, 1.0, 10};
  if (scenario == "future_earnings") return ScenarioDefaults{Parameter::Gamma5, 0.2, 1.0, 5};
  if (scenario == "qq_frontier") {
    if (requested == Parameter::Gamma2) return ScenarioDefaults{Parameter::Gamma2, 0.5, 2.0, 7};
    return ScenarioDefaults{Parameter::Gamma3, 0.2, 1.8, 9};
  }
  return std::nullopt;
}

}  // namespace

int cmd_sweep(const std::filesystem::path &config, const SweepOptions &options,
              std::ostream &out, std::ostream &err) {
  return guarded(err, [&] {
    std::optional<Parameter> param;
    if (options.param) {
      param = parse_parameter(*options.param);
      if (!param) {
        fmt::print(err, "error: --param: unknown parameter '{}' (expected gamma1..gamma7, tau, w)\n",
                   *options.param);
        return static_cast<int>(kExitUsage);
      }
    }

    double from = 0.0, to = 0.0;
    std::size_t steps = 0;
    if (options.scenario) {
      const auto defaults = scenario_defaults(*options.scenario, param);
      if (!defaults) {
        fmt::print(err, "error: --scenario: unknown scenario '{}' (expected crowd_out, "
                        "qq_frontier, future_earnings)\n",
                   *options.scenario);
        return static_cast<int>(kExitUsage);
      }
      if (param && *param != defaults->param) {
        fmt::print(err, "error: --param {} does not match scenario {} (sweeps {})\n",
                   *options.param, *options.scenario, parameter_name(defaults->param));
        return static_cast<int>(kExitUsage);
      }
      param = defaults->param;
      from = options.from.value_or(defaults->from);
      to = options.to.value_or(defaults->to);
      steps = options.steps.value_or(defaults->steps);
    } else {
      if (!param || !options.from || !options.to || !options.steps) {
        fmt::print(err, "error: sweep needs --param, --from, --to and --steps (or --scenario)\n");
        return static_cast<int>(kExitUsage);
      }
      from = *options.from;
      to = *options.to;
      steps = *options.steps;
    }
    if (steps < 2) {
      fmt::print(err, "error: --steps must be at least 2, got {}\n", steps);
      return static_cast<int>(kExitUsage);
    }
    if (!(from > 0.0) || !(to > from)) {
      fmt::print(err, "error: --from/--to must satisfy 0 < from < to, got {} and {}\n", from, to);
      return static_cast<int>(kExitUsage);
    }

    const ModelConfig cfg = load_config(config);
    ValidationOptions validation;
    validation.enforce_discount_range = !options.relax_discount;
    std::vector<double> grid = linear_grid(from, to, steps);

    ScenarioResult result;
    const std::string scenario = options.scenario.value_or("");
    if (scenario == "crowd_out") {
      result = crowd_out_analysis(cfg.prefs, cfg.econ, std::move(grid), validation);
    } else if (scenario == "qq_frontier") {
      result = quantity_quality_frontier(cfg.prefs, cfg.econ, *as_weight(*param),
                                         std::move(grid), validation);
    } else if (scenario == "future_earnings") {
      result = future_earnings_scenario(cfg.prefs, cfg.econ, std::move(grid));
    } else {
      SweepSpec spec{cfg.prefs, cfg.econ, *param, std::move(grid), validation};
      spec.budget_tolerance = cfg.tolerances.budget;
      result = run_sweep(spec);
    }

    export_csv(result, options.out);

    fmt::print(out, "{} over {} = {} .. {} ({} points, {} skipped) -> {}\n", result.name,
               parameter_name(result.swept), num(from), num(to), steps, result.skipped(),
               options.out.string());
    for (const auto &row : result.rows) {
      if (!row.interior()) fmt::print(out, "  skipped {} = {}: {}\n",
                                      parameter_name(result.swept), num(row.value), row.regime);
    }
    for (Decision d : {Decision::Consumption, Decision::Savings, Decision::Health,
                       Decision::Pension, Decision::Children, Decision::Education}) {
      const TrendVerdict *v = result.verdict(d);
      if (v == nullptr) continue;
      std::string mark;
      if (v->expected && v->observed != Trend::Undetermined) {
        mark = v->matches() ? " ✓" : fmt::format(" ✗ (expected {})", to_string(*v->expected));
      }
      fmt::print(out, "{}: {}{}\n", decision_symbol(d), to_string(v->observed), mark);
    }
    if (result.swept == Parameter::Gamma7 && scenario == "crowd_out") {
      for (const auto &row : result.rows) {
        if (row.interior()) {
          fmt::print(out, "  ds/dgamma7 at {} = {}\n", num(row.value),
                     num(row.sensitivity[index(Decision::Savings)]));
        }
      }
    }
    return result.all_verdicts_match() ? static_cast<int>(kExitOk)
                                       : static_cast<int>(kExitVerdictMismatch);
  });
}

int run(int argc, const char *const *argv, std::ostream &out, std::ostream &err) {
  CLI::App app{"Household resource allocation: closed-form optima, comparative statics, "
               "numerical verification and parameter sweeps"};
  app.require_subcommand(1);

  std::string config;
  auto *solve = app.add_subcommand("solve", "Optimal allocation for a config instance");
  solve->add_option("config", config, "Model config file")->required();

  StaticsOptions statics_opts;
  auto *statics = app.add_subcommand("statics", "Sensitivities of the optimum to the weights");
  statics->add_option("config", config, "Model config file")->required();
  statics->add_flag("--table1", statics_opts.table,
                    "Also print the published table and the discrepancy audit");
  statics->add_flag("--signs", statics_opts.signs, "Also print sign pattern and claim checks");

  VerifyOptions verify_opts;
  auto *verify = app.add_subcommand("verify", "Cross-check the closed form against a numerical optimiser");
  verify->add_option("config", config, "Model config file")->required();
  verify->add_option("--seeds", verify_opts.seeds, "Randomized instances besides the config")
      ->capture_default_str();
  verify->add_option("--seed", verify_opts.seed, "Base seed for randomized instances")
      ->capture_default_str();
  verify->add_option("--tol", verify_opts.tol, "Oracle utility tolerance")->capture_default_str();
  verify->add_flag("--inject-fault", verify_opts.inject_fault)->group("");

  SweepOptions sweep_opts;
  std::string out_path;
  auto *sweep = app.add_subcommand("sweep", "Sweep one parameter and write CSV");
  sweep->add_option("config", config, "Model config file")->required();
  sweep->add_option("--param", sweep_opts.param, "gamma1..gamma7, tau or w");
  sweep->add_option("--from", sweep_opts.from, "First grid value");
  sweep->add_option("--to", sweep_opts.to, "Last grid value");
  sweep->add_option("--steps", sweep_opts.steps, "Number of grid points (>= 2)");
  sweep->add_option("--out", out_path, "CSV output file")->required();
  sweep->add_option("--scenario", sweep_opts.scenario,
                    "crowd_out, qq_frontier or future_earnings");
  sweep->add_flag("--relax-discount", sweep_opts.relax_discount,
                  "Allow gamma5..gamma7 above 1 at grid points");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp &e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError &e) {
    app.exit(e, out, err);
    return kExitUsage;
  }

  if (*solve) return cmd_solve(config, out, err);
  if (*statics) return cmd_statics(config, statics_opts, out, err);
  if (*verify) return cmd_verify(config, verify_opts, out, err);
  sweep_opts.out = out_path;
  return cmd_sweep(config, sweep_opts, out, err);
}

}  // namespace household::cli
