#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <ostream>
#include <string>

namespace household::cli {

/// Process exit codes. Stable across versions.
enum ExitCode : int {
  kExitOk = 0,
  kExitUsage = 1,           // bad flags, unreadable or invalid config
  kExitNotInterior = 2,     // Corner or Singular instance
  kExitVerifyFailed = 3,    // cross-validation or claim check failed
  kExitVerdictMismatch = 4, // sweep trend disagrees with the predicted sign
};

struct StaticsOptions {
  bool table = false;  // also print the tabulated matrix and discrepancy audit
  bool signs = false;  // also print the sign pattern and claim report
};

struct VerifyOptions {
  std::size_t seeds = 100;
  std::uint64_t seed = 42;
  double tol = 1e-10;
  /// Test hook: perturb the closed form before comparing it with the oracle.
  bool inject_fault = false;
};

struct SweepOptions {
  std::optional<std::string> param;
  std::optional<double> from;
  std::optional<double> to;
  std::optional<std::size_t> steps;
  std::filesystem::path out;
  std::optional<std::string> scenario;  // crowd_out | qq_frontier | future_earnings
  bool relax_discount = false;
};

int cmd_solve(const std::filesystem::path &config, std::ostream &out, std::ostream &err);
int cmd_statics(const std::filesystem::path &config, const StaticsOptions &options,
                std::ostream &out, std::ostream &err);
int cmd_verify(const std::filesystem::path &config, const VerifyOptions &options,
               std::ostream &out, std::ostream &err);
int cmd_sweep(const std::filesystem::path &config, const SweepOptions &options,
              std::ostream &out, std::ostream &err);

/// Parses argv and dispatches to a command.
int run(int argc, const char *const *argv, std::ostream &out, std::ostream &err);

}  // namespace household::cli
