#pragma once

#include <filesystem>
#include <istream>
#include <stdexcept>
#include <string>

#include "household/types.hpp"

namespace household::cli {

/// Malformed config. The message always names the file, and the line or key
/// at fault.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A model instance read from a flat `key = value` file. Required keys:
/// gamma1..gamma7, w, tau, w_next, R_next, Rp_next. Optional: tol_budget,
/// tol_fd_step. `#` starts a comment; blank lines are ignored.
struct ModelConfig {
  PreferenceWeights prefs;
  EconomyParams econ;
  Tolerances tolerances;
};

ModelConfig parse_config(std::istream &in, const std::string &source = "<config>");
ModelConfig load_config(const std::filesystem::path &path);

}  // namespace household::cli
