#include "cli/config.hpp"

#include <array>
#include <charconv>
#include <fstream>
#include <map>
#include <optional>

#include <fmt/format.h>

namespace household::cli {

namespace {

struct KeySpec {
  std::string_view name;
  bool required;
};

constexpr std::array<KeySpec, 14> kKeys = {{
    {"gamma1", true}, {"gamma2", true}, {"gamma3", true}, {"gamma4", true},
    {"gamma5", true}, {"gamma6", true}, {"gamma7", true}, {"w", true},
    {"tau", true},    {"w_next", true}, {"R_next", true}, {"Rp_next", true},
    {"tol_budget", false}, {"tol_fd_step", false},
}};

bool known_key(std::string_view key) {
  for (const auto &k : kKeys) {
    if (k.name == key) return true;
  }
  return false;
}

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

std::optional<double> parse_number(std::string_view text) {
  double value = 0.0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc{} || ptr != text.data() + text.size()) return std::nullopt;
  return value;
}

}  // namespace

ModelConfig parse_config(std::istream &in, const std::string &source) {
  struct Entry {
    double value;
    int line;
  };
  std::map<std::string, Entry, std::less<>> entries;

  std::string raw;
  int line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    std::string_view line = raw;
    if (const auto hash = line.find('#'); hash != std::string_view::npos) {
      line = line.substr(0, hash);
    }
    line = trim(line);
    if (line.empty()) continue;

    const auto eq = line.find('=');
    if (eq == std::string_view::npos) {
      throw ConfigError(fmt::format("{}:{}: expected `key = value`, got '{}'", source, line_no,
                                    line));
    }
    const std::string_view key = trim(line.substr(0, eq));
    const std::string_view text = trim(line.substr(eq + 1));
    if (key.empty()) {
      throw ConfigError(fmt::format("{}:{}: missing key before '='", source, line_no));
    }
    if (!known_key(key)) {
      throw ConfigError(fmt::format("{}:{}: unknown key '{}'", source, line_no, key));
    }
    if (auto it = entries.find(key); it != entries.end()) {
      throw ConfigError(fmt::format("{}:{}: duplicate key '{}' (first set on line {})", source,
                                    line_no, key, it->second.line));
    }
    const auto value = parse_number(text);
    if (!value) {
      throw ConfigError(fmt::format("{}:{}: value for '{}' is not a number: '{}'", source,
                                    line_no, key, text));
    }
    entries.emplace(std::string(key), Entry{*value, line_no});
  }

  for (const auto &k : kKeys) {
    if (k.required && !entries.contains(k.name)) {
      throw ConfigError(fmt::format("{}: missing required key '{}'", source, k.name));
    }
  }

  ModelConfig cfg;
  for (Weight w : kAllWeights) cfg.prefs[w] = entries.find(weight_name(w))->second.value;
  cfg.econ.wage = entries.find("w")->second.value;
  cfg.econ.child_cost = entries.find("tau")->second.value;
  cfg.econ.child_wage = entries.find("w_next")->second.value;
  cfg.econ.interest = entries.find("R_next")->second.value;
  cfg.econ.pension_interest = entries.find("Rp_next")->second.value;

  if (auto it = entries.find("tol_budget"); it != entries.end()) {
    if (!(it->second.value > 0.0)) {
      throw ConfigError(fmt::format("{}:{}: tol_budget must be positive", source,
                                    it->second.line));
    }
    cfg.tolerances.budget = it->second.value;
  }
  if (auto it = entries.find("tol_fd_step"); it != entries.end()) {
    if (!(it->second.value > 0.0)) {
      throw ConfigError(fmt::format("{}:{}: tol_fd_step must be positive", source,
                                    it->second.line));
    }
    cfg.tolerances.fd_step = it->second.value;
  }
  return cfg;
}

ModelConfig load_config(const std::filesystem::path &path) {
  std::ifstream in(path);
  if (!in) throw ConfigError(fmt::format("{}: cannot open config file", path.string()));
  return parse_config(in, path.string());
}

}  // namespace household::cli
