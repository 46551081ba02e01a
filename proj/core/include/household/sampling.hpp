#pragma once

#include <cstdint>
#include <random>

#include "household/types.hpp"

namespace household {

struct Instance {
  PreferenceWeights prefs;
  EconomyParams econ;
};

/// Draws interior instances for randomized verification: gamma1..gamma4 in
/// [0.1, 5], discount weights gamma5..gamma7 in [0.1, 1], tau in [0.01, 0.5],
/// w in [0.5, 10], and w_next, R_next, Rp_next in [0.5, 2]. Draws with
/// gamma2 + gamma5 - gamma3 <= min_margin are rejected.
class InstanceSampler {
 public:
  explicit InstanceSampler(std::uint64_t seed, double min_margin = 1e-3)
      : rng_(seed), min_margin_(min_margin) {}

  Instance next();

 private:
  std::mt19937_64 rng_;
  double min_margin_;
};

}  // namespace household
