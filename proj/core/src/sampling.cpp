#include "household/sampling.hpp"

namespace household {

Instance InstanceSampler::next() {
  std::uniform_real_distribution<double> weight(0.1, 5.0);
  std::uniform_real_distribution<double> discount(0.1, 1.0);
  std::uniform_real_distribution<double> tau(0.01, 0.5);
  std::uniform_real_distribution<double> wage(0.5, 10.0);
  std::uniform_real_distribution<double> gross(0.5, 2.0);

  Instance inst;
  do {
    for (Weight w : {Weight::Consumption, Weight::Children, Weight::Education, Weight::Health}) {
      inst.prefs[w] = weight(rng_);
    }
    for (Weight w : {Weight::FutureEarnings, Weight::Savings, Weight::Pension}) {
      inst.prefs[w] = discount(rng_);
    }
  } while (inst.prefs[Weight::Children] + inst.prefs[Weight::FutureEarnings] -
               inst.prefs[Weight::Education] <=
           min_margin_);
  inst.econ.child_cost = tau(rng_);
  inst.econ.wage = wage(rng_);
  inst.econ.child_wage = gross(rng_);
  inst.econ.interest = gross(rng_);
  inst.econ.pension_interest = gross(rng_);
  return inst;
}

}  // namespace household
