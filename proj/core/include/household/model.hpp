#pragma once

#include "household/errors.hpp"
#include "household/types.hpp"

namespace household {

/// Raised by solve_closed_form (and everything built on it) for Corner and
/// Singular instances. Carries the classification that caused the refusal.
class NotInteriorError : public ModelError {
 public:
  explicit NotInteriorError(const RegimeClassification &classification);

  const RegimeClassification &classification() const noexcept { return classification_; }

 private:
  RegimeClassification classification_;
};

/// Checks admissibility and classifies the regime by the sign of
/// gamma2 + gamma5 - gamma3.
///
/// Throws ModelError(NonPositiveParameter) for any non-positive or non-finite
/// weight or economy parameter, and ModelError(DiscountOutOfRange) when
/// gamma5..gamma7 exceed 1 and the range is enforced.
RegimeClassification validate(const PreferenceWeights &prefs, const EconomyParams &econ,
                              const ValidationOptions &options = {});

/// Sum of all weights except the education weight gamma3.
double utility_weight_sum(const PreferenceWeights &prefs) noexcept;

/// Optimal interior allocation. Throws NotInteriorError outside the interior
/// and ModelError(NetIncomeNonPositive) if 1 - tau * n <= 0.
Allocation solve_closed_form(const PreferenceWeights &prefs, const EconomyParams &econ,
                             const ValidationOptions &options = {});

/// Lifetime utility of an allocation. Throws ModelError(NonPositiveArgument)
/// if any log argument is not strictly positive.
double evaluate_utility(const Allocation &alloc, const PreferenceWeights &prefs,
                        const EconomyParams &econ);

/// w(1 - tau n) - (c + s + e n + p + q). Positive means slack.
double budget_residual(const Allocation &alloc, const EconomyParams &econ) noexcept;

/// |budget_residual| <= tolerance * w.
bool on_budget(const Allocation &alloc, const EconomyParams &econ,
               double tolerance = Tolerances{}.budget) noexcept;

/// Throws ModelError(NetIncomeNonPositive) when 1 - tau * children <= 0.
void require_positive_net_income(double children, const EconomyParams &econ);

}  // namespace household
