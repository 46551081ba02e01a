#include "household/errors.hpp"
#include "household/types.hpp"

namespace household {

std::string_view to_string(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::NonPositiveParameter: return "NonPositiveParameter";
    case ErrorKind::DiscountOutOfRange: return "DiscountOutOfRange";
    case ErrorKind::NotInterior: return "NotInterior";
    case ErrorKind::NetIncomeNonPositive: return "NetIncomeNonPositive";
    case ErrorKind::NonPositiveArgument: return "NonPositiveArgument";
    case ErrorKind::InvalidStep: return "InvalidStep";
    case ErrorKind::NoFeasibleStart: return "NoFeasibleStart";
    case ErrorKind::EmptyGrid: return "EmptyGrid";
    case ErrorKind::InvalidGrid: return "InvalidGrid";
    case ErrorKind::BaseNotInterior: return "BaseNotInterior";
    case ErrorKind::InvalidArgument: return "InvalidArgument";
    case ErrorKind::IoError: return "IoError";
  }
  return "Unknown";
}

std::string_view weight_name(Weight w) noexcept {
  static constexpr std::array<std::string_view, kWeightCount> names = {
      "gamma1", "gamma2", "gamma3", "gamma4", "gamma5", "gamma6", "gamma7"};
  return names[index(w)];
}

std::string_view decision_symbol(Decision d) noexcept {
  static constexpr std::array<std::string_view, kDecisionCount> names = {"c", "n", "e",
                                                                         "p", "s", "q"};
  return names[index(d)];
}

std::string_view to_string(Regime r) noexcept {
  switch (r) {
    case Regime::Interior: return "Interior";
    case Regime::Corner: return "Corner";
    case Regime::Singular: return "Singular";
  }
  return "Unknown";
}

double Allocation::operator[](Decision d) const noexcept {
  switch (d) {
    case Decision::Consumption: return consumption;
    case Decision::Children: return children;
    case Decision::Education: return education;
    case Decision::Health: return health;
    case Decision::Savings: return savings;
    case Decision::Pension: return pension;
  }
  return 0.0;
}

double &Allocation::operator[](Decision d) noexcept {
  switch (d) {
    case Decision::Consumption: return consumption;
    case Decision::Children: return children;
    case Decision::Education: return education;
    case Decision::Health: return health;
    case Decision::Savings: return savings;
    case Decision::Pension: break;
  }
  return pension;
}

}  // namespace household
