#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace household {

enum class ErrorKind {
  NonPositiveParameter,
  DiscountOutOfRange,
  NotInterior,
  NetIncomeNonPositive,
  NonPositiveArgument,
  InvalidStep,
  NoFeasibleStart,
  EmptyGrid,
  InvalidGrid,
  BaseNotInterior,
  InvalidArgument,
  IoError,
};

std::string_view to_string(ErrorKind kind) noexcept;

/// Base exception for every failure raised by the model library. The kind
/// is stable and is what callers (and the CLI exit-code mapping) switch on.
class ModelError : public std::runtime_error {
 public:
  ModelError(ErrorKind kind, const std::string &what)
      : std::runtime_error(what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace household
