#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace saatsp {

enum class ErrorKind {
  BadSpec,
  ParseError,
  NotStronglyConnected,
  NegativeWeight,
  InvalidDecomposition,
  DegreeTooHigh,
  AmbiguousCycles,
  NotFractional,
  BadParams,
  TooLargeToEnumerate,
  Infeasible,
  Unbounded,
  SupportViolation,
  OutOfLevel,
  LevelMismatch,
  ZeroLevel,
  WitnessTooSmall,
  NoGoodTours,
  NotUnitPath,
  TooLarge,
};

std::string_view error_kind_name(ErrorKind kind);

/// Single exception type for the library; callers dispatch on kind().
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message)
      : std::runtime_error(std::string(error_kind_name(kind)) + ": " + message), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace saatsp
