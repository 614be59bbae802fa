#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace dqm {

enum class ErrorCode {
  NonDivisibleExponent,
  NotAUnit,
  DomainMismatch,
  ZeroToPrecision,
  PrecisionExhausted,
  InvalidIndex,
  NormalizationGateFailed,
  RootObstruction,
  RecursionInconsistent,
  DepthInsufficient,
  NotHomogeneous,
  BothEFree,
  EmptySpace,
  NoSolutionAtBudget,
  ConditionViolated,
  InvalidArgument,
};

const char* error_code_name(ErrorCode c);

/// All recoverable failures of the library are reported through this type.
/// `precision()` is only meaningful for ZeroToPrecision.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what, std::size_t precision = 0)
      : std::runtime_error(std::string(error_code_name(code)) + ": " + what),
        code_(code),
        precision_(precision) {}

  ErrorCode code() const noexcept { return code_; }
  std::size_t precision() const noexcept { return precision_; }

 private:
  ErrorCode code_;
  std::size_t precision_;
};

}  // namespace dqm
