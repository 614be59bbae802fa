#include "dqm/error.hpp"

namespace dqm {

const char* error_code_name(ErrorCode c) {
  switch (c) {
    case ErrorCode::NonDivisibleExponent: return "NonDivisibleExponent";
    case ErrorCode::NotAUnit: return "NotAUnit";
    case ErrorCode::DomainMismatch: return "DomainMismatch";
    case ErrorCode::ZeroToPrecision: return "ZeroToPrecision";
    case ErrorCode::PrecisionExhausted: return "PrecisionExhausted";
    case ErrorCode::InvalidIndex: return "InvalidIndex";
    case ErrorCode::NormalizationGateFailed: return "NormalizationGateFailed";
    case ErrorCode::RootObstruction: return "RootObstruction";
    case ErrorCode::RecursionInconsistent: return "RecursionInconsistent";
    case ErrorCode::DepthInsufficient: return "DepthInsufficient";
    case ErrorCode::NotHomogeneous: return "NotHomogeneous";
    case ErrorCode::BothEFree: return "BothEFree";
    case ErrorCode::EmptySpace: return "EmptySpace";
    case ErrorCode::NoSolutionAtBudget: return "NoSolutionAtBudget";
    case ErrorCode::ConditionViolated: return "ConditionViolated";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
  }
  return "Unknown";
}

}  // namespace dqm
