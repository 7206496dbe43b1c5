// SPDX-License-Identifier: Apache-2.0
#include "helmres/errors.hpp"

namespace helmres {

const char* to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::LossOfPrecision: return "LossOfPrecision";
    case ErrorCode::ContourFailure: return "ContourFailure";
    case ErrorCode::NoConvergence: return "NoConvergence";
    case ErrorCode::Overflow: return "Overflow";
    case ErrorCode::PoleProximity: return "PoleProximity";
    case ErrorCode::DegenerateInput: return "DegenerateInput";
    case ErrorCode::NoRoot: return "NoRoot";
    case ErrorCode::EstimatorDisagreement: return "EstimatorDisagreement";
    case ErrorCode::IterationDivergence: return "IterationDivergence";
    case ErrorCode::MonteCarloVariance: return "MonteCarloVariance";
    case ErrorCode::InsufficientData: return "InsufficientData";
  }
  return "UnknownError";
}

}  // namespace helmres
