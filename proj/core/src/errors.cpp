#include "synkit/errors.hpp"

namespace synkit {

const char* to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::shape_mismatch: return "ShapeMismatch";
    case ErrorCode::parse_error: return "ParseError";
    case ErrorCode::invalid_graph: return "InvalidGraph";
    case ErrorCode::bound_too_small: return "BoundTooSmall";
    case ErrorCode::zero_not_simple: return "ZeroNotSimple";
    case ErrorCode::not_neutrally_stable: return "NotNeutrallyStable";
    case ErrorCode::not_schur: return "NotSchur";
    case ErrorCode::not_uniform_rank_one: return "NotUniformRankOne";
    case ErrorCode::not_left_invertible: return "NotLeftInvertible";
    case ErrorCode::detectability_lost: return "DetectabilityLost";
    case ErrorCode::output_form_unreachable: return "OutputFormUnreachable";
    case ErrorCode::observer_design_failed: return "ObserverDesignFailed";
    case ErrorCode::precondition_failed: return "PreconditionFailed";
    case ErrorCode::epsilon_too_large: return "EpsilonTooLarge";
    case ErrorCode::delta_too_large: return "DeltaTooLarge";
    case ErrorCode::divergence: return "Divergence";
    case ErrorCode::spectrum_mismatch: return "SpectrumMismatch";
    case ErrorCode::not_siso: return "NotSiso";
    case ErrorCode::numeric_failure: return "NumericFailure";
  }
  return "UnknownError";
}

}  // namespace synkit
