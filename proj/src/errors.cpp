#include "paraairy/errors.hpp"

namespace paraairy {

const char* error_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::kEmpty: return "EMPTY";
    case ErrorCode::kDegenerate: return "DEGENERATE";
    case ErrorCode::kPresenceOfUuxx: return "PRESENCE_OF_UUXX";
    case ErrorCode::kUnclassified: return "UNCLASSIFIED";
    case ErrorCode::kNonpositiveGamma: return "NONPOSITIVE_GAMMA";
    case ErrorCode::kSigmaTooSmall: return "SIGMA_TOO_SMALL";
    case ErrorCode::kKSearchExhausted: return "K_SEARCH_EXHAUSTED";
    case ErrorCode::kAdmissionFailed: return "ADMISSION_FAILED";
    case ErrorCode::kNoContraction: return "NO_CONTRACTION";
    case ErrorCode::kOuterDivergence: return "OUTER_DIVERGENCE";
    case ErrorCode::kUnknownTag: return "UNKNOWN_TAG";
    case ErrorCode::kParse: return "PARSE";
    case ErrorCode::kIo: return "IO";
    case ErrorCode::kInvalidArgument: return "INVALID_ARGUMENT";
  }
  return "UNKNOWN";
}

}  // namespace paraairy
