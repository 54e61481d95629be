#pragma once

#include <stdexcept>
#include <string>

namespace paraairy {

enum class ErrorCode {
  kEmpty,
  kDegenerate,
  kPresenceOfUuxx,
  kUnclassified,
  kNonpositiveGamma,
  kSigmaTooSmall,
  kKSearchExhausted,
  kAdmissionFailed,
  kNoContraction,
  kOuterDivergence,
  kUnknownTag,
  kParse,
  kIo,
  kInvalidArgument,
};

const char* error_name(ErrorCode code);

class SolverError : public std::runtime_error {
 public:
  SolverError(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(error_name(code)) + ": " + what), code_(code) {}

  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace paraairy
