#pragma once

#include <stdexcept>
#include <string>

namespace aro {

// Error taxonomy shared by all modules. The CLI maps these onto exit codes:
// input/validation problems -> 2, solver breakdowns -> 3, infeasibility
// verdicts -> 1.
enum class ErrorCode {
  DimensionMismatch,
  EmptyDecisionSet,
  AnchorOutsideBase,
  DimensionTooLarge,
  UnboundedSet,
  EmptySet,
  NumericalFailure,
  IterationLimit,
  NotEvenLo,
  NominallyInfeasible,
  HypothesisViolated,
  EmptySamples,
  UnknownBenchmark,
  MissingCaseFile,
  RejectionStall,
  Infeasible,
  InvalidInput,
};

const char* error_code_name(ErrorCode code);

class AroError : public std::runtime_error {
 public:
  AroError(ErrorCode code, const std::string& message)
      : std::runtime_error(std::string(error_code_name(code)) + ": " + message),
        code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& message) {
  throw AroError(code, message);
}

}  // namespace aro
