#pragma once

#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>

namespace levikit {

enum class ErrorCode {
  DegenerateJet,
  ZeroSample,
  UndersampledLoop,
  SingularFrame,
  DegenerateFrame,
  ParityError,
  OutOfRange,
  StepTooLarge,
  OriginQuery,
  UndersampledCurve,
  InsufficientSamples,
  IllConditioned,
  InvalidSeries,
  BudgetExceeded,
  UnsaturatedPoint,
  SelfLoopGluing,
  NegativePointGluing,
  InconsistentInventory,
  StuckState,
  WrongKind,
  NotSecondOrderSmall,
  DeltaTooLarge,
  InvalidInput,
};

std::string_view to_string(ErrorCode code);

// Every domain failure in the library is reported through this type. The
// context string is free-form and ends up verbatim in the CLI error JSON.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message, std::string context = {})
      : std::runtime_error(message), code_(code), context_(std::move(context)) {}

  ErrorCode code() const noexcept { return code_; }
  const std::string& context() const noexcept { return context_; }

 private:
  ErrorCode code_;
  std::string context_;
};

}  // namespace levikit
