#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace aml {

enum class ErrorCode {
  UnknownSymbol,
  Malformed,
  ArityError,
  NotABinder,
  NotABinary,
  OutOfRange,
  EmptyList,
  KindMismatch,
  UniverseTooLarge,
  NonMonotoneDetected,
  EmptyUniverse,
  DanglingElement,
  MissingConstant,
  DefinednessViolated,
  UnassignedConstant,
  SkeletonTooLarge,
  NotADefinednessStructure,
  SyntaxError,
  ForwardReference,
  UnknownHypothesis,
  NotTautEquiv,
  FormatError,
};

std::string_view to_string(ErrorCode code);

// Every failure raised by the library. `line` is 1-based when the error
// originates from a line-oriented input (pattern files, proof scripts).
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message,
        std::optional<std::size_t> line = std::nullopt);

  ErrorCode code() const noexcept { return code_; }
  std::optional<std::size_t> line() const noexcept { return line_; }
  const std::string& detail() const noexcept { return detail_; }

 private:
  ErrorCode code_;
  std::optional<std::size_t> line_;
  std::string detail_;
};

}  // namespace aml
