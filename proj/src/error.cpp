#include "aml/error.hpp"

namespace aml {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::UnknownSymbol: return "UnknownSymbol";
    case ErrorCode::Malformed: return "Malformed";
    case ErrorCode::ArityError: return "ArityError";
    case ErrorCode::NotABinder: return "NotABinder";
    case ErrorCode::NotABinary: return "NotABinary";
    case ErrorCode::OutOfRange: return "OutOfRange";
    case ErrorCode::EmptyList: return "EmptyList";
    case ErrorCode::KindMismatch: return "KindMismatch";
    case ErrorCode::UniverseTooLarge: return "UniverseTooLarge";
    case ErrorCode::NonMonotoneDetected: return "NonMonotoneDetected";
    case ErrorCode::EmptyUniverse: return "EmptyUniverse";
    case ErrorCode::DanglingElement: return "DanglingElement";
    case ErrorCode::MissingConstant: return "MissingConstant";
    case ErrorCode::DefinednessViolated: return "DefinednessViolated";
    case ErrorCode::UnassignedConstant: return "UnassignedConstant";
    case ErrorCode::SkeletonTooLarge: return "SkeletonTooLarge";
    case ErrorCode::NotADefinednessStructure: return "NotADefinednessStructure";
    case ErrorCode::SyntaxError: return "SyntaxError";
    case ErrorCode::ForwardReference: return "ForwardReference";
    case ErrorCode::UnknownHypothesis: return "UnknownHypothesis";
    case ErrorCode::NotTautEquiv: return "NotTautEquiv";
    case ErrorCode::FormatError: return "FormatError";
  }
  return "Unknown";
}

namespace {

std::string compose(ErrorCode code, const std::string& message,
                    std::optional<std::size_t> line) {
  std::string out(to_string(code));
  if (line) out += " (line " + std::to_string(*line) + ")";
  out += ": ";
  out += message;
  return out;
}

}  // namespace

Error::Error(ErrorCode code, const std::string& message,
             std::optional<std::size_t> line)
    : std::runtime_error(compose(code, message, line)),
      code_(code),
      line_(line),
      detail_(message) {}

}  // namespace aml
