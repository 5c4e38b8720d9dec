#include "dweak/errors.hpp"

namespace dweak {

std::string_view error_code_name(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::Membership: return "MembershipError";
    case ErrorCode::UnsupportedSpace: return "UnsupportedSpace";
    case ErrorCode::EmptyInput: return "EmptyInput";
    case ErrorCode::NotNormedSpace: return "NotNormedSpace";
    case ErrorCode::NotUnitVector: return "NotUnitVector";
    case ErrorCode::ZeroScale: return "ZeroScale";
    case ErrorCode::EqualPoints: return "EqualPoints";
    case ErrorCode::PreconditionFailed: return "PreconditionFailed";
    case ErrorCode::InvalidSpace: return "InvalidSpace";
    case ErrorCode::NotEventuallyPeriodic: return "NotEventuallyPeriodic";
    case ErrorCode::NoStabilization: return "NoStabilization";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::Parse: return "ParseError";
    case ErrorCode::Execution: return "ExecutionError";
  }
  return "Error";
}

Error::Error(ErrorCode code, const std::string& what)
    : std::runtime_error(what), code_(code) {}

namespace {

std::string located(const std::string& what, std::size_t line, std::size_t column,
                    const std::string& path) {
  std::string out;
  if (line > 0) {
    out = "line " + std::to_string(line) + ", column " + std::to_string(column) + ": ";
  } else if (!path.empty()) {
    out = path + ": ";
  }
  return out + what;
}

}  // namespace

ParseError::ParseError(const std::string& what, std::size_t line, std::size_t column,
                       std::string path)
    : Error(ErrorCode::Parse, located(what, line, column, path)),
      line_(line),
      column_(column),
      path_(std::move(path)) {}

}  // namespace dweak
