#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace dweak {

enum class ErrorCode {
  Membership,
  UnsupportedSpace,
  EmptyInput,
  NotNormedSpace,
  NotUnitVector,
  ZeroScale,
  EqualPoints,
  PreconditionFailed,
  InvalidSpace,
  NotEventuallyPeriodic,
  NoStabilization,
  InvalidArgument,
  Parse,
  Execution,
};

std::string_view error_code_name(ErrorCode code) noexcept;

/// Base of every error thrown by the library. The code is stable and is what
/// reports print; the message carries the specifics.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what);
  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

template <ErrorCode C>
class CodedError : public Error {
 public:
  explicit CodedError(const std::string& what) : Error(C, what) {}
};

using MembershipError = CodedError<ErrorCode::Membership>;
using UnsupportedSpaceError = CodedError<ErrorCode::UnsupportedSpace>;
using EmptyInputError = CodedError<ErrorCode::EmptyInput>;
using NotNormedSpaceError = CodedError<ErrorCode::NotNormedSpace>;
using NotUnitVectorError = CodedError<ErrorCode::NotUnitVector>;
using ZeroScaleError = CodedError<ErrorCode::ZeroScale>;
using EqualPointsError = CodedError<ErrorCode::EqualPoints>;
using PreconditionFailedError = CodedError<ErrorCode::PreconditionFailed>;
using InvalidSpaceError = CodedError<ErrorCode::InvalidSpace>;
using NotEventuallyPeriodicError = CodedError<ErrorCode::NotEventuallyPeriodic>;
using NoStabilizationError = CodedError<ErrorCode::NoStabilization>;
using InvalidArgumentError = CodedError<ErrorCode::InvalidArgument>;
using ExecutionError = CodedError<ErrorCode::Execution>;

/// Malformed scenario input. `line` and `column` are 1-based and 0 when the
/// problem is structural rather than syntactic; `path` is a JSON pointer.
class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::size_t line = 0, std::size_t column = 0,
             std::string path = {});
  std::size_t line() const noexcept { return line_; }
  std::size_t column() const noexcept { return column_; }
  const std::string& path() const noexcept { return path_; }

 private:
  std::size_t line_;
  std::size_t column_;
  std::string path_;
};

}  // namespace dweak
