#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace logkn {

enum class ErrorCode {
  MalformedComplex,
  NotChainMap,
  DimensionMismatch,
  RankTooLarge,
  EmptyMultiplicity,
  NotAHomomorphism,
  ParseError,
  CenterNotInDivisor,
  EmptyModel,
  InvalidGraph,
  UnknownReference,
  NoMarkToMove,
  NotSemistable,
  InvalidArgument,
};

std::string_view to_string(ErrorCode code) noexcept;

/// Every failure raised by the library carries one of the codes above; the
/// CLI prints the code name verbatim in its error JSON.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace logkn
