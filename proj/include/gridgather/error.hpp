#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace gridgather {

enum class ErrorCode {
  EmptyPointSet,
  UniverseNotStable,
  NoUniqueKeyCorner,
  OrderingUndefined,
  NoGuardYet,
  Ungatherable,
  SymmetricConfiguration,
  NotPartitive,
  InfeasibleClassParams,
  InvalidConfiguration,
  DuplicateRobot,
  ParseError,
};

std::string_view to_string(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& detail)
      : std::runtime_error(std::string(to_string(code)) + (detail.empty() ? "" : ": " + detail)),
        code_(code) {}
  explicit Error(ErrorCode code) : Error(code, "") {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace gridgather
