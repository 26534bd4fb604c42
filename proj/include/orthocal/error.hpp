#pragma once

#include <stdexcept>
#include <string>

namespace orthocal {

enum class ErrorCode {
  InvalidArgument,
  UnreachablePoint,
  SingularJoint,
  NoRealSolution,
  SingularPosture,
  DegenerateLeg,
  StationOutOfRange,
  RankDeficient,
  EmptyVector,
  ParseError,
  ConfigError,
  IoError,
};

const char* to_string(ErrorCode code) noexcept;

// Numerical failures map to exit status 3 at the tool boundary, everything
// else (bad input, bad files) to 2.
bool is_numerical(ErrorCode code) noexcept;

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace orthocal
