// Exception hierarchy shared by every module of the engine.
#pragma once

#include <stdexcept>
#include <string>

namespace biharm {

enum class ErrorKind {
  DivisionByZeroAtPoint,
  DomainError,
  NonFinite,
  IndexOutOfOrder,
  OutOfDomain,
  SingularMetric,
  FrameNotOrthonormal,
  RankDeficient,
  StructureViolation,
  NotAdapted,
  InvalidSubmersion,
  ParseError,
  ConfigError,
};

const char* to_string(ErrorKind kind);

/// Shortest round-trip decimal form, for messages.
std::string format_number(double v);

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

  ErrorKind kind() const { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace biharm
