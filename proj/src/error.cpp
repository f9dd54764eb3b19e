#include "biharm/error.hpp"

#include <charconv>

namespace biharm {

const char* to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::DivisionByZeroAtPoint: return "DivisionByZeroAtPoint";
    case ErrorKind::DomainError: return "DomainError";
    case ErrorKind::NonFinite: return "NonFinite";
    case ErrorKind::IndexOutOfOrder: return "IndexOutOfOrder";
    case ErrorKind::OutOfDomain: return "OutOfDomain";
    case ErrorKind::SingularMetric: return "SingularMetric";
    case ErrorKind::FrameNotOrthonormal: return "FrameNotOrthonormal";
    case ErrorKind::RankDeficient: return "RankDeficient";
    case ErrorKind::StructureViolation: return "StructureViolation";
    case ErrorKind::NotAdapted: return "NotAdapted";
    case ErrorKind::InvalidSubmersion: return "InvalidSubmersion";
    case ErrorKind::ParseError: return "ParseError";
    case ErrorKind::ConfigError: return "ConfigError";
  }
  return "Unknown";
}

std::string format_number(double v) {
  char buf[32];
  const auto r = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, r.ptr);
}

}  // namespace biharm
