#include "mmfix/error.hpp"

namespace mmfix {

const char* to_string(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::Structural: return "structural";
    case ErrorKind::Parse: return "parse";
    case ErrorKind::Domain: return "domain";
    case ErrorKind::Argument: return "argument";
    case ErrorKind::Numeric: return "numeric";
    case ErrorKind::Unsupported: return "unsupported";
    case ErrorKind::Solver: return "solver";
    case ErrorKind::Schema: return "schema";
    case ErrorKind::Io: return "io";
  }
  return "unknown";
}

}  // namespace mmfix
