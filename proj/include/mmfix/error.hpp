#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace mmfix {

enum class ErrorKind {
  Structural,   // malformed table shape, ragged rows, asymmetry, non-finite cells
  Parse,        // unreadable text input
  Domain,       // value outside the domain of a transform or map
  Argument,     // precondition on a parameter violated
  Numeric,      // non-finite value produced during iteration
  Unsupported,  // operation not available for this configuration
  Solver,       // iteration could not continue
  Schema,       // manifest does not match the expected shape
  Io,
};

const char* to_string(ErrorKind kind) noexcept;

/// Single exception type for the library. `witness()` carries the offending
/// indices when the failure can be pinned to table entries.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what, std::vector<std::size_t> witness = {})
      : std::runtime_error(what), kind_(kind), witness_(std::move(witness)) {}

  ErrorKind kind() const noexcept { return kind_; }
  const std::vector<std::size_t>& witness() const noexcept { return witness_; }

 private:
  ErrorKind kind_;
  std::vector<std::size_t> witness_;
};

}  // namespace mmfix
