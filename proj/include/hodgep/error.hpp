#pragma once

#include <stdexcept>
#include <string>

namespace hodgep {

/// Broad classification of library failures; the CLI maps these onto exit codes.
enum class ErrorKind {
  invalid_input,     // malformed or out-of-contract arguments
  check_failed,      // a mathematical verification did not hold
  casimir_collision  // Casimir eigenvalues do not separate the requested block
};

class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& what, ErrorKind kind = ErrorKind::invalid_input)
      : std::runtime_error(what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

inline void require(bool cond, const std::string& what) {
  if (!cond) throw Error(what);
}

}  // namespace hodgep
