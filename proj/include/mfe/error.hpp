#pragma once

#include <stdexcept>
#include <string>

namespace mfe {

/// Broad failure class; the CLI maps these onto exit codes.
enum class ErrorKind {
  Usage,      ///< bad arguments or preconditions on caller-supplied parameters
  Data,       ///< malformed or invalid input data (parse, validation, integrity)
  Numerical,  ///< factorization failure, divergence, non-finite results
};

/// Single exception type for the library. `code()` is a short stable tag
/// such as "index-out-of-range" that tests and tools can match on.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, std::string code, const std::string& message)
      : std::runtime_error(code + ": " + message), kind_(kind), code_(std::move(code)) {}

  ErrorKind kind() const noexcept { return kind_; }
  const std::string& code() const noexcept { return code_; }

 private:
  ErrorKind kind_;
  std::string code_;
};

[[noreturn]] inline void fail(ErrorKind kind, std::string code, const std::string& message) {
  throw Error(kind, std::move(code), message);
}

}  // namespace mfe
