#pragma once

#include <stdexcept>
#include <string>

namespace nspsd {

enum class ErrorCode {
  invalid_argument,
  dimension_mismatch,
  factorization_failure,
  degenerate_problem,
  contract_violation,
  unsupported_shape,
  parse_error,
  io_error,
};

// Every failure raised by the core carries one of the codes above; the C API
// maps them one-to-one onto nspsd_status values.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& what) {
  throw Error(code, what);
}

}  // namespace nspsd
