#pragma once

#include <stdexcept>
#include <string>

namespace twoatom {

enum class ErrorCode {
  NotHermitian,
  TraceNotOne,
  NotPositive,
  Domain,
  NotXClass,
  ComplexRoot,
  NoBracket,
  NotPure,
  NonRealCorrelation,
  Format,
};

const char* to_string(ErrorCode code) noexcept;

/// Every failure raised by the library. `residual()` carries the measured
/// violation where one exists (0 otherwise).
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what, double residual = 0.0)
      : std::runtime_error(std::string(to_string(code)) + ": " + what),
        code_(code),
        residual_(residual) {}

  ErrorCode code() const noexcept { return code_; }
  double residual() const noexcept { return residual_; }

 private:
  ErrorCode code_;
  double residual_;
};

}  // namespace twoatom
