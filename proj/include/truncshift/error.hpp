#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace truncshift {

enum class ErrorKind {
  NotHermitian,
  NoConvergence,
  DomainError,
  BracketFailure,
  PoleHit,
  InvalidZero,
  PoleOnTorus,
  NotCoprime,
  ZeroOnTorus,
  PairingViolation,
  RetryExhausted,
  InvalidArgument,
};

constexpr std::string_view error_name(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::NotHermitian: return "NotHermitian";
    case ErrorKind::NoConvergence: return "NoConvergence";
    case ErrorKind::DomainError: return "DomainError";
    case ErrorKind::BracketFailure: return "BracketFailure";
    case ErrorKind::PoleHit: return "PoleHit";
    case ErrorKind::InvalidZero: return "InvalidZero";
    case ErrorKind::PoleOnTorus: return "PoleOnTorus";
    case ErrorKind::NotCoprime: return "NotCoprime";
    case ErrorKind::ZeroOnTorus: return "ZeroOnTorus";
    case ErrorKind::PairingViolation: return "PairingViolation";
    case ErrorKind::RetryExhausted: return "RetryExhausted";
    case ErrorKind::InvalidArgument: return "InvalidArgument";
  }
  return "Unknown";
}

/// Every numeric failure in the library is reported through this type; the
/// kind names the originating condition so the CLI can print it verbatim.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(error_name(kind)) + ": " + what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }
  std::string_view name() const noexcept { return error_name(kind_); }

 private:
  ErrorKind kind_;
};

}  // namespace truncshift
