#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace effbound {

enum class ErrorKind {
  DomainError,
  InvalidInstance,
  NotSimple,
  Degenerate,
  NoDominantRoot,
  DominantRootNotGreaterThanOne,
  ZeroDominantCoefficient,
  PrecisionExhausted,
  DominanceFails,
  DominanceUnsupported,
  DegenerateDenominator,
};

constexpr std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::DomainError: return "DomainError";
    case ErrorKind::InvalidInstance: return "InvalidInstance";
    case ErrorKind::NotSimple: return "NotSimple";
    case ErrorKind::Degenerate: return "Degenerate";
    case ErrorKind::NoDominantRoot: return "NoDominantRoot";
    case ErrorKind::DominantRootNotGreaterThanOne: return "DominantRootNotGreaterThanOne";
    case ErrorKind::ZeroDominantCoefficient: return "ZeroDominantCoefficient";
    case ErrorKind::PrecisionExhausted: return "PrecisionExhausted";
    case ErrorKind::DominanceFails: return "DominanceFails";
    case ErrorKind::DominanceUnsupported: return "DominanceUnsupported";
    case ErrorKind::DegenerateDenominator: return "DegenerateDenominator";
  }
  return "Unknown";
}

/// Every failure raised by the library carries a kind so callers (the CLI in
/// particular) can map it to a stable exit code.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& what) { throw Error(kind, what); }

inline void require(bool cond, ErrorKind kind, const std::string& what) {
  if (!cond) fail(kind, what);
}

}  // namespace effbound
