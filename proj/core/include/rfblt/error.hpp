#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace rfblt {

enum class ErrorCode {
  InvalidArgument,
  InsufficientData,
  InvalidWindow,
  EmbeddingTooLarge,
  DegenerateScale,
  InvalidDistribution,
  ShapeError,
  NumericalError,
  SingularPrecision,
  InvalidVariance,
  IntegrationError,
  UndefinedError,
  EmptyPlan,
  InvalidInterval,
  IoError,
};

std::string_view to_string(ErrorCode code) noexcept;

/// Every failure raised by the library carries one of the codes above.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

  /// Validation failures are caller mistakes (bad input or configuration);
  /// everything else is a runtime failure of the computation or I/O.
  bool is_validation() const noexcept {
    switch (code_) {
      case ErrorCode::NumericalError:
      case ErrorCode::SingularPrecision:
      case ErrorCode::IntegrationError:
      case ErrorCode::IoError:
        return false;
      default:
        return true;
    }
  }

 private:
  ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& what) { throw Error(code, what); }

inline void require(bool condition, ErrorCode code, const std::string& what) {
  if (!condition) fail(code, what);
}

}  // namespace rfblt
