#pragma once

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace latspec {

// Global relative tolerance for norm ties and invariant slack.
inline constexpr double kRelTol = 1e-9;

// Two nonnegative reals are "equal" when within kRelTol relative.
inline bool nearly_equal(double a, double b, double rel = kRelTol) {
  double scale = std::max(1.0, std::max(std::abs(a), std::abs(b)));
  return std::abs(a - b) <= rel * scale;
}

enum class ErrorCode {
  SingularLattice,
  DimensionTooLarge,
  EnumerationBudgetExceeded,
  NotUnitVolume,
  ZeroRate,
  MissingClassification,
  UnsupportedBody,
  EmptyGrid,
  EmptyBracket,
  BadArguments,
};

inline const char* error_code_string(ErrorCode c) {
  switch (c) {
    case ErrorCode::SingularLattice: return "SINGULAR_LATTICE";
    case ErrorCode::DimensionTooLarge: return "DIM_TOO_LARGE";
    case ErrorCode::EnumerationBudgetExceeded: return "ENUM_BUDGET";
    case ErrorCode::NotUnitVolume: return "NOT_UNIT_VOLUME";
    case ErrorCode::ZeroRate: return "ZERO_RATE";
    case ErrorCode::MissingClassification: return "MISSING_CLASSIFICATION";
    case ErrorCode::UnsupportedBody: return "UNSUPPORTED_BODY";
    case ErrorCode::EmptyGrid: return "EMPTY_GRID";
    case ErrorCode::EmptyBracket: return "EMPTY_BRACKET";
    case ErrorCode::BadArguments: return "BAD_ARGS";
  }
  return "UNKNOWN";
}

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(message), code_(code) {}
  ErrorCode code() const { return code_; }
  const char* code_string() const { return error_code_string(code_); }

 private:
  ErrorCode code_;
};

}  // namespace latspec
