#include "rfblt/error.hpp"

namespace rfblt {

std::string_view to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::InsufficientData: return "InsufficientData";
    case ErrorCode::InvalidWindow: return "InvalidWindow";
    case ErrorCode::EmbeddingTooLarge: return "EmbeddingTooLarge";
    case ErrorCode::DegenerateScale: return "DegenerateScale";
    case ErrorCode::InvalidDistribution: return "InvalidDistribution";
    case ErrorCode::ShapeError: return "ShapeError";
    case ErrorCode::NumericalError: return "NumericalError";
    case ErrorCode::SingularPrecision: return "SingularPrecision";
    case ErrorCode::InvalidVariance: return "InvalidVariance";
    case ErrorCode::IntegrationError: return "IntegrationError";
    case ErrorCode::UndefinedError: return "UndefinedError";
    case ErrorCode::EmptyPlan: return "EmptyPlan";
    case ErrorCode::InvalidInterval: return "InvalidInterval";
    case ErrorCode::IoError: return "IoError";
  }
  return "Unknown";
}

}  // namespace rfblt
