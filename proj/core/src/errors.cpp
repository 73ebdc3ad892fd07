#include "noisynet/errors.hpp"

namespace noisynet {

const char* to_string(ErrorKind kind) noexcept {
    switch (kind) {
        case ErrorKind::DimensionMismatch: return "DimensionMismatch";
        case ErrorKind::DegenerateDenominator: return "DegenerateDenominator";
        case ErrorKind::NoConvergence: return "NoConvergence";
        case ErrorKind::ZeroTwoStars: return "ZeroTwoStars";
        case ErrorKind::TargetNotReached: return "TargetNotReached";
        case ErrorKind::PatternTooLarge: return "PatternTooLarge";
        case ErrorKind::WorkBudgetExceeded: return "WorkBudgetExceeded";
        case ErrorKind::UnsupportedKind: return "UnsupportedKind";
        case ErrorKind::NoValidGamma: return "NoValidGamma";
        case ErrorKind::ShapeMismatch: return "ShapeMismatch";
        case ErrorKind::NegativeVariance: return "NegativeVariance";
        case ErrorKind::InsufficientSamples: return "InsufficientSamples";
        case ErrorKind::ConstantGene: return "ConstantGene";
        case ErrorKind::InvalidArgument: return "InvalidArgument";
        case ErrorKind::Parse: return "Parse";
    }
    return "Unknown";
}

}  // namespace noisynet
