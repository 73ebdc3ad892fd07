#pragma once
// Error types raised by the estimators. Every failure carries a short
// machine-readable kind so callers (the simulation harness in particular)
// can tally failures without parsing messages.

#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace noisynet {

enum class ErrorKind {
    DimensionMismatch,
    DegenerateDenominator,
    NoConvergence,
    ZeroTwoStars,
    TargetNotReached,
    PatternTooLarge,
    WorkBudgetExceeded,
    UnsupportedKind,
    NoValidGamma,
    ShapeMismatch,
    NegativeVariance,
    InsufficientSamples,
    ConstantGene,
    InvalidArgument,
    Parse,
};

const char* to_string(ErrorKind kind) noexcept;

class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& what)
        : std::runtime_error(what), kind_(kind) {}
    ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

class DimensionMismatch : public Error {
public:
    explicit DimensionMismatch(const std::string& what) : Error(ErrorKind::DimensionMismatch, what) {}
};

class DegenerateDenominator : public Error {
public:
    explicit DegenerateDenominator(const std::string& what) : Error(ErrorKind::DegenerateDenominator, what) {}
};

class NoConvergence : public Error {
public:
    NoConvergence(const std::string& what, std::vector<double> last_iterates)
        : Error(ErrorKind::NoConvergence, what), last_iterates_(std::move(last_iterates)) {}
    const std::vector<double>& last_iterates() const noexcept { return last_iterates_; }

private:
    std::vector<double> last_iterates_;
};

class ZeroTwoStars : public Error {
public:
    explicit ZeroTwoStars(const std::string& what) : Error(ErrorKind::ZeroTwoStars, what) {}
};

class TargetNotReached : public Error {
public:
    TargetNotReached(const std::string& what, long long two_star_gap, long long triangle_gap)
        : Error(ErrorKind::TargetNotReached, what), two_star_gap_(two_star_gap), triangle_gap_(triangle_gap) {}
    // Best (|N2* - target|, |Ntri - target|) reached before giving up.
    long long two_star_gap() const noexcept { return two_star_gap_; }
    long long triangle_gap() const noexcept { return triangle_gap_; }

private:
    long long two_star_gap_;
    long long triangle_gap_;
};

class PatternTooLarge : public Error {
public:
    explicit PatternTooLarge(const std::string& what) : Error(ErrorKind::PatternTooLarge, what) {}
};

class WorkBudgetExceeded : public Error {
public:
    explicit WorkBudgetExceeded(const std::string& what) : Error(ErrorKind::WorkBudgetExceeded, what) {}
};

class UnsupportedKind : public Error {
public:
    explicit UnsupportedKind(const std::string& what) : Error(ErrorKind::UnsupportedKind, what) {}
};

class NoValidGamma : public Error {
public:
    explicit NoValidGamma(const std::string& what) : Error(ErrorKind::NoValidGamma, what) {}
};

class ShapeMismatch : public Error {
public:
    explicit ShapeMismatch(const std::string& what) : Error(ErrorKind::ShapeMismatch, what) {}
};

class NegativeVariance : public Error {
public:
    explicit NegativeVariance(const std::string& what) : Error(ErrorKind::NegativeVariance, what) {}
};

class InsufficientSamples : public Error {
public:
    explicit InsufficientSamples(const std::string& what) : Error(ErrorKind::InsufficientSamples, what) {}
};

class ConstantGene : public Error {
public:
    explicit ConstantGene(const std::string& what) : Error(ErrorKind::ConstantGene, what) {}
};

class InvalidArgument : public Error {
public:
    explicit InvalidArgument(const std::string& what) : Error(ErrorKind::InvalidArgument, what) {}
};

class ParseError : public Error {
public:
    explicit ParseError(const std::string& what) : Error(ErrorKind::Parse, what) {}
};

}  // namespace noisynet
