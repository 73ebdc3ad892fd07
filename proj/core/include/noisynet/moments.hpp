#pragma once
// Moment statistics from 1-3 noisy replicates and the method-of-moments
// estimators of the error rates (alpha, beta) and edge density delta, with
// their asymptotic covariances.
//
// Population moments, for N = p(p-1)/2 pairs:
//   u1 = (1-d) a + d (1-b)
//   u2 = (1-d) a(1-a) + d b(1-b)
//   u3 = (1-d) a(1-a)^2 + d b^2(1-b)
// Covariances are those of the sqrt(N)-scaled estimation errors.

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

#include "noisynet/adjacency.hpp"

namespace noisynet {

enum class EstimationMode { alpha_known, beta_known, both_unknown, both_known };

std::string_view to_string(EstimationMode mode) noexcept;

inline constexpr double kDenominatorTolerance = 1e-10;

struct MomentTriple {
    double u1 = 0.0;
    std::optional<double> u2;
    std::optional<double> u3;
    std::uint64_t n_pairs = 1;

    void validate() const;
    // Exact population moments for (alpha, beta, delta).
    static MomentTriple population(double alpha, double beta, double delta, std::uint64_t n_pairs = 1);
};

struct Interval {
    double lower = 0.0;
    double upper = 0.0;
    double level = 0.95;

    double length() const noexcept { return upper - lower; }
    bool contains(double x) const noexcept { return lower <= x && x <= upper; }
};

struct RateEstimate {
    EstimationMode mode = EstimationMode::both_unknown;
    // Raw plug-in values; these feed every covariance formula.
    double alpha_hat = 0.0;
    double beta_hat = 0.0;
    double delta_hat = 0.0;
    // Raw values clamped to [0,1] for reporting.
    double alpha_clamped = 0.0;
    double beta_clamped = 0.0;
    double delta_clamped = 0.0;
    bool out_of_range = false;
    // Parameter order: alpha_known (beta, delta); beta_known (alpha, delta);
    // both_unknown (alpha, beta, delta); both_known (delta).
    Eigen::MatrixXd cov;
    double sigma_delta = 0.0;
    bool negative_variance = false;
    Interval ci_delta;
    int iterations = 0;
    std::uint64_t n_pairs = 1;
};

// 3x3 asymptotic covariance of sqrt(N)(u_hat - u).
struct SigmaMatrix {
    Eigen::Matrix3d entries;
    // kappa1 = a(1-a), kappa2 = b(1-b), kappa3 = 1-a-b, kappa4 = b-a
    std::array<double, 4> kappas{};
};

// u1_hat = mean of Y over unordered pairs.
double u1_hat(const AdjacencyMatrix& y);
// (1/(p(p-1))) sum_{i<j} |Y*_ij - Y_ij|; half the mean absolute difference.
double u2_hat(const AdjacencyMatrix& y, const AdjacencyMatrix& ystar);
// (2/(3p(p-1))) sum_{i<j} I(Y** - 2Y* + Y in {1, -2}).
double u3_hat(const AdjacencyMatrix& y, const AdjacencyMatrix& ystar, const AdjacencyMatrix& ystarstar);

// u1 from the first replicate, u2 from the first two, u3 from all three.
MomentTriple moments_from_replicates(std::span<const AdjacencyMatrix> replicates);

SigmaMatrix sigma_matrix(double alpha, double beta, double delta);

Eigen::Matrix2d cov_known_alpha(double alpha, double beta, double delta);
Eigen::Matrix2d cov_known_beta(double alpha, double beta, double delta);
Eigen::Matrix3d cov_all_unknown(double alpha, double beta, double delta);
// Variance of sqrt(N)(delta_tilde - delta) with both rates known.
double var_known_rates(double alpha, double beta, double delta);

// delta_hat -/+ z sigma_hat / sqrt(N), z the (1+level)/2 normal quantile.
Interval ci_delta(double delta_hat, double sigma_hat, std::uint64_t n_pairs, double level = 0.95);

RateEstimate estimate_alpha_known(double alpha, const MomentTriple& m, double level = 0.95);
RateEstimate estimate_beta_known(double beta, const MomentTriple& m, double level = 0.95);
RateEstimate estimate_both_known(double alpha, double beta, const MomentTriple& m, double level = 0.95);

struct FixedPointOptions {
    double alpha0 = 0.2;
    double tol = 1e-4;
    int max_iter = 500;
};

// Alternates the known-alpha closed form for (beta, delta) with
//   alpha <- (u3 - d b^2 (1-b)) / ((1-d)(1-alpha)^2)
// until successive alphas differ by less than tol. The reported (beta, delta)
// are recomputed at the final alpha. Throws NoConvergence with the last few
// alpha iterates, or DegenerateDenominator from an inner step.
RateEstimate estimate_all_unknown(const MomentTriple& m, const FixedPointOptions& options = {},
                                  double level = 0.95);

}  // namespace noisynet
