#include "noisynet/moments.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "noisynet/errors.hpp"
#include "noisynet/normal.hpp"

namespace noisynet {

std::string_view to_string(EstimationMode mode) noexcept {
    switch (mode) {
        case EstimationMode::alpha_known: return "alpha_known";
        case EstimationMode::beta_known: return "beta_known";
        case EstimationMode::both_unknown: return "both_unknown";
        case EstimationMode::both_known: return "both_known";
    }
    return "unknown";
}

namespace {

void require_nonzero(double value, const char* what) {
    if (!(std::abs(value) > kDenominatorTolerance)) {
        throw DegenerateDenominator(std::string(what) + " is numerically zero (|x| <= 1e-10)");
    }
}

void require_same_size(const AdjacencyMatrix& a, const AdjacencyMatrix& b) {
    if (a.size() != b.size()) {
        throw DimensionMismatch("replicates have different vertex counts (" + std::to_string(a.size()) +
                                " vs " + std::to_string(b.size()) + ")");
    }
}

double clamp01(double x) { return std::clamp(x, 0.0, 1.0); }

void finish(RateEstimate& est, double delta_variance, double level) {
    est.alpha_clamped = clamp01(est.alpha_hat);
    est.beta_clamped = clamp01(est.beta_hat);
    est.delta_clamped = clamp01(est.delta_hat);
    est.out_of_range = est.alpha_clamped != est.alpha_hat || est.beta_clamped != est.beta_hat ||
                       est.delta_clamped != est.delta_hat;
    est.negative_variance = delta_variance < 0.0 || !std::isfinite(delta_variance);
    est.sigma_delta = est.negative_variance ? 0.0 : std::sqrt(delta_variance);
    est.ci_delta = ci_delta(est.delta_hat, est.sigma_delta, est.n_pairs, level);
}

struct KnownAlphaSolution {
    double beta;
    double delta;
};

KnownAlphaSolution solve_known_alpha(double alpha, double u1, double u2) {
    const double d1 = u1 - alpha;
    require_nonzero(d1, "u1 - alpha");
    const double d2 = u1 - u2 - 2.0 * u1 * alpha + alpha * alpha;
    require_nonzero(d2, "delta denominator u1 - u2 - 2 u1 alpha + alpha^2");
    return {(u2 - alpha + u1 * alpha) / d1, d1 * d1 / d2};
}

}  // namespace

void MomentTriple::validate() const {
    auto in01 = [](double x) { return x >= 0.0 && x <= 1.0; };
    if (!in01(u1) || (u2 && !in01(*u2)) || (u3 && !in01(*u3))) {
        throw InvalidArgument("moment statistics must lie in [0, 1]");
    }
    if (n_pairs < 1) throw InvalidArgument("n_pairs must be at least 1");
}

MomentTriple MomentTriple::population(double alpha, double beta, double delta, std::uint64_t n_pairs) {
    MomentTriple m;
    m.u1 = (1.0 - delta) * alpha + delta * (1.0 - beta);
    m.u2 = (1.0 - delta) * alpha * (1.0 - alpha) + delta * beta * (1.0 - beta);
    m.u3 = (1.0 - delta) * alpha * (1.0 - alpha) * (1.0 - alpha) + delta * beta * beta * (1.0 - beta);
    m.n_pairs = n_pairs;
    return m;
}

double u1_hat(const AdjacencyMatrix& y) { return edge_density(y); }

double u2_hat(const AdjacencyMatrix& y, const AdjacencyMatrix& ystar) {
    require_same_size(y, ystar);
    const auto p = y.size();
    std::uint64_t differing = 0;
    for (std::size_t i = 0; i < p; ++i) {
        const auto a = y.row(i);
        const auto b = ystar.row(i);
        for (std::size_t j = i + 1; j < p; ++j) differing += a[j] != b[j];
    }
    return static_cast<double>(differing) / (static_cast<double>(p) * static_cast<double>(p - 1));
}

double u3_hat(const AdjacencyMatrix& y, const AdjacencyMatrix& ystar, const AdjacencyMatrix& ystarstar) {
    require_same_size(y, ystar);
    require_same_size(y, ystarstar);
    const auto p = y.size();
    std::uint64_t hits = 0;
    for (std::size_t i = 0; i < p; ++i) {
        const auto r0 = y.row(i);
        const auto r1 = ystar.row(i);
        const auto r2 = ystarstar.row(i);
        for (std::size_t j = i + 1; j < p; ++j) {
            const int second_difference = int{r2[j]} - 2 * int{r1[j]} + int{r0[j]};
            hits += second_difference == 1 || second_difference == -2;
        }
    }
    return 2.0 * static_cast<double>(hits) / (3.0 * static_cast<double>(p) * static_cast<double>(p - 1));
}

MomentTriple moments_from_replicates(std::span<const AdjacencyMatrix> replicates) {
    if (replicates.empty()) throw InvalidArgument("at least one replicate is required");
    MomentTriple m;
    m.u1 = u1_hat(replicates[0]);
    m.n_pairs = replicates[0].pair_count();
    if (replicates.size() >= 2) m.u2 = u2_hat(replicates[0], replicates[1]);
    if (replicates.size() >= 3) m.u3 = u3_hat(replicates[0], replicates[1], replicates[2]);
    return m;
}

SigmaMatrix sigma_matrix(double alpha, double beta, double delta) {
    const double k1 = alpha * (1.0 - alpha);
    const double k2 = beta * (1.0 - beta);
    const double d = delta;
    const double e = 1.0 - delta;

    SigmaMatrix s;
    s.kappas = {k1, k2, 1.0 - alpha - beta, beta - alpha};
    auto& m = s.entries;
    m(0, 0) = d * k2 + e * k1;
    m(1, 1) = d * k2 * (0.5 - k2) + e * k1 * (0.5 - k1);
    m(2, 2) = d * beta * k2 * (1.0 / 3.0 - beta * k2) + e * k1 * (1.0 - alpha) * (1.0 / 3.0 - k1 * (1.0 - alpha));
    m(0, 1) = d * k2 * (beta - 0.5) + e * k1 * (0.5 - alpha);
    m(0, 2) = d * k2 * (beta * beta / 3.0 - 2.0 * k2 / 3.0) +
              e * k1 * ((1.0 - alpha) * (1.0 - alpha) / 3.0 - 2.0 * k1 / 3.0);
    m(1, 2) = d * beta * k2 * (1.0 / 3.0 - k2) + e * (1.0 - alpha) * k1 * (1.0 / 3.0 - k1);
    m(1, 0) = m(0, 1);
    m(2, 0) = m(0, 2);
    m(2, 1) = m(1, 2);
    return s;
}

Eigen::Matrix2d cov_known_alpha(double alpha, double beta, double delta) {
    const auto s = sigma_matrix(alpha, beta, delta);
    const auto [k1, k2, k3, k4] = s.kappas;
    require_nonzero(k3, "1 - alpha - beta");
    require_nonzero(delta, "delta");
    Eigen::Matrix2d w;
    w << (k2 - k1) / (delta * k3 * k3), -1.0 / (delta * k3),
         (2.0 * beta - 1.0) / (k3 * k3), -1.0 / (k3 * k3);
    const Eigen::Matrix2d sigma1 = s.entries.topLeftCorner<2, 2>();
    return w * sigma1 * w.transpose();
}

Eigen::Matrix2d cov_known_beta(double alpha, double beta, double delta) {
    const auto s = sigma_matrix(alpha, beta, delta);
    const auto [k1, k2, k3, k4] = s.kappas;
    require_nonzero(k3, "1 - alpha - beta");
    require_nonzero(1.0 - delta, "1 - delta");
    Eigen::Matrix2d w;
    w << (k2 - k1) / ((1.0 - delta) * k3 * k3), -1.0 / ((1.0 - delta) * k3),
         (2.0 * alpha - 1.0) / (k3 * k3), 1.0 / (k3 * k3);
    const Eigen::Matrix2d sigma1 = s.entries.topLeftCorner<2, 2>();
    return w * sigma1 * w.transpose();
}

Eigen::Matrix3d cov_all_unknown(double alpha, double beta, double delta) {
    const auto s = sigma_matrix(alpha, beta, delta);
    const double k3 = s.kappas[2];
    require_nonzero(k3, "1 - alpha - beta");
    require_nonzero(delta, "delta");
    require_nonzero(1.0 - delta, "1 - delta");
    const double a = alpha;
    const double b = beta;
    const double k3sq = k3 * k3;
    const double k3cu = k3sq * k3;
    const double lo = (1.0 - delta) * k3sq;
    const double hi = delta * k3sq;
    Eigen::Matrix3d w;
    w << ((1.0 - 2.0 * b) * a + b * b) / lo, (a - 2.0 * b) / lo, 1.0 / lo,
         -((1.0 - 2.0 * a) * b + a * a) / hi, (b - 2.0 * a + 1.0) / hi, -1.0 / hi,
         (3.0 * k3 + 6.0 * a * b - 2.0) / k3cu, (3.0 * k3 + 6.0 * b - 2.0) / k3cu, -2.0 / k3cu;
    return w * s.entries * w.transpose();
}

double var_known_rates(double alpha, double beta, double delta) {
    const double k3 = 1.0 - alpha - beta;
    require_nonzero(k3, "1 - alpha - beta");
    return sigma_matrix(alpha, beta, delta).entries(0, 0) / (k3 * k3);
}

Interval ci_delta(double delta_hat, double sigma_hat, std::uint64_t n_pairs, double level) {
    if (sigma_hat < 0.0) throw InvalidArgument("sigma_hat must be non-negative");
    const double half = two_sided_z(level) * sigma_hat / std::sqrt(static_cast<double>(n_pairs));
    return {delta_hat - half, delta_hat + half, level};
}

RateEstimate estimate_alpha_known(double alpha, const MomentTriple& m, double level) {
    if (!m.u2) throw InvalidArgument("known-alpha estimation needs u2 (two replicates)");
    const auto [beta, delta] = solve_known_alpha(alpha, m.u1, *m.u2);
    RateEstimate est;
    est.mode = EstimationMode::alpha_known;
    est.alpha_hat = alpha;
    est.beta_hat = beta;
    est.delta_hat = delta;
    est.n_pairs = m.n_pairs;
    const Eigen::Matrix2d cov = cov_known_alpha(alpha, beta, delta);
    est.cov = cov;
    finish(est, cov(1, 1), level);
    return est;
}

RateEstimate estimate_beta_known(double beta, const MomentTriple& m, double level) {
    if (!m.u2) throw InvalidArgument("known-beta estimation needs u2 (two replicates)");
    const double u1 = m.u1;
    const double u2 = *m.u2;
    const double d1 = u1 + beta - 1.0;
    require_nonzero(d1, "u1 + beta - 1");
    const double d2 = u1 + u2 - 2.0 * u1 * beta - (1.0 - beta) * (1.0 - beta);
    require_nonzero(d2, "delta denominator u1 + u2 - 2 u1 beta - (1-beta)^2");
    RateEstimate est;
    est.mode = EstimationMode::beta_known;
    est.alpha_hat = (u1 * beta - u2) / d1;
    est.beta_hat = beta;
    est.delta_hat = (u1 * u1 - u1 + u2) / d2;
    est.n_pairs = m.n_pairs;
    const Eigen::Matrix2d cov = cov_known_beta(est.alpha_hat, beta, est.delta_hat);
    est.cov = cov;
    finish(est, cov(1, 1), level);
    return est;
}

RateEstimate estimate_both_known(double alpha, double beta, const MomentTriple& m, double level) {
    const double k3 = 1.0 - alpha - beta;
    require_nonzero(k3, "1 - alpha - beta");
    RateEstimate est;
    est.mode = EstimationMode::both_known;
    est.alpha_hat = alpha;
    est.beta_hat = beta;
    est.delta_hat = (m.u1 - alpha) / k3;
    est.n_pairs = m.n_pairs;
    const double var = var_known_rates(alpha, beta, est.delta_hat);
    est.cov = Eigen::MatrixXd::Constant(1, 1, var);
    finish(est, var, level);
    return est;
}

RateEstimate estimate_all_unknown(const MomentTriple& m, const FixedPointOptions& options, double level) {
    if (!m.u2 || !m.u3) throw InvalidArgument("estimation with both rates unknown needs u2 and u3 (three replicates)");
    if (!(options.tol > 0.0) || options.max_iter < 1) throw InvalidArgument("invalid fixed-point options");
    const double u1 = m.u1;
    const double u2 = *m.u2;
    const double u3 = *m.u3;

    std::vector<double> trail;
    double alpha = options.alpha0;
    int iterations = 0;
    bool converged = false;
    while (iterations < options.max_iter) {
        ++iterations;
        const auto [beta, delta] = solve_known_alpha(alpha, u1, u2);
        const double denom = (1.0 - delta) * (1.0 - alpha) * (1.0 - alpha);
        require_nonzero(denom, "(1 - delta)(1 - alpha)^2");
        const double next = (u3 - delta * beta * beta * (1.0 - beta)) / denom;
        if (!std::isfinite(next)) break;
        trail.push_back(next);
        if (trail.size() > 8) trail.erase(trail.begin());
        const bool done = std::abs(next - alpha) < options.tol;
        alpha = next;
        if (done) {
            converged = true;
            break;
        }
    }
    if (!converged) {
        throw NoConvergence("fixed-point iteration for alpha did not converge within " +
                                std::to_string(options.max_iter) + " iterations",
                            trail);
    }

    const auto [beta, delta] = solve_known_alpha(alpha, u1, u2);
    RateEstimate est;
    est.mode = EstimationMode::both_unknown;
    est.alpha_hat = alpha;
    est.beta_hat = beta;
    est.delta_hat = delta;
    est.iterations = iterations;
    est.n_pairs = m.n_pairs;
    const Eigen::Matrix3d cov = cov_all_unknown(alpha, beta, delta);
    est.cov = cov;
    finish(est, cov(2, 2), level);
    return est;
}

}  // namespace noisynet
