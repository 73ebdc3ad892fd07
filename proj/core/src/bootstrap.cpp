#include "noisynet/bootstrap.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <ostream>
#include <string>
#include <thread>

#include "noisynet/errors.hpp"
#include "noisynet/normal.hpp"
#include "noisynet/rng.hpp"

namespace noisynet {

namespace {

double kappa3_or_throw(double alpha, double beta) {
    const double k3 = 1.0 - alpha - beta;
    if (std::abs(k3) < kDenominatorTolerance) {
        throw DegenerateDenominator("1 - alpha - beta is numerically zero (|x| < 1e-10)");
    }
    return k3;
}

void require_nonzero(double x, const char* what) {
    if (std::abs(x) < kDenominatorTolerance) {
        throw DegenerateDenominator(std::string(what) + " is numerically zero (|x| < 1e-10)");
    }
}

// Inverse of the draw in sample_dagger: the bootstrap value of one pair.
inline double draw_dagger(Rng& rng, double y, GammaPair g) {
    const double u = uniform01(rng);
    if (u < g.gamma1) return y;
    return u < g.gamma1 + g.gamma2 ? 1.0 : 0.0;
}

// Upper-triangle weights in row-major pair order with the S' scale folded in.
std::vector<double> packed_weights(const AdjacencyMatrix& y, const SubgraphPattern& pattern, double alpha,
                                   double beta, const DensityOptions& options) {
    const double k3 = kappa3_or_throw(alpha, beta);
    const auto s = pattern_sums(y, pattern, alpha, beta, true, options);
    const auto p = y.size();
    const double scale = std::sqrt(static_cast<double>(y.pair_count())) /
                         (std::pow(k3, static_cast<double>(pattern.k())) * s.cardinality);
    std::vector<double> w;
    w.reserve(y.pair_count());
    for (std::size_t i = 0; i < p; ++i)
        for (std::size_t j = i + 1; j < p; ++j) w.push_back(scale * s.pair_weights(i, j));
    return w;
}

template <typename DaggerAt>
double s_dagger_impl(const AdjacencyMatrix& y, DaggerAt ydag, const SubgraphPattern& pattern, double alpha,
                     double beta, GammaPair g, const DensityOptions& options) {
    const auto w = packed_weights(y, pattern, alpha, beta, options);
    const auto p = y.size();
    double total = 0.0;
    std::size_t e = 0;
    for (std::size_t i = 0; i < p; ++i)
        for (std::size_t j = i + 1; j < p; ++j, ++e)
            total += (ydag(i, j) - g.gamma1 * y.at(i, j) - g.gamma2) * w[e];
    return total;
}

// Sums for a pattern either through the fast paths or by enumeration.
PatternSums get_sums(const AdjacencyMatrix& y, const SubgraphPattern& pattern, double alpha, double beta,
                     bool enumerate, const DensityOptions& options) {
    return enumerate ? enumerate_pattern_sums(y, pattern, alpha, beta, false, options)
                     : pattern_sums(y, pattern, alpha, beta, false, options);
}

std::pair<double, double> delta_generic(const AdjacencyMatrix& y, const SubgraphPattern& pattern, double alpha,
                                        double beta, bool enumerate, const DensityOptions& options) {
    const double k3 = kappa3_or_throw(alpha, beta);
    const double k = static_cast<double>(pattern.k());
    const double k3k = std::pow(k3, k);
    const auto s = get_sums(y, pattern, alpha, beta, enumerate, options);
    const double c = s.t / k3k;
    double edge_loo = 0.0;
    double nonedge_loo = 0.0;
    for (std::size_t j = 0; j < pattern.k(); ++j) (pattern.slots()[j].tau ? edge_loo : nonedge_loo) += s.loo[j];
    return {k * c / k3 - edge_loo / k3k, k * c / k3 - nonedge_loo / k3k};
}

// The two constant brackets of h, evaluated at plug-in rates.
std::pair<Eigen::Vector3d, Eigen::Vector3d> h_brackets(double alpha, double beta) {
    const double k1 = alpha * (1.0 - alpha);
    const double k2 = beta * (1.0 - beta);
    const double k3 = 1.0 - alpha - beta;
    const double k4 = beta - alpha;
    Eigen::Vector3d first(6.0 * k4, 3.0 * (k4 * k4 - k1 - k2),
                          2.0 * (k4 * (-6.0 * alpha * beta + 3.0 * k3 * k3 - 4.0 * k3) +
                                 (1.0 - alpha) * (beta - 2.0 * alpha)));
    Eigen::Vector3d second(6.0 * k1, 3.0 * k1 * (1.0 - 2.0 * alpha), 2.0 * k1 * (1.0 - alpha) * (1.0 - 3.0 * alpha));
    return {first, second};
}

Eigen::Vector3d h_generic(const AdjacencyMatrix& y, const SubgraphPattern& pattern, double alpha, double beta,
                          bool enumerate, const DensityOptions& options) {
    const double k3 = kappa3_or_throw(alpha, beta);
    const double k3k = std::pow(k3, static_cast<double>(pattern.k()));
    const auto s = get_sums(y, pattern, alpha, beta, enumerate, options);
    double forced = 0.0;
    double loo = 0.0;
    for (std::size_t j = 0; j < pattern.k(); ++j) {
        const bool tau = pattern.slots()[j].tau;
        // Forcing slot j to an edge; k is unchanged so the same divisor applies.
        const double c_forced =
            tau ? s.t / k3k : get_sums(y, pattern.with_tau(j, true), alpha, beta, enumerate, options).t / k3k;
        forced += tau ? c_forced : -c_forced;
        loo += tau ? s.loo[j] : -s.loo[j];
    }
    const auto [first, second] = h_brackets(alpha, beta);
    return first * (forced / 3.0) + second * (loo / (3.0 * k3k));
}

}  // namespace

GammaPair solve_gamma(double alpha, double beta) {
    const double disc2 = 1.0 - 4.0 * alpha * (1.0 - beta);
    if (!(disc2 >= 0.0)) throw NoValidGamma("4 alpha (1 - beta) exceeds 1; no real gamma2");
    GammaPair g;
    g.gamma2 = (1.0 - std::sqrt(disc2)) / 2.0;
    const double b = 1.0 - 2.0 * g.gamma2;
    const double c = beta - alpha;
    const double disc1 = b * b - 4.0 * c;
    if (!(disc1 >= 0.0)) throw NoValidGamma("no real gamma1 for alpha=" + std::to_string(alpha) +
                                            ", beta=" + std::to_string(beta));
    const double root = std::sqrt(disc1);
    // Roots c / upper and upper; the small one in cancellation-free form.
    const double upper = (b + root) / 2.0;
    const double lower = upper != 0.0 ? c / upper : 0.0;
    g.gamma1 = lower > 0.0 ? lower : upper;
    if (!(g.gamma1 > 0.0 && g.gamma2 > 0.0 && g.gamma1 + g.gamma2 < 1.0)) {
        throw NoValidGamma("no admissible (gamma1, gamma2) for alpha=" + std::to_string(alpha) +
                           ", beta=" + std::to_string(beta) + " (gamma1=" + std::to_string(g.gamma1) +
                           ", gamma2=" + std::to_string(g.gamma2) + ")");
    }
    return g;
}

GammaPair solve_gamma_projected(double alpha, double beta, RateProjection projection, bool* projected) {
    double a = alpha;
    double b = beta;
    if (projection != RateProjection::none) {
        a = std::clamp(a, kMinSamplingRate, 1.0 - kMinSamplingRate);
        b = std::clamp(b, kMinSamplingRate, 1.0 - kMinSamplingRate);
    }
    if (projection == RateProjection::full) {
        // A Bernoulli variance cannot exceed 1/4.
        constexpr double cap = 0.25 * (1.0 - 1e-12);
        if (a * (1.0 - b) > cap) a = cap / (1.0 - b);
        if (b * (1.0 - a) > cap) b = cap / (1.0 - a);
    }
    if (projected) *projected = a != alpha || b != beta;
    return solve_gamma(a, b);
}

AdjacencyMatrix sample_dagger(const AdjacencyMatrix& y, GammaPair g, std::uint64_t seed) {
    Rng rng(seed);
    const auto p = y.size();
    AdjacencyMatrix out(p);
    for (std::size_t i = 0; i < p; ++i)
        for (std::size_t j = i + 1; j < p; ++j)
            if (draw_dagger(rng, y.at(i, j), g) != 0.0) out.set_edge(i, j, true);
    return out;
}

double s_dagger(const AdjacencyMatrix& y, const AdjacencyMatrix& ydag, const SubgraphPattern& pattern, double alpha,
                double beta, GammaPair g, const DensityOptions& options) {
    if (ydag.size() != y.size()) throw DimensionMismatch("bootstrap sample and Y differ in size");
    return s_dagger_impl(
        y, [&](std::size_t i, std::size_t j) { return static_cast<double>(ydag.at(i, j)); }, pattern, alpha, beta,
        g, options);
}

double s_dagger(const AdjacencyMatrix& y, const Eigen::MatrixXd& ydag, const SubgraphPattern& pattern, double alpha,
                double beta, GammaPair g, const DensityOptions& options) {
    const auto p = static_cast<Eigen::Index>(y.size());
    if (ydag.rows() != p || ydag.cols() != p) throw DimensionMismatch("bootstrap sample and Y differ in size");
    return s_dagger_impl(
        y, [&](std::size_t i, std::size_t j) { return ydag(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)); },
        pattern, alpha, beta, g, options);
}

Eigen::MatrixXd bootstrap_samples(const AdjacencyMatrix& y, std::span<const SubgraphPattern> patterns, double alpha,
                                  double beta, std::span<const std::uint64_t> seeds,
                                  const BootstrapOptions& options) {
    if (patterns.empty()) throw InvalidArgument("bootstrap needs at least one pattern");
    const GammaPair g = solve_gamma_projected(alpha, beta, options.projection);
    const auto m = patterns.size();
    const auto n = y.pair_count();
    const auto p = y.size();

    // Pair-major weights so each draw touches one contiguous block.
    std::vector<double> w(n * m);
    for (std::size_t q = 0; q < m; ++q) {
        const auto wq = packed_weights(y, patterns[q], alpha, beta, options.density);
        for (std::size_t e = 0; e < n; ++e) w[e * m + q] = wq[e];
    }
    std::vector<double> ypacked;
    ypacked.reserve(n);
    for (std::size_t i = 0; i < p; ++i)
        for (std::size_t j = i + 1; j < p; ++j) ypacked.push_back(y.at(i, j));

    Eigen::MatrixXd out(static_cast<Eigen::Index>(seeds.size()), static_cast<Eigen::Index>(m));
    std::atomic<std::size_t> next{0};
    const auto worker = [&] {
        std::vector<double> acc(m);
        for (std::size_t b = next++; b < seeds.size(); b = next++) {
            Rng rng(seeds[b]);
            std::fill(acc.begin(), acc.end(), 0.0);
            for (std::size_t e = 0; e < n; ++e) {
                const double r = draw_dagger(rng, ypacked[e], g) - g.gamma1 * ypacked[e] - g.gamma2;
                const double* we = &w[e * m];
                for (std::size_t q = 0; q < m; ++q) acc[q] += r * we[q];
            }
            for (std::size_t q = 0; q < m; ++q)
                out(static_cast<Eigen::Index>(b), static_cast<Eigen::Index>(q)) = acc[q];
        }
    };
    unsigned threads = options.threads ? options.threads : std::max(1u, std::thread::hardware_concurrency());
    threads = static_cast<unsigned>(std::min<std::size_t>(threads, seeds.size()));
    if (threads <= 1) {
        worker();
    } else {
        std::vector<std::jthread> pool;
        for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker);
    }
    return out;
}

Eigen::MatrixXd sample_covariance(const Eigen::MatrixXd& rows) {
    const auto n = rows.rows();
    if (n < 2) throw InvalidArgument("sample covariance needs at least two rows");
    const Eigen::RowVectorXd mean = rows.colwise().mean();
    const Eigen::MatrixXd centered = rows.rowwise() - mean;
    return (centered.transpose() * centered) / static_cast<double>(n - 1);
}

Eigen::MatrixXd bootstrap_v1(const AdjacencyMatrix& y, std::span<const SubgraphPattern> patterns, double alpha,
                             double beta, std::size_t B, std::uint64_t seed, const BootstrapOptions& options,
                             Eigen::MatrixXd* samples_out) {
    if (B < 2) throw InvalidArgument("bootstrap needs B >= 2 replicates");
    std::vector<std::uint64_t> seeds(B);
    for (std::size_t b = 0; b < B; ++b) seeds[b] = derive_seed(seed, b);
    Eigen::MatrixXd samples = bootstrap_samples(y, patterns, alpha, beta, seeds, options);
    Eigen::MatrixXd cov = sample_covariance(samples);
    if (samples_out) *samples_out = std::move(samples);
    return cov;
}

void write_bootstrap_csv(std::ostream& out, const Eigen::MatrixXd& samples, std::span<const SubgraphPattern> patterns) {
    if (static_cast<std::size_t>(samples.cols()) != patterns.size()) {
        throw ShapeMismatch("bootstrap samples and pattern list disagree");
    }
    out << "replicate";
    for (const auto& pattern : patterns) out << ",S_" << pattern.name();
    out << '\n';
    const auto old = out.precision(17);
    for (Eigen::Index b = 0; b < samples.rows(); ++b) {
        out << b;
        for (Eigen::Index q = 0; q < samples.cols(); ++q) out << ',' << samples(b, q);
        out << '\n';
    }
    out.precision(old);
}

std::pair<double, double> delta_hats(const AdjacencyMatrix& y, const SubgraphPattern& pattern, double alpha,
                                     double beta, const DensityOptions& options) {
    const auto kind = pattern.kind();
    if (kind != PatternKind::two_star && kind != PatternKind::triangle) {
        return delta_generic(y, pattern, alpha, beta, false, options);
    }
    const double k3 = kappa3_or_throw(alpha, beta);
    const auto s = pattern_sums(y, pattern, alpha, beta, false, options);
    if (kind == PatternKind::two_star) {
        const double c = s.t / (k3 * k3);
        const double mean_b = s.loo[0];
        return {2.0 * c / k3 - 2.0 * mean_b / (k3 * k3), 2.0 * c / k3};
    }
    const double c = s.t / (k3 * k3 * k3);
    const double two_paths = s.loo[0];
    return {3.0 * c / k3 - 3.0 * two_paths / (k3 * k3 * k3), 3.0 * c / k3};
}

Eigen::Vector3d h_hat(const AdjacencyMatrix& y, const SubgraphPattern& pattern, double alpha, double beta,
                      const DensityOptions& options) {
    const auto kind = pattern.kind();
    if (kind != PatternKind::two_star && kind != PatternKind::triangle) {
        return h_generic(y, pattern, alpha, beta, false, options);
    }
    const double k3 = kappa3_or_throw(alpha, beta);
    const auto s = pattern_sums(y, pattern, alpha, beta, false, options);
    const auto [first, second] = h_brackets(alpha, beta);
    if (kind == PatternKind::two_star) {
        const double c = s.t / (k3 * k3);
        return first * (2.0 * c / 3.0) + second * (2.0 * s.loo[0] / (3.0 * k3 * k3));
    }
    const double c = s.t / (k3 * k3 * k3);
    return first * c + second * (s.loo[0] / (k3 * k3 * k3));
}

std::pair<double, double> delta_hats_enumerated(const AdjacencyMatrix& y, const SubgraphPattern& pattern,
                                                double alpha, double beta, const DensityOptions& options) {
    return delta_generic(y, pattern, alpha, beta, true, options);
}

Eigen::Vector3d h_hat_enumerated(const AdjacencyMatrix& y, const SubgraphPattern& pattern, double alpha, double beta,
                                 const DensityOptions& options) {
    return h_generic(y, pattern, alpha, beta, true, options);
}

Eigen::Matrix<double, 2, 3> g_matrix(double alpha, double beta, double delta, EstimationMode mode) {
    Eigen::Matrix<double, 2, 3> g = Eigen::Matrix<double, 2, 3>::Zero();
    if (mode == EstimationMode::both_known) return g;
    const double k1 = alpha * (1.0 - alpha);
    const double k2 = beta * (1.0 - beta);
    const double k3 = kappa3_or_throw(alpha, beta);
    switch (mode) {
        case EstimationMode::alpha_known:
            require_nonzero(delta, "delta");
            g(1, 0) = (k1 - k2) / (delta * k3 * k3);
            g(1, 1) = 1.0 / (delta * k3);
            break;
        case EstimationMode::beta_known:
            require_nonzero(1.0 - delta, "1 - delta");
            g(0, 0) = (k1 - k2) / ((1.0 - delta) * k3 * k3);
            g(0, 1) = 1.0 / ((1.0 - delta) * k3);
            break;
        case EstimationMode::both_unknown: {
            require_nonzero(delta, "delta");
            require_nonzero(1.0 - delta, "1 - delta");
            const double da = (1.0 - delta) * k3 * k3;
            const double db = delta * k3 * k3;
            g(0, 0) = ((1.0 - 2.0 * beta) * alpha + beta * beta) / da;
            g(0, 1) = (alpha - 2.0 * beta) / da;
            g(0, 2) = 1.0 / da;
            g(1, 0) = -((1.0 - 2.0 * alpha) * beta + alpha * alpha) / db;
            g(1, 1) = (beta - 2.0 * alpha + 1.0) / db;
            g(1, 2) = -1.0 / db;
            break;
        }
        case EstimationMode::both_known: break;
    }
    return g;
}

JointCovariance assemble_vp(const Eigen::MatrixXd& v1, const Eigen::MatrixXd& delta_hat, const Eigen::MatrixXd& g,
                            const Eigen::MatrixXd& sigma, const Eigen::MatrixXd& h) {
    const auto m = v1.rows();
    const auto shape = [](const Eigen::MatrixXd& x, Eigen::Index r, Eigen::Index c, const char* name) {
        if (x.rows() != r || x.cols() != c) {
            throw ShapeMismatch(std::string(name) + " is " + std::to_string(x.rows()) + "x" +
                                std::to_string(x.cols()) + ", expected " + std::to_string(r) + "x" +
                                std::to_string(c));
        }
    };
    shape(v1, m, m, "v1");
    shape(delta_hat, m, 2, "delta_hat");
    shape(g, 2, 3, "g");
    shape(sigma, 3, 3, "sigma");
    shape(h, m, 3, "h");

    JointCovariance vp;
    vp.m = static_cast<std::size_t>(m);
    vp.v1 = v1;
    vp.delta_hat = delta_hat;
    vp.g_hat = g;
    vp.sigma_hat = sigma;
    vp.h_hat = h;
    const Eigen::MatrixXd dg = delta_hat * g;
    vp.v2 = dg * sigma * dg.transpose();
    const Eigen::MatrixXd cross = h * dg.transpose();
    vp.v3 = 0.5 * (cross + cross.transpose());
    const Eigen::MatrixXd total = vp.v1 + vp.v2 + vp.v3;
    vp.v_total = 0.5 * (total + total.transpose());
    return vp;
}

JointIntervals joint_cis(std::span<const DensityEstimate> estimates, const JointCovariance& vp, std::size_t p,
                         double level) {
    const auto m = estimates.size();
    if (vp.m != m || static_cast<std::size_t>(vp.v_total.rows()) != m) {
        throw ShapeMismatch("covariance has " + std::to_string(vp.m) + " patterns, estimates " + std::to_string(m));
    }
    const double z = two_sided_z(level);
    const double n = static_cast<double>(p) * static_cast<double>(p - 1) / 2.0;
    JointIntervals out;

    const auto floored = [&](double v, const std::string& what) {
        if (v < -1e-8) throw NegativeVariance(what + " has negative estimated variance " + std::to_string(v));
        if (v < 0.0) {
            out.variance_floored = true;
            return 0.0;
        }
        return v;
    };

    std::optional<std::size_t> star, tri;
    for (std::size_t q = 0; q < m; ++q) {
        const auto& est = estimates[q];
        const auto qi = static_cast<Eigen::Index>(q);
        const double se = std::sqrt(floored(vp.v_total(qi, qi), est.pattern.name()) / n);
        out.standard_error.push_back(se);
        out.density.push_back({est.c_hat - z * se, est.c_hat + z * se, level});
        const auto kind = est.pattern.kind();
        if (kind == PatternKind::two_star || kind == PatternKind::triangle) {
            const double scale = count_scale(est.pattern, p);
            out.count_estimate.push_back(est.c_hat * scale);
            out.count.push_back(Interval{out.density.back().lower * scale, out.density.back().upper * scale, level});
            if (kind == PatternKind::two_star && !star) star = q;
            if (kind == PatternKind::triangle && !tri) tri = q;
        } else {
            out.count_estimate.push_back(std::nullopt);
            out.count.push_back(std::nullopt);
        }
        if (std::abs(1.0 - est.alpha_used - est.beta_used) < 0.1) out.unstable = true;
    }

    if (star && tri && estimates[*star].c_hat != 0.0) {
        const double c2 = estimates[*star].c_hat;
        const double ct = estimates[*tri].c_hat;
        const auto i = static_cast<Eigen::Index>(*star);
        const auto j = static_cast<Eigen::Index>(*tri);
        const Eigen::Vector2d grad(-ct / (c2 * c2), 1.0 / c2);
        Eigen::Matrix2d block;
        block << vp.v_total(i, i), vp.v_total(i, j), vp.v_total(j, i), vp.v_total(j, j);
        const double var = floored(grad.dot(block * grad), "clustering coefficient") / n;
        const double gamma = ct / c2;
        out.clustering = gamma;
        out.clustering_ci = Interval{gamma - z * std::sqrt(var), gamma + z * std::sqrt(var), level};
    }
    return out;
}

}  // namespace noisynet
