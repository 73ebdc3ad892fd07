#include "noisynet/pipeline.hpp"

#include "noisynet/errors.hpp"

namespace noisynet {

EstimationMode select_mode(std::size_t replicates, bool alpha_known, bool beta_known) {
    if (replicates == 0) throw InvalidArgument("no networks given");
    if (alpha_known && beta_known) return EstimationMode::both_known;
    if (replicates == 1) {
        throw InvalidArgument(
            "a single noisy network does not identify the error rates: (A, alpha, beta) and "
            "(complement of A, 1-beta, 1-alpha) produce the same distribution, so it is impossible to produce a "
            "consistent estimate. Supply 2 replicates with --alpha or --beta, 3 replicates, or both rates");
    }
    if (alpha_known) return EstimationMode::alpha_known;
    if (beta_known) return EstimationMode::beta_known;
    if (replicates < 3) {
        throw InvalidArgument("with both error rates unknown three replicates are needed (got " +
                              std::to_string(replicates) + "); or supply --alpha or --beta");
    }
    return EstimationMode::both_unknown;
}

PipelineResult estimate_network(std::span<const AdjacencyMatrix> replicates, const PipelineOptions& options) {
    PipelineResult out;
    out.mode = select_mode(replicates.size(), options.alpha.has_value(), options.beta.has_value());
    for (const auto& y : replicates.subspan(1)) {
        if (y.size() != replicates.front().size()) throw DimensionMismatch("replicates have different vertex counts");
    }
    const auto needed = out.mode == EstimationMode::both_unknown ? 3u : out.mode == EstimationMode::both_known ? 1u : 2u;
    if (replicates.size() > needed) {
        out.warnings.push_back("only the first " + std::to_string(needed) + " network(s) are used in this mode");
    }
    out.moments = moments_from_replicates(replicates.first(std::min<std::size_t>(replicates.size(), 3)));

    switch (out.mode) {
        case EstimationMode::both_known:
            out.rates = estimate_both_known(*options.alpha, *options.beta, out.moments, options.level);
            break;
        case EstimationMode::alpha_known:
            out.rates = estimate_alpha_known(*options.alpha, out.moments, options.level);
            break;
        case EstimationMode::beta_known:
            out.rates = estimate_beta_known(*options.beta, out.moments, options.level);
            break;
        case EstimationMode::both_unknown:
            out.rates = estimate_all_unknown(out.moments, options.fixed_point, options.level);
            break;
    }
    if (out.rates.out_of_range) out.warnings.push_back("a rate or density estimate fell outside [0, 1]; reported clamped");
    if (out.rates.negative_variance) out.warnings.push_back("estimated variance of delta was negative; interval collapsed");

    if (options.patterns.empty()) return out;
    const auto& y = replicates.front();
    const double a = out.rates.alpha_hat;
    const double b = out.rates.beta_hat;
    for (const auto& pattern : options.patterns) out.densities.push_back(c_hat(y, pattern, a, b, options.density));
    if (options.bootstrap_B == 0) return out;

    const auto m = static_cast<Eigen::Index>(options.patterns.size());
    BootstrapOptions boot;
    boot.threads = options.threads;
    boot.density = options.density;
    boot.projection = RateProjection::full;
    bool projected = false;
    solve_gamma_projected(a, b, RateProjection::full, &projected);
    if (projected) {
        out.warnings.push_back("no bootstrap sampler matches the estimated rates; draws use the nearest admissible rates");
    }
    const Eigen::MatrixXd v1 =
        bootstrap_v1(y, options.patterns, a, b, options.bootstrap_B, options.seed, boot, &out.bootstrap_samples);
    Eigen::MatrixXd delta(m, 2), h(m, 3);
    for (Eigen::Index q = 0; q < m; ++q) {
        const auto& pattern = options.patterns[static_cast<std::size_t>(q)];
        const auto [da, db] = delta_hats(y, pattern, a, b, options.density);
        delta(q, 0) = da;
        delta(q, 1) = db;
        h.row(q) = h_hat(y, pattern, a, b, options.density).transpose();
    }
    const Eigen::MatrixXd g = g_matrix(a, b, out.rates.delta_hat, out.mode);
    const Eigen::MatrixXd sigma = sigma_matrix(a, b, out.rates.delta_hat).entries;
    out.covariance = assemble_vp(v1, delta, g, sigma, h);
    out.intervals = joint_cis(out.densities, *out.covariance, y.size(), options.level);
    if (out.intervals->variance_floored) out.warnings.push_back("a slightly negative variance was floored at zero");
    if (out.intervals->unstable) out.warnings.push_back("1 - alpha - beta < 0.1: density intervals are unstable");
    return out;
}

}  // namespace noisynet
