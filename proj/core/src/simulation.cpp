#include "noisynet/simulation.hpp"

#include <atomic>
#include <chrono>
#include <cmath>
#include <ostream>
#include <thread>

#include "noisynet/bootstrap.hpp"
#include "noisynet/density.hpp"
#include "noisynet/errors.hpp"
#include "noisynet/rng.hpp"

namespace noisynet {

void SimulationConfig::validate() const {
    if (p < 3) throw InvalidArgument("simulation needs p >= 3");
    if (replications < 1) throw InvalidArgument("replications must be at least 1");
    if (bootstrap_B == 1) throw InvalidArgument("bootstrap needs B >= 2 (or 0 to skip)");
    if (!(delta > 0.0 && delta < 1.0)) throw InvalidArgument("delta must lie in (0, 1)");
    NoiseModel{alpha, beta}.validate();
    if (!(ci_level > 0.0 && ci_level < 1.0)) throw InvalidArgument("ci level must lie in (0, 1)");
}

SimulationConfig table1_row(int row) {
    struct Target {
        std::size_t p;
        double delta;
        std::uint64_t two_stars, triangles;
    };
    static constexpr Target targets[] = {
        {30, 0.1, 100, 15},     {30, 0.2, 430, 40},      {50, 0.1, 1260, 50},    {50, 0.2, 2300, 140},
        {100, 0.1, 5000, 150},  {100, 0.2, 22000, 1800}, {200, 0.1, 40000, 1500}, {200, 0.2, 155000, 10000},
    };
    if (row < 1 || row > 16) throw InvalidArgument("table row must be in 1..16");
    const auto& t = targets[(row - 1) / 2];
    SimulationConfig cfg;
    cfg.p = t.p;
    cfg.delta = t.delta;
    cfg.two_star_target = t.two_stars;
    cfg.triangle_target = t.triangles;
    cfg.alpha = 0.05;
    cfg.beta = (row % 2 == 1) ? 0.05 : 0.20;
    return cfg;
}

std::size_t SimulationReport::failure_count() const {
    std::size_t n = 0;
    for (const auto& [kind, count] : failures) n += count;
    return n;
}

namespace {

struct Record {
    std::string failure;
    double alpha = 0.0, beta = 0.0, delta = 0.0;
    double n2s = 0.0, ntri = 0.0, gamma = 0.0;
    Interval delta_ci;
    bool has_cis = false;
    Interval n2s_ci, ntri_ci, gamma_ci;
};

struct Truth {
    double delta, n2s, ntri, gamma;
};

std::size_t replicate_count(EstimationMode mode) {
    switch (mode) {
        case EstimationMode::both_unknown: return 3;
        case EstimationMode::alpha_known:
        case EstimationMode::beta_known: return 2;
        case EstimationMode::both_known: return 1;
    }
    return 3;
}

RateEstimate estimate_rates(const SimulationConfig& cfg, const MomentTriple& m) {
    switch (cfg.mode) {
        case EstimationMode::alpha_known: return estimate_alpha_known(cfg.alpha, m, cfg.ci_level);
        case EstimationMode::beta_known: return estimate_beta_known(cfg.beta, m, cfg.ci_level);
        case EstimationMode::both_known: return estimate_both_known(cfg.alpha, cfg.beta, m, cfg.ci_level);
        case EstimationMode::both_unknown: break;
    }
    return estimate_all_unknown(m, cfg.fixed_point, cfg.ci_level);
}

Record replicate(const SimulationConfig& cfg, const AdjacencyMatrix& a, std::uint64_t seed) {
    Record rec;
    try {
        const NoiseModel noise{cfg.alpha, cfg.beta};
        std::vector<AdjacencyMatrix> ys;
        for (std::size_t t = 0; t < replicate_count(cfg.mode); ++t)
            ys.push_back(sample_noisy(a, noise, derive_seed(seed, t)));
        const auto rates = estimate_rates(cfg, moments_from_replicates(ys));
        rec.alpha = rates.alpha_hat;
        rec.beta = rates.beta_hat;
        rec.delta = rates.delta_hat;
        rec.delta_ci = rates.ci_delta;

        const std::vector<SubgraphPattern> patterns{SubgraphPattern::two_star(), SubgraphPattern::triangle()};
        const auto& y = ys.front();
        std::vector<DensityEstimate> ests;
        for (const auto& pattern : patterns) ests.push_back(c_hat(y, pattern, rates.alpha_hat, rates.beta_hat));
        rec.n2s = *ests[0].implied_count;
        rec.ntri = *ests[1].implied_count;
        rec.gamma = clustering_estimate(ests[0], ests[1]);

        if (cfg.bootstrap_B == 0) return rec;
        Eigen::MatrixXd v1;
        if (rates.alpha_hat == 0.0 && rates.beta_hat == 0.0 && cfg.mode == EstimationMode::both_known) {
            // Noise-free data: every bootstrap draw equals Y.
            v1 = Eigen::MatrixXd::Zero(2, 2);
        } else {
            BootstrapOptions opts;
            opts.threads = 1;
            opts.projection = RateProjection::clamp;
            v1 = bootstrap_v1(y, patterns, rates.alpha_hat, rates.beta_hat, cfg.bootstrap_B,
                              derive_seed(seed, 1000), opts);
        }
        Eigen::MatrixXd delta(2, 2), h(2, 3);
        for (Eigen::Index q = 0; q < 2; ++q) {
            const auto [da, db] = delta_hats(y, patterns[q], rates.alpha_hat, rates.beta_hat);
            delta(q, 0) = da;
            delta(q, 1) = db;
            h.row(q) = h_hat(y, patterns[q], rates.alpha_hat, rates.beta_hat).transpose();
        }
        const Eigen::MatrixXd g = g_matrix(rates.alpha_hat, rates.beta_hat, rates.delta_hat, cfg.mode);
        const Eigen::MatrixXd sigma = sigma_matrix(rates.alpha_hat, rates.beta_hat, rates.delta_hat).entries;
        const auto vp = assemble_vp(v1, delta, g, sigma, h);
        const auto cis = joint_cis(ests, vp, a.size(), cfg.ci_level);
        rec.n2s_ci = *cis.count[0];
        rec.ntri_ci = *cis.count[1];
        rec.gamma_ci = *cis.clustering_ci;
        rec.has_cis = true;
    } catch (const Error& e) {
        rec.failure = to_string(e.kind());
    }
    return rec;
}

void score(CoverageStats& stats, const Interval& ci, double truth) {
    stats.rf += ci.contains(truth) ? 1.0 : 0.0;
    stats.length += ci.length();
    ++stats.n;
}

void finish(CoverageStats& stats) {
    if (stats.n == 0) {
        stats.rf = stats.length = std::nan("");
        return;
    }
    stats.rf /= static_cast<double>(stats.n);
    stats.length /= static_cast<double>(stats.n);
}

}  // namespace

SimulationReport run_scenario(const SimulationConfig& cfg) {
    cfg.validate();
    const auto start = std::chrono::steady_clock::now();
    const auto targets = GraphTargets::from_density(cfg.p, cfg.delta, cfg.two_star_target, cfg.triangle_target);
    const auto a = generate_constrained(targets, derive_seed(cfg.base_seed, 0), cfg.generator);

    const double n2s = static_cast<double>(count_two_stars(a));
    const double ntri = static_cast<double>(count_triangles(a));
    const Truth truth{edge_density(a), n2s, ntri, n2s > 0 ? 3.0 * ntri / n2s : 0.0};

    std::vector<Record> records(cfg.replications);
    std::atomic<std::size_t> next{0};
    const auto worker = [&] {
        for (std::size_t r = next++; r < records.size(); r = next++)
            records[r] = replicate(cfg, a, derive_seed(cfg.base_seed, r + 1));
    };
    unsigned threads = cfg.threads ? cfg.threads : std::max(1u, std::thread::hardware_concurrency());
    threads = static_cast<unsigned>(std::min<std::size_t>(threads, records.size()));
    if (threads <= 1) {
        worker();
    } else {
        std::vector<std::jthread> pool;
        for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker);
    }

    SimulationReport rep;
    rep.config = cfg;
    rep.delta_true = truth.delta;
    rep.n2s_true = truth.n2s;
    rep.ntri_true = truth.ntri;
    rep.gamma_true = truth.gamma;
    for (const auto& rec : records) {
        if (!rec.failure.empty()) {
            ++rep.failures[rec.failure];
            continue;
        }
        ++rep.completed;
        rep.mae_alpha += std::abs(rec.alpha - cfg.alpha);
        rep.mae_beta += std::abs(rec.beta - cfg.beta);
        rep.mae_delta += std::abs(rec.delta - truth.delta);
        rep.mae_n2s += std::abs(rec.n2s - truth.n2s);
        rep.mae_ntri += std::abs(rec.ntri - truth.ntri);
        rep.mae_gamma += std::abs(rec.gamma - truth.gamma);
        score(rep.delta, rec.delta_ci, truth.delta);
        if (rec.has_cis) {
            score(rep.n2s, rec.n2s_ci, truth.n2s);
            score(rep.ntri, rec.ntri_ci, truth.ntri);
            score(rep.gamma, rec.gamma_ci, truth.gamma);
        }
    }
    const double n = rep.completed ? static_cast<double>(rep.completed) : std::nan("");
    for (double* mae : {&rep.mae_alpha, &rep.mae_beta, &rep.mae_delta, &rep.mae_n2s, &rep.mae_ntri, &rep.mae_gamma})
        *mae /= n;
    for (auto* stats : {&rep.delta, &rep.n2s, &rep.ntri, &rep.gamma}) finish(*stats);
    rep.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return rep;
}

std::vector<GridRow> run_grid(const std::vector<SimulationConfig>& configs) {
    if (configs.empty()) throw InvalidArgument("simulation grid is empty");
    std::vector<GridRow> rows;
    for (const auto& cfg : configs) {
        GridRow row{cfg, std::nullopt, {}};
        try {
            row.report = run_scenario(cfg);
        } catch (const Error& e) {
            row.error = std::string(to_string(e.kind())) + ": " + e.what();
        }
        rows.push_back(std::move(row));
    }
    return rows;
}

void write_report_csv(std::ostream& out, const std::vector<GridRow>& rows) {
    out << "p,beta,delta,N2s,Ntri,gamma,mae_alpha,mae_beta,mae_delta,mae_N2s,mae_Ntri,mae_gamma,"
           "rf_delta,len_delta,rf_N2s,len_N2s,rf_Ntri,len_Ntri,rf_gamma,len_gamma,failures\n";
    const auto old = out.precision(8);
    const auto num = [&](double x) -> std::ostream& {
        if (std::isfinite(x)) out << x;
        return out;
    };
    for (const auto& row : rows) {
        const auto& c = row.config;
        out << c.p << ',' << c.beta << ',' << c.delta << ',';
        if (!row.report) {
            out << c.two_star_target << ',' << c.triangle_target << ",,,,,,,,,,,,,,,,\"" << row.error << "\"\n";
            continue;
        }
        const auto& r = *row.report;
        out << r.n2s_true << ',' << r.ntri_true << ',';
        for (const double x : {r.gamma_true, r.mae_alpha, r.mae_beta, r.mae_delta, r.mae_n2s, r.mae_ntri,
                               r.mae_gamma, r.delta.rf, r.delta.length, r.n2s.rf, r.n2s.length, r.ntri.rf,
                               r.ntri.length, r.gamma.rf, r.gamma.length}) {
            num(x) << ',';
        }
        out << r.failure_count() << '\n';
    }
    out.precision(old);
}

}  // namespace noisynet
