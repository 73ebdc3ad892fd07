#pragma once
// Replicated Monte-Carlo experiments: one ground-truth graph per scenario,
// fresh noisy replicates per replication, point estimates and intervals
// scored against the truth.

#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "noisynet/generator.hpp"
#include "noisynet/moments.hpp"

namespace noisynet {

struct SimulationConfig {
    std::size_t p = 30;
    double delta = 0.1;
    double alpha = 0.05;
    double beta = 0.05;
    std::uint64_t two_star_target = 100;
    std::uint64_t triangle_target = 15;
    std::size_t replications = 500;
    // 0 skips the bootstrap: no density, count or clustering intervals.
    std::size_t bootstrap_B = 500;
    EstimationMode mode = EstimationMode::both_unknown;
    std::uint64_t base_seed = 1;
    double ci_level = 0.95;
    unsigned threads = 0;  // 0: hardware concurrency
    FixedPointOptions fixed_point;
    GeneratorOptions generator;

    void validate() const;
};

// Rows 1-16 of the reference grid: p in {30, 50, 100, 200}, delta in
// {.1, .2}, beta in {.05, .20} (fastest), alpha = .05.
SimulationConfig table1_row(int row);

struct CoverageStats {
    double rf = 0.0;      // fraction of intervals covering the truth
    double length = 0.0;  // mean interval length
    std::size_t n = 0;    // intervals scored
};

struct SimulationReport {
    SimulationConfig config;
    // Truth of the generated graph.
    double delta_true = 0.0;
    double n2s_true = 0.0;
    double ntri_true = 0.0;
    double gamma_true = 0.0;

    double mae_alpha = 0.0, mae_beta = 0.0, mae_delta = 0.0;
    double mae_n2s = 0.0, mae_ntri = 0.0, mae_gamma = 0.0;
    CoverageStats delta, n2s, ntri, gamma;

    std::size_t completed = 0;
    std::map<std::string, std::size_t> failures;  // error kind -> replications
    double wall_seconds = 0.0;

    std::size_t failure_count() const;
};

// Deterministic given base_seed, whatever the thread count. Throws
// TargetNotReached if the ground truth cannot be generated.
SimulationReport run_scenario(const SimulationConfig& cfg);

struct GridRow {
    SimulationConfig config;
    std::optional<SimulationReport> report;
    std::string error;  // empty on success
};

// Runs each scenario in turn; a scenario error is recorded, not thrown.
std::vector<GridRow> run_grid(const std::vector<SimulationConfig>& configs);

// Columns: p, beta, delta, N2s, Ntri, gamma, mae_alpha, mae_beta, mae_delta,
// mae_N2s, mae_Ntri, mae_gamma, rf_delta, len_delta, rf_N2s, len_N2s, rf_Ntri,
// len_Ntri, rf_gamma, len_gamma, failures.
void write_report_csv(std::ostream& out, const std::vector<GridRow>& rows);

}  // namespace noisynet
