#pragma once
// End-to-end estimation from one to three noisy replicates: error rates and
// edge density, then densities of the requested patterns with joint
// intervals.

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "noisynet/bootstrap.hpp"
#include "noisynet/density.hpp"
#include "noisynet/moments.hpp"

namespace noisynet {

struct PipelineOptions {
    std::optional<double> alpha;  // known type I rate
    std::optional<double> beta;   // known type II rate
    std::vector<SubgraphPattern> patterns;
    std::size_t bootstrap_B = 500;  // 0: point estimates only
    std::uint64_t seed = 1;
    double level = 0.95;
    unsigned threads = 0;
    FixedPointOptions fixed_point;
    DensityOptions density;
};

struct PipelineResult {
    EstimationMode mode = EstimationMode::both_unknown;
    MomentTriple moments;
    RateEstimate rates;
    std::vector<DensityEstimate> densities;
    std::optional<JointCovariance> covariance;
    std::optional<JointIntervals> intervals;
    Eigen::MatrixXd bootstrap_samples;
    std::vector<std::string> warnings;
};

// Mode from what is known: both rates -> both_known (one replicate is
// enough); one rate -> two replicates; neither -> three replicates. A single
// network with an unknown rate is refused with InvalidArgument, as are too few
// replicates for the mode.
EstimationMode select_mode(std::size_t replicates, bool alpha_known, bool beta_known);

PipelineResult estimate_network(std::span<const AdjacencyMatrix> replicates, const PipelineOptions& options);

}  // namespace noisynet
