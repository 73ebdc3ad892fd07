#pragma once
// Bootstrap for the leading term of sqrt(N)(C_hat - C), the analytic pieces
// for plug-in error rates, and joint intervals for several densities.
//
// A bootstrap draw keeps Y_ij with probability g1, sets it to 1 with
// probability g2 and to 0 otherwise, so that E(Y'|Y) = g1 Y + g2 and
// Var(Y'|Y) = Y (b - a) + a (1 - b).

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "noisynet/adjacency.hpp"
#include "noisynet/density.hpp"
#include "noisynet/moments.hpp"
#include "noisynet/pattern.hpp"

namespace noisynet {

struct GammaPair {
    double gamma1 = 0.0;
    double gamma2 = 0.0;
};

// g2 = (1 - sqrt(1 - 4a(1-b)))/2 and g1 the smaller positive root of
// g1^2 - (1 - 2 g2) g1 + (b - a) = 0. Throws NoValidGamma if the pair does not
// satisfy g1 > 0, g2 > 0, g1 + g2 < 1.
GammaPair solve_gamma(double alpha, double beta);

// Smallest rate used when sampling rates are projected.
inline constexpr double kMinSamplingRate = 1e-6;

enum class RateProjection {
    none,   // rates used as given
    clamp,  // each rate moved into [kMinSamplingRate, 1 - kMinSamplingRate]
    full,   // clamp, then cap a(1-b) and b(1-a) just below 1/4
};

// solve_gamma on projected rates. Plug-in estimates on small graphs can leave
// the region where an admissible pair exists. Sets *projected when a rate was
// moved.
GammaPair solve_gamma_projected(double alpha, double beta, RateProjection projection = RateProjection::full,
                                bool* projected = nullptr);

AdjacencyMatrix sample_dagger(const AdjacencyMatrix& y, GammaPair g, std::uint64_t seed);

// S' = sqrt(N) / (k3^k |V|) sum_j (-1)^(1-tau_j) sum_V (Y' - g1 Y - g2)_j prod_{l != j} phi_l(Y).
double s_dagger(const AdjacencyMatrix& y, const AdjacencyMatrix& ydag, const SubgraphPattern& pattern, double alpha,
                double beta, GammaPair g, const DensityOptions& options = {});
// Real-valued Y' (upper triangle is read).
double s_dagger(const AdjacencyMatrix& y, const Eigen::MatrixXd& ydag, const SubgraphPattern& pattern, double alpha,
                double beta, GammaPair g, const DensityOptions& options = {});

struct BootstrapOptions {
    unsigned threads = 0;  // 0: hardware concurrency
    // Rates used to draw Y'; the weights always use the rates as given.
    RateProjection projection = RateProjection::none;
    DensityOptions density;
};

// One row per replicate, one column per pattern. Replicate b draws its Y'
// from seeds[b] exactly as sample_dagger does.
Eigen::MatrixXd bootstrap_samples(const AdjacencyMatrix& y, std::span<const SubgraphPattern> patterns, double alpha,
                                  double beta, std::span<const std::uint64_t> seeds,
                                  const BootstrapOptions& options = {});

// Sample covariance (divisor n-1) of the rows, two-pass.
Eigen::MatrixXd sample_covariance(const Eigen::MatrixXd& rows);

// B replicates with seeds derive_seed(seed, b). Throws InvalidArgument if B < 2.
Eigen::MatrixXd bootstrap_v1(const AdjacencyMatrix& y, std::span<const SubgraphPattern> patterns, double alpha,
                             double beta, std::size_t B, std::uint64_t seed, const BootstrapOptions& options = {},
                             Eigen::MatrixXd* samples_out = nullptr);

void write_bootstrap_csv(std::ostream& out, const Eigen::MatrixXd& samples, std::span<const SubgraphPattern> patterns);

// (Delta_alpha, Delta_beta) plug-ins. Two-star and triangle use closed forms.
std::pair<double, double> delta_hats(const AdjacencyMatrix& y, const SubgraphPattern& pattern, double alpha,
                                     double beta, const DensityOptions& options = {});
Eigen::Vector3d h_hat(const AdjacencyMatrix& y, const SubgraphPattern& pattern, double alpha, double beta,
                      const DensityOptions& options = {});
// Same quantities from explicitly enumerated sums.
std::pair<double, double> delta_hats_enumerated(const AdjacencyMatrix& y, const SubgraphPattern& pattern,
                                                double alpha, double beta, const DensityOptions& options = {});
Eigen::Vector3d h_hat_enumerated(const AdjacencyMatrix& y, const SubgraphPattern& pattern, double alpha, double beta,
                                 const DensityOptions& options = {});

// Rows (alpha, beta), columns (u1, u2, u3). The row of a known rate is zero;
// both_known gives the zero matrix.
Eigen::Matrix<double, 2, 3> g_matrix(double alpha, double beta, double delta, EstimationMode mode);

struct JointCovariance {
    std::size_t m = 0;
    Eigen::MatrixXd v1, v2, v3, v_total;
    std::size_t bootstrap_B = 0;
    Eigen::MatrixXd delta_hat;  // m x 2
    Eigen::MatrixXd h_hat;      // m x 3
    Eigen::MatrixXd g_hat;      // 2 x 3
    Eigen::MatrixXd sigma_hat;  // 3 x 3
};

// v2 = D G S G' D', v3 = (H G' D' + D G H')/2, v_total = v1 + v2 + v3
// symmetrized. Throws ShapeMismatch.
JointCovariance assemble_vp(const Eigen::MatrixXd& v1, const Eigen::MatrixXd& delta_hat, const Eigen::MatrixXd& g,
                            const Eigen::MatrixXd& sigma, const Eigen::MatrixXd& h);

struct JointIntervals {
    std::vector<Interval> density;
    std::vector<std::optional<Interval>> count;  // two-star and triangle only
    std::vector<std::optional<double>> count_estimate;
    std::optional<double> clustering;
    std::optional<Interval> clustering_ci;
    std::vector<double> standard_error;  // sqrt(v_total[q,q] / N)
    bool variance_floored = false;
    bool unstable = false;  // 1 - alpha - beta < 0.1
};

// Intervals C_hat -/+ z sqrt(v_total[q,q] / N). The clustering interval uses
// the delta method on triangle/two-star whenever both are present.
// Diagonal entries in [-1e-8, 0) are floored at zero; lower ones throw
// NegativeVariance.
JointIntervals joint_cis(std::span<const DensityEstimate> estimates, const JointCovariance& vp, std::size_t p,
                         double level = 0.95);

}  // namespace noisynet
