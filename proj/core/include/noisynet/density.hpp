#pragma once
// Noise-corrected subgraph densities.
//
// For a pattern with slots (u_l, v_l, tau_l) and an embedding x in V,
//   phi_l(Y) = (Y - a)^tau (1 - b - Y)^(1 - tau)
//   T_hat = |V|^-1 sum_V prod_l phi_l,   C_hat = T_hat / (1 - a - b)^k.
// Edge, two-star and triangle use O(p^2) / O(p^3) matrix identities; every
// other pattern is enumerated.

#include <cstdint>
#include <optional>
#include <vector>

#include <Eigen/Dense>

#include "noisynet/adjacency.hpp"
#include "noisynet/pattern.hpp"

namespace noisynet {

struct DensityOptions {
    // Maximum number of slot evaluations for explicit enumeration.
    std::uint64_t work_budget = 1'000'000'000ULL;
};

// Sums over V shared by the density, its derivative terms and the bootstrap.
struct PatternSums {
    double cardinality = 0.0;  // |V|
    double t = 0.0;            // mean of prod_l phi_l
    // Leave-one-out means: loo[j] = mean of prod_{l != j} phi_l.
    std::vector<double> loo;
    // Symmetric p x p, zero diagonal, only when requested:
    //   w(a,b) = sum_j (-1)^(1-tau_j) sum_{x in V : slot j on {a,b}} prod_{l != j} phi_l.
    Eigen::MatrixXd pair_weights;
};

PatternSums pattern_sums(const AdjacencyMatrix& y, const SubgraphPattern& pattern, double alpha, double beta,
                         bool with_weights = false, const DensityOptions& options = {});

// Same quantities by explicit enumeration of V, whatever the pattern.
// Throws PatternTooLarge if p < m, WorkBudgetExceeded past the budget.
PatternSums enumerate_pattern_sums(const AdjacencyMatrix& y, const SubgraphPattern& pattern, double alpha,
                                   double beta, bool with_weights = false, const DensityOptions& options = {});

struct DensityEstimate {
    SubgraphPattern pattern = SubgraphPattern::edge();
    double c_hat = 0.0;
    double t_hat = 0.0;
    double alpha_used = 0.0;
    double beta_used = 0.0;
    double cardinality_V = 0.0;
    std::optional<double> implied_count;  // two-star and triangle only
};

// Fraction of embeddings matching the pattern exactly in A.
double density_true(const AdjacencyMatrix& a, const SubgraphPattern& pattern, const DensityOptions& options = {});

// Throws DegenerateDenominator if |1 - alpha - beta| < 1e-10.
DensityEstimate c_hat(const AdjacencyMatrix& y, const SubgraphPattern& pattern, double alpha, double beta,
                      const DensityOptions& options = {});

// Factor turning a density into an unordered count: p(p-1)(p-2)/2 for the
// two-star, p(p-1)(p-2)/6 for the triangle. Throws UnsupportedKind otherwise.
double count_scale(const SubgraphPattern& pattern, std::size_t p);

double implied_counts(const DensityEstimate& est, std::size_t p);

// triangle.c_hat / two_star.c_hat; throws ZeroTwoStars on a zero denominator.
double clustering_estimate(const DensityEstimate& two_star, const DensityEstimate& triangle);

}  // namespace noisynet
