#pragma once
// Simple undirected graphs as dense symmetric 0/1 matrices, the edge-flip
// noise model, and exact raw subgraph counts.

#include <cstddef>
#include <cstdint>
#include <span>
#include <utility>
#include <vector>

namespace noisynet {

using Edge = std::pair<std::size_t, std::size_t>;

// p x p symmetric binary matrix with zero diagonal. Stored dense, one byte per
// entry. Every mutator keeps symmetry and the zero diagonal.
class AdjacencyMatrix {
public:
    // Empty graph on p >= 2 vertices.
    explicit AdjacencyMatrix(std::size_t p);

    static AdjacencyMatrix complete(std::size_t p);
    static AdjacencyMatrix from_edges(std::size_t p, std::span<const Edge> edges);
    // Row-major p*p entries; throws InvalidArgument unless symmetric 0/1 with zero diagonal.
    static AdjacencyMatrix from_dense(std::size_t p, std::span<const std::uint8_t> entries);

    std::size_t size() const noexcept { return p_; }
    std::size_t pair_count() const noexcept { return p_ * (p_ - 1) / 2; }

    bool operator()(std::size_t i, std::size_t j) const noexcept { return data_[i * p_ + j] != 0; }
    std::uint8_t at(std::size_t i, std::size_t j) const noexcept { return data_[i * p_ + j]; }
    std::span<const std::uint8_t> row(std::size_t i) const noexcept {
        return {data_.data() + i * p_, p_};
    }

    // Sets both (i,j) and (j,i). Requires i != j.
    void set_edge(std::size_t i, std::size_t j, bool present);

    std::size_t edge_count() const noexcept;
    std::vector<std::size_t> degrees() const;
    std::vector<Edge> edges() const;  // i < j, lexicographic order
    AdjacencyMatrix complement() const;

    friend bool operator==(const AdjacencyMatrix&, const AdjacencyMatrix&) = default;

private:
    std::size_t p_;
    std::vector<std::uint8_t> data_;
};

// Edge-flip error rates: alpha = P(Y=1 | A=0), beta = P(Y=0 | A=1).
struct NoiseModel {
    double alpha = 0.0;
    double beta = 0.0;

    // Throws InvalidArgument unless both rates lie in [0, 1].
    void validate() const;
    // 1 - alpha - beta, the factor every correction divides by.
    double kappa3() const noexcept { return 1.0 - alpha - beta; }
    // P(Y_ij = 1) for a pair whose true state is `a`.
    double edge_probability(bool a) const noexcept { return a ? 1.0 - beta : alpha; }

    friend bool operator==(const NoiseModel&, const NoiseModel&) = default;
};

// Exact targets for the constrained generator.
struct GraphTargets {
    std::size_t p = 0;
    std::uint64_t edge_count = 0;
    std::uint64_t two_star_count = 0;
    std::uint64_t triangle_count = 0;

    // edge_count = floor(delta * p(p-1)/2).
    static GraphTargets from_density(std::size_t p, double delta, std::uint64_t two_stars,
                                     std::uint64_t triangles);
    void validate() const;
};

double edge_density(const AdjacencyMatrix& a) noexcept;

// Unordered connected triples, open and closed: sum_i C(d_i, 2).
std::uint64_t count_two_stars(const AdjacencyMatrix& a);

// trace(A^3)/6, exact. Uses bit-packed rows: O(|E| p / 64).
std::uint64_t count_triangles(const AdjacencyMatrix& a);

// 3 N_tri / N_2*. Throws ZeroTwoStars when the graph has no two-stars.
double clustering_coefficient(const AdjacencyMatrix& a);

// One noisy observation Y of A. Pairs are visited in row-major i<j order, one
// uniform draw each, so a seed fixes Y bit for bit.
AdjacencyMatrix sample_noisy(const AdjacencyMatrix& a, const NoiseModel& noise, std::uint64_t seed);

// (A*, (1-beta, 1-alpha)) with A* the off-diagonal complement of A. Y has the
// same distribution under both models.
std::pair<AdjacencyMatrix, NoiseModel> dual_model(const AdjacencyMatrix& a, const NoiseModel& noise);

}  // namespace noisynet
