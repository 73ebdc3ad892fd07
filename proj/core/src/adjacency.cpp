#include "noisynet/adjacency.hpp"

#include <bit>
#include <cmath>
#include <string>

#include "noisynet/errors.hpp"
#include "noisynet/rng.hpp"

namespace noisynet {

AdjacencyMatrix::AdjacencyMatrix(std::size_t p) : p_(p), data_(p * p, 0) {
    if (p < 2) throw InvalidArgument("an adjacency matrix needs at least 2 vertices");
}

AdjacencyMatrix AdjacencyMatrix::complete(std::size_t p) {
    AdjacencyMatrix a(p);
    for (std::size_t i = 0; i < p; ++i)
        for (std::size_t j = 0; j < p; ++j) a.data_[i * p + j] = (i != j);
    return a;
}

AdjacencyMatrix AdjacencyMatrix::from_edges(std::size_t p, std::span<const Edge> edges) {
    AdjacencyMatrix a(p);
    for (const auto& [u, v] : edges) {
        if (u >= p || v >= p) {
            throw InvalidArgument("edge (" + std::to_string(u) + "," + std::to_string(v) +
                                  ") out of range for p=" + std::to_string(p));
        }
        if (u == v) throw InvalidArgument("self-loop at vertex " + std::to_string(u));
        a.set_edge(u, v, true);
    }
    return a;
}

AdjacencyMatrix AdjacencyMatrix::from_dense(std::size_t p, std::span<const std::uint8_t> entries) {
    if (entries.size() != p * p) throw DimensionMismatch("dense matrix must have p*p entries");
    AdjacencyMatrix a(p);
    for (std::size_t i = 0; i < p; ++i) {
        if (entries[i * p + i] != 0) throw InvalidArgument("non-zero diagonal at row " + std::to_string(i));
        for (std::size_t j = 0; j < p; ++j) {
            const auto v = entries[i * p + j];
            if (v > 1) throw InvalidArgument("entries must be 0 or 1");
            if (v != entries[j * p + i]) {
                throw InvalidArgument("matrix is not symmetric at (" + std::to_string(i) + "," +
                                      std::to_string(j) + ")");
            }
            a.data_[i * p + j] = v;
        }
    }
    return a;
}

void AdjacencyMatrix::set_edge(std::size_t i, std::size_t j, bool present) {
    if (i == j) throw InvalidArgument("self-loops are not allowed");
    data_[i * p_ + j] = present;
    data_[j * p_ + i] = present;
}

std::size_t AdjacencyMatrix::edge_count() const noexcept {
    std::size_t n = 0;
    for (std::size_t i = 0; i < p_; ++i)
        for (std::size_t j = i + 1; j < p_; ++j) n += data_[i * p_ + j];
    return n;
}

std::vector<std::size_t> AdjacencyMatrix::degrees() const {
    std::vector<std::size_t> d(p_, 0);
    for (std::size_t i = 0; i < p_; ++i)
        for (std::size_t j = 0; j < p_; ++j) d[i] += data_[i * p_ + j];
    return d;
}

std::vector<Edge> AdjacencyMatrix::edges() const {
    std::vector<Edge> out;
    for (std::size_t i = 0; i < p_; ++i)
        for (std::size_t j = i + 1; j < p_; ++j)
            if (data_[i * p_ + j]) out.emplace_back(i, j);
    return out;
}

AdjacencyMatrix AdjacencyMatrix::complement() const {
    AdjacencyMatrix c(p_);
    for (std::size_t i = 0; i < p_; ++i)
        for (std::size_t j = 0; j < p_; ++j) c.data_[i * p_ + j] = (i != j) && !data_[i * p_ + j];
    return c;
}

void NoiseModel::validate() const {
    if (!(alpha >= 0.0 && alpha <= 1.0) || !(beta >= 0.0 && beta <= 1.0)) {
        throw InvalidArgument("error rates must lie in [0, 1]");
    }
}

GraphTargets GraphTargets::from_density(std::size_t p, double delta, std::uint64_t two_stars,
                                        std::uint64_t triangles) {
    const double pairs = static_cast<double>(p) * static_cast<double>(p - 1) / 2.0;
    // Guard against 0.2*435 landing at 86.99999999.
    const auto edges = static_cast<std::uint64_t>(std::floor(delta * pairs + 1e-9));
    GraphTargets t{p, edges, two_stars, triangles};
    t.validate();
    return t;
}

void GraphTargets::validate() const {
    if (p < 2) throw InvalidArgument("targets need p >= 2");
    if (edge_count > p * (p - 1) / 2) throw InvalidArgument("edge target exceeds p(p-1)/2");
    if (two_star_count < 3 * triangle_count) {
        throw InvalidArgument("two-star target must be at least 3 x triangle target");
    }
}

double edge_density(const AdjacencyMatrix& a) noexcept {
    return static_cast<double>(a.edge_count()) / static_cast<double>(a.pair_count());
}

std::uint64_t count_two_stars(const AdjacencyMatrix& a) {
    std::uint64_t total = 0;
    for (const std::uint64_t d : a.degrees())
        if (d >= 2) total += d * (d - 1) / 2;
    return total;
}

namespace {

struct BitRows {
    std::size_t words;
    std::vector<std::uint64_t> bits;

    explicit BitRows(const AdjacencyMatrix& a) : words((a.size() + 63) / 64), bits(a.size() * words, 0) {
        const auto p = a.size();
        for (std::size_t i = 0; i < p; ++i) {
            const auto r = a.row(i);
            for (std::size_t j = 0; j < p; ++j)
                if (r[j]) bits[i * words + j / 64] |= std::uint64_t{1} << (j % 64);
        }
    }

    std::uint64_t common(std::size_t i, std::size_t j) const noexcept {
        std::uint64_t n = 0;
        const auto* x = bits.data() + i * words;
        const auto* y = bits.data() + j * words;
        for (std::size_t w = 0; w < words; ++w) n += std::popcount(x[w] & y[w]);
        return n;
    }
};

}  // namespace

std::uint64_t count_triangles(const AdjacencyMatrix& a) {
    const BitRows rows(a);
    std::uint64_t sum = 0;
    const auto p = a.size();
    for (std::size_t i = 0; i < p; ++i) {
        const auto r = a.row(i);
        for (std::size_t j = i + 1; j < p; ++j)
            if (r[j]) sum += rows.common(i, j);
    }
    // Each triangle is seen once per edge.
    return sum / 3;
}

double clustering_coefficient(const AdjacencyMatrix& a) {
    const auto two_stars = count_two_stars(a);
    if (two_stars == 0) throw ZeroTwoStars("clustering coefficient undefined: graph has no two-stars");
    return 3.0 * static_cast<double>(count_triangles(a)) / static_cast<double>(two_stars);
}

AdjacencyMatrix sample_noisy(const AdjacencyMatrix& a, const NoiseModel& noise, std::uint64_t seed) {
    noise.validate();
    Rng rng(seed);
    const auto p = a.size();
    AdjacencyMatrix y(p);
    for (std::size_t i = 0; i < p; ++i) {
        const auto r = a.row(i);
        for (std::size_t j = i + 1; j < p; ++j) {
            const double u = uniform01(rng);
            const bool observed = r[j] ? (u >= noise.beta) : (u < noise.alpha);
            if (observed) y.set_edge(i, j, true);
        }
    }
    return y;
}

std::pair<AdjacencyMatrix, NoiseModel> dual_model(const AdjacencyMatrix& a, const NoiseModel& noise) {
    return {a.complement(), NoiseModel{1.0 - noise.beta, 1.0 - noise.alpha}};
}

}  // namespace noisynet
