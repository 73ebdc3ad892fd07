#include "oracle.hpp"

#include <cmath>

namespace oracle {

using noisynet::AdjacencyMatrix;
using noisynet::SubgraphPattern;

std::uint64_t two_stars(const AdjacencyMatrix& a) {
    const auto p = a.size();
    std::uint64_t n = 0;
    for (std::size_t c = 0; c < p; ++c)
        for (std::size_t i = 0; i < p; ++i)
            for (std::size_t j = i + 1; j < p; ++j)
                if (i != c && j != c && a(c, i) && a(c, j)) ++n;
    return n;
}

std::uint64_t triangles(const AdjacencyMatrix& a) {
    const auto p = a.size();
    std::uint64_t n = 0;
    for (std::size_t i = 0; i < p; ++i)
        for (std::size_t j = i + 1; j < p; ++j)
            for (std::size_t k = j + 1; k < p; ++k)
                if (a(i, j) && a(j, k) && a(i, k)) ++n;
    return n;
}

namespace {

// Calls f(labels) for every injective assignment of m labels into p vertices.
template <typename F>
void for_each_embedding(std::size_t p, std::size_t m, F&& f) {
    std::vector<std::size_t> idx(m, 0);
    while (true) {
        bool distinct = true;
        for (std::size_t a = 0; a < m && distinct; ++a)
            for (std::size_t b = a + 1; b < m; ++b)
                if (idx[a] == idx[b]) {
                    distinct = false;
                    break;
                }
        if (distinct) f(idx);
        std::size_t d = 0;
        while (d < m && ++idx[d] == p) idx[d++] = 0;
        if (d == m) return;
    }
}

}  // namespace

Sums pattern_sums(const AdjacencyMatrix& y, const SubgraphPattern& pattern, double alpha, double beta) {
    const auto p = y.size();
    const auto k = pattern.k();
    Sums s;
    s.loo.assign(k, 0.0);
    s.weights.assign(p, std::vector<double>(p, 0.0));
    double count = 0.0;
    for_each_embedding(p, pattern.vertex_count(), [&](const std::vector<std::size_t>& v) {
        count += 1.0;
        std::vector<double> f(k);
        for (std::size_t l = 0; l < k; ++l) {
            const auto& sl = pattern.slots()[l];
            // (Y - a)^tau (1 - b - Y)^(1 - tau), written out with both powers.
            const double x = y.at(v[sl.u], v[sl.v]);
            const double t = sl.tau ? 1.0 : 0.0;
            const double a = x - alpha;
            const double b = 1.0 - beta - x;
            f[l] = (t == 0.0 ? 1.0 : std::pow(a, t)) * (t == 1.0 ? 1.0 : std::pow(b, 1.0 - t));
        }
        double all = 1.0;
        for (double x : f) all *= x;
        s.t += all;
        for (std::size_t j = 0; j < k; ++j) {
            double rest = 1.0;
            for (std::size_t l = 0; l < k; ++l)
                if (l != j) rest *= f[l];
            s.loo[j] += rest;
            const auto& sl = pattern.slots()[j];
            const double sign = sl.tau ? 1.0 : -1.0;
            s.weights[v[sl.u]][v[sl.v]] += sign * rest;
            s.weights[v[sl.v]][v[sl.u]] += sign * rest;
        }
    });
    s.cardinality = count;
    s.t /= count;
    for (auto& x : s.loo) x /= count;
    return s;
}

double density_true(const AdjacencyMatrix& a, const SubgraphPattern& pattern) {
    return pattern_sums(a, pattern, 0.0, 0.0).t;
}

double c_hat(const AdjacencyMatrix& y, const SubgraphPattern& pattern, double alpha, double beta) {
    return pattern_sums(y, pattern, alpha, beta).t / std::pow(1.0 - alpha - beta, static_cast<double>(pattern.k()));
}

double s_dagger(const AdjacencyMatrix& y, const Grid& ydag, const SubgraphPattern& pattern, double alpha,
                double beta, double g1, double g2) {
    const auto p = y.size();
    const auto k = pattern.k();
    const double n = static_cast<double>(p * (p - 1) / 2);
    double total = 0.0;
    double count = 0.0;
    for_each_embedding(p, pattern.vertex_count(), [&](const std::vector<std::size_t>& v) {
        count += 1.0;
        for (std::size_t j = 0; j < k; ++j) {
            const auto& sj = pattern.slots()[j];
            const auto a = v[sj.u];
            const auto b = v[sj.v];
            double term = ydag[a][b] - g1 * y.at(a, b) - g2;
            for (std::size_t l = 0; l < k; ++l) {
                if (l == j) continue;
                const auto& sl = pattern.slots()[l];
                const double x = y.at(v[sl.u], v[sl.v]);
                term *= sl.tau ? x - alpha : 1.0 - beta - x;
            }
            total += (sj.tau ? 1.0 : -1.0) * term;
        }
    });
    return std::sqrt(n) * total / (count * std::pow(1.0 - alpha - beta, static_cast<double>(k)));
}

std::pair<double, double> delta_hats(const AdjacencyMatrix& y, const SubgraphPattern& pattern, double alpha,
                                     double beta) {
    const auto s = pattern_sums(y, pattern, alpha, beta);
    const double k = static_cast<double>(pattern.k());
    const double k3 = 1.0 - alpha - beta;
    const double c = s.t / std::pow(k3, k);
    double da = k * c / k3;
    double db = k * c / k3;
    for (std::size_t j = 0; j < pattern.k(); ++j) {
        if (pattern.slots()[j].tau) da -= s.loo[j] / std::pow(k3, k);
        else db -= s.loo[j] / std::pow(k3, k);
    }
    return {da, db};
}

std::array<double, 3> h_hat(const AdjacencyMatrix& y, const SubgraphPattern& pattern, double alpha, double beta) {
    const double k1 = alpha * (1 - alpha);
    const double k2 = beta * (1 - beta);
    const double k3 = 1 - alpha - beta;
    const double k4 = beta - alpha;
    const double kk = std::pow(k3, static_cast<double>(pattern.k()));
    const std::array<double, 3> first{6 * k4, 3 * (k4 * k4 - k1 - k2),
                                      2 * (k4 * (-6 * alpha * beta + 3 * k3 * k3 - 4 * k3) + (1 - alpha) * (beta - 2 * alpha))};
    const std::array<double, 3> second{6 * k1, 3 * k1 * (1 - 2 * alpha), 2 * k1 * (1 - alpha) * (1 - 3 * alpha)};
    const auto s = pattern_sums(y, pattern, alpha, beta);
    double forced = 0.0;
    double loo = 0.0;
    for (std::size_t j = 0; j < pattern.k(); ++j) {
        auto slots = pattern.slots();
        const double sign = slots[j].tau ? 1.0 : -1.0;
        slots[j].tau = true;
        const auto forced_pattern = SubgraphPattern::custom(pattern.vertex_count(), slots);
        forced += sign * pattern_sums(y, forced_pattern, alpha, beta).t / kk;
        loo += sign * s.loo[j];
    }
    std::array<double, 3> h{};
    for (int i = 0; i < 3; ++i) h[i] = first[i] * forced / 3.0 + second[i] * loo / (3.0 * kk);
    return h;
}

Grid conditional_covariance(const AdjacencyMatrix& y, const std::vector<SubgraphPattern>& patterns, double alpha,
                            double beta, double g1, double g2) {
    const auto p = y.size();
    const auto m = patterns.size();
    const double n = static_cast<double>(p * (p - 1) / 2);
    std::vector<Sums> sums;
    std::vector<double> scale;
    for (const auto& pattern : patterns) {
        sums.push_back(pattern_sums(y, pattern, alpha, beta));
        scale.push_back(std::sqrt(n) /
                        (sums.back().cardinality * std::pow(1.0 - alpha - beta, static_cast<double>(pattern.k()))));
    }
    Grid cov(m, std::vector<double>(m, 0.0));
    for (std::size_t i = 0; i < p; ++i)
        for (std::size_t j = i + 1; j < p; ++j) {
            const double mean = g1 * y.at(i, j) + g2;
            const double var = mean * (1.0 - mean);
            for (std::size_t q = 0; q < m; ++q)
                for (std::size_t r = 0; r < m; ++r)
                    cov[q][r] += var * scale[q] * sums[q].weights[i][j] * scale[r] * sums[r].weights[i][j];
        }
    return cov;
}

std::array<double, 3> population_moments(double alpha, double beta, double delta) {
    std::array<double, 3> u{};
    for (int a = 0; a <= 1; ++a) {
        const double pa = a ? delta : 1.0 - delta;
        const double q = a ? 1.0 - beta : alpha;  // P(Y = 1 | A = a)
        for (int y0 = 0; y0 <= 1; ++y0)
            for (int y1 = 0; y1 <= 1; ++y1)
                for (int y2 = 0; y2 <= 1; ++y2) {
                    const double pr = pa * (y0 ? q : 1 - q) * (y1 ? q : 1 - q) * (y2 ? q : 1 - q);
                    const int second = y2 - 2 * y1 + y0;
                    u[0] += pr * y0;
                    u[1] += pr * std::abs(y1 - y0) / 2.0;
                    u[2] += pr * ((second == 1 || second == -2) ? 1.0 : 0.0) / 3.0;
                }
    }
    return u;
}

AdjacencyMatrix random_graph(std::size_t p, double density, std::uint64_t seed) {
    noisynet::Rng rng(seed);
    std::bernoulli_distribution coin(density);
    AdjacencyMatrix a(p);
    for (std::size_t i = 0; i < p; ++i)
        for (std::size_t j = i + 1; j < p; ++j)
            if (coin(rng)) a.set_edge(i, j, true);
    return a;
}

Grid to_grid(const AdjacencyMatrix& a) {
    Grid g(a.size(), std::vector<double>(a.size(), 0.0));
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < a.size(); ++j) g[i][j] = a.at(i, j);
    return g;
}

}  // namespace oracle
