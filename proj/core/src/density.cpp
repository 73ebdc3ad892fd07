#include "noisynet/density.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "noisynet/errors.hpp"
#include "noisynet/moments.hpp"

namespace noisynet {

namespace {

enum class Need { total, loo, weights };

void require_room(const SubgraphPattern& pattern, std::size_t p) {
    if (p < pattern.vertex_count()) {
        throw PatternTooLarge("pattern '" + pattern.name() + "' needs " + std::to_string(pattern.vertex_count()) +
                              " vertices but the graph has " + std::to_string(p));
    }
}

double kappa3_or_throw(double alpha, double beta) {
    const double k3 = 1.0 - alpha - beta;
    if (std::abs(k3) < kDenominatorTolerance) {
        throw DegenerateDenominator("1 - alpha - beta is numerically zero (|x| < 1e-10)");
    }
    return k3;
}

// Depth-first enumeration of injective label assignments. Slot factors are
// evaluated as soon as both endpoints are placed; a branch is cut once it
// carries enough zero factors that nothing requested can be nonzero.
class Enumerator {
public:
    Enumerator(const AdjacencyMatrix& y, const SubgraphPattern& pattern, double alpha, double beta, Need need,
               std::uint64_t budget)
        : y_(y), pattern_(pattern), alpha_(alpha), beta_(beta), need_(need), budget_(budget),
          p_(y.size()), m_(pattern.vertex_count()), k_(pattern.k()),
          ready_(m_), assign_(m_, 0), used_(p_, 0), f_(k_, 0.0), prefix_(k_ + 1), suffix_(k_ + 1),
          loo_(k_, 0.0) {
        for (std::size_t l = 0; l < k_; ++l) {
            const auto& s = pattern.slots()[l];
            ready_[std::max(s.u, s.v)].push_back(l);
        }
        if (need_ == Need::weights) weights_ = Eigen::MatrixXd::Zero(p_, p_);
        zero_limit_ = need_ == Need::total ? 1 : 2;
    }

    PatternSums run() {
        descend(0);
        PatternSums out;
        out.cardinality = pattern_.cardinality(p_);
        out.t = total_ / out.cardinality;
        out.loo.resize(k_);
        for (std::size_t j = 0; j < k_; ++j) out.loo[j] = loo_[j] / out.cardinality;
        if (need_ == Need::weights) {
            // Accumulated on (min, max); mirror into a symmetric matrix.
            Eigen::MatrixXd upper = weights_.triangularView<Eigen::StrictlyUpper>();
            out.pair_weights = upper + upper.transpose();
        }
        return out;
    }

private:
    // phi with exponents tau and 1 - tau; a zero exponent contributes 1.
    double phi(std::size_t l) const {
        const auto& s = pattern_.slots()[l];
        const double x = y_.at(assign_[s.u], assign_[s.v]);
        return s.tau ? x - alpha_ : 1.0 - beta_ - x;
    }

    void descend(std::size_t d) {
        for (std::size_t v = 0; v < p_; ++v) {
            if (used_[v]) continue;
            assign_[d] = v;
            used_[v] = 1;
            int added = 0;
            for (const auto l : ready_[d]) {
                f_[l] = phi(l);
                if (f_[l] == 0.0) ++added;
            }
            work_ += ready_[d].size() + 1;
            if (work_ > budget_) {
                throw WorkBudgetExceeded("enumerating '" + pattern_.name() + "' exceeded the work budget of " +
                                         std::to_string(budget_) + " slot visits");
            }
            zeros_ += added;
            if (zeros_ < zero_limit_) {
                if (d + 1 == m_) leaf();
                else descend(d + 1);
            }
            zeros_ -= added;
            used_[v] = 0;
        }
    }

    void leaf() {
        prefix_[0] = 1.0;
        for (std::size_t l = 0; l < k_; ++l) prefix_[l + 1] = prefix_[l] * f_[l];
        total_ += prefix_[k_];
        if (need_ == Need::total) return;
        suffix_[k_] = 1.0;
        for (std::size_t l = k_; l-- > 0;) suffix_[l] = suffix_[l + 1] * f_[l];
        for (std::size_t j = 0; j < k_; ++j) {
            const double rest = prefix_[j] * suffix_[j + 1];
            loo_[j] += rest;
            if (need_ == Need::weights) {
                const auto& s = pattern_.slots()[j];
                const auto a = assign_[s.u];
                const auto b = assign_[s.v];
                weights_(std::min(a, b), std::max(a, b)) += s.tau ? rest : -rest;
            }
        }
    }

    const AdjacencyMatrix& y_;
    const SubgraphPattern& pattern_;
    double alpha_;
    double beta_;
    Need need_;
    std::uint64_t budget_;
    std::size_t p_, m_, k_;
    std::vector<std::vector<std::size_t>> ready_;
    std::vector<std::size_t> assign_;
    std::vector<char> used_;
    std::vector<double> f_, prefix_, suffix_;
    int zeros_ = 0;
    int zero_limit_ = 1;
    std::uint64_t work_ = 0;
    double total_ = 0.0;
    std::vector<double> loo_;
    Eigen::MatrixXd weights_;
};

// Y - alpha off the diagonal, zero on it.
Eigen::MatrixXd centered(const AdjacencyMatrix& y, double alpha) {
    const auto p = y.size();
    Eigen::MatrixXd b(p, p);
    for (std::size_t i = 0; i < p; ++i) {
        const auto row = y.row(i);
        for (std::size_t j = 0; j < p; ++j) b(i, j) = i == j ? 0.0 : row[j] - alpha;
    }
    return b;
}

bool has_fast_path(const SubgraphPattern& pattern) {
    switch (pattern.kind()) {
        case PatternKind::edge:
        case PatternKind::two_star:
        case PatternKind::triangle: return true;
        default: return false;
    }
}

PatternSums fast_sums(const AdjacencyMatrix& y, const SubgraphPattern& pattern, double alpha, Need need) {
    const auto p = y.size();
    const double pp = static_cast<double>(p);
    PatternSums out;
    out.cardinality = pattern.cardinality(p);

    if (pattern.kind() == PatternKind::edge) {
        out.t = u1_hat(y) - alpha;
        out.loo = {1.0};
        if (need == Need::weights) {
            out.pair_weights = Eigen::MatrixXd::Constant(p, p, 2.0);
            out.pair_weights.diagonal().setZero();
        }
        return out;
    }

    const Eigen::MatrixXd b = centered(y, alpha);
    const Eigen::VectorXd r = b.rowwise().sum();
    // Ordered two-paths i-j-k with i, j, k distinct.
    const double two_paths = r.squaredNorm() - b.squaredNorm();

    if (pattern.kind() == PatternKind::two_star) {
        out.t = two_paths / out.cardinality;
        const double mean_b = b.sum() / (pp * (pp - 1.0));
        out.loo = {mean_b, mean_b};
        if (need == Need::weights) {
            out.pair_weights.resize(p, p);
            for (std::size_t i = 0; i < p; ++i)
                for (std::size_t j = 0; j < p; ++j)
                    out.pair_weights(i, j) = i == j ? 0.0 : 2.0 * (r(i) + r(j) - 2.0 * b(i, j));
        }
        return out;
    }

    // Triangle: trace(B^3) over ordered triples; the zero diagonal of B keeps
    // the three vertices distinct.
    const Eigen::MatrixXd b2 = b * b;
    out.t = b2.cwiseProduct(b).sum() / out.cardinality;
    const double loo = two_paths / out.cardinality;
    out.loo = {loo, loo, loo};
    if (need == Need::weights) {
        out.pair_weights = 6.0 * b2;
        out.pair_weights.diagonal().setZero();
    }
    return out;
}

PatternSums sums(const AdjacencyMatrix& y, const SubgraphPattern& pattern, double alpha, double beta, Need need,
                 const DensityOptions& options) {
    require_room(pattern, y.size());
    if (has_fast_path(pattern)) return fast_sums(y, pattern, alpha, need);
    return Enumerator(y, pattern, alpha, beta, need, options.work_budget).run();
}

}  // namespace

PatternSums pattern_sums(const AdjacencyMatrix& y, const SubgraphPattern& pattern, double alpha, double beta,
                         bool with_weights, const DensityOptions& options) {
    return sums(y, pattern, alpha, beta, with_weights ? Need::weights : Need::loo, options);
}

PatternSums enumerate_pattern_sums(const AdjacencyMatrix& y, const SubgraphPattern& pattern, double alpha,
                                   double beta, bool with_weights, const DensityOptions& options) {
    require_room(pattern, y.size());
    return Enumerator(y, pattern, alpha, beta, with_weights ? Need::weights : Need::loo, options.work_budget).run();
}

double density_true(const AdjacencyMatrix& a, const SubgraphPattern& pattern, const DensityOptions& options) {
    const auto p = a.size();
    require_room(pattern, p);
    const double triples = pattern.cardinality(p);
    switch (pattern.kind()) {
        case PatternKind::edge: return edge_density(a);
        case PatternKind::two_star: return 2.0 * static_cast<double>(count_two_stars(a)) / triples;
        case PatternKind::triangle: return 6.0 * static_cast<double>(count_triangles(a)) / triples;
        case PatternKind::open_triple:
            return (2.0 * static_cast<double>(count_two_stars(a)) - 6.0 * static_cast<double>(count_triangles(a))) /
                   triples;
        default: break;
    }
    return Enumerator(a, pattern, 0.0, 0.0, Need::total, options.work_budget).run().t;
}

DensityEstimate c_hat(const AdjacencyMatrix& y, const SubgraphPattern& pattern, double alpha, double beta,
                      const DensityOptions& options) {
    const double k3 = kappa3_or_throw(alpha, beta);
    const auto s = sums(y, pattern, alpha, beta, Need::total, options);
    DensityEstimate est;
    est.pattern = pattern;
    est.t_hat = s.t;
    est.c_hat = s.t / std::pow(k3, static_cast<double>(pattern.k()));
    est.alpha_used = alpha;
    est.beta_used = beta;
    est.cardinality_V = s.cardinality;
    if (pattern.kind() == PatternKind::two_star || pattern.kind() == PatternKind::triangle) {
        est.implied_count = est.c_hat * count_scale(pattern, y.size());
    }
    return est;
}

double count_scale(const SubgraphPattern& pattern, std::size_t p) {
    const double triples = static_cast<double>(p) * static_cast<double>(p - 1) * static_cast<double>(p - 2);
    if (pattern.kind() == PatternKind::two_star) return triples / 2.0;
    if (pattern.kind() == PatternKind::triangle) return triples / 6.0;
    throw UnsupportedKind("counts are defined for two-star and triangle patterns, not '" + pattern.name() + "'");
}

double implied_counts(const DensityEstimate& est, std::size_t p) { return est.c_hat * count_scale(est.pattern, p); }

double clustering_estimate(const DensityEstimate& two_star, const DensityEstimate& triangle) {
    if (two_star.pattern.kind() != PatternKind::two_star || triangle.pattern.kind() != PatternKind::triangle) {
        throw UnsupportedKind("clustering needs a two-star and a triangle estimate");
    }
    if (two_star.c_hat == 0.0) throw ZeroTwoStars("estimated two-star density is zero");
    return triangle.c_hat / two_star.c_hat;
}

}  // namespace noisynet
