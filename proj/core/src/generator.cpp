#include "noisynet/generator.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numeric>
#include <string>
#include <vector>

#include "noisynet/errors.hpp"
#include "noisynet/rng.hpp"

namespace noisynet {
namespace {

std::int64_t gap(std::uint64_t value, std::uint64_t target) {
    return value > target ? static_cast<std::int64_t>(value - target) : static_cast<std::int64_t>(target - value);
}

class RewiringState {
public:
    explicit RewiringState(std::size_t p) : p_(p), words_((p + 63) / 64), bits_(p * words_, 0), degree_(p, 0) {
        pair_slot_.assign(p * p, 0);
        for (std::size_t i = 0; i < p; ++i)
            for (std::size_t j = i + 1; j < p; ++j) {
                pair_slot_[i * p + j] = absent_.size();
                absent_.push_back(static_cast<std::uint32_t>(i * p + j));
            }
    }

    std::size_t present_count() const noexcept { return present_.size(); }
    std::size_t absent_count() const noexcept { return absent_.size(); }
    std::uint32_t present_at(std::size_t k) const noexcept { return present_[k]; }
    std::uint32_t absent_at(std::size_t k) const noexcept { return absent_[k]; }

    std::uint64_t two_stars() const noexcept { return two_stars_; }
    std::uint64_t triangles() const noexcept { return triangles_; }

    void add(std::uint32_t id) {
        const auto [i, j] = split(id);
        two_stars_ += degree_[i] + degree_[j];
        triangles_ += common(i, j);
        flip_bits(i, j);
        ++degree_[i];
        ++degree_[j];
        move_between(absent_, present_, id);
    }

    void remove(std::uint32_t id) {
        const auto [i, j] = split(id);
        flip_bits(i, j);
        --degree_[i];
        --degree_[j];
        two_stars_ -= degree_[i] + degree_[j];
        triangles_ -= common(i, j);
        move_between(present_, absent_, id);
    }

    AdjacencyMatrix to_matrix() const {
        AdjacencyMatrix a(p_);
        for (const auto id : present_) {
            const auto [i, j] = split(id);
            a.set_edge(i, j, true);
        }
        return a;
    }

private:
    std::pair<std::size_t, std::size_t> split(std::uint32_t id) const noexcept { return {id / p_, id % p_}; }

    std::uint64_t common(std::size_t i, std::size_t j) const noexcept {
        std::uint64_t n = 0;
        const auto* x = bits_.data() + i * words_;
        const auto* y = bits_.data() + j * words_;
        for (std::size_t w = 0; w < words_; ++w) n += std::popcount(x[w] & y[w]);
        return n;
    }

    void flip_bits(std::size_t i, std::size_t j) noexcept {
        bits_[i * words_ + j / 64] ^= std::uint64_t{1} << (j % 64);
        bits_[j * words_ + i / 64] ^= std::uint64_t{1} << (i % 64);
    }

    // O(1) swap-remove from one pool, push onto the other.
    void move_between(std::vector<std::uint32_t>& from, std::vector<std::uint32_t>& to, std::uint32_t id) {
        const auto slot = pair_slot_[id];
        const auto last = from.back();
        from[slot] = last;
        pair_slot_[last] = slot;
        from.pop_back();
        pair_slot_[id] = to.size();
        to.push_back(id);
    }

    std::size_t p_;
    std::size_t words_;
    std::vector<std::uint64_t> bits_;
    std::vector<std::uint64_t> degree_;
    std::vector<std::size_t> pair_slot_;
    std::vector<std::uint32_t> present_;
    std::vector<std::uint32_t> absent_;
    std::uint64_t two_stars_ = 0;
    std::uint64_t triangles_ = 0;
};

std::size_t uniform_index(Rng& rng, std::size_t n) {
    return static_cast<std::size_t>(uniform01(rng) * static_cast<double>(n));
}

}  // namespace

AdjacencyMatrix generate_constrained(const GraphTargets& targets, std::uint64_t seed,
                                     const GeneratorOptions& options) {
    targets.validate();
    const auto p = targets.p;
    Rng rng(seed);
    RewiringState state(p);

    // Phase 1: uniform graph with the exact edge count (partial Fisher-Yates
    // through the absent pool).
    for (std::uint64_t e = 0; e < targets.edge_count; ++e) {
        state.add(state.absent_at(uniform_index(rng, state.absent_count())));
    }

    auto distance = [&] {
        return std::pair{gap(state.two_stars(), targets.two_star_count),
                         gap(state.triangles(), targets.triangle_count)};
    };

    auto current = distance();
    auto best = current;
    std::uint64_t since_best = 0;
    double temperature = options.initial_temperature;
    const bool movable = state.present_count() > 0 && state.absent_count() > 0;

    for (std::uint64_t iter = 0; movable && iter < options.max_iters; ++iter) {
        if (current.first == 0 && current.second == 0) break;

        const auto out = state.present_at(uniform_index(rng, state.present_count()));
        state.remove(out);
        const auto in = state.absent_at(uniform_index(rng, state.absent_count()));
        state.add(in);
        const auto proposed = distance();

        bool accept = proposed <= current;
        if (!accept) {
            const auto worse = (proposed.first + proposed.second) - (current.first + current.second);
            accept = worse <= 0 || uniform01(rng) < std::exp(-static_cast<double>(worse) / temperature);
        }
        if (accept) {
            current = proposed;
        } else {
            state.remove(in);
            state.add(out);
        }

        if (current < best) {
            best = current;
            since_best = 0;
        } else if (++since_best >= options.reheat_after) {
            temperature = options.initial_temperature;
            since_best = 0;
        }
        temperature *= options.cooling;
    }

    if (current.first != 0 || current.second != 0) {
        throw TargetNotReached("constrained generator stopped " + std::to_string(best.first) +
                                   " two-stars and " + std::to_string(best.second) +
                                   " triangles away from target",
                               best.first, best.second);
    }

    auto a = state.to_matrix();
    if (a.edge_count() != targets.edge_count || count_two_stars(a) != targets.two_star_count ||
        count_triangles(a) != targets.triangle_count) {
        throw TargetNotReached("constrained generator bookkeeping disagrees with recount", best.first, best.second);
    }
    return a;
}

}  // namespace noisynet
