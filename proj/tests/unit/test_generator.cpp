#include <gtest/gtest.h>

#include "noisynet/errors.hpp"
#include "noisynet/generator.hpp"
#include "noisynet/simulation.hpp"

using namespace noisynet;

namespace {

void expect_targets(const AdjacencyMatrix& a, const GraphTargets& t) {
    EXPECT_EQ(a.size(), t.p);
    EXPECT_EQ(a.edge_count(), t.edge_count);
    EXPECT_EQ(count_two_stars(a), t.two_star_count);
    EXPECT_EQ(count_triangles(a), t.triangle_count);
}

}  // namespace

TEST(Generator, ReachesSmallTargets) {
    const GraphTargets t = GraphTargets::from_density(30, 0.1, 100, 15);
    expect_targets(generate_constrained(t, 7), t);
}

TEST(Generator, CompleteAndEmptyGraphs) {
    EXPECT_EQ(generate_constrained({4, 6, 12, 4}, 1), AdjacencyMatrix::complete(4));
    EXPECT_EQ(generate_constrained({5, 0, 0, 0}, 1), AdjacencyMatrix(5));
}

TEST(Generator, SameSeedSameGraph) {
    const GraphTargets t = GraphTargets::from_density(30, 0.1, 100, 15);
    EXPECT_EQ(generate_constrained(t, 42), generate_constrained(t, 42));
}

TEST(Generator, TableTargetsAtP50) {
    const auto cfg = table1_row(5);
    const auto t = GraphTargets::from_density(cfg.p, cfg.delta, cfg.two_star_target, cfg.triangle_target);
    expect_targets(generate_constrained(t, 3), t);
}

TEST(Generator, InfeasibleTargetsReportGap) {
    // Three edges give at most three two-stars.
    const GraphTargets t{4, 3, 5, 1};
    GeneratorOptions opts;
    opts.max_iters = 2000;
    try {
        generate_constrained(t, 1, opts);
        FAIL() << "expected TargetNotReached";
    } catch (const TargetNotReached& e) {
        EXPECT_GT(e.two_star_gap() + e.triangle_gap(), 0);
    }
}

TEST(Generator, RejectsInvalidTargets) {
    EXPECT_THROW(generate_constrained({4, 3, 2, 1}, 1), InvalidArgument);
    EXPECT_THROW(generate_constrained({4, 9, 0, 0}, 1), InvalidArgument);
}
