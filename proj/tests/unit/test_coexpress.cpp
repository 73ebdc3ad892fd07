#include <gtest/gtest.h>

#include <cmath>
#include <random>
#include <sstream>

#include "noisynet/coexpress.hpp"
#include "noisynet/errors.hpp"
#include "noisynet/normal.hpp"
#include "noisynet/rng.hpp"

using namespace noisynet;

namespace {

Eigen::MatrixXd gaussian(std::size_t g, std::size_t n, std::uint64_t seed) {
    Rng rng(seed);
    std::normal_distribution<double> z;
    Eigen::MatrixXd m(g, n);
    for (Eigen::Index i = 0; i < m.rows(); ++i)
        for (Eigen::Index j = 0; j < m.cols(); ++j) m(i, j) = z(rng);
    return m;
}

}  // namespace

TEST(Coexpress, BonferroniLevel) {
    EXPECT_NEAR(bonferroni_level(153, 0.05), 0.05 / 11628.0, 1e-18);
    EXPECT_NEAR(bonferroni_level(153, 0.05), 4.3e-6, 5e-8);
    EXPECT_THROW(bonferroni_level(1, 0.05), InvalidArgument);
    EXPECT_THROW(bonferroni_level(10, 0.0), InvalidArgument);
}

TEST(Coexpress, PerfectCorrelationAlwaysAnEdge) {
    auto m = gaussian(6, 40, 1);
    m.row(4) = 3.0 * m.row(1).array() + 2.0;
    m.row(5) = -m.row(2);
    const auto a = coexpression_network(m);
    EXPECT_TRUE(a(1, 4));
    EXPECT_TRUE(a(2, 5));
}

TEST(Coexpress, ThresholdMatchesFisherTest) {
    // Two genes with a chosen sample correlation straddling the threshold.
    const std::size_t n = 40, g = 2;
    const double crit = normal_quantile(1.0 - bonferroni_level(g, 0.05) / 2.0) / std::sqrt(n - 3.0);
    const double r_edge = std::tanh(crit) + 1e-6;
    const double r_none = std::tanh(crit) - 1e-6;
    auto x = gaussian(2, n, 4);
    Eigen::VectorXd u = x.row(0).transpose().array() - x.row(0).mean();
    Eigen::VectorXd v = x.row(1).transpose().array() - x.row(1).mean();
    v -= u * (u.dot(v) / u.dot(u));
    u.normalize();
    v.normalize();
    for (const auto& [r, expected] : {std::pair{r_edge, true}, std::pair{r_none, false}}) {
        Eigen::MatrixXd m(2, n);
        m.row(0) = u.transpose();
        m.row(1) = (r * u + std::sqrt(1 - r * r) * v).transpose();
        EXPECT_EQ(coexpression_network(m)(0, 1), expected) << r;
    }
}

TEST(Coexpress, Errors) {
    EXPECT_THROW(coexpression_network(gaussian(4, 3, 1)), InsufficientSamples);
    auto m = gaussian(4, 10, 1);
    m.row(2).setConstant(1.5);
    EXPECT_THROW(coexpression_network(m), ConstantGene);
}

TEST(Coexpress, Deterministic) {
    const auto m = gaussian(20, 12, 9);
    EXPECT_EQ(coexpression_network(m), coexpression_network(m));
}

TEST(Coexpress, ReadCsv) {
    std::istringstream in("gene,s1,s2,s3,s4\n# comment\nA,1,2,3,4\nB,2.5,-1,0,1e-3\n");
    const auto d = read_expression_csv(in);
    EXPECT_EQ(d.gene_count(), 2u);
    EXPECT_EQ(d.sample_count(), 4u);
    EXPECT_EQ(d.genes[1], "B");
    EXPECT_DOUBLE_EQ(d.values(1, 3), 1e-3);
    std::istringstream missing("gene,s1,s2\nA,1,\nB,2,3\n");
    EXPECT_THROW(read_expression_csv(missing), ParseError);
    std::istringstream text("gene,s1,s2\nA,1,x\nB,2,3\n");
    EXPECT_THROW(read_expression_csv(text), ParseError);
    std::istringstream ragged("gene,s1,s2\nA,1\nB,2,3\n");
    EXPECT_THROW(read_expression_csv(ragged), ParseError);
    std::istringstream one("gene,s1,s2\nA,1,2\n");
    EXPECT_THROW(read_expression_csv(one), ParseError);
}

TEST(Coexpress, ReplicateSets) {
    const auto s = split_replicate_sets(120, 3);
    ASSERT_EQ(s.size(), 3u);
    EXPECT_EQ(s[1].front(), 40u);
    EXPECT_EQ(s[2].back(), 119u);
    EXPECT_THROW(split_replicate_sets(10, 3), InvalidArgument);
    const auto g = group_replicate_sets(10, {4, 6});
    EXPECT_EQ(g[1].size(), 6u);
    EXPECT_THROW(group_replicate_sets(10, {4, 5}), InvalidArgument);
    EXPECT_THROW(group_replicate_sets(10, {0, 10}), InvalidArgument);
}

TEST(Coexpress, NetworksPerSet) {
    ExpressionMatrix d;
    d.values = gaussian(5, 24, 2);
    for (int i = 0; i < 5; ++i) d.genes.push_back("g" + std::to_string(i));
    for (int j = 0; j < 24; ++j) d.samples.push_back("s" + std::to_string(j));
    d.values.block(0, 0, 1, 12) = d.values.block(3, 0, 1, 12);
    const auto nets = coexpression_networks(d, split_replicate_sets(24, 2));
    ASSERT_EQ(nets.size(), 2u);
    EXPECT_TRUE(nets[0](0, 3));
    d.values.block(2, 12, 1, 12).setConstant(0.0);
    try {
        coexpression_networks(d, split_replicate_sets(24, 2));
        FAIL() << "expected ConstantGene";
    } catch (const ConstantGene& e) {
        EXPECT_NE(std::string(e.what()).find("g2"), std::string::npos);
    }
}

TEST(Coexpress, NullFalseEdgeRate) {
    int with_edge = 0;
    const int runs = 100;
    for (int r = 0; r < runs; ++r) with_edge += coexpression_network(gaussian(30, 40, 1000 + r)).edge_count() > 0;
    EXPECT_LE(with_edge, 12);
}
