#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <json.hpp>
#include <random>
#include <sstream>

#include "noisynet/generator.hpp"
#include "noisynet/graph_io.hpp"
#include "noisynet/moments.hpp"
#include "noisynet/rng.hpp"
#include "noisynet_cli/cli.hpp"

using namespace noisynet;
namespace fs = std::filesystem;

namespace {

struct Outcome {
    int code;
    std::string out;
    std::string err;
};

Outcome run(std::vector<std::string> args) {
    std::ostringstream out, err;
    const int code = cli::run(args, out, err);
    return {code, out.str(), err.str()};
}

class CliTest : public ::testing::Test {
protected:
    void SetUp() override {
        dir_ = fs::temp_directory_path() /
               ("noisynet_cli_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
        fs::remove_all(dir_);
        fs::create_directories(dir_);
    }
    void TearDown() override { fs::remove_all(dir_); }
    std::string path(const std::string& name) const { return (dir_ / name).string(); }

    // Three noisy copies of a graph with known truth.
    std::vector<std::string> write_replicates(const AdjacencyMatrix& a, NoiseModel noise, int n) {
        std::vector<std::string> paths;
        for (int t = 0; t < n; ++t) {
            paths.push_back(path("net" + std::to_string(t) + ".edges"));
            write_network(paths.back(), sample_noisy(a, noise, derive_seed(77, t)));
        }
        return paths;
    }

    fs::path dir_;
};

}  // namespace

TEST_F(CliTest, SubgraphOfK4) {
    write_network(path("k4.edges"), AdjacencyMatrix::complete(4));
    const auto r = run({"subgraph", path("k4.edges")});
    EXPECT_EQ(r.code, 0);
    EXPECT_EQ(r.out, "edges 6\ntwo_stars 12\ntriangles 4\nclustering 1\n");
    const auto j = nlohmann::json::parse(run({"--json", "subgraph", path("k4.edges")}).out);
    EXPECT_EQ(j["two_stars"], 12);
    EXPECT_EQ(j["triangles"], 4);
}

TEST_F(CliTest, GenerateThenSubgraph) {
    const auto g = run({"generate", "--p", "30", "--delta", "0.1", "--two-stars", "100", "--triangles", "15", "--seed",
                        "7", "-o", path("g.edges")});
    ASSERT_EQ(g.code, 0) << g.err;
    const auto r = run({"subgraph", path("g.edges")});
    EXPECT_EQ(r.out, "edges 43\ntwo_stars 100\ntriangles 15\nclustering 0.45\n");
    const auto stdout_graph = run({"--seed", "7", "generate", "--p", "30", "--delta", "0.1", "--two-stars", "100",
                                   "--triangles", "15"});
    std::ifstream in(path("g.edges"));
    std::stringstream file;
    file << in.rdbuf();
    EXPECT_EQ(stdout_graph.out, file.str());
}

TEST_F(CliTest, SingleNetworkRefused) {
    write_network(path("one.edges"), AdjacencyMatrix::complete(5));
    const auto r = run({"estimate", path("one.edges")});
    EXPECT_EQ(r.code, cli::kUsageError);
    EXPECT_NE(r.err.find("impossible to produce a consistent estimate"), std::string::npos);
}

TEST_F(CliTest, UsageErrors) {
    EXPECT_EQ(run({}).code, cli::kUsageError);
    EXPECT_EQ(run({"bogus"}).code, cli::kUsageError);
    EXPECT_EQ(run({"--json", "--csv", "subgraph", "x"}).code, cli::kUsageError);
    EXPECT_EQ(run({"estimate", "--alpha", "1.5", "a", "b"}).code, cli::kUsageError);
    EXPECT_EQ(run({"--help"}).code, cli::kSuccess);
}

TEST_F(CliTest, MissingFileIsComputationError) {
    const auto r = run({"subgraph", path("absent.edges")});
    EXPECT_EQ(r.code, cli::kComputationError);
    EXPECT_FALSE(r.err.empty());
}

TEST_F(CliTest, KnownRatesSingleNetwork) {
    const auto a = generate_constrained(GraphTargets::from_density(30, 0.1, 100, 15), 7);
    const auto paths = write_replicates(a, {0.05, 0.15}, 1);
    const auto r = run({"--json", "estimate", "--alpha", "0.05", "--beta", "0.15", "--patterns", "none", paths[0]});
    ASSERT_EQ(r.code, 0) << r.err;
    const auto j = nlohmann::json::parse(r.out);
    EXPECT_EQ(j["mode"], "both_known");
    const auto y = read_network(paths[0]);
    EXPECT_NEAR(j["rates"]["delta"]["estimate"].get<double>(), (u1_hat(y) - 0.05) / 0.8, 1e-12);
}

TEST_F(CliTest, EstimateFullReport) {
    const auto a = generate_constrained(GraphTargets::from_density(100, 0.1, 5000, 150), 1);
    const auto paths = write_replicates(a, {0.05, 0.05}, 3);
    std::vector<std::string> args{"--json", "--seed", "11", "estimate", paths[0], paths[1], paths[2],
                                  "--patterns", "edge,two-star,triangle", "--bootstrap", "200",
                                  "--bootstrap-csv", path("boot.csv")};
    const auto r = run(args);
    ASSERT_EQ(r.code, 0) << r.err;
    const auto j = nlohmann::ordered_json::parse(r.out);
    std::vector<std::string> keys;
    for (const auto& [k, v] : j.items()) keys.push_back(k);
    const std::vector<std::string> expected{"tool",       "command",    "inputs",   "mode",       "moments", "rates",
                                            "densities",  "clustering", "covariance", "warnings"};
    EXPECT_EQ(keys, expected);
    EXPECT_EQ(j["mode"], "both_unknown");
    EXPECT_EQ(j["inputs"]["seed"], 11);
    EXPECT_EQ(j["inputs"]["networks"].size(), 3u);
    EXPECT_EQ(j["inputs"]["networks"][0]["fnv1a64"].get<std::string>().size(), 16u);

    // Every interval states its level and route.
    std::size_t intervals = 0;
    std::function<void(const nlohmann::ordered_json&)> walk = [&](const nlohmann::ordered_json& n) {
        if (n.is_object()) {
            for (const auto& [k, v] : n.items()) {
                if ((k == "ci" || k == "count_ci") && v.is_object()) {
                    ++intervals;
                    EXPECT_TRUE(v.contains("level"));
                    EXPECT_TRUE(v.contains("route"));
                }
                walk(v);
            }
        } else if (n.is_array()) {
            for (const auto& v : n) walk(v);
        }
    };
    walk(j);
    EXPECT_GE(intervals, 6u);

    const auto& dens = j["densities"];
    ASSERT_EQ(dens.size(), 3u);
    const auto contains = [](const nlohmann::ordered_json& ci, double x) {
        return ci["lower"].get<double>() <= x && x <= ci["upper"].get<double>();
    };
    EXPECT_TRUE(contains(j["rates"]["delta"]["ci"], edge_density(a)));
    EXPECT_TRUE(contains(dens[1]["count_ci"], 5000.0));
    EXPECT_TRUE(contains(dens[2]["count_ci"], 150.0));
    EXPECT_TRUE(contains(j["clustering"]["ci"], 0.09));

    std::ifstream boot(path("boot.csv"));
    std::string header;
    std::getline(boot, header);
    EXPECT_EQ(header, "replicate,S_edge,S_two-star,S_triangle");

    EXPECT_EQ(run(args).out, r.out);
}

TEST_F(CliTest, EstimateCsv) {
    const auto a = generate_constrained(GraphTargets::from_density(30, 0.1, 100, 15), 7);
    const auto paths = write_replicates(a, {0.05, 0.05}, 2);
    const auto r = run({"--csv", "estimate", "--alpha", "0.05", paths[0], paths[1], "--bootstrap", "50"});
    ASSERT_EQ(r.code, 0) << r.err;
    EXPECT_NE(r.out.find("two-star"), std::string::npos);
    EXPECT_NE(r.out.find("triangle"), std::string::npos);
}

TEST_F(CliTest, AssumeNominalAlpha) {
    const auto a = generate_constrained(GraphTargets::from_density(30, 0.1, 100, 15), 7);
    const auto paths = write_replicates(a, {0.001, 0.1}, 2);
    const auto r = run({"--json", "estimate", "--assume-alpha", "nominal", "--fwer", "0.05", "--patterns", "none",
                        paths[0], paths[1]});
    ASSERT_EQ(r.code, 0) << r.err;
    const auto j = nlohmann::json::parse(r.out);
    EXPECT_EQ(j["mode"], "alpha_known");
    EXPECT_EQ(j["rates"]["alpha"]["source"], "nominal");
    EXPECT_NEAR(j["rates"]["alpha"]["estimate"].get<double>(), 0.05 / 435.0, 1e-15);
}

TEST_F(CliTest, Coexpress) {
    std::ofstream csv(path("expr.csv"));
    csv << "gene";
    for (int s = 0; s < 24; ++s) csv << ",s" << s;
    csv << '\n';
    Rng rng(3);
    std::normal_distribution<double> z;
    std::vector<double> shared(24);
    for (auto& x : shared) x = z(rng);
    for (int g = 0; g < 6; ++g) {
        csv << "g" << g;
        for (int s = 0; s < 24; ++s) csv << ',' << (g < 2 ? shared[s] * (g + 1) : z(rng));
        csv << '\n';
    }
    csv.close();
    const auto prefix = path("net");
    const auto r = run({"coexpress", path("expr.csv"), "--replicate-sets", "3", "--out-prefix", prefix});
    ASSERT_EQ(r.code, 0) << r.err;
    const auto j = nlohmann::json::parse(r.out);
    EXPECT_EQ(j["networks"].size(), 3u);
    std::vector<AdjacencyMatrix> nets;
    for (int k = 1; k <= 3; ++k) {
        ASSERT_TRUE(fs::exists(prefix + "_" + std::to_string(k) + ".edges"));
        nets.push_back(read_network(prefix + "_" + std::to_string(k) + ".edges"));
        EXPECT_TRUE(nets.back()(0, 1));
        EXPECT_EQ(nets.back().size(), 6u);
    }
    EXPECT_EQ(run({"coexpress", path("expr.csv"), "--replicate-sets", "3", "--out-prefix", prefix}).out, r.out);
    EXPECT_EQ(run({"coexpress", path("expr.csv"), "--replicate-sets", "5", "--out-prefix", prefix}).code,
              cli::kUsageError);
}

TEST_F(CliTest, SimulateSchema) {
    const auto r = run({"simulate", "--table1-row", "1", "--reps", "5", "--bootstrap", "0"});
    ASSERT_EQ(r.code, 0) << r.err;
    std::istringstream in(r.out);
    std::string header, row;
    std::getline(in, header);
    std::getline(in, row);
    EXPECT_EQ(header,
              "p,beta,delta,N2s,Ntri,gamma,mae_alpha,mae_beta,mae_delta,mae_N2s,mae_Ntri,mae_gamma,"
              "rf_delta,len_delta,rf_N2s,len_N2s,rf_Ntri,len_Ntri,rf_gamma,len_gamma,failures");
    EXPECT_EQ(std::count(row.begin(), row.end(), ','), 20);
    const auto j = nlohmann::json::parse(run({"--json", "simulate", "--table1-row", "1,2", "--reps", "3",
                                              "--bootstrap", "0"})
                                             .out);
    EXPECT_EQ(j["rows"].size(), 2u);
}
