#include "noisynet_cli/cli.hpp"

#include <cmath>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include <CLI11.hpp>

#include "noisynet/coexpress.hpp"
#include "noisynet/errors.hpp"
#include "noisynet/graph_io.hpp"
#include "noisynet/normal.hpp"
#include "noisynet/pipeline.hpp"
#include "noisynet/simulation.hpp"
#include "noisynet_cli/report.hpp"

namespace noisynet::cli {

namespace {

struct Globals {
    std::uint64_t seed = 1;
    unsigned threads = 0;
    bool json = false;
    bool csv = false;
    double level = 0.95;
};

struct EstimateArgs {
    std::vector<std::string> networks;
    std::optional<double> alpha;
    std::optional<double> beta;
    std::string assume_alpha;
    double fwer = 0.05;
    std::string patterns = "two-star,triangle";
    std::size_t bootstrap = 500;
    std::string bootstrap_csv;
    std::string output;
    double tol = 1e-4;
    int max_iter = 500;
};

struct CoexpressArgs {
    std::string input;
    double fwer = 0.05;
    std::size_t replicate_sets = 1;
    std::vector<std::size_t> groups;
    std::string out_prefix = "coexpress";
};

struct GenerateArgs {
    std::size_t p = 0;
    double delta = 0.0;
    std::uint64_t two_stars = 0;
    std::uint64_t triangles = 0;
    std::string output;
    std::uint64_t max_iters = GeneratorOptions{}.max_iters;
};

struct SimulateArgs {
    std::vector<int> rows;
    std::optional<std::size_t> p;
    double delta = 0.1;
    double alpha = 0.05;
    double beta = 0.05;
    std::uint64_t two_stars = 0;
    std::uint64_t triangles = 0;
    std::size_t reps = 500;
    std::size_t bootstrap = 500;
    std::string mode = "both_unknown";
    std::string output;
};

// Writes to the named file, or to `fallback` when the name is empty.
template <typename Fn>
void emit(const std::string& path, std::ostream& fallback, Fn&& fn) {
    if (path.empty()) {
        fn(fallback);
        return;
    }
    std::ofstream file(path);
    if (!file) throw ParseError("cannot write " + path);
    fn(file);
}

EstimationMode parse_mode(const std::string& s) {
    if (s == "both_unknown") return EstimationMode::both_unknown;
    if (s == "alpha_known") return EstimationMode::alpha_known;
    if (s == "beta_known") return EstimationMode::beta_known;
    if (s == "both_known") return EstimationMode::both_known;
    throw InvalidArgument("unknown mode '" + s + "' (both_unknown, alpha_known, beta_known, both_known)");
}

int cmd_estimate(const EstimateArgs& a, const Globals& g, std::ostream& out, std::ostream& err) {
    std::vector<AdjacencyMatrix> nets;
    EstimateInputs inputs;
    for (const auto& path : a.networks) {
        nets.push_back(read_network(path));
        inputs.networks.push_back({path, file_digest(path), nets.back().size(), nets.back().edge_count()});
    }
    PipelineOptions opts;
    opts.alpha = a.alpha;
    opts.beta = a.beta;
    inputs.alpha_source = a.alpha ? "given" : "estimated";
    if (!a.assume_alpha.empty()) {
        if (a.assume_alpha != "nominal") throw InvalidArgument("--assume-alpha accepts only 'nominal'");
        if (a.alpha) throw InvalidArgument("--assume-alpha and --alpha are mutually exclusive");
        opts.alpha = bonferroni_level(nets.front().size(), a.fwer);
        inputs.alpha_source = "nominal";
    }
    if (!a.patterns.empty() && a.patterns != "none") opts.patterns = parse_pattern_list(a.patterns);
    opts.bootstrap_B = a.bootstrap;
    opts.seed = g.seed;
    opts.level = g.level;
    opts.threads = g.threads;
    opts.fixed_point.tol = a.tol;
    opts.fixed_point.max_iter = a.max_iter;
    inputs.seed = g.seed;
    inputs.level = g.level;
    inputs.bootstrap_B = a.bootstrap;

    const auto result = estimate_network(nets, opts);
    if (!a.bootstrap_csv.empty() && result.bootstrap_samples.size() > 0) {
        emit(a.bootstrap_csv, out,
             [&](std::ostream& o) { write_bootstrap_csv(o, result.bootstrap_samples, opts.patterns); });
    }
    for (const auto& w : result.warnings) err << "warning: " << w << '\n';
    emit(a.output, out, [&](std::ostream& o) {
        if (g.csv) write_estimate_csv(o, result);
        else o << estimate_json(result, inputs).dump(2) << '\n';
    });
    return kSuccess;
}

int cmd_coexpress(const CoexpressArgs& a, const Globals& g, std::ostream& out) {
    const auto data = read_expression_csv(std::filesystem::path(a.input));
    const auto sets = a.groups.empty() ? split_replicate_sets(data.sample_count(), a.replicate_sets)
                                       : group_replicate_sets(data.sample_count(), a.groups);
    const auto nets = coexpression_networks(data, sets, a.fwer);
    const double level = bonferroni_level(data.gene_count(), a.fwer);
    Json doc;
    doc["tool"] = {{"name", "noisynet"}, {"version", tool_version()}};
    doc["command"] = "coexpress";
    doc["genes"] = data.gene_count();
    doc["samples"] = data.sample_count();
    doc["fwer"] = a.fwer;
    doc["per_test_level"] = level;
    doc["critical_z"] = normal_quantile(1.0 - level / 2.0);
    Json files = Json::array();
    for (std::size_t s = 0; s < nets.size(); ++s) {
        const std::string path = a.out_prefix + "_" + std::to_string(s + 1) + ".edges";
        write_network(path, nets[s]);
        files.push_back({{"path", path}, {"samples", sets[s].size()}, {"edges", nets[s].edge_count()}});
    }
    doc["networks"] = files;
    if (g.csv) {
        out << "path,samples,edges\n";
        for (const auto& f : files)
            out << f["path"].get<std::string>() << ',' << f["samples"] << ',' << f["edges"] << '\n';
    } else {
        out << doc.dump(2) << '\n';
    }
    return kSuccess;
}

int cmd_generate(const GenerateArgs& a, const Globals& g, std::ostream& out, std::ostream& err) {
    const auto targets = GraphTargets::from_density(a.p, a.delta, a.two_stars, a.triangles);
    GeneratorOptions opts;
    opts.max_iters = a.max_iters;
    const auto graph = generate_constrained(targets, g.seed, opts);
    if (a.output.empty()) {
        write_edge_list(out, graph);
    } else {
        write_network(a.output, graph);
        err << "wrote " << a.output << ": " << graph.edge_count() << " edges, " << count_two_stars(graph)
            << " two-stars, " << count_triangles(graph) << " triangles\n";
    }
    return kSuccess;
}

int cmd_simulate(const SimulateArgs& a, const Globals& g, std::ostream& out) {
    std::vector<SimulationConfig> configs;
    for (const int row : a.rows) configs.push_back(table1_row(row));
    if (a.p) {
        SimulationConfig c;
        c.p = *a.p;
        c.delta = a.delta;
        c.alpha = a.alpha;
        c.beta = a.beta;
        c.two_star_target = a.two_stars;
        c.triangle_target = a.triangles;
        configs.push_back(c);
    }
    if (configs.empty()) throw InvalidArgument("give --table1-row or a scenario with --p");
    const auto mode = parse_mode(a.mode);
    for (auto& c : configs) {
        c.replications = a.reps;
        c.bootstrap_B = a.bootstrap;
        c.mode = mode;
        c.base_seed = g.seed;
        c.ci_level = g.level;
        c.threads = g.threads;
    }
    const auto rows = run_grid(configs);
    emit(a.output, out, [&](std::ostream& o) {
        if (g.json) o << simulation_json(rows).dump(2) << '\n';
        else write_report_csv(o, rows);
    });
    for (const auto& row : rows)
        if (!row.report) return kComputationError;
    return kSuccess;
}

int cmd_subgraph(const std::string& path, const Globals& g, std::ostream& out) {
    const auto graph = read_network(path);
    const auto edges = graph.edge_count();
    const auto stars = count_two_stars(graph);
    const auto tris = count_triangles(graph);
    const bool defined = stars > 0;
    const double gamma = defined ? 3.0 * static_cast<double>(tris) / static_cast<double>(stars) : 0.0;
    if (g.json) {
        Json doc = {{"path", path},   {"vertices", graph.size()}, {"edges", edges},
                    {"two_stars", stars}, {"triangles", tris},
                    {"clustering", defined ? Json(gamma) : Json(nullptr)}};
        out << doc.dump(2) << '\n';
    } else if (g.csv) {
        out << "edges,two_stars,triangles,clustering\n" << edges << ',' << stars << ',' << tris << ',';
        if (defined) out << gamma;
        out << '\n';
    } else {
        out << "edges " << edges << "\ntwo_stars " << stars << "\ntriangles " << tris << "\nclustering ";
        if (defined) out << gamma;
        else out << "undefined";
        out << '\n';
    }
    return kSuccess;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Error-rate and subgraph-density inference for noisy networks", "noisynet"};
    app.set_version_flag("--version", tool_version());
    app.require_subcommand(1, 1);
    app.fallthrough();

    Globals g;
    app.add_option("--seed", g.seed, "Random seed")->capture_default_str();
    app.add_option("--threads", g.threads, "Worker threads (0: all cores)")->capture_default_str();
    auto* json = app.add_flag("--json", g.json, "JSON output");
    app.add_flag("--csv", g.csv, "CSV output")->excludes(json);
    app.add_option("--level", g.level, "Confidence level")->capture_default_str()->check(CLI::Range(0.0, 1.0));

    EstimateArgs ea;
    auto* est = app.add_subcommand("estimate", "Estimate error rates, edge density and subgraph densities");
    est->add_option("networks", ea.networks, "Replicate network files (edge list or dense CSV)")->required();
    est->add_option("--alpha", ea.alpha, "Known type I error rate")->check(CLI::Range(0.0, 1.0));
    est->add_option("--beta", ea.beta, "Known type II error rate")->check(CLI::Range(0.0, 1.0));
    est->add_option("--assume-alpha", ea.assume_alpha, "'nominal': use the Bonferroni per-test level as alpha");
    est->add_option("--fwer", ea.fwer, "Family-wise error rate for --assume-alpha nominal")->capture_default_str();
    est->add_option("--patterns", ea.patterns, "Comma-separated patterns, or 'none'")->capture_default_str();
    est->add_option("--bootstrap", ea.bootstrap, "Bootstrap replicates (0: no density intervals)")
        ->capture_default_str();
    est->add_option("--bootstrap-csv", ea.bootstrap_csv, "Write bootstrap statistics to this CSV file");
    est->add_option("-o,--output", ea.output, "Report file (default: stdout)");
    est->add_option("--tol", ea.tol, "Fixed-point tolerance")->capture_default_str();
    est->add_option("--max-iter", ea.max_iter, "Fixed-point iteration limit")->capture_default_str();

    CoexpressArgs ca;
    auto* co = app.add_subcommand("coexpress", "Build coexpression networks from an expression matrix");
    co->add_option("expression", ca.input, "Expression CSV: header row, one row per gene")->required();
    co->add_option("--fwer", ca.fwer, "Family-wise error rate")->capture_default_str()->check(CLI::Range(0.0, 1.0));
    auto* sets = co->add_option("--replicate-sets", ca.replicate_sets, "Split samples into k equal contiguous sets")
                     ->capture_default_str();
    co->add_option("--groups", ca.groups, "Contiguous replicate set sizes")->delimiter(',')->excludes(sets);
    co->add_option("--out-prefix", ca.out_prefix, "Output prefix; files are <prefix>_<k>.edges")
        ->capture_default_str();

    GenerateArgs ga;
    auto* gen = app.add_subcommand("generate", "Random graph with exact edge, two-star and triangle counts");
    gen->add_option("--p", ga.p, "Vertices")->required();
    gen->add_option("--delta", ga.delta, "Edge density")->required();
    gen->add_option("--two-stars", ga.two_stars, "Two-star count")->required();
    gen->add_option("--triangles", ga.triangles, "Triangle count")->required();
    gen->add_option("-o,--output", ga.output, "Network file (default: edge list on stdout)");
    gen->add_option("--max-iters", ga.max_iters, "Proposal budget")->capture_default_str();

    SimulateArgs sa;
    auto* sim = app.add_subcommand("simulate", "Replicated simulation of estimators and intervals");
    sim->add_option("--table1-row", sa.rows, "Reference grid rows 1-16")->delimiter(',');
    sim->add_option("--p", sa.p, "Vertices of a custom scenario");
    sim->add_option("--delta", sa.delta, "Edge density")->capture_default_str();
    sim->add_option("--alpha", sa.alpha, "Type I error rate")->capture_default_str();
    sim->add_option("--beta", sa.beta, "Type II error rate")->capture_default_str();
    sim->add_option("--two-stars", sa.two_stars, "Two-star target");
    sim->add_option("--triangles", sa.triangles, "Triangle target");
    sim->add_option("--reps", sa.reps, "Replications")->capture_default_str();
    sim->add_option("--bootstrap", sa.bootstrap, "Bootstrap replicates (0: MAE only)")->capture_default_str();
    sim->add_option("--mode", sa.mode, "both_unknown, alpha_known, beta_known or both_known")->capture_default_str();
    sim->add_option("-o,--output", sa.output, "Report file (default: stdout)");

    std::string subgraph_path;
    auto* sub = app.add_subcommand("subgraph", "Edge, two-star and triangle counts of a network");
    sub->add_option("network", subgraph_path, "Network file")->required();

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kSuccess : kUsageError;
    }

    try {
        if (est->parsed()) return cmd_estimate(ea, g, out, err);
        if (co->parsed()) return cmd_coexpress(ca, g, out);
        if (gen->parsed()) return cmd_generate(ga, g, out, err);
        if (sim->parsed()) return cmd_simulate(sa, g, out);
        if (sub->parsed()) return cmd_subgraph(subgraph_path, g, out);
    } catch (const InvalidArgument& e) {
        err << "error: " << e.what() << '\n';
        return kUsageError;
    } catch (const Error& e) {
        err << "error [" << to_string(e.kind()) << "]: " << e.what() << '\n';
        return kComputationError;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return kComputationError;
    }
    return kUsageError;
}

}  // namespace noisynet::cli
