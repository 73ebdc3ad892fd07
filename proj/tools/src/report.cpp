#include "noisynet_cli/report.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <ostream>

#include "noisynet/errors.hpp"

namespace noisynet::cli {

namespace {

Json matrix_json(const Eigen::MatrixXd& m) {
    Json rows = Json::array();
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        Json row = Json::array();
        for (Eigen::Index j = 0; j < m.cols(); ++j) row.push_back(m(i, j));
        rows.push_back(std::move(row));
    }
    return rows;
}

Json number_or_null(double x) { return std::isfinite(x) ? Json(x) : Json(nullptr); }

Json covariance_order(EstimationMode mode) {
    switch (mode) {
        case EstimationMode::alpha_known: return {"beta", "delta"};
        case EstimationMode::beta_known: return {"alpha", "delta"};
        case EstimationMode::both_unknown: return {"alpha", "beta", "delta"};
        case EstimationMode::both_known: return {"delta"};
    }
    return Json::array();
}

Json coverage_json(const CoverageStats& s) {
    return {{"rf", number_or_null(s.rf)}, {"length", number_or_null(s.length)}, {"intervals", s.n}};
}

}  // namespace

std::string tool_version() { return NOISYNET_VERSION; }

std::string file_digest(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ParseError("cannot open " + path.string());
    std::uint64_t h = 0xcbf29ce484222325ULL;
    char buf[1 << 14];
    while (in.read(buf, sizeof buf) || in.gcount() > 0) {
        for (std::streamsize i = 0; i < in.gcount(); ++i) {
            h ^= static_cast<unsigned char>(buf[i]);
            h *= 0x100000001b3ULL;
        }
    }
    char hex[17];
    std::snprintf(hex, sizeof hex, "%016llx", static_cast<unsigned long long>(h));
    return hex;
}

Json interval_json(const Interval& ci, const char* route) {
    return {{"lower", ci.lower}, {"upper", ci.upper}, {"level", ci.level}, {"route", route}};
}

Json estimate_json(const PipelineResult& r, const EstimateInputs& inputs) {
    Json doc;
    doc["tool"] = {{"name", "noisynet"}, {"version", tool_version()}};
    doc["command"] = "estimate";

    Json networks = Json::array();
    for (const auto& n : inputs.networks)
        networks.push_back({{"path", n.path}, {"fnv1a64", n.digest}, {"vertices", n.vertices}, {"edges", n.edges}});
    Json patterns = Json::array();
    for (const auto& d : r.densities) patterns.push_back(d.pattern.name());
    doc["inputs"] = {{"networks", networks},  {"seed", inputs.seed},       {"level", inputs.level},
                     {"bootstrap_B", inputs.bootstrap_B}, {"patterns", patterns}};
    doc["mode"] = std::string(to_string(r.mode));

    const auto& m = r.moments;
    doc["moments"] = {{"u1", m.u1},
                      {"u2", m.u2 ? Json(*m.u2) : Json(nullptr)},
                      {"u3", m.u3 ? Json(*m.u3) : Json(nullptr)},
                      {"pairs", m.n_pairs}};

    const auto& e = r.rates;
    const bool alpha_known = r.mode == EstimationMode::alpha_known || r.mode == EstimationMode::both_known;
    const bool beta_known = r.mode == EstimationMode::beta_known || r.mode == EstimationMode::both_known;
    Json rates;
    rates["alpha"] = {{"estimate", e.alpha_clamped},
                      {"raw", e.alpha_hat},
                      {"known", alpha_known},
                      {"source", inputs.alpha_source}};
    rates["beta"] = {{"estimate", e.beta_clamped}, {"raw", e.beta_hat}, {"known", beta_known}};
    rates["delta"] = {{"estimate", e.delta_clamped},
                      {"raw", e.delta_hat},
                      {"standard_error", e.sigma_delta / std::sqrt(static_cast<double>(e.n_pairs))},
                      {"ci", interval_json(e.ci_delta, "asymptotic")}};
    rates["iterations"] = e.iterations;
    rates["out_of_range"] = e.out_of_range;
    rates["covariance_order"] = covariance_order(r.mode);
    rates["covariance"] = matrix_json(e.cov);
    doc["rates"] = rates;

    Json densities = Json::array();
    for (std::size_t q = 0; q < r.densities.size(); ++q) {
        const auto& d = r.densities[q];
        Json item;
        item["pattern"] = d.pattern.name();
        item["slots"] = d.pattern.k();
        item["cardinality"] = d.cardinality_V;
        item["t_hat"] = d.t_hat;
        item["c_hat"] = d.c_hat;
        item["standard_error"] = r.intervals ? Json(r.intervals->standard_error[q]) : Json(nullptr);
        item["ci"] = r.intervals ? interval_json(r.intervals->density[q], "bootstrap-assembled") : Json(nullptr);
        item["count"] = d.implied_count ? Json(*d.implied_count) : Json(nullptr);
        item["count_ci"] = r.intervals && r.intervals->count[q]
                               ? interval_json(*r.intervals->count[q], "bootstrap-assembled")
                               : Json(nullptr);
        densities.push_back(std::move(item));
    }
    doc["densities"] = densities;

    std::optional<double> gamma;
    if (r.intervals && r.intervals->clustering) {
        gamma = r.intervals->clustering;
    } else {
        const DensityEstimate* star = nullptr;
        const DensityEstimate* tri = nullptr;
        for (const auto& d : r.densities) {
            if (d.pattern.kind() == PatternKind::two_star && !star) star = &d;
            if (d.pattern.kind() == PatternKind::triangle && !tri) tri = &d;
        }
        if (star && tri && star->c_hat != 0.0) gamma = clustering_estimate(*star, *tri);
    }
    if (gamma) {
        doc["clustering"] = {{"estimate", *gamma},
                             {"ci", r.intervals && r.intervals->clustering_ci
                                        ? interval_json(*r.intervals->clustering_ci, "bootstrap-assembled")
                                        : Json(nullptr)}};
    } else {
        doc["clustering"] = nullptr;
    }

    if (r.covariance) {
        const auto& vp = *r.covariance;
        doc["covariance"] = {{"bootstrap_B", inputs.bootstrap_B}, {"v1", matrix_json(vp.v1)},
                             {"v2", matrix_json(vp.v2)},          {"v3", matrix_json(vp.v3)},
                             {"v_total", matrix_json(vp.v_total)}, {"delta_hat", matrix_json(vp.delta_hat)},
                             {"h_hat", matrix_json(vp.h_hat)},    {"g", matrix_json(vp.g_hat)},
                             {"sigma", matrix_json(vp.sigma_hat)}};
    } else {
        doc["covariance"] = nullptr;
    }
    doc["warnings"] = r.warnings;
    return doc;
}

void write_estimate_csv(std::ostream& out, const PipelineResult& r) {
    out << "quantity,estimate,lower,upper,level,route\n";
    const auto old = out.precision(12);
    const auto row = [&](const std::string& name, double est, const Interval* ci, const char* route) {
        out << name << ',' << est << ',';
        if (ci) out << ci->lower << ',' << ci->upper << ',' << ci->level << ',' << route;
        else out << ",,,";
        out << '\n';
    };
    row("alpha", r.rates.alpha_clamped, nullptr, "");
    row("beta", r.rates.beta_clamped, nullptr, "");
    row("delta", r.rates.delta_clamped, &r.rates.ci_delta, "asymptotic");
    for (std::size_t q = 0; q < r.densities.size(); ++q) {
        const auto& d = r.densities[q];
        const Interval* ci = r.intervals ? &r.intervals->density[q] : nullptr;
        row("density:" + d.pattern.name(), d.c_hat, ci, "bootstrap-assembled");
        if (d.implied_count) {
            const Interval* cci = r.intervals && r.intervals->count[q] ? &*r.intervals->count[q] : nullptr;
            row("count:" + d.pattern.name(), *d.implied_count, cci, "bootstrap-assembled");
        }
    }
    if (r.intervals && r.intervals->clustering) {
        row("clustering", *r.intervals->clustering,
            r.intervals->clustering_ci ? &*r.intervals->clustering_ci : nullptr, "bootstrap-assembled");
    }
    out.precision(old);
}

Json simulation_json(const std::vector<GridRow>& rows) {
    Json doc;
    doc["tool"] = {{"name", "noisynet"}, {"version", tool_version()}};
    doc["command"] = "simulate";
    Json out = Json::array();
    for (const auto& row : rows) {
        const auto& c = row.config;
        Json item = {{"p", c.p},
                     {"alpha", c.alpha},
                     {"beta", c.beta},
                     {"delta", c.delta},
                     {"mode", std::string(to_string(c.mode))},
                     {"replications", c.replications},
                     {"bootstrap_B", c.bootstrap_B},
                     {"seed", c.base_seed},
                     {"level", c.ci_level}};
        if (!row.report) {
            item["error"] = row.error;
            out.push_back(std::move(item));
            continue;
        }
        const auto& r = *row.report;
        item["truth"] = {{"delta", r.delta_true}, {"N2s", r.n2s_true}, {"Ntri", r.ntri_true}, {"gamma", r.gamma_true}};
        item["mae"] = {{"alpha", number_or_null(r.mae_alpha)}, {"beta", number_or_null(r.mae_beta)},
                       {"delta", number_or_null(r.mae_delta)}, {"N2s", number_or_null(r.mae_n2s)},
                       {"Ntri", number_or_null(r.mae_ntri)},   {"gamma", number_or_null(r.mae_gamma)}};
        item["coverage"] = {{"delta", coverage_json(r.delta)},
                            {"N2s", coverage_json(r.n2s)},
                            {"Ntri", coverage_json(r.ntri)},
                            {"gamma", coverage_json(r.gamma)}};
        item["completed"] = r.completed;
        Json failures = Json::object();
        for (const auto& [kind, count] : r.failures) failures[kind] = count;
        item["failures"] = failures;
        out.push_back(std::move(item));
    }
    doc["rows"] = out;
    return doc;
}

}  // namespace noisynet::cli
