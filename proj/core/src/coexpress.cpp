#include "noisynet/coexpress.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

#include "noisynet/errors.hpp"
#include "noisynet/normal.hpp"

namespace noisynet {

namespace {

std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> cells;
    std::string cell;
    std::istringstream in(line);
    while (std::getline(in, cell, ',')) {
        const auto b = cell.find_first_not_of(" \t\r\"");
        const auto e = cell.find_last_not_of(" \t\r\"");
        cells.push_back(b == std::string::npos ? std::string{} : cell.substr(b, e - b + 1));
    }
    if (!line.empty() && line.back() == ',') cells.emplace_back();
    return cells;
}

double parse_value(const std::string& cell, std::size_t line_no) {
    double v = 0.0;
    const auto [ptr, ec] = std::from_chars(cell.data(), cell.data() + cell.size(), v);
    if (cell.empty() || ec != std::errc{} || ptr != cell.data() + cell.size() || !std::isfinite(v)) {
        throw ParseError("line " + std::to_string(line_no) + ": missing or non-numeric value '" + cell + "'");
    }
    return v;
}

}  // namespace

ExpressionMatrix read_expression_csv(std::istream& in) {
    ExpressionMatrix data;
    std::string line;
    std::size_t line_no = 0;
    std::vector<std::vector<double>> rows;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.find_first_not_of(" \t\r") == std::string::npos || line.front() == '#') continue;
        auto cells = split_csv_line(line);
        if (data.samples.empty()) {
            if (cells.size() < 2) throw ParseError("header needs a label column and at least one sample");
            data.samples.assign(cells.begin() + 1, cells.end());
            continue;
        }
        if (cells.size() != data.samples.size() + 1) {
            throw ParseError("line " + std::to_string(line_no) + ": expected " +
                             std::to_string(data.samples.size() + 1) + " cells, found " +
                             std::to_string(cells.size()));
        }
        data.genes.push_back(cells[0]);
        std::vector<double> row;
        for (std::size_t c = 1; c < cells.size(); ++c) row.push_back(parse_value(cells[c], line_no));
        rows.push_back(std::move(row));
    }
    if (data.genes.size() < 2) throw ParseError("expression matrix needs at least two genes");
    data.values.resize(static_cast<Eigen::Index>(rows.size()), static_cast<Eigen::Index>(data.samples.size()));
    for (std::size_t i = 0; i < rows.size(); ++i)
        for (std::size_t j = 0; j < rows[i].size(); ++j)
            data.values(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = rows[i][j];
    return data;
}

ExpressionMatrix read_expression_csv(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open " + path.string());
    try {
        return read_expression_csv(in);
    } catch (const ParseError& e) {
        throw ParseError(path.string() + ": " + e.what());
    }
}

std::vector<std::vector<std::size_t>> split_replicate_sets(std::size_t samples, std::size_t k) {
    if (k == 0 || samples % k != 0) {
        throw InvalidArgument(std::to_string(samples) + " samples cannot be split into " + std::to_string(k) +
                              " equal replicate sets");
    }
    return group_replicate_sets(samples, std::vector<std::size_t>(k, samples / k));
}

std::vector<std::vector<std::size_t>> group_replicate_sets(std::size_t samples, const std::vector<std::size_t>& sizes) {
    std::vector<std::vector<std::size_t>> sets;
    std::size_t next = 0;
    for (const auto size : sizes) {
        if (size == 0) throw InvalidArgument("replicate sets must be non-empty");
        std::vector<std::size_t> set;
        for (std::size_t i = 0; i < size; ++i) set.push_back(next++);
        sets.push_back(std::move(set));
    }
    if (next != samples) {
        throw InvalidArgument("replicate set sizes sum to " + std::to_string(next) + ", not " +
                              std::to_string(samples));
    }
    return sets;
}

double bonferroni_level(std::size_t genes, double fwer) {
    if (genes < 2) throw InvalidArgument("need at least two genes");
    if (!(fwer > 0.0 && fwer < 1.0)) throw InvalidArgument("fwer must lie in (0, 1)");
    return fwer / (static_cast<double>(genes) * static_cast<double>(genes - 1) / 2.0);
}

AdjacencyMatrix coexpression_network(const Eigen::MatrixXd& values, double fwer) {
    const auto g = static_cast<std::size_t>(values.rows());
    const auto n = values.cols();
    if (n <= 3) throw InsufficientSamples("Fisher transform needs more than 3 samples, got " + std::to_string(n));
    const double crit = normal_quantile(1.0 - bonferroni_level(g, fwer) / 2.0);

    const Eigen::VectorXd mean = values.rowwise().mean();
    Eigen::MatrixXd centered = values.colwise() - mean;
    for (Eigen::Index i = 0; i < centered.rows(); ++i) {
        const double norm = centered.row(i).norm();
        if (!(norm > 0.0)) throw ConstantGene("gene " + std::to_string(i) + " has zero variance");
        centered.row(i) /= norm;
    }
    const Eigen::MatrixXd r = centered * centered.transpose();
    const double scale = std::sqrt(static_cast<double>(n - 3));
    AdjacencyMatrix out(g);
    for (std::size_t i = 0; i < g; ++i) {
        for (std::size_t j = i + 1; j < g; ++j) {
            const double rij = std::clamp(r(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)), -1.0, 1.0);
            if (scale * std::abs(std::atanh(rij)) > crit) out.set_edge(i, j, true);
        }
    }
    return out;
}

std::vector<AdjacencyMatrix> coexpression_networks(const ExpressionMatrix& data,
                                                   const std::vector<std::vector<std::size_t>>& sets, double fwer) {
    std::vector<AdjacencyMatrix> out;
    for (const auto& set : sets) {
        Eigen::MatrixXd block(data.values.rows(), static_cast<Eigen::Index>(set.size()));
        for (std::size_t c = 0; c < set.size(); ++c) {
            if (set[c] >= data.sample_count()) throw InvalidArgument("replicate set refers to a missing sample");
            block.col(static_cast<Eigen::Index>(c)) = data.values.col(static_cast<Eigen::Index>(set[c]));
        }
        for (Eigen::Index i = 0; i < block.rows(); ++i) {
            if (block.row(i).maxCoeff() == block.row(i).minCoeff()) {
                throw ConstantGene("gene '" + data.genes[static_cast<std::size_t>(i)] +
                                   "' is constant within a replicate set");
            }
        }
        out.push_back(coexpression_network(block, fwer));
    }
    return out;
}

}  // namespace noisynet
