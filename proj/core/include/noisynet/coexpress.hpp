#pragma once
// Coexpression networks from gene expression data: Pearson correlation per
// gene pair, Fisher z = atanh(r), Bonferroni-corrected two-sided test.

#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "noisynet/adjacency.hpp"

namespace noisynet {

struct ExpressionMatrix {
    std::vector<std::string> genes;
    std::vector<std::string> samples;
    Eigen::MatrixXd values;  // genes x samples

    std::size_t gene_count() const noexcept { return genes.size(); }
    std::size_t sample_count() const noexcept { return samples.size(); }
};

// CSV with a header row (first cell ignored, then sample names) and one row
// per gene: label, then one value per sample. Empty, NA or non-numeric cells
// are rejected with ParseError.
ExpressionMatrix read_expression_csv(std::istream& in);
ExpressionMatrix read_expression_csv(const std::filesystem::path& path);

// Column index sets. Equal contiguous split into k sets; throws
// InvalidArgument unless k divides the sample count.
std::vector<std::vector<std::size_t>> split_replicate_sets(std::size_t samples, std::size_t k);
// Contiguous sets of the given sizes, which must sum to the sample count.
std::vector<std::vector<std::size_t>> group_replicate_sets(std::size_t samples, const std::vector<std::size_t>& sizes);

// Per-test level fwer / (g(g-1)/2).
double bonferroni_level(std::size_t genes, double fwer);

// Edge (i,j) when sqrt(n-3) |atanh(r_ij)| > z_{1 - a/2}, a the Bonferroni
// level. values is genes x samples. Throws InsufficientSamples if n <= 3,
// ConstantGene if some gene has zero variance.
AdjacencyMatrix coexpression_network(const Eigen::MatrixXd& values, double fwer = 0.05);

// One network per replicate set.
std::vector<AdjacencyMatrix> coexpression_networks(const ExpressionMatrix& data,
                                                   const std::vector<std::vector<std::size_t>>& sets,
                                                   double fwer = 0.05);

}  // namespace noisynet
