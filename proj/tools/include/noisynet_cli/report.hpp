#pragma once
// JSON and CSV renderings of estimation and simulation results.

#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include <json.hpp>

#include "noisynet/pipeline.hpp"
#include "noisynet/simulation.hpp"

namespace noisynet::cli {

using Json = nlohmann::ordered_json;

std::string tool_version();

// FNV-1a 64-bit digest of a file's bytes, 16 hex digits.
std::string file_digest(const std::filesystem::path& path);

struct NetworkInput {
    std::string path;
    std::string digest;
    std::size_t vertices = 0;
    std::size_t edges = 0;
};

struct EstimateInputs {
    std::vector<NetworkInput> networks;
    std::uint64_t seed = 1;
    double level = 0.95;
    std::size_t bootstrap_B = 0;
    std::string alpha_source;  // "given", "nominal" or "estimated"
};

Json interval_json(const Interval& ci, const char* route);
Json estimate_json(const PipelineResult& result, const EstimateInputs& inputs);
void write_estimate_csv(std::ostream& out, const PipelineResult& result);

Json simulation_json(const std::vector<GridRow>& rows);

}  // namespace noisynet::cli
