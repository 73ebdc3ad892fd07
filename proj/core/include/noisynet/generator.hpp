#pragma once

#include <cstdint>

#include "noisynet/adjacency.hpp"

namespace noisynet {

struct GeneratorOptions {
    std::uint64_t max_iters = 5'000'000;  // edge-relocation proposals
    double initial_temperature = 5.0;
    double cooling = 0.995;
    // Proposals without a new best before the temperature is reset.
    std::uint64_t reheat_after = 20'000;
};

// Random graph with exactly the requested numbers of edges, two-stars and
// triangles.
//
// Phase 1 draws a uniform graph with the target edge count. Phase 2 relocates
// single edges (delete a random present edge, insert a random absent pair),
// accepting a proposal when the distance (|N2* - t|, |Ntri - t|) does not grow
// lexicographically, and otherwise with probability exp(-d/T) where d is the
// increase of the summed distance. T cools geometrically and is reset after a
// long stall. Degrees and bit-packed rows are updated incrementally, so a
// proposal costs O(p/64).
//
// Throws TargetNotReached (carrying the best gaps seen) when the budget runs
// out; retry with another seed.
AdjacencyMatrix generate_constrained(const GraphTargets& targets, std::uint64_t seed,
                                     const GeneratorOptions& options = {});

}  // namespace noisynet
