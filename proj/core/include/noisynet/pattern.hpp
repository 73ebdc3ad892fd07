#pragma once
// Subgraph templates: k edge slots over m abstract vertex labels. An embedding
// maps the labels injectively onto vertices, so the index set V has
// |V| = p (p-1) ... (p-m+1) ordered elements. Each slot carries a flag tau:
// 1 requires an edge, 0 requires a non-edge.

#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace noisynet {

enum class PatternKind { edge, two_star, open_triple, triangle, path, cycle, custom };

std::string_view to_string(PatternKind kind) noexcept;

struct Slot {
    std::uint8_t u = 0;  // vertex label
    std::uint8_t v = 0;  // vertex label
    bool tau = true;

    friend bool operator==(const Slot&, const Slot&) = default;
};

class SubgraphPattern {
public:
    static SubgraphPattern edge();
    static SubgraphPattern two_star();
    // Two edges and the missing third side: tau = (1, 1, 0).
    static SubgraphPattern open_triple();
    static SubgraphPattern triangle();
    // Paths and cycles of length k. path(1) is edge(), path(2) is two_star()
    // and cycle(3) is triangle().
    static SubgraphPattern path(std::size_t k);
    static SubgraphPattern cycle(std::size_t k);
    // Throws InvalidArgument unless every slot joins two distinct labels, any
    // two slots share at most one label and every label is used.
    static SubgraphPattern custom(std::size_t labels, std::vector<Slot> slots);

    // Catalog names: edge, two-star, triangle, open-triple, path:k, cycle:k.
    // Custom patterns: "custom:0-1,1-2,!0-2" ('!' marks a non-edge slot).
    static SubgraphPattern parse(std::string_view name);

    PatternKind kind() const noexcept { return kind_; }
    std::size_t k() const noexcept { return slots_.size(); }
    std::size_t vertex_count() const noexcept { return labels_; }
    const std::vector<Slot>& slots() const noexcept { return slots_; }
    std::string name() const;

    // |V| for a graph on p vertices; 0 if p < vertex_count().
    double cardinality(std::size_t p) const noexcept;

    // Same slots with slot j's flag replaced.
    SubgraphPattern with_tau(std::size_t j, bool tau) const;

    friend bool operator==(const SubgraphPattern& a, const SubgraphPattern& b) {
        return a.labels_ == b.labels_ && a.slots_ == b.slots_;
    }

private:
    SubgraphPattern(PatternKind kind, std::size_t labels, std::vector<Slot> slots, std::size_t length = 0);
    void validate() const;
    void classify();

    PatternKind kind_;
    std::size_t labels_;
    std::vector<Slot> slots_;
    std::size_t length_;
};

std::vector<SubgraphPattern> parse_pattern_list(std::string_view comma_separated);

}  // namespace noisynet
