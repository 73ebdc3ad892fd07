#pragma once
// Network file formats.
//
// Edge list: a header line "p=<n>" followed by one "u v" pair per line,
// whitespace separated, 0-based, each undirected pair listed once. Blank lines
// and lines starting with '#' are ignored.
//
// Dense: CSV of 0/1 entries, p rows of p columns.

#include <filesystem>
#include <iosfwd>

#include "noisynet/adjacency.hpp"

namespace noisynet {

AdjacencyMatrix read_edge_list(std::istream& in);
void write_edge_list(std::ostream& out, const AdjacencyMatrix& a);

AdjacencyMatrix read_dense_csv(std::istream& in);
void write_dense_csv(std::ostream& out, const AdjacencyMatrix& a);

// Picks the format from the first meaningful line: "p=" means edge list,
// anything else is parsed as dense CSV.
AdjacencyMatrix read_network(const std::filesystem::path& path);
void write_network(const std::filesystem::path& path, const AdjacencyMatrix& a);

}  // namespace noisynet
