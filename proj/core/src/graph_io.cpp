#include "noisynet/graph_io.hpp"

#include <charconv>
#include <fstream>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "noisynet/errors.hpp"

namespace noisynet {
namespace {

std::string_view trim(std::string_view s) {
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string_view::npos) return {};
    const auto last = s.find_last_not_of(" \t\r");
    return s.substr(first, last - first + 1);
}

bool skippable(std::string_view line) { return line.empty() || line.front() == '#'; }

std::size_t parse_index(std::string_view tok, std::size_t line_no) {
    std::size_t v = 0;
    const auto* end = tok.data() + tok.size();
    const auto [ptr, ec] = std::from_chars(tok.data(), end, v);
    if (ec != std::errc{} || ptr != end) {
        throw ParseError("line " + std::to_string(line_no) + ": expected a non-negative integer, got '" +
                         std::string(tok) + "'");
    }
    return v;
}

std::size_t parse_header(std::string_view line, std::size_t line_no) {
    if (line.substr(0, 2) != "p=") {
        throw ParseError("line " + std::to_string(line_no) + ": edge list must start with a 'p=<n>' header");
    }
    return parse_index(trim(line.substr(2)), line_no);
}

}  // namespace

AdjacencyMatrix read_edge_list(std::istream& in) {
    std::string raw;
    std::size_t line_no = 0;
    std::size_t p = 0;
    bool have_header = false;
    std::vector<Edge> edges;
    while (std::getline(in, raw)) {
        ++line_no;
        const auto line = trim(raw);
        if (skippable(line)) continue;
        if (!have_header) {
            p = parse_header(line, line_no);
            have_header = true;
            continue;
        }
        const auto split = line.find_first_of(" \t");
        if (split == std::string_view::npos) {
            throw ParseError("line " + std::to_string(line_no) + ": expected 'u v'");
        }
        const auto u = parse_index(trim(line.substr(0, split)), line_no);
        const auto v = parse_index(trim(line.substr(split + 1)), line_no);
        edges.emplace_back(u, v);
    }
    if (!have_header) throw ParseError("empty edge list: missing 'p=<n>' header");
    return AdjacencyMatrix::from_edges(p, edges);
}

void write_edge_list(std::ostream& out, const AdjacencyMatrix& a) {
    out << "p=" << a.size() << '\n';
    for (const auto& [u, v] : a.edges()) out << u << ' ' << v << '\n';
}

AdjacencyMatrix read_dense_csv(std::istream& in) {
    std::string raw;
    std::size_t line_no = 0;
    std::vector<std::uint8_t> entries;
    std::size_t cols = 0;
    std::size_t rows = 0;
    while (std::getline(in, raw)) {
        ++line_no;
        const auto line = trim(raw);
        if (skippable(line)) continue;
        std::size_t count = 0;
        std::size_t start = 0;
        while (true) {
            const auto comma = line.find(',', start);
            const auto tok = trim(line.substr(start, comma == std::string_view::npos ? std::string_view::npos
                                                                                       : comma - start));
            const auto v = parse_index(tok, line_no);
            if (v > 1) throw ParseError("line " + std::to_string(line_no) + ": entries must be 0 or 1");
            entries.push_back(static_cast<std::uint8_t>(v));
            ++count;
            if (comma == std::string_view::npos) break;
            start = comma + 1;
        }
        if (rows == 0) cols = count;
        if (count != cols) throw ParseError("line " + std::to_string(line_no) + ": ragged CSV row");
        ++rows;
    }
    if (rows != cols) throw DimensionMismatch("dense CSV must be square");
    return AdjacencyMatrix::from_dense(rows, entries);
}

void write_dense_csv(std::ostream& out, const AdjacencyMatrix& a) {
    const auto p = a.size();
    for (std::size_t i = 0; i < p; ++i) {
        for (std::size_t j = 0; j < p; ++j) {
            if (j) out << ',';
            out << static_cast<int>(a.at(i, j));
        }
        out << '\n';
    }
}

AdjacencyMatrix read_network(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open network file " + path.string());
    std::stringstream buffer;
    buffer << in.rdbuf();
    const std::string text = buffer.str();

    std::istringstream probe(text);
    std::string raw;
    while (std::getline(probe, raw)) {
        const auto line = trim(raw);
        if (skippable(line)) continue;
        std::istringstream body(text);
        try {
            return line.substr(0, 2) == "p=" ? read_edge_list(body) : read_dense_csv(body);
        } catch (const Error& e) {
            throw ParseError(path.string() + ": " + e.what());
        }
    }
    throw ParseError(path.string() + ": file is empty");
}

void write_network(const std::filesystem::path& path, const AdjacencyMatrix& a) {
    std::ofstream out(path);
    if (!out) throw ParseError("cannot write network file " + path.string());
    if (path.extension() == ".csv") {
        write_dense_csv(out, a);
    } else {
        write_edge_list(out, a);
    }
}

}  // namespace noisynet
