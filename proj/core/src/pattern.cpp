#include "noisynet/pattern.hpp"

#include <algorithm>
#include <charconv>
#include <set>

#include "noisynet/errors.hpp"

namespace noisynet {

std::string_view to_string(PatternKind kind) noexcept {
    switch (kind) {
        case PatternKind::edge: return "edge";
        case PatternKind::two_star: return "two_star";
        case PatternKind::open_triple: return "open_triple";
        case PatternKind::triangle: return "triangle";
        case PatternKind::path: return "path";
        case PatternKind::cycle: return "cycle";
        case PatternKind::custom: return "custom";
    }
    return "custom";
}

namespace {

constexpr std::size_t kMaxLabels = 32;

std::size_t parse_size(std::string_view s, std::string_view context) {
    std::size_t v = 0;
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc{} || ptr != s.data() + s.size()) {
        throw InvalidArgument("bad number '" + std::string(s) + "' in pattern '" + std::string(context) + "'");
    }
    return v;
}

std::vector<Slot> path_slots(std::size_t k) {
    std::vector<Slot> slots;
    for (std::size_t l = 0; l < k; ++l)
        slots.push_back({static_cast<std::uint8_t>(l), static_cast<std::uint8_t>(l + 1), true});
    return slots;
}

std::vector<Slot> cycle_slots(std::size_t k) {
    std::vector<Slot> slots;
    for (std::size_t l = 0; l < k; ++l)
        slots.push_back({static_cast<std::uint8_t>(l), static_cast<std::uint8_t>((l + 1) % k), true});
    return slots;
}

}  // namespace

SubgraphPattern::SubgraphPattern(PatternKind kind, std::size_t labels, std::vector<Slot> slots, std::size_t length)
    : kind_(kind), labels_(labels), slots_(std::move(slots)), length_(length) {
    validate();
}

SubgraphPattern SubgraphPattern::edge() { return {PatternKind::edge, 2, {{0, 1, true}}, 1}; }

SubgraphPattern SubgraphPattern::two_star() { return {PatternKind::two_star, 3, path_slots(2), 2}; }

SubgraphPattern SubgraphPattern::open_triple() {
    return {PatternKind::open_triple, 3, {{0, 1, true}, {1, 2, true}, {2, 0, false}}, 3};
}

SubgraphPattern SubgraphPattern::triangle() { return {PatternKind::triangle, 3, cycle_slots(3), 3}; }

SubgraphPattern SubgraphPattern::path(std::size_t k) {
    if (k == 0 || k + 1 > kMaxLabels) throw InvalidArgument("path length must be in 1.." + std::to_string(kMaxLabels - 1));
    if (k == 1) return edge();
    if (k == 2) return two_star();
    return {PatternKind::path, k + 1, path_slots(k), k};
}

SubgraphPattern SubgraphPattern::cycle(std::size_t k) {
    if (k < 3 || k > kMaxLabels) throw InvalidArgument("cycle length must be in 3.." + std::to_string(kMaxLabels));
    if (k == 3) return triangle();
    return {PatternKind::cycle, k, cycle_slots(k), k};
}

SubgraphPattern SubgraphPattern::custom(std::size_t labels, std::vector<Slot> slots) {
    SubgraphPattern pattern(PatternKind::custom, labels, std::move(slots));
    pattern.classify();
    return pattern;
}

void SubgraphPattern::validate() const {
    if (slots_.empty()) throw InvalidArgument("a pattern needs at least one slot");
    if (labels_ < 2 || labels_ > kMaxLabels) throw InvalidArgument("pattern label count out of range");
    std::set<std::pair<int, int>> seen;
    std::vector<bool> used(labels_, false);
    for (const auto& s : slots_) {
        if (s.u >= labels_ || s.v >= labels_) throw InvalidArgument("slot label out of range");
        if (s.u == s.v) throw InvalidArgument("slot endpoints must be distinct labels");
        // Two slots on the same label pair would share two labels.
        if (!seen.emplace(std::min(s.u, s.v), std::max(s.u, s.v)).second) {
            throw InvalidArgument("two slots share both endpoints");
        }
        used[s.u] = used[s.v] = true;
    }
    for (const bool u : used)
        if (!u) throw InvalidArgument("every vertex label must belong to some slot");
}

void SubgraphPattern::classify() {
    const auto same = [this](const SubgraphPattern& other) { return *this == other; };
    if (same(edge())) *this = edge();
    else if (same(two_star())) *this = two_star();
    else if (same(open_triple())) *this = open_triple();
    else if (same(triangle())) *this = triangle();
    else if (std::all_of(slots_.begin(), slots_.end(), [](const Slot& s) { return s.tau; })) {
        // Any labelling of these all-present shapes is the catalog pattern.
        if (slots_.size() == 1) *this = edge();
        else if (slots_.size() == 2 && labels_ == 3) *this = two_star();
        else if (slots_.size() == 3 && labels_ == 3) *this = triangle();
        else kind_ = PatternKind::custom;
    } else {
        kind_ = PatternKind::custom;
    }
}

SubgraphPattern SubgraphPattern::with_tau(std::size_t j, bool tau) const {
    if (j >= slots_.size()) throw InvalidArgument("slot index out of range");
    auto slots = slots_;
    slots[j].tau = tau;
    if (slots == slots_) return *this;
    return custom(labels_, std::move(slots));
}

std::string SubgraphPattern::name() const {
    switch (kind_) {
        case PatternKind::edge: return "edge";
        case PatternKind::two_star: return "two-star";
        case PatternKind::open_triple: return "open-triple";
        case PatternKind::triangle: return "triangle";
        case PatternKind::path: return "path:" + std::to_string(length_);
        case PatternKind::cycle: return "cycle:" + std::to_string(length_);
        case PatternKind::custom: break;
    }
    std::string out = "custom:";
    for (std::size_t i = 0; i < slots_.size(); ++i) {
        if (i) out += ',';
        if (!slots_[i].tau) out += '!';
        out += std::to_string(slots_[i].u) + "-" + std::to_string(slots_[i].v);
    }
    return out;
}

double SubgraphPattern::cardinality(std::size_t p) const noexcept {
    if (p < labels_) return 0.0;
    double n = 1.0;
    for (std::size_t i = 0; i < labels_; ++i) n *= static_cast<double>(p - i);
    return n;
}

SubgraphPattern SubgraphPattern::parse(std::string_view name) {
    if (name == "edge") return edge();
    if (name == "two-star" || name == "two_star") return two_star();
    if (name == "triangle") return triangle();
    if (name == "open-triple" || name == "open_triple") return open_triple();
    if (name.starts_with("path:")) return path(parse_size(name.substr(5), name));
    if (name.starts_with("cycle:")) return cycle(parse_size(name.substr(6), name));
    if (name.starts_with("custom:")) {
        std::vector<Slot> slots;
        std::size_t labels = 0;
        auto rest = name.substr(7);
        while (!rest.empty()) {
            const auto comma = rest.find(',');
            auto tok = rest.substr(0, comma);
            rest = comma == std::string_view::npos ? std::string_view{} : rest.substr(comma + 1);
            bool tau = true;
            if (!tok.empty() && tok.front() == '!') {
                tau = false;
                tok.remove_prefix(1);
            }
            const auto dash = tok.find('-');
            if (dash == std::string_view::npos) throw InvalidArgument("custom slot must look like 'u-v'");
            const auto u = parse_size(tok.substr(0, dash), name);
            const auto v = parse_size(tok.substr(dash + 1), name);
            if (u >= kMaxLabels || v >= kMaxLabels) throw InvalidArgument("custom pattern label too large");
            labels = std::max({labels, u + 1, v + 1});
            slots.push_back({static_cast<std::uint8_t>(u), static_cast<std::uint8_t>(v), tau});
        }
        return custom(labels, std::move(slots));
    }
    throw InvalidArgument("unknown pattern '" + std::string(name) +
                          "' (expected edge, two-star, triangle, open-triple, path:k, cycle:k or custom:...)");
}

std::vector<SubgraphPattern> parse_pattern_list(std::string_view comma_separated) {
    // Custom patterns contain commas themselves, so they must come last.
    std::vector<SubgraphPattern> out;
    auto rest = comma_separated;
    while (!rest.empty()) {
        if (rest.starts_with("custom:")) {
            out.push_back(SubgraphPattern::parse(rest));
            break;
        }
        const auto comma = rest.find(',');
        out.push_back(SubgraphPattern::parse(rest.substr(0, comma)));
        rest = comma == std::string_view::npos ? std::string_view{} : rest.substr(comma + 1);
    }
    return out;
}

}  // namespace noisynet
