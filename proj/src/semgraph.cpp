#include "semmap/semgraph.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <numeric>

namespace semmap {

namespace {

constexpr std::string_view kModule = "semgraph";

}  // namespace

auto to_string(DiscourseMode m) -> std::string_view
{
    return m == DiscourseMode::restricted ? "restricted" : "elaborate";
}

auto parse_discourse_mode(std::string_view s) -> DiscourseMode
{
    if (s == "restricted") {
        return DiscourseMode::restricted;
    }
    if (s == "elaborate") {
        return DiscourseMode::elaborate;
    }
    throw Error(std::string(kModule), fmt::format("unknown discourse mode '{}' (expected restricted or elaborate)", s));
}

auto default_threshold(DiscourseMode mode) -> double
{
    return mode == DiscourseMode::restricted ? 0.5 : 0.1;
}

auto resolve_threshold(DiscourseMode mode, std::optional<double> override_value) -> double
{
    return override_value.value_or(default_threshold(mode));
}

auto SemanticGraph::degrees() const -> std::vector<std::size_t>
{
    std::vector<std::size_t> deg(nodes.size(), 0);
    for (const auto& e : edges) {
        ++deg[e.source];
        ++deg[e.target];
    }
    return deg;
}

auto SemanticGraph::density() const -> double
{
    const auto n = static_cast<double>(nodes.size());
    if (nodes.size() < 2) {
        return 0.0;
    }
    return 2.0 * static_cast<double>(edges.size()) / (n * (n - 1.0));
}

auto build_graph(const SimilarityMatrix& s, const Vocabulary& vocab, double threshold) -> SemanticGraph
{
    const double lo = s.measure == Measure::cosine ? 0.0 : -1.0;
    if (!(threshold >= lo && threshold <= 1.0)) {
        throw Error(std::string(kModule), fmt::format("threshold {} outside [{}, 1] for {}", threshold, lo,
                                                      to_string(s.measure)));
    }
    SemanticGraph g;
    g.threshold = threshold;
    g.measure = s.measure;
    g.nodes.reserve(s.size());
    for (const auto id : s.word_ids) {
        const auto& e = vocab[id];
        g.nodes.push_back(GraphNode{e.word_id, e.surface, e.total_freq, e.unit_freq});
    }
    for (std::size_t i = 0; i < s.size(); ++i) {
        for (std::size_t j = i + 1; j < s.size(); ++j) {
            const double w = s(i, j);
            if (w >= threshold && w != 0.0) {
                g.edges.push_back(GraphEdge{i, j, w});
            }
        }
    }
    return g;
}

auto prune_isolated(const SemanticGraph& g, Diagnostics& diag) -> PruneResult
{
    const auto deg = g.degrees();
    PruneResult out;
    out.graph.threshold = g.threshold;
    out.graph.measure = g.measure;
    constexpr auto kGone = static_cast<std::size_t>(-1);
    std::vector<std::size_t> remap(g.nodes.size(), kGone);
    for (std::size_t i = 0; i < g.nodes.size(); ++i) {
        if (deg[i] == 0) {
            out.removed.push_back(g.nodes[i].surface);
            continue;
        }
        remap[i] = out.graph.nodes.size();
        out.graph.nodes.push_back(g.nodes[i]);
    }
    out.graph.edges.reserve(g.edges.size());
    for (const auto& e : g.edges) {
        out.graph.edges.push_back(GraphEdge{remap[e.source], remap[e.target], e.weight});
    }
    if (out.graph.nodes.empty() && !g.nodes.empty()) {
        diag.warn(kModule, fmt::format("all {} nodes are isolated at threshold {}; graph is empty", g.nodes.size(),
                                       g.threshold));
    }
    return out;
}

auto components(const SemanticGraph& g) -> std::vector<std::vector<std::size_t>>
{
    // Union-find with the smaller position as root; positions follow word ids.
    std::vector<std::size_t> parent(g.nodes.size());
    std::iota(parent.begin(), parent.end(), std::size_t{0});
    auto find = [&](std::size_t x) {
        while (parent[x] != x) {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        return x;
    };
    for (const auto& e : g.edges) {
        const auto a = find(e.source);
        const auto b = find(e.target);
        if (a != b) {
            parent[std::max(a, b)] = std::min(a, b);
        }
    }
    std::vector<std::vector<std::size_t>> out;
    std::vector<std::size_t> slot(g.nodes.size(), static_cast<std::size_t>(-1));
    for (std::size_t i = 0; i < g.nodes.size(); ++i) {
        const auto r = find(i);
        if (slot[r] == static_cast<std::size_t>(-1)) {
            slot[r] = out.size();
            out.emplace_back();
        }
        out[slot[r]].push_back(i);
    }
    return out;
}

}  // namespace semmap
