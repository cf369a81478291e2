#pragma once

#include "semmap/error.hpp"
#include "semmap/lexicon.hpp"
#include "semmap/vsm.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace semmap {

/// Single documents are "restricted" discourse (tight word usage, high
/// threshold); document sets are "elaborate" (loose, low threshold).
enum class DiscourseMode { restricted, elaborate };

[[nodiscard]] auto to_string(DiscourseMode m) -> std::string_view;
[[nodiscard]] auto parse_discourse_mode(std::string_view s) -> DiscourseMode;

/// restricted -> 0.5, elaborate -> 0.1.
[[nodiscard]] auto default_threshold(DiscourseMode mode) -> double;

/// An explicit value wins over the mode default.
[[nodiscard]] auto resolve_threshold(DiscourseMode mode, std::optional<double> override_value) -> double;

struct GraphNode {
    std::size_t word_id = 0;
    std::string surface;
    std::uint64_t total_freq = 0;
    std::uint64_t unit_freq = 0;

    friend auto operator==(const GraphNode&, const GraphNode&) -> bool = default;
};

/// Undirected edge between node positions, source < target.
struct GraphEdge {
    std::size_t source = 0;
    std::size_t target = 0;
    double weight = 0.0;

    friend auto operator==(const GraphEdge&, const GraphEdge&) -> bool = default;
};

struct SemanticGraph {
    std::vector<GraphNode> nodes;  ///< ascending word_id
    std::vector<GraphEdge> edges;  ///< sorted by (source, target)
    double threshold = 0.0;
    Measure measure = Measure::cosine;

    [[nodiscard]] auto degrees() const -> std::vector<std::size_t>;
    /// 2E / (N (N - 1)); 0 for fewer than two nodes.
    [[nodiscard]] auto density() const -> double;
};

/// Every similarity column becomes a node; edge (i, j), i < j, exists iff
/// s(i, j) >= threshold and s(i, j) != 0.
[[nodiscard]] auto build_graph(const SimilarityMatrix& s, const Vocabulary& vocab, double threshold)
    -> SemanticGraph;

struct PruneResult {
    SemanticGraph graph;
    std::vector<std::string> removed;  ///< surfaces of degree-0 nodes
};

/// Drops exactly the degree-0 nodes; edges are kept and re-indexed.
[[nodiscard]] auto prune_isolated(const SemanticGraph& g, Diagnostics& diag) -> PruneResult;

/// Connected components as ascending node positions, ordered by their
/// smallest word id.
[[nodiscard]] auto components(const SemanticGraph& g) -> std::vector<std::vector<std::size_t>>;

}  // namespace semmap
