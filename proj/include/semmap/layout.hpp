#pragma once

#include "semmap/matrix.hpp"
#include "semmap/semgraph.hpp"

#include <cstddef>
#include <cstdint>
#include <span>
#include <string_view>
#include <vector>

namespace semmap {

struct Point {
    double x = 0.0;
    double y = 0.0;

    friend auto operator==(const Point&, const Point&) -> bool = default;
};

struct Box {
    double min_x = 0.0;
    double min_y = 0.0;
    double max_x = 0.0;
    double max_y = 0.0;
};

/// How graph distances are measured before they become spring lengths.
/// unit: hop counts. inverse_weight: shortest paths over edge lengths
/// (1 - weight) + 0.01, so strongly similar words sit closer.
enum class EdgeLength { unit, inverse_weight };

[[nodiscard]] auto to_string(EdgeLength e) -> std::string_view;
[[nodiscard]] auto parse_edge_length(std::string_view s) -> EdgeLength;

struct LayoutConfig {
    EdgeLength edge_length = EdgeLength::unit;
    double canvas_side = 1.0;
    /// Gradient-norm stop criterion, in units of the component's spring
    /// unit length L (absolute tolerance = tolerance * L).
    double tolerance = 1e-4;
    /// 0 selects 100 * (nodes in the component).
    std::size_t max_outer_iterations = 0;
    std::uint64_t seed = 1;
};

/// Shortest-path distances inside one connected component.
struct ComponentDistances {
    std::vector<std::size_t> nodes;  ///< graph node positions, ascending
    DenseMatrix<double> distance;
};

/// Per-component all-pairs shortest paths (Floyd-Warshall); components
/// ordered as by components().
[[nodiscard]] auto graph_distances(const SemanticGraph& g, EdgeLength mode) -> std::vector<ComponentDistances>;

/// Spring lengths l(i,j) = L d(i,j) and strengths k(i,j) = K / d(i,j)^2,
/// with L = canvas_side / max d.
struct SpringSystem {
    DenseMatrix<double> length;
    DenseMatrix<double> strength;
    double unit_length = 1.0;

    [[nodiscard]] auto size() const noexcept -> std::size_t { return length.rows(); }
};

[[nodiscard]] auto make_springs(const DenseMatrix<double>& distance, double canvas_side, double stiffness = 1.0)
    -> SpringSystem;

/// Sum over pairs i < j of k(i,j) (|p_i - p_j| - l(i,j))^2 / 2.
[[nodiscard]] auto kk_energy(std::span<const Point> positions, const SpringSystem& springs) -> double;

/// Partial derivatives of kk_energy with respect to node m's coordinates.
[[nodiscard]] auto kk_gradient(std::span<const Point> positions, const SpringSystem& springs, std::size_t m)
    -> Point;

struct RelaxResult {
    std::vector<Point> positions;
    double energy = 0.0;
    double max_gradient = 0.0;
    std::size_t iterations = 0;
    bool converged = false;
    std::vector<double> energy_trace;  ///< energy before the first and after every outer iteration
};

/// Minimizes the spring energy one node at a time: pick the node with the
/// largest gradient, move it by damped steepest descent (step halved
/// whenever the move would raise the energy) until its own gradient drops
/// below `abs_tolerance`, repeat until every node is below it or
/// `max_outer_iterations` is reached.
[[nodiscard]] auto kk_relax(const SpringSystem& springs, std::vector<Point> start, double abs_tolerance,
                            std::size_t max_outer_iterations) -> RelaxResult;

/// Nodes evenly spaced on a circle inside [0, canvas_side]^2 in index order,
/// with radius and angles jittered by the seed.
[[nodiscard]] auto circle_start(std::size_t n, double canvas_side, std::uint64_t seed) -> std::vector<Point>;

struct ComponentLayout {
    std::vector<std::size_t> nodes;  ///< graph node positions
    std::vector<Point> raw;          ///< optimizer coordinates, before packing
    double unit_length = 1.0;
    double energy = 0.0;
    std::size_t iterations = 0;
    bool converged = false;
    std::vector<double> energy_trace;
    Box box;  ///< placement in the normalized [0,1]^2 map
};

struct Embedding {
    std::vector<Point> positions;  ///< per graph node, inside [0,1]^2
    std::vector<ComponentLayout> components;
    bool converged = false;
    double energy = 0.0;          ///< sum of component energies
    std::size_t iterations = 0;   ///< sum of component outer iterations
};

/// Lays out each component separately (in parallel), packs components
/// row-major on a grid by descending size with areas proportional to node
/// count, and normalizes the result into [0,1]^2. Throws on an empty graph.
[[nodiscard]] auto kk_layout(const SemanticGraph& g, const LayoutConfig& config) -> Embedding;

}  // namespace semmap
