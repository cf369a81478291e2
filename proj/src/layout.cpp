#include "semmap/layout.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <random>

namespace semmap {

namespace {

constexpr std::string_view kModule = "layout";
constexpr std::size_t kMaxInnerSteps = 50;
constexpr double kMinStep = 1e-20;

auto uniform01(std::mt19937_64& rng) -> double
{
    // 53 random bits; portable across standard libraries.
    return static_cast<double>(rng() >> 11U) * 0x1.0p-53;
}

// Change in node m's energy terms when it moves from `from` to `to`, written
// so that nothing cancels: d' - d = (d'^2 - d^2) / (d' + d).
auto local_energy_delta(std::span<const Point> p, const SpringSystem& s, std::size_t m, Point from, Point to)
    -> double
{
    const double sx = to.x - from.x;
    const double sy = to.y - from.y;
    double delta = 0.0;
    for (std::size_t i = 0; i < p.size(); ++i) {
        if (i == m) {
            continue;
        }
        const double ax = from.x - p[i].x;
        const double ay = from.y - p[i].y;
        const double d0 = std::hypot(ax, ay);
        const double d1 = std::hypot(to.x - p[i].x, to.y - p[i].y);
        const double sum = d0 + d1;
        const double dd = sum > 0.0 ? (sx * (2.0 * ax + sx) + sy * (2.0 * ay + sy)) / sum : 0.0;
        delta += 0.5 * s.strength(m, i) * dd * (sum - 2.0 * s.length(m, i));
    }
    return delta;
}

struct Hessian2 {
    double xx = 0.0;
    double xy = 0.0;
    double yy = 0.0;
};

auto hessian_at(std::span<const Point> p, const SpringSystem& s, std::size_t m, Point at) -> Hessian2
{
    Hessian2 h;
    for (std::size_t i = 0; i < p.size(); ++i) {
        if (i == m) {
            continue;
        }
        const double dx = at.x - p[i].x;
        const double dy = at.y - p[i].y;
        const double dist = std::hypot(dx, dy);
        const double k = s.strength(m, i);
        if (dist == 0.0) {
            h.xx += k;
            h.yy += k;
            continue;
        }
        const double c = k * s.length(m, i) / (dist * dist * dist);
        h.xx += k - c * dy * dy;
        h.yy += k - c * dx * dx;
        h.xy += c * dx * dy;
    }
    return h;
}

auto gradient_at(std::span<const Point> p, const SpringSystem& s, std::size_t m, Point at) -> Point
{
    Point g;
    for (std::size_t i = 0; i < p.size(); ++i) {
        if (i == m) {
            continue;
        }
        const double dx = at.x - p[i].x;
        const double dy = at.y - p[i].y;
        const double dist = std::hypot(dx, dy);
        const double k = s.strength(m, i);
        if (dist == 0.0) {
            // Coincident pair: push apart along x, in opposite directions.
            g.x += (m < i ? 1.0 : -1.0) * k * s.length(m, i);
            continue;
        }
        const double f = k * (1.0 - s.length(m, i) / dist);
        g.x += f * dx;
        g.y += f * dy;
    }
    return g;
}

auto norm(Point v) -> double { return std::hypot(v.x, v.y); }

auto bounding_box(std::span<const Point> pts) -> Box
{
    Box b{std::numeric_limits<double>::infinity(), std::numeric_limits<double>::infinity(),
          -std::numeric_limits<double>::infinity(), -std::numeric_limits<double>::infinity()};
    for (const auto& p : pts) {
        b.min_x = std::min(b.min_x, p.x);
        b.min_y = std::min(b.min_y, p.y);
        b.max_x = std::max(b.max_x, p.x);
        b.max_y = std::max(b.max_y, p.y);
    }
    return b;
}

auto component_seed(std::uint64_t seed, std::size_t component) -> std::uint64_t
{
    return seed + 0x9E3779B97F4A7C15ULL * (static_cast<std::uint64_t>(component) + 1);
}

}  // namespace

auto to_string(EdgeLength e) -> std::string_view
{
    return e == EdgeLength::unit ? "unit" : "inverse-weight";
}

auto parse_edge_length(std::string_view s) -> EdgeLength
{
    if (s == "unit") {
        return EdgeLength::unit;
    }
    if (s == "inverse-weight" || s == "inverse_weight") {
        return EdgeLength::inverse_weight;
    }
    throw Error(std::string(kModule), fmt::format("unknown edge-length mode '{}' (expected unit or inverse-weight)", s));
}

auto graph_distances(const SemanticGraph& g, EdgeLength mode) -> std::vector<ComponentDistances>
{
    const auto comps = components(g);
    std::vector<std::size_t> comp_of(g.nodes.size());
    std::vector<std::size_t> local_of(g.nodes.size());
    std::vector<ComponentDistances> out(comps.size());
    constexpr double kInf = std::numeric_limits<double>::infinity();
    for (std::size_t c = 0; c < comps.size(); ++c) {
        out[c].nodes = comps[c];
        out[c].distance = DenseMatrix<double>(comps[c].size(), comps[c].size(), kInf);
        for (std::size_t k = 0; k < comps[c].size(); ++k) {
            comp_of[comps[c][k]] = c;
            local_of[comps[c][k]] = k;
            out[c].distance(k, k) = 0.0;
        }
    }
    for (const auto& e : g.edges) {
        auto& d = out[comp_of[e.source]].distance;
        const double len = mode == EdgeLength::unit ? 1.0 : (1.0 - e.weight) + 0.01;
        const auto a = local_of[e.source];
        const auto b = local_of[e.target];
        d(a, b) = std::min(d(a, b), len);
        d(b, a) = d(a, b);
    }
    for (auto& cd : out) {
        auto& d = cd.distance;
        const std::size_t n = d.rows();
        for (std::size_t k = 0; k < n; ++k) {
            for (std::size_t i = 0; i < n; ++i) {
                for (std::size_t j = 0; j < n; ++j) {
                    d(i, j) = std::min(d(i, j), d(i, k) + d(k, j));
                }
            }
        }
    }
    return out;
}

auto make_springs(const DenseMatrix<double>& distance, double canvas_side, double stiffness) -> SpringSystem
{
    const std::size_t n = distance.rows();
    double max_d = 0.0;
    for (const double d : distance.data()) {
        if (!std::isfinite(d)) {
            throw Error(std::string(kModule), "distance matrix spans more than one component");
        }
        max_d = std::max(max_d, d);
    }
    SpringSystem s;
    s.unit_length = max_d > 0.0 ? canvas_side / max_d : canvas_side;
    s.length = DenseMatrix<double>(n, n);
    s.strength = DenseMatrix<double>(n, n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            if (i == j) {
                continue;
            }
            const double d = distance(i, j);
            s.length(i, j) = s.unit_length * d;
            s.strength(i, j) = stiffness / (d * d);
        }
    }
    return s;
}

auto kk_energy(std::span<const Point> positions, const SpringSystem& springs) -> double
{
    double e = 0.0;
    for (std::size_t i = 0; i < positions.size(); ++i) {
        for (std::size_t j = i + 1; j < positions.size(); ++j) {
            const double dist = std::hypot(positions[i].x - positions[j].x, positions[i].y - positions[j].y);
            const double stretch = dist - springs.length(i, j);
            e += 0.5 * springs.strength(i, j) * stretch * stretch;
        }
    }
    return e;
}

auto kk_gradient(std::span<const Point> positions, const SpringSystem& springs, std::size_t m) -> Point
{
    return gradient_at(positions, springs, m, positions[m]);
}

auto kk_relax(const SpringSystem& springs, std::vector<Point> start, double abs_tolerance,
              std::size_t max_outer_iterations) -> RelaxResult
{
    const std::size_t n = springs.size();
    if (start.size() != n) {
        throw Error(std::string(kModule), "start positions do not match the spring system");
    }
    RelaxResult r;
    r.positions = std::move(start);
    auto& p = r.positions;
    r.energy_trace.push_back(kk_energy(p, springs));

    std::vector<double> grad_norm(n, 0.0);
    while (true) {
        std::size_t worst = 0;
        double worst_norm = -1.0;
        for (std::size_t i = 0; i < n; ++i) {
            grad_norm[i] = norm(kk_gradient(p, springs, i));
            if (grad_norm[i] > worst_norm) {
                worst_norm = grad_norm[i];
                worst = i;
            }
        }
        r.max_gradient = std::max(worst_norm, 0.0);
        if (n < 2 || worst_norm < abs_tolerance) {
            r.converged = true;
            break;
        }
        if (r.iterations >= max_outer_iterations) {
            break;
        }

        // Move the chosen node: Newton step on its 2x2 system when that is
        // a descent direction, scaled gradient otherwise, halved until the
        // energy drops.
        const std::size_t m = worst;
        double curvature = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            if (i != m) {
                curvature += springs.strength(m, i);
            }
        }
        Point g = kk_gradient(p, springs, m);
        bool any_move = false;
        for (std::size_t inner = 0; inner < kMaxInnerSteps && norm(g) >= abs_tolerance; ++inner) {
            const auto h = hessian_at(p, springs, m, p[m]);
            const double det = h.xx * h.yy - h.xy * h.xy;
            Point dir{-g.x / curvature, -g.y / curvature};
            if (h.xx > 0.0 && det > 0.0) {
                dir = Point{-(h.yy * g.x - h.xy * g.y) / det, -(h.xx * g.y - h.xy * g.x) / det};
            }
            bool moved = false;
            for (double t = 1.0; t > kMinStep; t *= 0.5) {
                const Point trial{p[m].x + t * dir.x, p[m].y + t * dir.y};
                const double de = local_energy_delta(p, springs, m, p[m], trial);
                if (de > 0.0) {
                    continue;
                }
                // A zero change is accepted only when the gradient still shrinks.
                const Point g_trial = gradient_at(p, springs, m, trial);
                if (de < 0.0 || norm(g_trial) < norm(g)) {
                    p[m] = trial;
                    g = g_trial;
                    moved = true;
                    break;
                }
            }
            if (!moved) {
                break;
            }
            any_move = true;
        }
        if (!any_move) {
            break;  // stalled at the resolution limit
        }
        ++r.iterations;
        r.energy_trace.push_back(kk_energy(p, springs));
    }
    r.energy = r.energy_trace.back();
    return r;
}

auto circle_start(std::size_t n, double canvas_side, std::uint64_t seed) -> std::vector<Point>
{
    std::mt19937_64 rng(seed);
    const double center = canvas_side / 2.0;
    const double radius = canvas_side * (0.4 + 0.1 * uniform01(rng));
    const double spacing = 2.0 * std::numbers::pi / static_cast<double>(std::max<std::size_t>(n, 1));
    std::vector<Point> pts(n);
    for (std::size_t i = 0; i < n; ++i) {
        const double angle = spacing * (static_cast<double>(i) + 0.25 * (uniform01(rng) - 0.5));
        pts[i] = Point{center + radius * std::cos(angle), center + radius * std::sin(angle)};
    }
    return pts;
}

auto kk_layout(const SemanticGraph& g, const LayoutConfig& config) -> Embedding
{
    if (g.nodes.empty()) {
        throw Error(std::string(kModule), "cannot lay out an empty graph");
    }
    if (!(config.tolerance > 0.0) || !(config.canvas_side > 0.0)) {
        throw Error(std::string(kModule), "tolerance and canvas_side must be positive");
    }
    const auto dists = graph_distances(g, config.edge_length);
    Embedding emb;
    emb.components.resize(dists.size());

    const auto ncomp = static_cast<std::ptrdiff_t>(dists.size());
#pragma omp parallel for schedule(dynamic)
    for (std::ptrdiff_t ci = 0; ci < ncomp; ++ci) {
        const auto c = static_cast<std::size_t>(ci);
        const auto& cd = dists[c];
        const auto springs = make_springs(cd.distance, config.canvas_side);
        const std::size_t max_outer =
            config.max_outer_iterations > 0 ? config.max_outer_iterations : 100 * cd.nodes.size();
        auto relaxed = kk_relax(springs, circle_start(cd.nodes.size(), config.canvas_side, component_seed(config.seed, c)),
                                config.tolerance * springs.unit_length, max_outer);
        auto& out = emb.components[c];
        out.nodes = cd.nodes;
        out.raw = std::move(relaxed.positions);
        out.unit_length = springs.unit_length;
        out.energy = relaxed.energy;
        out.iterations = relaxed.iterations;
        out.converged = relaxed.converged;
        out.energy_trace = std::move(relaxed.energy_trace);
    }

    emb.converged = true;
    for (const auto& c : emb.components) {
        emb.energy += c.energy;
        emb.iterations += c.iterations;
        emb.converged = emb.converged && c.converged;
    }

    // Pack: descending size, row-major grid, cell side ~ sqrt(node count).
    std::vector<std::size_t> order(emb.components.size());
    for (std::size_t i = 0; i < order.size(); ++i) {
        order[i] = i;
    }
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        return emb.components[a].nodes.size() > emb.components[b].nodes.size();
    });
    const auto columns = static_cast<std::size_t>(std::ceil(std::sqrt(static_cast<double>(order.size()))));
    const double largest = std::sqrt(static_cast<double>(emb.components[order.front()].nodes.size()));
    const double gap = order.size() > 1 ? 0.15 * largest : 0.0;

    std::vector<Box> placed(emb.components.size());
    std::vector<std::vector<Point>> packed(emb.components.size());
    double cursor_x = 0.0;
    double cursor_y = 0.0;
    double row_height = 0.0;
    for (std::size_t k = 0; k < order.size(); ++k) {
        if (k > 0 && k % columns == 0) {
            cursor_x = 0.0;
            cursor_y += row_height + gap;
            row_height = 0.0;
        }
        const auto c = order[k];
        const auto& comp = emb.components[c];
        const double side = std::sqrt(static_cast<double>(comp.nodes.size()));
        const Box raw = bounding_box(comp.raw);
        const double extent = std::max(raw.max_x - raw.min_x, raw.max_y - raw.min_y);
        const double scale = extent > 0.0 ? side / extent : 1.0;
        const double off_x = cursor_x + (side - (raw.max_x - raw.min_x) * scale) / 2.0;
        const double off_y = cursor_y + (side - (raw.max_y - raw.min_y) * scale) / 2.0;
        packed[c].reserve(comp.raw.size());
        for (const auto& p : comp.raw) {
            packed[c].push_back(Point{off_x + (p.x - raw.min_x) * scale, off_y + (p.y - raw.min_y) * scale});
        }
        cursor_x += side + gap;
        row_height = std::max(row_height, side);
    }

    // Normalize the whole map into [0,1]^2 with one uniform scale.
    std::vector<Point> all;
    for (const auto& pts : packed) {
        all.insert(all.end(), pts.begin(), pts.end());
    }
    const Box total = bounding_box(all);
    const double width = total.max_x - total.min_x;
    const double height = total.max_y - total.min_y;
    const double extent = std::max(width, height);
    const double scale = extent > 0.0 ? 1.0 / extent : 1.0;
    const double pad_x = (1.0 - width * scale) / 2.0;
    const double pad_y = (1.0 - height * scale) / 2.0;
    auto to_unit = [&](double v, double lo, double pad) {
        return std::clamp(pad + (v - lo) * scale, 0.0, 1.0);
    };

    emb.positions.assign(g.nodes.size(), Point{});
    for (std::size_t c = 0; c < emb.components.size(); ++c) {
        auto& comp = emb.components[c];
        std::vector<Point> unit_pts;
        for (std::size_t k = 0; k < comp.nodes.size(); ++k) {
            const Point q{to_unit(packed[c][k].x, total.min_x, pad_x), to_unit(packed[c][k].y, total.min_y, pad_y)};
            emb.positions[comp.nodes[k]] = q;
            unit_pts.push_back(q);
        }
        comp.box = bounding_box(unit_pts);
    }
    return emb;
}

}  // namespace semmap
