#include "semmap/layout.hpp"

#include "doctest.h"
#include "oracles.hpp"

#include <cmath>
#include <numeric>

using namespace semmap;
using testing::Rng;

namespace {

auto dist(Point a, Point b) -> double { return std::hypot(a.x - b.x, a.y - b.y); }

auto springs_from(std::size_t n, std::initializer_list<std::tuple<std::size_t, std::size_t, double>> ls,
                  double k = 1.0) -> SpringSystem
{
    SpringSystem s;
    s.length = DenseMatrix<double>(n, n);
    s.strength = DenseMatrix<double>(n, n, k);
    for (const auto& [i, j, l] : ls) {
        s.length(i, j) = s.length(j, i) = l;
    }
    return s;
}

auto one_component(const SemanticGraph& g) -> ComponentLayout
{
    const auto e = kk_layout(g, LayoutConfig{});
    REQUIRE(e.components.size() == 1);
    return e.components[0];
}

}  // namespace

TEST_SUITE("layout")
{
    TEST_CASE("graph distances")
    {
        const auto path = graph_distances(testing::graph_of(3, {{0, 1, 0.9}, {1, 2, 0.9}}), EdgeLength::unit);
        REQUIRE(path.size() == 1);
        CHECK(path[0].distance(0, 2) == 2.0);
        CHECK(path[0].distance(2, 0) == 2.0);

        const auto weighted = graph_distances(testing::graph_of(2, {{0, 1, 0.6}}), EdgeLength::inverse_weight);
        CHECK(weighted[0].distance(0, 1) == doctest::Approx(0.41).epsilon(1e-12));

        const auto tri = graph_distances(testing::graph_of(3, {{0, 1, 0.2}, {1, 2, 0.2}, {0, 2, 0.2}}), EdgeLength::unit);
        for (std::size_t i = 0; i < 3; ++i) {
            for (std::size_t j = 0; j < 3; ++j) {
                CHECK(tri[0].distance(i, j) == (i == j ? 0.0 : 1.0));
            }
        }

        const auto split = graph_distances(testing::graph_of(5, {{0, 3, 1.0}, {1, 2, 1.0}, {2, 4, 1.0}}), EdgeLength::unit);
        REQUIRE(split.size() == 2);
        CHECK(split[0].nodes == std::vector<std::size_t>{0, 3});
        CHECK(split[1].nodes == std::vector<std::size_t>{1, 2, 4});
        CHECK(split[1].distance(0, 2) == 2.0);
        CHECK(parse_edge_length("inverse-weight") == EdgeLength::inverse_weight);
    }

    TEST_CASE("springs follow the distance matrix")
    {
        DenseMatrix<double> d(3, 3);
        d(0, 1) = d(1, 0) = 1.0;
        d(1, 2) = d(2, 1) = 1.0;
        d(0, 2) = d(2, 0) = 2.0;
        const auto s = make_springs(d, 1.0);
        CHECK(s.unit_length == 0.5);
        CHECK(s.length(0, 2) == 1.0);
        CHECK(s.strength(0, 2) == 0.25);
        CHECK(s.strength(0, 1) == 1.0);
    }

    TEST_CASE("energy formula")
    {
        const auto s = springs_from(2, {{0, 1, 1.0}});
        const std::vector<Point> relaxed{{0.0, 0.0}, {1.0, 0.0}};
        CHECK(kk_energy(relaxed, s) == 0.0);
        const std::vector<Point> coincident{{0.3, 0.3}, {0.3, 0.3}};
        CHECK(kk_energy(coincident, s) == 0.5);

        const auto t = springs_from(3, {{0, 1, 2.0}, {1, 2, 2.0}, {0, 2, 2.0}});
        const std::vector<Point> equilateral{{0.0, 0.0}, {2.0, 0.0}, {1.0, std::sqrt(3.0)}};
        CHECK(kk_energy(equilateral, t) == doctest::Approx(0.0).epsilon(1e-24));
    }

    TEST_CASE("gradient matches finite differences")
    {
        Rng rng(61);
        for (int trial = 0; trial < 20; ++trial) {
            const auto g = testing::random_connected_graph(rng, 8, 0.3);
            const auto s = make_springs(graph_distances(g, EdgeLength::unit)[0].distance, 1.0);
            auto p = circle_start(8, 1.0, static_cast<std::uint64_t>(trial));
            for (std::size_t m = 0; m < 8; ++m) {
                const auto grad = kk_gradient(p, s, m);
                const double h = 1e-6;
                auto q = p;
                q[m].x += h;
                const double ex_plus = kk_energy(q, s);
                q[m].x -= 2 * h;
                const double ex_minus = kk_energy(q, s);
                CHECK(grad.x == doctest::Approx((ex_plus - ex_minus) / (2 * h)).epsilon(1e-5));
                q = p;
                q[m].y += h;
                const double ey_plus = kk_energy(q, s);
                q[m].y -= 2 * h;
                const double ey_minus = kk_energy(q, s);
                CHECK(grad.y == doctest::Approx((ey_plus - ey_minus) / (2 * h)).epsilon(1e-5));
            }
        }
    }

    TEST_CASE("single edge relaxes to its spring length")
    {
        const auto c = one_component(testing::graph_of(2, {{0, 1, 0.8}}));
        CHECK(c.converged);
        CHECK(std::abs(dist(c.raw[0], c.raw[1]) - c.unit_length) < 1e-3);
        CHECK(c.energy < 1e-6);
    }

    TEST_CASE("path of three straightens out")
    {
        const auto c = one_component(testing::graph_of(3, {{0, 1, 0.8}, {1, 2, 0.8}}));
        CHECK(c.converged);
        CHECK(c.energy < 1e-6);
        CHECK(dist(c.raw[0], c.raw[1]) == doctest::Approx(c.unit_length).epsilon(1e-3));
        CHECK(dist(c.raw[0], c.raw[2]) == doctest::Approx(2 * c.unit_length).epsilon(1e-3));
    }

    TEST_CASE("triangle becomes equilateral")
    {
        const auto c = one_component(testing::graph_of(3, {{0, 1, 0.8}, {1, 2, 0.8}, {0, 2, 0.8}}));
        CHECK(c.energy < 1e-6);
        const double ab = dist(c.raw[0], c.raw[1]);
        CHECK(dist(c.raw[1], c.raw[2]) == doctest::Approx(ab).epsilon(1e-3));
        CHECK(dist(c.raw[0], c.raw[2]) == doctest::Approx(ab).epsilon(1e-3));
    }

    TEST_CASE("energy never increases and converged gradients are small")
    {
        Rng rng(62);
        for (int trial = 0; trial < 30; ++trial) {
            const auto n = static_cast<std::size_t>(testing::uniform_int(rng, 2, 30));
            const auto g = testing::random_connected_graph(rng, n, testing::uniform(rng, 0.0, 0.3));
            const auto s = make_springs(graph_distances(g, EdgeLength::unit)[0].distance, 1.0);
            const double tol = 1e-4 * s.unit_length;
            const auto r = kk_relax(s, circle_start(n, 1.0, 9), tol, 100 * n);
            for (std::size_t k = 1; k < r.energy_trace.size(); ++k) {
                CHECK(r.energy_trace[k] <= r.energy_trace[k - 1] + 1e-12);
            }
            CHECK(r.energy_trace.size() == r.iterations + 1);
            if (r.converged) {
                for (std::size_t m = 0; m < n; ++m) {
                    const auto gm = kk_gradient(r.positions, s, m);
                    CHECK(std::hypot(gm.x, gm.y) < tol);
                }
            }
        }
    }

    TEST_CASE("layout is deterministic and seeded")
    {
        Rng rng(63);
        const auto g = testing::random_connected_graph(rng, 20, 0.15);
        LayoutConfig cfg;
        cfg.seed = 77;
        const auto a = kk_layout(g, cfg);
        const auto b = kk_layout(g, cfg);
        CHECK(a.positions == b.positions);
        CHECK(a.energy == b.energy);
        cfg.seed = 78;
        CHECK(kk_layout(g, cfg).positions != a.positions);
    }

    TEST_CASE("relabeled graphs reach the same energy from the same start")
    {
        Rng rng(64);
        for (int trial = 0; trial < 10; ++trial) {
            const std::size_t n = 12;
            const auto g = testing::random_connected_graph(rng, n, 0.2);
            std::vector<std::size_t> perm(n);
            std::iota(perm.begin(), perm.end(), std::size_t{0});
            std::shuffle(perm.begin(), perm.end(), rng);
            std::vector<GraphEdge> relabeled;
            for (const auto& e : g.edges) {
                relabeled.push_back(GraphEdge{std::min(perm[e.source], perm[e.target]),
                                              std::max(perm[e.source], perm[e.target]), e.weight});
            }
            const auto h = testing::graph_of(n, relabeled);

            const auto sg = make_springs(graph_distances(g, EdgeLength::unit)[0].distance, 1.0);
            const auto sh = make_springs(graph_distances(h, EdgeLength::unit)[0].distance, 1.0);
            const auto start = circle_start(n, 1.0, 5);
            std::vector<Point> start_h(n);
            for (std::size_t i = 0; i < n; ++i) {
                start_h[perm[i]] = start[i];
            }
            CHECK(kk_energy(start, sg) == doctest::Approx(kk_energy(start_h, sh)).epsilon(1e-12));
            const auto rg = kk_relax(sg, start, 1e-9, 100000);
            const auto rh = kk_relax(sh, start_h, 1e-9, 100000);
            CHECK(rg.converged);
            CHECK(rh.converged);
            CHECK(std::abs(rg.energy - rh.energy) < 1e-9);
        }
    }

    TEST_CASE("components are packed into the unit square without overlap")
    {
        const auto g = testing::graph_of(9, {{0, 1, 1.0}, {1, 2, 1.0}, {2, 3, 1.0}, {3, 0, 1.0},
                                             {4, 5, 1.0}, {5, 6, 1.0}, {7, 8, 1.0}});
        const auto e = kk_layout(g, LayoutConfig{});
        REQUIRE(e.components.size() == 3);
        REQUIRE(e.positions.size() == 9);
        for (const auto& p : e.positions) {
            CHECK(p.x >= 0.0);
            CHECK(p.x <= 1.0);
            CHECK(p.y >= 0.0);
            CHECK(p.y <= 1.0);
        }
        for (std::size_t a = 0; a < 3; ++a) {
            for (std::size_t b = a + 1; b < 3; ++b) {
                const auto& x = e.components[a].box;
                const auto& y = e.components[b].box;
                const bool apart = x.max_x < y.min_x || y.max_x < x.min_x || x.max_y < y.min_y || y.max_y < x.min_y;
                CHECK(apart);
            }
        }
        CHECK(e.converged);
        CHECK(e.energy == doctest::Approx(e.components[0].energy + e.components[1].energy + e.components[2].energy));
    }

    TEST_CASE("single node and bad configs")
    {
        const auto e = kk_layout(testing::graph_of(1, {}), LayoutConfig{});
        REQUIRE(e.positions.size() == 1);
        CHECK(e.positions[0].x >= 0.0);
        CHECK(e.positions[0].x <= 1.0);
        CHECK_THROWS_AS((void)kk_layout(SemanticGraph{}, LayoutConfig{}), Error);
        LayoutConfig bad;
        bad.tolerance = 0.0;
        CHECK_THROWS_AS((void)kk_layout(testing::graph_of(2, {{0, 1, 1.0}}), bad), Error);
    }
}
