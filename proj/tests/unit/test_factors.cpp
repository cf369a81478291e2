#include "semmap/factors.hpp"

#include "doctest.h"
#include "oracles.hpp"

#include <Eigen/Dense>

#include <algorithm>

using namespace semmap;
using testing::Rng;

namespace {

auto to_eigen(const DenseMatrix<double>& m) -> Eigen::MatrixXd
{
    Eigen::MatrixXd e(m.rows(), m.cols());
    for (std::size_t i = 0; i < m.rows(); ++i) {
        for (std::size_t j = 0; j < m.cols(); ++j) {
            e(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = m(i, j);
        }
    }
    return e;
}

auto random_correlation(Rng& rng, std::size_t p) -> DenseMatrix<double>
{
    const auto rows = p + static_cast<std::size_t>(testing::uniform_int(rng, 2, 30));
    return correlation_matrix(make_occurrence_matrix(testing::random_nonconstant(rng, rows, p, 0.5, 6)));
}

}  // namespace

TEST_SUITE("factors")
{
    TEST_CASE("correlation matrix basics")
    {
        DenseMatrix<std::int64_t> m(4, 3);
        const std::int64_t cols[4][3] = {{1, 1, 0}, {2, 2, 5}, {0, 0, 1}, {3, 3, 2}};
        for (std::size_t r = 0; r < 4; ++r) {
            for (std::size_t c = 0; c < 3; ++c) {
                m(r, c) = cols[r][c];
            }
        }
        const auto r = correlation_matrix(make_occurrence_matrix(m));
        CHECK(r(0, 1) == doctest::Approx(1.0).epsilon(1e-15));
        CHECK(r(0, 2) == r(2, 0));
        CHECK(r(2, 2) == 1.0);
        DenseMatrix<std::int64_t> flat(3, 2, 1);
        flat(0, 1) = 4;
        CHECK_THROWS_AS((void)correlation_matrix(make_occurrence_matrix(flat)), Error);
    }

    TEST_CASE("independent columns are weakly correlated")
    {
        Rng rng(71);
        DenseMatrix<std::int64_t> m(200, 6);
        for (std::size_t r = 0; r < 200; ++r) {
            for (std::size_t c = 0; c < 6; ++c) {
                m(r, c) = testing::uniform_int(rng, 0, 5);
            }
        }
        const auto r = correlation_matrix(make_occurrence_matrix(m));
        const auto oracle = testing::direct_cosine(testing::center_columns(m));
        CHECK(testing::max_abs_diff(r, oracle) < 1e-12);
        for (std::size_t i = 0; i < 6; ++i) {
            for (std::size_t j = 0; j < 6; ++j) {
                if (i != j) {
                    CHECK(std::abs(r(i, j)) < 0.25);
                }
            }
        }
    }

    TEST_CASE("identity and 2x2 spectra")
    {
        DenseMatrix<double> id(5, 5);
        for (std::size_t i = 0; i < 5; ++i) {
            id(i, i) = 1.0;
        }
        const auto f = factor_analysis(id, Retention::kaiser());
        CHECK(f.k == 0);
        for (const double v : f.eigenvalues) {
            CHECK(v == doctest::Approx(1.0).epsilon(1e-14));
        }

        DenseMatrix<double> two(2, 2);
        two(0, 0) = two(1, 1) = 1.0;
        two(0, 1) = two(1, 0) = 0.35;
        const auto e = symmetric_eigen(two);
        CHECK(e.values[0] == doctest::Approx(1.35).epsilon(1e-14));
        CHECK(e.values[1] == doctest::Approx(0.65).epsilon(1e-14));
        const auto k = factor_analysis(two, Retention::kaiser());
        CHECK(k.k == 1);
        CHECK(k.variance_explained[0] == doctest::Approx(0.675));
    }

    TEST_CASE("eigenvalues agree with an independent solver")
    {
        Rng rng(72);
        for (int trial = 0; trial < 40; ++trial) {
            const auto p = static_cast<std::size_t>(testing::uniform_int(rng, 2, 25));
            const auto r = random_correlation(rng, p);
            const auto mine = symmetric_eigen(r);
            const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(to_eigen(r));
            std::vector<double> ref(es.eigenvalues().data(), es.eigenvalues().data() + p);
            std::sort(ref.rbegin(), ref.rend());
            for (std::size_t i = 0; i < p; ++i) {
                CHECK(mine.values[i] == doctest::Approx(ref[i]).epsilon(1e-9).scale(1.0));
            }
            // A v = lambda v for every returned pair
            for (std::size_t f = 0; f < p; ++f) {
                for (std::size_t i = 0; i < p; ++i) {
                    double av = 0.0;
                    for (std::size_t j = 0; j < p; ++j) {
                        av += r(i, j) * mine.vectors(j, f);
                    }
                    CHECK(std::abs(av - mine.values[f] * mine.vectors(i, f)) < 1e-9);
                }
            }
        }
    }

    TEST_CASE("spectral identities on random correlation matrices")
    {
        Rng rng(73);
        for (int trial = 0; trial < 40; ++trial) {
            const auto p = static_cast<std::size_t>(testing::uniform_int(rng, 2, 20));
            const auto r = random_correlation(rng, p);
            const auto f = factor_analysis(r, Retention::fixed(p));
            double sum = 0.0;
            for (const double v : f.eigenvalues) {
                sum += v;
                CHECK(v >= -1e-9);
            }
            CHECK(std::abs(sum - static_cast<double>(p)) < 1e-8);
            double frob = 0.0;
            for (std::size_t i = 0; i < p; ++i) {
                for (std::size_t j = 0; j < p; ++j) {
                    double llt = 0.0;
                    for (std::size_t k = 0; k < p; ++k) {
                        llt += f.loadings(i, k) * f.loadings(j, k);
                    }
                    frob += (llt - r(i, j)) * (llt - r(i, j));
                }
            }
            CHECK(std::sqrt(frob) < 1e-8 * static_cast<double>(p));
        }
    }

    TEST_CASE("loading signs are fixed")
    {
        Rng rng(74);
        const auto r = random_correlation(rng, 8);
        const auto f = factor_analysis(r, Retention::fixed(8));
        for (std::size_t k = 0; k < 8; ++k) {
            double best = 0.0;
            for (std::size_t i = 0; i < 8; ++i) {
                if (std::abs(f.loadings(i, k)) > std::abs(best)) {
                    best = f.loadings(i, k);
                }
            }
            CHECK(best > 0.0);
        }
        const auto g = factor_analysis(r, Retention::fixed(8));
        CHECK(g.loadings == f.loadings);
    }

    TEST_CASE("retention rules")
    {
        Rng rng(75);
        const auto r = random_correlation(rng, 10);
        const auto kaiser = factor_analysis(r, Retention::kaiser());
        const auto above = std::count_if(kaiser.eigenvalues.begin(), kaiser.eigenvalues.end(),
                                         [](double v) { return v > 1.0; });
        CHECK(kaiser.k == static_cast<std::size_t>(above));
        CHECK(kaiser.loadings.cols() == kaiser.k);
        CHECK(factor_analysis(r, Retention::fixed(3)).loadings.cols() == 3);
        CHECK_THROWS_AS((void)factor_analysis(r, Retention::fixed(11)), Error);
        DenseMatrix<double> lopsided(2, 2, 1.0);
        lopsided(0, 1) = 0.2;
        CHECK_THROWS_AS((void)symmetric_eigen(lopsided), Error);
    }
}
