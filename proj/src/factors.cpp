#include "semmap/factors.hpp"
#include "semmap/kernels.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <cmath>
#include <numeric>

namespace semmap {

namespace {

constexpr std::string_view kModule = "factors";
constexpr std::size_t kMaxSweeps = 100;
constexpr double kSymmetryTolerance = 1e-12;

auto off_diagonal_norm(const DenseMatrix<double>& a) -> double
{
    double s = 0.0;
    for (std::size_t i = 0; i < a.rows(); ++i) {
        for (std::size_t j = 0; j < a.cols(); ++j) {
            if (i != j) {
                s += a(i, j) * a(i, j);
            }
        }
    }
    return std::sqrt(s);
}

}  // namespace

auto to_string(RetentionRule r) -> std::string_view
{
    return r == RetentionRule::kaiser ? "kaiser" : "fixed";
}

auto correlation_matrix(const OccurrenceMatrix& m) -> DenseMatrix<double>
{
    for (const auto c : constant_columns(m)) {
        throw Error(std::string(kModule), fmt::format("word '{}' has a constant column; drop it before factoring",
                                                      m.words[c]));
    }
    const auto g = kernels::parallel::gram(m.cells);
    return kernels::parallel::pearson(g, kernels::column_sums(m.cells), m.rows());
}

auto symmetric_eigen(const DenseMatrix<double>& input, double tolerance) -> SymmetricEigen
{
    const std::size_t n = input.rows();
    if (input.cols() != n) {
        throw Error(std::string(kModule), "eigendecomposition needs a square matrix");
    }
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            if (std::abs(input(i, j) - input(j, i)) > kSymmetryTolerance) {
                throw Error(std::string(kModule), fmt::format("matrix is not symmetric at ({}, {})", i, j));
            }
        }
    }
    DenseMatrix<double> a = input;
    DenseMatrix<double> v(n, n);
    for (std::size_t i = 0; i < n; ++i) {
        v(i, i) = 1.0;
    }
    double frob = 0.0;
    for (const double x : a.data()) {
        frob += x * x;
    }
    frob = std::sqrt(frob);

    SymmetricEigen out;
    while (off_diagonal_norm(a) > tolerance * std::max(frob, 1.0)) {
        if (out.sweeps == kMaxSweeps) {
            throw Error(std::string(kModule), "Jacobi eigensolver did not converge");
        }
        ++out.sweeps;
        for (std::size_t p = 0; p + 1 < n; ++p) {
            for (std::size_t q = p + 1; q < n; ++q) {
                const double apq = a(p, q);
                if (apq == 0.0) {
                    continue;
                }
                // Rotation zeroing a(p,q) (Golub & Van Loan, symmetric Schur).
                const double theta = (a(q, q) - a(p, p)) / (2.0 * apq);
                const double t = std::copysign(1.0, theta) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
                const double c = 1.0 / std::sqrt(t * t + 1.0);
                const double s = t * c;
                for (std::size_t k = 0; k < n; ++k) {
                    const double akp = a(k, p);
                    const double akq = a(k, q);
                    a(k, p) = c * akp - s * akq;
                    a(k, q) = s * akp + c * akq;
                }
                for (std::size_t k = 0; k < n; ++k) {
                    const double apk = a(p, k);
                    const double aqk = a(q, k);
                    a(p, k) = c * apk - s * aqk;
                    a(q, k) = s * apk + c * aqk;
                }
                for (std::size_t k = 0; k < n; ++k) {
                    const double vkp = v(k, p);
                    const double vkq = v(k, q);
                    v(k, p) = c * vkp - s * vkq;
                    v(k, q) = s * vkp + c * vkq;
                }
            }
        }
    }

    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) { return a(x, x) > a(y, y); });
    out.values.resize(n);
    out.vectors = DenseMatrix<double>(n, n);
    for (std::size_t f = 0; f < n; ++f) {
        out.values[f] = a(order[f], order[f]);
        for (std::size_t k = 0; k < n; ++k) {
            out.vectors(k, f) = v(k, order[f]);
        }
    }
    return out;
}

auto factor_analysis(const DenseMatrix<double>& corr, Retention retention) -> FactorModel
{
    const auto eig = symmetric_eigen(corr);
    const std::size_t p = corr.rows();
    FactorModel model;
    model.rule = retention.rule;
    model.eigenvalues = eig.values;
    model.variance_explained.resize(p);
    for (std::size_t f = 0; f < p; ++f) {
        model.variance_explained[f] = eig.values[f] / static_cast<double>(p);
    }
    if (retention.rule == RetentionRule::kaiser) {
        model.k = static_cast<std::size_t>(
            std::count_if(eig.values.begin(), eig.values.end(), [](double lambda) { return lambda > 1.0; }));
    } else {
        if (retention.k > p) {
            throw Error(std::string(kModule), fmt::format("cannot retain {} factors from {} words", retention.k, p));
        }
        model.k = retention.k;
    }
    model.loadings = DenseMatrix<double>(p, model.k);
    for (std::size_t f = 0; f < model.k; ++f) {
        std::size_t pivot = 0;
        for (std::size_t i = 1; i < p; ++i) {
            if (std::abs(eig.vectors(i, f)) > std::abs(eig.vectors(pivot, f))) {
                pivot = i;
            }
        }
        const double sign = eig.vectors(pivot, f) < 0.0 ? -1.0 : 1.0;
        const double scale = std::sqrt(std::max(eig.values[f], 0.0));
        for (std::size_t i = 0; i < p; ++i) {
            model.loadings(i, f) = sign * eig.vectors(i, f) * scale;
        }
    }
    return model;
}

}  // namespace semmap
