#include "semmap/kernels.hpp"

#include <cstddef>

namespace semmap::kernels::parallel {

namespace {

auto sparse_dot(const SparseCounts& m, std::size_t a, std::size_t b) -> std::int64_t
{
    const auto ra = m.column_rows(a);
    const auto va = m.column_values(a);
    const auto rb = m.column_rows(b);
    const auto vb = m.column_values(b);
    std::int64_t sum = 0;
    std::size_t i = 0;
    std::size_t j = 0;
    while (i < ra.size() && j < rb.size()) {
        if (ra[i] < rb[j]) {
            ++i;
        } else if (rb[j] < ra[i]) {
            ++j;
        } else {
            sum += va[i++] * vb[j++];
        }
    }
    return sum;
}

}  // namespace

auto gram(const SparseCounts& m) -> DenseMatrix<std::int64_t>
{
    const auto n = static_cast<std::ptrdiff_t>(m.cols);
    DenseMatrix<std::int64_t> g(m.cols, m.cols);
#pragma omp parallel for schedule(dynamic, 4)
    for (std::ptrdiff_t i = 0; i < n; ++i) {
        for (std::ptrdiff_t j = i; j < n; ++j) {
            const auto v = sparse_dot(m, static_cast<std::size_t>(i), static_cast<std::size_t>(j));
            g(static_cast<std::size_t>(i), static_cast<std::size_t>(j)) = v;
            g(static_cast<std::size_t>(j), static_cast<std::size_t>(i)) = v;
        }
    }
    return g;
}

auto cosine(const DenseMatrix<std::int64_t>& g) -> DenseMatrix<double>
{
    const auto n = static_cast<std::ptrdiff_t>(g.rows());
    DenseMatrix<double> s(g.rows(), g.cols());
#pragma omp parallel for schedule(static)
    for (std::ptrdiff_t ii = 0; ii < n; ++ii) {
        const auto i = static_cast<std::size_t>(ii);
        for (std::size_t j = 0; j < g.cols(); ++j) {
            s(i, j) = i == j ? 1.0 : cosine_cell(g(i, j), g(i, i), g(j, j));
        }
    }
    return s;
}

auto pearson(const DenseMatrix<std::int64_t>& g, std::span<const std::int64_t> col_sums, std::size_t rows)
    -> DenseMatrix<double>
{
    const auto n = static_cast<std::ptrdiff_t>(g.rows());
    const auto count = static_cast<std::int64_t>(rows);
    DenseMatrix<double> s(g.rows(), g.cols());
#pragma omp parallel for schedule(static)
    for (std::ptrdiff_t ii = 0; ii < n; ++ii) {
        const auto i = static_cast<std::size_t>(ii);
        for (std::size_t j = 0; j < g.cols(); ++j) {
            s(i, j) = i == j ? 1.0 : pearson_cell(g(i, j), g(i, i), g(j, j), col_sums[i], col_sums[j], count);
        }
    }
    return s;
}

}  // namespace semmap::kernels::parallel
