#include "semmap/kernels.hpp"

#include <algorithm>
#include <cmath>

namespace semmap::kernels {

namespace {
__extension__ using Wide = __int128;
}  // namespace

auto column_sums(const SparseCounts& m) -> std::vector<std::int64_t>
{
    std::vector<std::int64_t> sums(m.cols, 0);
    for (std::size_t c = 0; c < m.cols; ++c) {
        for (const auto v : m.column_values(c)) {
            sums[c] += v;
        }
    }
    return sums;
}

auto cosine_cell(std::int64_t gij, std::int64_t gii, std::int64_t gjj) -> double
{
    return static_cast<double>(gij) / std::sqrt(static_cast<double>(gii) * static_cast<double>(gjj));
}

auto pearson_cell(std::int64_t gij, std::int64_t gii, std::int64_t gjj, std::int64_t si, std::int64_t sj,
                  std::int64_t n) -> double
{
    const Wide num = Wide{n} * gij - Wide{si} * sj;
    const Wide vi = Wide{n} * gii - Wide{si} * si;
    const Wide vj = Wide{n} * gjj - Wide{sj} * sj;
    const double r = static_cast<double>(num) / std::sqrt(static_cast<double>(vi) * static_cast<double>(vj));
    return std::clamp(r, -1.0, 1.0);
}

namespace serial {

auto gram(const SparseCounts& m) -> DenseMatrix<std::int64_t>
{
    // Transpose to row lists, then add every pair of non-zeros in each row.
    std::vector<std::vector<std::pair<std::size_t, std::int64_t>>> rows(m.rows);
    for (std::size_t c = 0; c < m.cols; ++c) {
        const auto rs = m.column_rows(c);
        const auto vs = m.column_values(c);
        for (std::size_t k = 0; k < rs.size(); ++k) {
            rows[rs[k]].emplace_back(c, vs[k]);
        }
    }
    DenseMatrix<std::int64_t> g(m.cols, m.cols);
    for (const auto& row : rows) {
        for (const auto& [i, xi] : row) {
            for (const auto& [j, xj] : row) {
                g(i, j) += xi * xj;
            }
        }
    }
    return g;
}

auto cosine(const DenseMatrix<std::int64_t>& g) -> DenseMatrix<double>
{
    const std::size_t n = g.rows();
    DenseMatrix<double> s(n, n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            s(i, j) = i == j ? 1.0 : cosine_cell(g(i, j), g(i, i), g(j, j));
        }
    }
    return s;
}

auto pearson(const DenseMatrix<std::int64_t>& g, std::span<const std::int64_t> col_sums, std::size_t rows)
    -> DenseMatrix<double>
{
    const std::size_t n = g.rows();
    const auto count = static_cast<std::int64_t>(rows);
    DenseMatrix<double> s(n, n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            s(i, j) = i == j ? 1.0 : pearson_cell(g(i, j), g(i, i), g(j, j), col_sums[i], col_sums[j], count);
        }
    }
    return s;
}

}  // namespace serial

}  // namespace semmap::kernels
