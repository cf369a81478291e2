#pragma once

#include "semmap/matrix.hpp"

#include <cstdint>
#include <span>

/// Numeric kernels behind the vector-space model. `serial` holds the
/// reference implementations; `parallel` holds the OpenMP versions used by
/// the pipeline. Both families return bit-identical results: Gram entries are
/// exact integers and every similarity cell is a fixed expression of them.
namespace semmap::kernels {

namespace serial {

/// transpose(m) * m, accumulated row by row.
[[nodiscard]] auto gram(const SparseCounts& m) -> DenseMatrix<std::int64_t>;

/// g(i,j) / sqrt(g(i,i) * g(j,j)); unit diagonal. Every g(i,i) must be > 0.
[[nodiscard]] auto cosine(const DenseMatrix<std::int64_t>& g) -> DenseMatrix<double>;

/// Pearson correlation from the Gram matrix, column sums and row count:
/// (n g(i,j) - s_i s_j) / sqrt((n g(i,i) - s_i^2)(n g(j,j) - s_j^2)).
/// Columns must be non-constant.
[[nodiscard]] auto pearson(const DenseMatrix<std::int64_t>& g, std::span<const std::int64_t> col_sums,
                           std::size_t rows) -> DenseMatrix<double>;

}  // namespace serial

namespace parallel {

/// transpose(m) * m by sorted-column merges, one column pair per cell;
/// rows of the result are distributed over threads.
[[nodiscard]] auto gram(const SparseCounts& m) -> DenseMatrix<std::int64_t>;
[[nodiscard]] auto cosine(const DenseMatrix<std::int64_t>& g) -> DenseMatrix<double>;
[[nodiscard]] auto pearson(const DenseMatrix<std::int64_t>& g, std::span<const std::int64_t> col_sums,
                           std::size_t rows) -> DenseMatrix<double>;

}  // namespace parallel

[[nodiscard]] auto column_sums(const SparseCounts& m) -> std::vector<std::int64_t>;

/// The per-cell formulas shared by both families.
[[nodiscard]] auto cosine_cell(std::int64_t gij, std::int64_t gii, std::int64_t gjj) -> double;
[[nodiscard]] auto pearson_cell(std::int64_t gij, std::int64_t gii, std::int64_t gjj, std::int64_t si,
                                std::int64_t sj, std::int64_t n) -> double;

}  // namespace semmap::kernels
