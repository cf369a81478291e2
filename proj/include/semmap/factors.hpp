#pragma once

#include "semmap/matrix.hpp"
#include "semmap/vsm.hpp"

#include <cstddef>
#include <string_view>
#include <vector>

namespace semmap {

/// Word-by-word Pearson correlations of the occurrence columns (symmetric,
/// unit diagonal). Throws, naming the word, on a constant column; callers
/// drop those first with constant_columns()/drop_columns().
[[nodiscard]] auto correlation_matrix(const OccurrenceMatrix& m) -> DenseMatrix<double>;

struct SymmetricEigen {
    std::vector<double> values;   ///< descending
    DenseMatrix<double> vectors;  ///< column f pairs with values[f]
    std::size_t sweeps = 0;
};

/// Cyclic Jacobi rotations until the off-diagonal Frobenius norm falls
/// below `tolerance` times the matrix norm. Throws on non-square or
/// non-symmetric input.
[[nodiscard]] auto symmetric_eigen(const DenseMatrix<double>& a, double tolerance = 1e-10) -> SymmetricEigen;

enum class RetentionRule { kaiser, fixed };

[[nodiscard]] auto to_string(RetentionRule r) -> std::string_view;

struct Retention {
    RetentionRule rule = RetentionRule::kaiser;
    std::size_t k = 0;  ///< used by RetentionRule::fixed

    [[nodiscard]] static auto kaiser() -> Retention { return {RetentionRule::kaiser, 0}; }
    [[nodiscard]] static auto fixed(std::size_t k) -> Retention { return {RetentionRule::fixed, k}; }
};

struct FactorModel {
    std::vector<double> eigenvalues;         ///< all p, descending
    std::vector<double> variance_explained;  ///< eigenvalue / p, all p
    DenseMatrix<double> loadings;            ///< p x k
    std::size_t k = 0;
    RetentionRule rule = RetentionRule::kaiser;
};

/// Principal-component extraction from a correlation matrix, unrotated.
/// Loading column f = eigenvector f * sqrt(eigenvalue f), signed so its
/// largest-magnitude entry is positive. Kaiser keeps eigenvalues > 1.
[[nodiscard]] auto factor_analysis(const DenseMatrix<double>& corr, Retention retention) -> FactorModel;

}  // namespace semmap
