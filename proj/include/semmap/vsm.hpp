#pragma once

#include "semmap/corpus_io.hpp"
#include "semmap/error.hpp"
#include "semmap/lexicon.hpp"
#include "semmap/matrix.hpp"

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace semmap {

enum class MatrixMode { counts, binary };
enum class Measure { cosine, pearson };

[[nodiscard]] auto to_string(MatrixMode m) -> std::string_view;
[[nodiscard]] auto to_string(Measure m) -> std::string_view;
[[nodiscard]] auto parse_matrix_mode(std::string_view s) -> MatrixMode;
[[nodiscard]] auto parse_measure(std::string_view s) -> Measure;

/// Units (cases) by words (variables).
struct OccurrenceMatrix {
    std::vector<std::size_t> unit_ids;
    std::vector<std::size_t> word_ids;
    std::vector<std::string> words;  ///< column labels
    SparseCounts cells;
    MatrixMode mode = MatrixMode::counts;

    [[nodiscard]] auto rows() const noexcept -> std::size_t { return cells.rows; }
    [[nodiscard]] auto cols() const noexcept -> std::size_t { return cells.cols; }
};

/// Wraps an explicit count matrix; ids default to 0..n-1 and labels to
/// "w<j>" when not given. Mostly for tests and tools.
[[nodiscard]] auto make_occurrence_matrix(const DenseMatrix<std::int64_t>& counts,
                                          std::vector<std::string> words = {},
                                          MatrixMode mode = MatrixMode::counts) -> OccurrenceMatrix;

struct CooccurrenceMatrix {
    std::vector<std::string> words;
    DenseMatrix<std::int64_t> counts;
};

struct SimilarityMatrix {
    std::vector<std::size_t> word_ids;
    std::vector<std::string> words;
    DenseMatrix<double> values;
    Measure measure = Measure::cosine;

    [[nodiscard]] auto size() const noexcept -> std::size_t { return values.rows(); }
    [[nodiscard]] auto operator()(std::size_t i, std::size_t j) const -> double { return values(i, j); }
};

/// Cell (u, w) is the number of occurrences of selected word w in unit u,
/// or 1/0 in binary mode. Columns no unit contains are dropped with a
/// warning. Throws on an empty selection.
[[nodiscard]] auto build_occurrence_matrix(std::span<const TextUnit> units, const Vocabulary& vocab,
                                           const WordSelection& selection, MatrixMode mode, Diagnostics& diag)
    -> OccurrenceMatrix;

/// transpose(m) * m.
[[nodiscard]] auto cooccurrence(const OccurrenceMatrix& m) -> CooccurrenceMatrix;

/// Salton's cosine between word columns. Throws on an all-zero column.
[[nodiscard]] auto cosine_similarity(const OccurrenceMatrix& m) -> SimilarityMatrix;

/// Pearson correlation between word columns. Throws on a constant column.
[[nodiscard]] auto pearson_similarity(const OccurrenceMatrix& m) -> SimilarityMatrix;

[[nodiscard]] auto similarity(const OccurrenceMatrix& m, Measure measure) -> SimilarityMatrix;

/// Columns whose values are all equal (including all-zero columns).
[[nodiscard]] auto constant_columns(const OccurrenceMatrix& m) -> std::vector<std::size_t>;

/// Copy of `m` without the listed columns.
[[nodiscard]] auto drop_columns(const OccurrenceMatrix& m, std::span<const std::size_t> columns) -> OccurrenceMatrix;

}  // namespace semmap
