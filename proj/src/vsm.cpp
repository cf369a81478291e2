#include "semmap/vsm.hpp"
#include "semmap/kernels.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <unordered_set>

namespace semmap {

namespace {

constexpr std::string_view kModule = "vsm";

auto is_constant_column(const SparseCounts& m, std::size_t c) -> bool
{
    const auto vs = m.column_values(c);
    if (vs.empty()) {
        return true;
    }
    if (vs.size() != m.rows) {
        return false;  // mixes zeros and non-zeros
    }
    return std::all_of(vs.begin(), vs.end(), [&](std::int64_t v) { return v == vs.front(); });
}

}  // namespace

auto to_string(MatrixMode m) -> std::string_view
{
    return m == MatrixMode::counts ? "counts" : "binary";
}

auto to_string(Measure m) -> std::string_view
{
    return m == Measure::cosine ? "cosine" : "pearson";
}

auto parse_matrix_mode(std::string_view s) -> MatrixMode
{
    if (s == "counts") {
        return MatrixMode::counts;
    }
    if (s == "binary") {
        return MatrixMode::binary;
    }
    throw Error(std::string(kModule), fmt::format("unknown matrix mode '{}' (expected counts or binary)", s));
}

auto parse_measure(std::string_view s) -> Measure
{
    if (s == "cosine") {
        return Measure::cosine;
    }
    if (s == "pearson") {
        return Measure::pearson;
    }
    throw Error(std::string(kModule), fmt::format("unknown similarity measure '{}' (expected cosine or pearson)", s));
}

auto make_occurrence_matrix(const DenseMatrix<std::int64_t>& counts, std::vector<std::string> words,
                            MatrixMode mode) -> OccurrenceMatrix
{
    if (!words.empty() && words.size() != counts.cols()) {
        throw Error(std::string(kModule), "column label count does not match the matrix");
    }
    OccurrenceMatrix m;
    m.mode = mode;
    m.unit_ids.resize(counts.rows());
    m.word_ids.resize(counts.cols());
    for (std::size_t r = 0; r < counts.rows(); ++r) {
        m.unit_ids[r] = r;
    }
    for (std::size_t c = 0; c < counts.cols(); ++c) {
        m.word_ids[c] = c;
        for (std::size_t r = 0; r < counts.rows(); ++r) {
            if (counts(r, c) < 0) {
                throw Error(std::string(kModule), "occurrence counts must be non-negative");
            }
        }
    }
    if (words.empty()) {
        for (std::size_t c = 0; c < counts.cols(); ++c) {
            words.push_back(fmt::format("w{}", c));
        }
    }
    m.words = std::move(words);
    if (mode == MatrixMode::binary) {
        DenseMatrix<std::int64_t> b(counts.rows(), counts.cols());
        for (std::size_t r = 0; r < counts.rows(); ++r) {
            for (std::size_t c = 0; c < counts.cols(); ++c) {
                b(r, c) = counts(r, c) > 0 ? 1 : 0;
            }
        }
        m.cells = SparseCounts::from_dense(b);
    } else {
        m.cells = SparseCounts::from_dense(counts);
    }
    return m;
}

auto build_occurrence_matrix(std::span<const TextUnit> units, const Vocabulary& vocab,
                             const WordSelection& selection, MatrixMode mode, Diagnostics& diag) -> OccurrenceMatrix
{
    if (selection.empty()) {
        throw Error(std::string(kModule), "cannot build an occurrence matrix from an empty word selection");
    }
    constexpr std::size_t kAbsent = static_cast<std::size_t>(-1);
    std::vector<std::size_t> column_of(vocab.size(), kAbsent);
    for (std::size_t c = 0; c < selection.selected.size(); ++c) {
        column_of.at(selection.selected[c]) = c;
    }

    // Per-unit sparse rows, counted in parallel.
    std::vector<std::vector<std::pair<std::size_t, std::int64_t>>> rows(units.size());
    const auto n = static_cast<std::ptrdiff_t>(units.size());
#pragma omp parallel for schedule(dynamic, 16)
    for (std::ptrdiff_t i = 0; i < n; ++i) {
        auto& row = rows[static_cast<std::size_t>(i)];
        for (const auto& token : tokenize(units[static_cast<std::size_t>(i)].text)) {
            const auto id = vocab.find(normalize(token));
            if (!id || column_of[*id] == kAbsent) {
                continue;
            }
            row.emplace_back(column_of[*id], 1);
        }
        std::sort(row.begin(), row.end());
        std::vector<std::pair<std::size_t, std::int64_t>> merged;
        for (const auto& [c, k] : row) {
            if (!merged.empty() && merged.back().first == c) {
                merged.back().second += k;
            } else {
                merged.emplace_back(c, k);
            }
        }
        if (mode == MatrixMode::binary) {
            for (auto& cell : merged) {
                cell.second = 1;
            }
        }
        row = std::move(merged);
    }

    // Column lengths, then drop columns no unit contains.
    const std::size_t ncols = selection.selected.size();
    std::vector<std::size_t> nnz(ncols, 0);
    for (const auto& row : rows) {
        for (const auto& cell : row) {
            ++nnz[cell.first];
        }
    }
    std::vector<std::size_t> new_col(ncols, kAbsent);
    OccurrenceMatrix m;
    m.mode = mode;
    for (std::size_t c = 0; c < ncols; ++c) {
        const auto& entry = vocab[selection.selected[c]];
        if (nnz[c] == 0) {
            diag.warn(kModule, fmt::format("selected word '{}' occurs in no unit; column dropped", entry.surface));
            continue;
        }
        new_col[c] = m.word_ids.size();
        m.word_ids.push_back(entry.word_id);
        m.words.push_back(entry.surface);
    }
    for (const auto& u : units) {
        m.unit_ids.push_back(u.unit_id);
    }

    auto& cells = m.cells;
    cells.rows = units.size();
    cells.cols = m.word_ids.size();
    cells.col_ptr.assign(cells.cols + 1, 0);
    for (std::size_t c = 0; c < ncols; ++c) {
        if (new_col[c] != kAbsent) {
            cells.col_ptr[new_col[c] + 1] = nnz[c];
        }
    }
    for (std::size_t c = 0; c < cells.cols; ++c) {
        cells.col_ptr[c + 1] += cells.col_ptr[c];
    }
    cells.row_idx.resize(cells.col_ptr.back());
    cells.values.resize(cells.col_ptr.back());
    std::vector<std::size_t> fill(cells.col_ptr.begin(), cells.col_ptr.end() - 1);
    for (std::size_t r = 0; r < rows.size(); ++r) {  // ascending rows keep columns sorted
        for (const auto& [c, k] : rows[r]) {
            const auto nc = new_col[c];
            cells.row_idx[fill[nc]] = static_cast<std::uint32_t>(r);
            cells.values[fill[nc]] = k;
            ++fill[nc];
        }
    }
    return m;
}

auto cooccurrence(const OccurrenceMatrix& m) -> CooccurrenceMatrix
{
    return CooccurrenceMatrix{m.words, kernels::parallel::gram(m.cells)};
}

auto cosine_similarity(const OccurrenceMatrix& m) -> SimilarityMatrix
{
    for (std::size_t c = 0; c < m.cols(); ++c) {
        if (m.cells.column_values(c).empty()) {
            throw Error(std::string(kModule), fmt::format("word '{}' has an all-zero column; cosine undefined", m.words[c]));
        }
    }
    const auto g = kernels::parallel::gram(m.cells);
    return SimilarityMatrix{m.word_ids, m.words, kernels::parallel::cosine(g), Measure::cosine};
}

auto pearson_similarity(const OccurrenceMatrix& m) -> SimilarityMatrix
{
    for (std::size_t c = 0; c < m.cols(); ++c) {
        if (is_constant_column(m.cells, c)) {
            throw Error(std::string(kModule),
                        fmt::format("word '{}' has a constant column; correlation undefined", m.words[c]));
        }
    }
    const auto g = kernels::parallel::gram(m.cells);
    const auto sums = kernels::column_sums(m.cells);
    return SimilarityMatrix{m.word_ids, m.words, kernels::parallel::pearson(g, sums, m.rows()), Measure::pearson};
}

auto similarity(const OccurrenceMatrix& m, Measure measure) -> SimilarityMatrix
{
    return measure == Measure::cosine ? cosine_similarity(m) : pearson_similarity(m);
}

auto constant_columns(const OccurrenceMatrix& m) -> std::vector<std::size_t>
{
    std::vector<std::size_t> out;
    for (std::size_t c = 0; c < m.cols(); ++c) {
        if (is_constant_column(m.cells, c)) {
            out.push_back(c);
        }
    }
    return out;
}

auto drop_columns(const OccurrenceMatrix& m, std::span<const std::size_t> columns) -> OccurrenceMatrix
{
    const std::unordered_set<std::size_t> drop(columns.begin(), columns.end());
    OccurrenceMatrix out;
    out.mode = m.mode;
    out.unit_ids = m.unit_ids;
    out.cells.rows = m.cells.rows;
    out.cells.col_ptr = {0};
    for (std::size_t c = 0; c < m.cols(); ++c) {
        if (drop.contains(c)) {
            continue;
        }
        out.word_ids.push_back(m.word_ids[c]);
        out.words.push_back(m.words[c]);
        const auto rs = m.cells.column_rows(c);
        const auto vs = m.cells.column_values(c);
        out.cells.row_idx.insert(out.cells.row_idx.end(), rs.begin(), rs.end());
        out.cells.values.insert(out.cells.values.end(), vs.begin(), vs.end());
        out.cells.col_ptr.push_back(out.cells.values.size());
    }
    out.cells.cols = out.word_ids.size();
    return out;
}

}  // namespace semmap
