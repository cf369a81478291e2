#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <utility>
#include <vector>

namespace semmap {

/// Row-major dense matrix.
template <typename T>
class DenseMatrix {
public:
    DenseMatrix() = default;
    DenseMatrix(std::size_t rows, std::size_t cols, T fill = T{})
        : rows_(rows), cols_(cols), data_(rows * cols, fill)
    {
    }

    [[nodiscard]] auto rows() const noexcept -> std::size_t { return rows_; }
    [[nodiscard]] auto cols() const noexcept -> std::size_t { return cols_; }
    [[nodiscard]] auto empty() const noexcept -> bool { return data_.empty(); }

    [[nodiscard]] auto operator()(std::size_t r, std::size_t c) -> T& { return data_[r * cols_ + c]; }
    [[nodiscard]] auto operator()(std::size_t r, std::size_t c) const -> const T&
    {
        return data_[r * cols_ + c];
    }

    [[nodiscard]] auto row(std::size_t r) const -> std::span<const T>
    {
        return {data_.data() + r * cols_, cols_};
    }
    [[nodiscard]] auto data() const noexcept -> std::span<const T> { return data_; }
    [[nodiscard]] auto data() noexcept -> std::span<T> { return data_; }

    friend auto operator==(const DenseMatrix&, const DenseMatrix&) -> bool = default;

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<T> data_;
};

/// Column-compressed sparse matrix of non-negative integer counts. Row
/// indices within each column are strictly increasing.
struct SparseCounts {
    std::size_t rows = 0;
    std::size_t cols = 0;
    std::vector<std::size_t> col_ptr{0};
    std::vector<std::uint32_t> row_idx;
    std::vector<std::int64_t> values;

    [[nodiscard]] auto nnz() const noexcept -> std::size_t { return values.size(); }
    [[nodiscard]] auto column_rows(std::size_t c) const -> std::span<const std::uint32_t>
    {
        return {row_idx.data() + col_ptr[c], col_ptr[c + 1] - col_ptr[c]};
    }
    [[nodiscard]] auto column_values(std::size_t c) const -> std::span<const std::int64_t>
    {
        return {values.data() + col_ptr[c], col_ptr[c + 1] - col_ptr[c]};
    }

    [[nodiscard]] static auto from_dense(const DenseMatrix<std::int64_t>& m) -> SparseCounts;
    [[nodiscard]] auto to_dense() const -> DenseMatrix<std::int64_t>;

    friend auto operator==(const SparseCounts&, const SparseCounts&) -> bool = default;
};

inline auto SparseCounts::from_dense(const DenseMatrix<std::int64_t>& m) -> SparseCounts
{
    SparseCounts s;
    s.rows = m.rows();
    s.cols = m.cols();
    s.col_ptr.reserve(m.cols() + 1);
    for (std::size_t c = 0; c < m.cols(); ++c) {
        for (std::size_t r = 0; r < m.rows(); ++r) {
            if (m(r, c) != 0) {
                s.row_idx.push_back(static_cast<std::uint32_t>(r));
                s.values.push_back(m(r, c));
            }
        }
        s.col_ptr.push_back(s.values.size());
    }
    return s;
}

inline auto SparseCounts::to_dense() const -> DenseMatrix<std::int64_t>
{
    DenseMatrix<std::int64_t> m(rows, cols);
    for (std::size_t c = 0; c < cols; ++c) {
        const auto rs = column_rows(c);
        const auto vs = column_values(c);
        for (std::size_t k = 0; k < rs.size(); ++k) {
            m(rs[k], c) = vs[k];
        }
    }
    return m;
}

}  // namespace semmap
