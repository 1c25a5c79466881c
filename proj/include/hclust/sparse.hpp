#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <span>
#include <vector>

namespace hclust {

/// Compressed sparse row matrix. Column indices are strictly increasing
/// within each row and no explicit zeros are stored.
class CsrMatrix {
public:
    struct Triplet {
        std::size_t row;
        std::size_t col;
        double value;
    };

    CsrMatrix() = default;
    CsrMatrix(std::size_t rows, std::size_t cols);  // zero matrix

    /// Sums duplicate coordinates and drops resulting zeros.
    static CsrMatrix from_triplets(std::size_t rows, std::size_t cols, std::vector<Triplet> triplets);

    /// Adopts CSR arrays; throws std::invalid_argument if the invariants fail.
    static CsrMatrix from_csr(std::size_t rows, std::size_t cols, std::vector<std::size_t> row_ptr,
                              std::vector<std::uint32_t> col_idx, std::vector<double> values);

    static CsrMatrix diagonal(std::span<const double> diag);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    std::size_t nonzeros() const { return values_.size(); }

    std::span<const std::size_t> row_ptr() const { return row_ptr_; }
    std::span<const std::uint32_t> col_idx() const { return col_idx_; }
    std::span<const double> values() const { return values_; }

    /// Entry lookup by binary search within the row.
    double at(std::size_t row, std::size_t col) const;

    /// y = A x, parallel over rows when OpenMP is enabled. Deterministic:
    /// each row is reduced in stored column order by a single thread.
    void multiply(std::span<const double> x, std::span<double> y) const;
    std::vector<double> multiply(std::span<const double> x) const;

    CsrMatrix transpose() const;

    /// Row scaling diag(left) * A * diag(right); empty spans mean identity.
    CsrMatrix scaled(std::span<const double> left, std::span<const double> right) const;

    /// Dense row-major copy, for tests and small oracles.
    std::vector<double> to_dense() const;

    bool is_zero() const { return values_.empty(); }

    bool operator==(const CsrMatrix&) const = default;

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<std::size_t> row_ptr_{0};
    std::vector<std::uint32_t> col_idx_;
    std::vector<double> values_;
};

/// Sparse product A * B (Gustavson row-by-row accumulation); exact zeros
/// produced by cancellation are dropped.
CsrMatrix multiply(const CsrMatrix& a, const CsrMatrix& b);

CsrMatrix add(const CsrMatrix& a, const CsrMatrix& b);

/// Matrix Market coordinate (real general) dump.
void write_matrix_market(std::ostream& out, const CsrMatrix& m);

}  // namespace hclust
