#include "hclust/sparse.hpp"

#include <algorithm>
#include <iomanip>
#include <ostream>
#include <stdexcept>
#include <string>

#include "hclust/kernels.hpp"

namespace hclust {

CsrMatrix::CsrMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), row_ptr_(rows + 1, 0) {}

CsrMatrix CsrMatrix::from_triplets(std::size_t rows, std::size_t cols, std::vector<Triplet> triplets) {
    for (const auto& t : triplets)
        if (t.row >= rows || t.col >= cols) throw std::invalid_argument("triplet index out of range");
    std::sort(triplets.begin(), triplets.end(),
              [](const Triplet& a, const Triplet& b) { return a.row != b.row ? a.row < b.row : a.col < b.col; });
    CsrMatrix m(rows, cols);
    m.col_idx_.reserve(triplets.size());
    m.values_.reserve(triplets.size());
    std::size_t i = 0;
    for (std::size_t r = 0; r < rows; ++r) {
        while (i < triplets.size() && triplets[i].row == r) {
            const std::size_t c = triplets[i].col;
            double v = 0.0;
            while (i < triplets.size() && triplets[i].row == r && triplets[i].col == c) v += triplets[i++].value;
            if (v != 0.0) {
                m.col_idx_.push_back(static_cast<std::uint32_t>(c));
                m.values_.push_back(v);
            }
        }
        m.row_ptr_[r + 1] = m.values_.size();
    }
    return m;
}

CsrMatrix CsrMatrix::from_csr(std::size_t rows, std::size_t cols, std::vector<std::size_t> row_ptr,
                              std::vector<std::uint32_t> col_idx, std::vector<double> values) {
    if (row_ptr.size() != rows + 1 || row_ptr.front() != 0 || row_ptr.back() != col_idx.size() ||
        col_idx.size() != values.size())
        throw std::invalid_argument("inconsistent CSR array sizes");
    for (std::size_t r = 0; r < rows; ++r) {
        if (row_ptr[r] > row_ptr[r + 1]) throw std::invalid_argument("row pointers decrease");
        for (std::size_t k = row_ptr[r]; k < row_ptr[r + 1]; ++k) {
            if (col_idx[k] >= cols) throw std::invalid_argument("column index out of range");
            if (k > row_ptr[r] && col_idx[k] <= col_idx[k - 1])
                throw std::invalid_argument("column indices not strictly increasing in row " + std::to_string(r));
            if (values[k] == 0.0) throw std::invalid_argument("explicit zero stored");
        }
    }
    CsrMatrix m;
    m.rows_ = rows;
    m.cols_ = cols;
    m.row_ptr_ = std::move(row_ptr);
    m.col_idx_ = std::move(col_idx);
    m.values_ = std::move(values);
    return m;
}

CsrMatrix CsrMatrix::diagonal(std::span<const double> diag) {
    CsrMatrix m(diag.size(), diag.size());
    for (std::size_t i = 0; i < diag.size(); ++i) {
        if (diag[i] != 0.0) {
            m.col_idx_.push_back(static_cast<std::uint32_t>(i));
            m.values_.push_back(diag[i]);
        }
        m.row_ptr_[i + 1] = m.values_.size();
    }
    return m;
}

double CsrMatrix::at(std::size_t row, std::size_t col) const {
    const auto begin = col_idx_.begin() + static_cast<std::ptrdiff_t>(row_ptr_[row]);
    const auto end = col_idx_.begin() + static_cast<std::ptrdiff_t>(row_ptr_[row + 1]);
    const auto it = std::lower_bound(begin, end, static_cast<std::uint32_t>(col));
    if (it == end || *it != col) return 0.0;
    return values_[static_cast<std::size_t>(it - col_idx_.begin())];
}

void CsrMatrix::multiply(std::span<const double> x, std::span<double> y) const {
    if (x.size() != cols_ || y.size() != rows_) throw std::invalid_argument("mat-vec dimension mismatch");
    kernels::spmv_parallel(row_ptr_, col_idx_, values_, x, y);
}

std::vector<double> CsrMatrix::multiply(std::span<const double> x) const {
    std::vector<double> y(rows_);
    multiply(x, y);
    return y;
}

CsrMatrix CsrMatrix::transpose() const {
    CsrMatrix t(cols_, rows_);
    std::vector<std::size_t> counts(cols_ + 1, 0);
    for (auto c : col_idx_) ++counts[c + 1];
    for (std::size_t c = 0; c < cols_; ++c) counts[c + 1] += counts[c];
    t.row_ptr_ = counts;
    t.col_idx_.resize(values_.size());
    t.values_.resize(values_.size());
    // Rows visited in increasing order, so each transposed row is sorted.
    for (std::size_t r = 0; r < rows_; ++r) {
        for (std::size_t k = row_ptr_[r]; k < row_ptr_[r + 1]; ++k) {
            const std::size_t dst = counts[col_idx_[k]]++;
            t.col_idx_[dst] = static_cast<std::uint32_t>(r);
            t.values_[dst] = values_[k];
        }
    }
    return t;
}

CsrMatrix CsrMatrix::scaled(std::span<const double> left, std::span<const double> right) const {
    CsrMatrix m = *this;
    for (std::size_t r = 0; r < rows_; ++r)
        for (std::size_t k = row_ptr_[r]; k < row_ptr_[r + 1]; ++k) {
            if (!left.empty()) m.values_[k] *= left[r];
            if (!right.empty()) m.values_[k] *= right[col_idx_[k]];
        }
    return m;
}

std::vector<double> CsrMatrix::to_dense() const {
    std::vector<double> d(rows_ * cols_, 0.0);
    for (std::size_t r = 0; r < rows_; ++r)
        for (std::size_t k = row_ptr_[r]; k < row_ptr_[r + 1]; ++k) d[r * cols_ + col_idx_[k]] = values_[k];
    return d;
}

CsrMatrix multiply(const CsrMatrix& a, const CsrMatrix& b) {
    if (a.cols() != b.rows()) throw std::invalid_argument("sparse product dimension mismatch");
    std::vector<std::size_t> row_ptr(a.rows() + 1, 0);
    std::vector<std::uint32_t> col_idx;
    std::vector<double> values;
    std::vector<double> acc(b.cols(), 0.0);
    std::vector<char> used(b.cols(), 0);
    std::vector<std::uint32_t> touched;
    const auto arp = a.row_ptr();
    const auto aci = a.col_idx();
    const auto av = a.values();
    const auto brp = b.row_ptr();
    const auto bci = b.col_idx();
    const auto bv = b.values();
    for (std::size_t r = 0; r < a.rows(); ++r) {
        touched.clear();
        for (std::size_t k = arp[r]; k < arp[r + 1]; ++k) {
            const std::size_t mid = aci[k];
            for (std::size_t l = brp[mid]; l < brp[mid + 1]; ++l) {
                const auto c = bci[l];
                if (!used[c]) {
                    used[c] = 1;
                    touched.push_back(c);
                }
                acc[c] += av[k] * bv[l];
            }
        }
        std::sort(touched.begin(), touched.end());
        for (auto c : touched) {
            if (acc[c] != 0.0) {
                col_idx.push_back(c);
                values.push_back(acc[c]);
            }
            acc[c] = 0.0;
            used[c] = 0;
        }
        row_ptr[r + 1] = values.size();
    }
    return CsrMatrix::from_csr(a.rows(), b.cols(), std::move(row_ptr), std::move(col_idx), std::move(values));
}

CsrMatrix add(const CsrMatrix& a, const CsrMatrix& b) {
    if (a.rows() != b.rows() || a.cols() != b.cols()) throw std::invalid_argument("sparse sum dimension mismatch");
    std::vector<CsrMatrix::Triplet> t;
    t.reserve(a.nonzeros() + b.nonzeros());
    for (const CsrMatrix* m : {&a, &b})
        for (std::size_t r = 0; r < m->rows(); ++r)
            for (std::size_t k = m->row_ptr()[r]; k < m->row_ptr()[r + 1]; ++k)
                t.push_back({r, m->col_idx()[k], m->values()[k]});
    return CsrMatrix::from_triplets(a.rows(), a.cols(), std::move(t));
}

void write_matrix_market(std::ostream& out, const CsrMatrix& m) {
    out << "%%MatrixMarket matrix coordinate real general\n";
    out << m.rows() << ' ' << m.cols() << ' ' << m.nonzeros() << '\n';
    out << std::setprecision(17);
    for (std::size_t r = 0; r < m.rows(); ++r)
        for (std::size_t k = m.row_ptr()[r]; k < m.row_ptr()[r + 1]; ++k)
            out << r + 1 << ' ' << m.col_idx()[k] + 1 << ' ' << m.values()[k] << '\n';
}

}  // namespace hclust
