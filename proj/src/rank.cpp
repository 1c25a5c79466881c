#include "hclust/rank.hpp"

#include <algorithm>
#include <cmath>
#include <optional>
#include <stdexcept>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace hclust {

namespace {

using BigInt = boost::multiprecision::cpp_int;

std::int64_t as_integer(double v) {
    const double r = std::nearbyint(v);
    if (r != v || std::abs(r) > 9.0e15) throw std::invalid_argument("integer rank requires integer entries");
    return static_cast<std::int64_t>(r);
}

struct Overflow {};

inline std::int64_t checked_step(std::int64_t pivot, std::int64_t x, std::int64_t lead, std::int64_t pj,
                                 std::int64_t prev) {
    std::int64_t a, b, d;
    if (__builtin_mul_overflow(pivot, x, &a) || __builtin_mul_overflow(lead, pj, &b) ||
        __builtin_sub_overflow(a, b, &d))
        throw Overflow{};
    return d / prev;
}

inline BigInt checked_step(const BigInt& pivot, const BigInt& x, const BigInt& lead, const BigInt& pj,
                           const BigInt& prev) {
    return (pivot * x - lead * pj) / prev;
}

template <typename T>
std::size_t bareiss(std::vector<T> a, std::size_t rows, std::size_t cols) {
    std::size_t k = 0;
    T prev = 1;
    for (std::size_t col = 0; col < cols && k < rows; ++col) {
        std::size_t piv = k;
        while (piv < rows && a[piv * cols + col] == 0) ++piv;
        if (piv == rows) continue;
        if (piv != k)
            for (std::size_t j = col; j < cols; ++j) std::swap(a[piv * cols + j], a[k * cols + j]);
        const T pivot = a[k * cols + col];
        for (std::size_t i = k + 1; i < rows; ++i) {
            const T lead = a[i * cols + col];
            for (std::size_t j = col + 1; j < cols; ++j)
                a[i * cols + j] = checked_step(pivot, a[i * cols + j], lead, a[k * cols + j], prev);
            a[i * cols + col] = 0;
        }
        prev = pivot;
        ++k;
    }
    return k;
}

std::uint32_t mod(std::int64_t v, std::uint32_t p) {
    std::int64_t r = v % static_cast<std::int64_t>(p);
    if (r < 0) r += p;
    return static_cast<std::uint32_t>(r);
}

std::uint32_t mul_mod(std::uint32_t a, std::uint32_t b, std::uint32_t p) {
    return static_cast<std::uint32_t>(static_cast<std::uint64_t>(a) * b % p);
}

std::uint32_t pow_mod(std::uint32_t a, std::uint32_t e, std::uint32_t p) {
    std::uint32_t r = 1;
    while (e) {
        if (e & 1) r = mul_mod(r, a, p);
        a = mul_mod(a, a, p);
        e >>= 1;
    }
    return r;
}

struct Entry {
    std::uint32_t row;
    std::uint32_t value;
};

}  // namespace

std::size_t rank_fraction_free(const CsrMatrix& m) {
    const std::size_t rows = m.rows(), cols = m.cols();
    if (rows == 0 || cols == 0) return 0;
    std::vector<std::int64_t> dense(rows * cols, 0);
    for (std::size_t r = 0; r < rows; ++r)
        for (std::size_t k = m.row_ptr()[r]; k < m.row_ptr()[r + 1]; ++k)
            dense[r * cols + m.col_idx()[k]] = as_integer(m.values()[k]);
    try {
        return bareiss(dense, rows, cols);
    } catch (const Overflow&) {
        std::vector<BigInt> big(dense.begin(), dense.end());
        return bareiss(std::move(big), rows, cols);
    }
}

std::size_t rank_modular(const CsrMatrix& m, std::uint32_t prime) {
    // Columns of the (possibly transposed) matrix are reduced against pivots
    // indexed by their largest row; the orientation with fewer columns is used.
    const CsrMatrix t = m.rows() < m.cols() ? m : m.transpose();
    // Rows of t are the columns being reduced; entries sorted by index.
    const std::size_t height = t.cols();
    std::vector<std::vector<Entry>> pivot_col(height);
    std::vector<Entry> col, scratch;
    std::size_t rank = 0;
    for (std::size_t c = 0; c < t.rows(); ++c) {
        col.clear();
        for (std::size_t k = t.row_ptr()[c]; k < t.row_ptr()[c + 1]; ++k) {
            const auto v = mod(as_integer(t.values()[k]), prime);
            if (v) col.push_back({t.col_idx()[k], v});
        }
        while (!col.empty()) {
            const Entry low = col.back();
            const auto& pc = pivot_col[low.row];
            if (pc.empty()) break;
            // col -= low.value * pc (pc has leading coefficient 1)
            const std::uint32_t factor = prime - low.value;
            scratch.clear();
            std::size_t i = 0, j = 0;
            while (i < col.size() || j < pc.size()) {
                if (j == pc.size() || (i < col.size() && col[i].row < pc[j].row)) {
                    scratch.push_back(col[i++]);
                } else if (i == col.size() || pc[j].row < col[i].row) {
                    scratch.push_back({pc[j].row, mul_mod(factor, pc[j].value, prime)});
                    ++j;
                } else {
                    const std::uint32_t v = (col[i].value + mul_mod(factor, pc[j].value, prime)) % prime;
                    if (v) scratch.push_back({col[i].row, v});
                    ++i;
                    ++j;
                }
            }
            col.swap(scratch);
        }
        if (!col.empty()) {
            const std::uint32_t inv = pow_mod(col.back().value, prime - 2, prime);
            for (auto& e : col) e.value = mul_mod(e.value, inv, prime);
            pivot_col[col.back().row] = col;
            ++rank;
        }
    }
    return rank;
}

std::size_t integer_rank(const CsrMatrix& m) {
    const std::size_t small_side = std::min(m.rows(), m.cols());
    if (small_side == 0) return 0;
    if (small_side <= 400 && m.rows() * m.cols() <= 400'000) return rank_fraction_free(m);
    return std::max(rank_modular(m, 2147483647u), rank_modular(m, 2147483629u));
}

}  // namespace hclust
