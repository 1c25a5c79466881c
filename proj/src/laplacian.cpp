#include "hclust/laplacian.hpp"

#include <cmath>
#include <string>

namespace hclust {

namespace {

std::vector<double> weights_of(const SimplicialComplex& complex, int p) {
    const auto w = complex.weights(p);
    return {w.begin(), w.end()};
}

std::vector<double> inverse(std::vector<double> v) {
    for (double& x : v) x = 1.0 / x;
    return v;
}

std::vector<double> squared(std::vector<double> v) {
    for (double& x : v) x *= x;
    return v;
}

}  // namespace

CsrMatrix boundary_matrix(const SimplicialComplex& complex, int p) {
    if (p < 0) throw std::invalid_argument("negative degree");
    if (p == 0) return CsrMatrix(0, complex.size(0));
    const std::size_t rows = complex.size(p - 1);
    const std::size_t cols = complex.size(p);
    // Build the transpose row by row: simplex j has faces omitting vertex
    // i = p..0, which appear in increasing lexicographic order.
    std::vector<std::size_t> row_ptr(cols + 1, 0);
    std::vector<std::uint32_t> col_idx;
    std::vector<double> values;
    col_idx.reserve(cols * (p + 1));
    values.reserve(cols * (p + 1));
    std::vector<Vertex> face(p);
    for (std::size_t j = 0; j < cols; ++j) {
        const auto s = complex.simplex(p, j);
        for (int i = p; i >= 0; --i) {
            for (int a = 0, b = 0; a <= p; ++a)
                if (a != i) face[b++] = s[a];
            const auto idx = complex.index_of(face);
            if (!idx) throw ComplexError("complex is not closed: face of a " + std::to_string(p) + "-simplex missing");
            const int sign = (i % 2 == 0) ? 1 : -1;
            col_idx.push_back(static_cast<std::uint32_t>(*idx));
            values.push_back(static_cast<double>(sign));
        }
        row_ptr[j + 1] = values.size();
    }
    return CsrMatrix::from_csr(cols, rows, std::move(row_ptr), std::move(col_idx), std::move(values)).transpose();
}

CsrMatrix adjoint_boundary(const SimplicialComplex& complex, int p) {
    const CsrMatrix b = boundary_matrix(complex, p);
    if (p == 0) return b.transpose();
    return b.transpose().scaled(inverse(squared(weights_of(complex, p))), squared(weights_of(complex, p - 1)));
}

LaplacianOperator::LaplacianOperator(const SimplicialComplex& complex, int p, LaplacianOptions options)
    : degree_(p), size_(complex.size(p)) {
    if (p < 0) throw std::invalid_argument("negative degree");
    boundary_ = boundary_matrix(complex, p);
    boundary_up_ = boundary_matrix(complex, p + 1);
    weights_ = weights_of(complex, p);
    const auto inv_w = inverse(weights_);
    // up_ = W_p^{1/2} B_{p+1} W_{p+1}^{-1/2}, down_ = W_{p-1}^{1/2} B_p W_p^{-1/2}.
    up_ = boundary_up_.scaled(weights_, inverse(weights_of(complex, p + 1)));
    up_t_ = up_.transpose();
    down_ = p == 0 ? boundary_ : boundary_.scaled(weights_of(complex, p - 1), inv_w);
    down_t_ = down_.transpose();
    if (size_ <= options.explicit_threshold) {
        symmetric_ = assemble_symmetric();
        explicit_ = true;
    }
}

void LaplacianOperator::apply_symmetric_matrix_free(std::span<const double> x, std::span<double> y) const {
    std::vector<double> t(up_t_.rows());
    up_t_.multiply(x, t);
    up_.multiply(t, y);
    std::vector<double> s(down_.rows());
    down_.multiply(x, s);
    std::vector<double> z(size_);
    down_t_.multiply(s, z);
    for (std::size_t i = 0; i < size_; ++i) y[i] += z[i];
}

void LaplacianOperator::apply_symmetric(std::span<const double> x, std::span<double> y) const {
    if (explicit_) symmetric_.multiply(x, y);
    else apply_symmetric_matrix_free(x, y);
}

void LaplacianOperator::apply(std::span<const double> x, std::span<double> y) const {
    // L = W^{-1/2} S W^{1/2}
    std::vector<double> z(size_);
    for (std::size_t i = 0; i < size_; ++i) z[i] = x[i] * weights_[i];
    apply_symmetric(z, y);
    for (std::size_t i = 0; i < size_; ++i) y[i] /= weights_[i];
}

std::vector<double> LaplacianOperator::apply(std::span<const double> x) const {
    std::vector<double> y(size_);
    apply(x, y);
    return y;
}

void LaplacianOperator::apply_up(std::span<const double> x, std::span<double> y) const {
    std::vector<double> z(size_);
    for (std::size_t i = 0; i < size_; ++i) z[i] = x[i] * weights_[i];
    std::vector<double> t(up_t_.rows());
    up_t_.multiply(z, t);
    up_.multiply(t, y);
    for (std::size_t i = 0; i < size_; ++i) y[i] /= weights_[i];
}

void LaplacianOperator::apply_down(std::span<const double> x, std::span<double> y) const {
    std::vector<double> z(size_);
    for (std::size_t i = 0; i < size_; ++i) z[i] = x[i] * weights_[i];
    std::vector<double> s(down_.rows());
    down_.multiply(z, s);
    down_t_.multiply(s, y);
    for (std::size_t i = 0; i < size_; ++i) y[i] /= weights_[i];
}

CsrMatrix LaplacianOperator::assemble_symmetric() const {
    return add(multiply(up_, up_t_), multiply(down_t_, down_));
}

CsrMatrix LaplacianOperator::assemble() const {
    return assemble_symmetric().scaled(inverse(weights_), weights_);
}

std::vector<double> LaplacianOperator::diagonal() const {
    std::vector<double> d(size_, 0.0);
    for (const CsrMatrix* m : {&up_, &down_t_})
        for (std::size_t r = 0; r < m->rows(); ++r)
            for (std::size_t k = m->row_ptr()[r]; k < m->row_ptr()[r + 1]; ++k) d[r] += m->values()[k] * m->values()[k];
    return d;
}

CsrMatrix graph_laplacian(const SimplicialComplex& complex, bool normalized) {
    if (complex.dimension() < 1) throw std::invalid_argument("graph Laplacian needs a complex with edges");
    const std::size_t n = complex.size(0);
    std::vector<double> degree(n, 0.0);
    std::vector<CsrMatrix::Triplet> t;
    for (std::size_t e = 0; e < complex.size(1); ++e) {
        const auto s = complex.simplex(1, e);
        const auto a = *complex.index_of(s.subspan(0, 1));
        const auto b = *complex.index_of(s.subspan(1, 1));
        t.push_back({a, b, -1.0});
        t.push_back({b, a, -1.0});
        degree[a] += 1.0;
        degree[b] += 1.0;
    }
    for (std::size_t v = 0; v < n; ++v) t.push_back({v, v, degree[v]});
    auto l = CsrMatrix::from_triplets(n, n, std::move(t));
    if (!normalized) return l;
    std::vector<double> scale(n);
    for (std::size_t v = 0; v < n; ++v) {
        if (degree[v] == 0.0)
            throw std::invalid_argument("normalized graph Laplacian undefined: vertex " +
                                        std::to_string(complex.simplex(0, v)[0]) + " is isolated");
        scale[v] = 1.0 / std::sqrt(degree[v]);
    }
    return l.scaled(scale, scale);
}

}  // namespace hclust
