#pragma once

#include <cstddef>
#include <span>
#include <stdexcept>
#include <vector>

#include "hclust/complex.hpp"
#include "hclust/sparse.hpp"

namespace hclust {

/// Matrix of the boundary map C_p -> C_{p-1} in the canonical bases:
/// |K_{p-1}| x |K_p|, column j carrying (-1)^i at the face omitting vertex i.
/// p = 0 gives the 0 x |K_0| matrix; p > dim gives |K_{p-1}| x 0.
/// Throws ComplexError when a face is missing from the complex.
CsrMatrix boundary_matrix(const SimplicialComplex& complex, int p);

/// Matrix of the adjoint C_{p-1} -> C_p under the weighted inner products,
/// W_p^{-1} B_p^T W_{p-1}. Equal to B_p^T for unit weights.
CsrMatrix adjoint_boundary(const SimplicialComplex& complex, int p);

struct LaplacianOptions {
    /// Below this many p-simplices the operator is assembled explicitly.
    std::size_t explicit_threshold = 20000;
};

/// The degree-p simplicial Laplacian L_p = B_{p+1} B*_{p+1} + B*_p B_p.
///
/// Internally the operator works with the symmetrized conjugate
/// S = W^{1/2} L W^{-1/2} (W the Gram diagonal of C_p), which is symmetric
/// in the Euclidean inner product and has the same spectrum as L. With unit
/// weights S = L.
class LaplacianOperator {
public:
    LaplacianOperator(const SimplicialComplex& complex, int p, LaplacianOptions options = {});

    int degree() const { return degree_; }
    std::size_t size() const { return size_; }
    bool is_explicit() const { return explicit_; }

    /// y = L x (in the chain basis).
    void apply(std::span<const double> x, std::span<double> y) const;
    void apply_up(std::span<const double> x, std::span<double> y) const;
    void apply_down(std::span<const double> x, std::span<double> y) const;
    std::vector<double> apply(std::span<const double> x) const;

    /// y = S x, the symmetrized operator.
    void apply_symmetric(std::span<const double> x, std::span<double> y) const;
    /// Same as apply_symmetric but never uses the explicit matrix.
    void apply_symmetric_matrix_free(std::span<const double> x, std::span<double> y) const;

    /// Explicit sparse L and S (sparse products of the boundary matrices).
    CsrMatrix assemble() const;
    CsrMatrix assemble_symmetric() const;

    /// Diagonal of L (equal to the diagonal of S).
    std::vector<double> diagonal() const;

    const CsrMatrix& boundary() const { return boundary_; }        // B_p
    const CsrMatrix& coboundary() const { return boundary_up_; }  // B_{p+1}

    /// sqrt of the Gram diagonal of C_p, i.e. the simplex weights.
    std::span<const double> weights() const { return weights_; }

private:
    int degree_;
    std::size_t size_;
    bool explicit_ = false;
    CsrMatrix boundary_;     // B_p
    CsrMatrix boundary_up_;  // B_{p+1}
    // Scaled factors: S = up_ * up_^T + down_^T * down_.
    CsrMatrix up_, up_t_, down_, down_t_;
    CsrMatrix symmetric_;  // assembled S when explicit_
    std::vector<double> weights_;
};

/// Graph Laplacian D - A of the 1-skeleton (unit weights), or the
/// normalized D^{-1/2} (D - A) D^{-1/2}. Throws std::invalid_argument for
/// the normalized variant on a graph with an isolated vertex.
CsrMatrix graph_laplacian(const SimplicialComplex& complex, bool normalized);

}  // namespace hclust
