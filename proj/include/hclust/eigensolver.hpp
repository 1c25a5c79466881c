#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <stdexcept>
#include <vector>

#include "hclust/sparse.hpp"

namespace hclust {

/// A symmetric positive semi-definite operator reachable only through
/// matrix-vector products.
struct SymmetricOperator {
    std::size_t size = 0;
    std::function<void(std::span<const double>, std::span<double>)> apply;

    static SymmetricOperator from_matrix(const CsrMatrix& m);
};

struct SpectralReport {
    std::vector<double> eigenvalues;                // ascending
    std::vector<std::vector<double>> eigenvectors;  // unit Euclidean norm
    std::vector<double> residuals;                  // |A v - lambda v|
    std::vector<bool> converged;
    int iterations = 0;
    std::size_t matvecs = 0;
    bool all_converged() const;
};

class ConvergenceError : public std::runtime_error {
public:
    ConvergenceError(const std::string& what, SpectralReport best)
        : std::runtime_error(what), best_(std::move(best)) {}
    const SpectralReport& best() const { return best_; }

private:
    SpectralReport best_;
};

struct EigensolverOptions {
    /// Absolute residual bound |A v - lambda v| for convergence.
    double tolerance = 1e-10;
    int max_iterations = 20000;
    /// Extra block columns beyond the requested count; they speed up
    /// convergence of the wanted pairs and are discarded on return.
    std::size_t guard_vectors = 2;
    std::uint64_t seed = 0x5eed;
    /// Inverse diagonal (Jacobi) preconditioner; empty disables it.
    std::vector<double> preconditioner;
};

/// Smallest `count` eigenpairs by locally optimal block preconditioned
/// conjugate gradients. Operators too small for a block iteration are
/// resolved by a Rayleigh-Ritz step over the full space (still via
/// mat-vecs). Throws ConvergenceError when the budget runs out.
SpectralReport lobpcg_smallest(const SymmetricOperator& op, std::size_t count, const EigensolverOptions& options);

/// Dense oracle: full symmetric eigendecomposition, smallest `count` pairs.
SpectralReport dense_smallest(const CsrMatrix& symmetric, std::size_t count);
SpectralReport dense_smallest(const SymmetricOperator& op, std::size_t count);

/// Largest eigenvalue estimate from a few power iterations (a lower bound
/// that is typically within a few percent).
double estimate_largest_eigenvalue(const SymmetricOperator& op, int iterations = 30, std::uint64_t seed = 0x5eed);

}  // namespace hclust
