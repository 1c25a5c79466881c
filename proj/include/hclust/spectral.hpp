#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "hclust/complex.hpp"
#include "hclust/eigensolver.hpp"
#include "hclust/laplacian.hpp"

namespace hclust {

/// beta_p = |K_p| - rank B_p - rank B_{p+1}, ranks computed exactly.
std::size_t betti(const SimplicialComplex& complex, int p);

/// Betti numbers for p = 0..dimension().
std::vector<std::size_t> betti_numbers(const SimplicialComplex& complex);

enum class SolverKind { automatic, dense, iterative };

struct HarmonicOptions {
    /// Eigenvalues below kernel_tolerance * (largest eigenvalue estimate)
    /// count as zero.
    double kernel_tolerance = 1e-8;
    /// Iterative residual target, relative to the largest eigenvalue estimate.
    double residual_tolerance = 1e-11;
    SolverKind solver = SolverKind::automatic;
    /// automatic uses the dense solver up to this many simplices.
    std::size_t dense_threshold = 2000;
    int max_iterations = 20000;
    std::uint64_t seed = 0x5eed;
    bool precondition = true;
    LaplacianOptions laplacian;
};

/// Orthonormal basis (under the weighted inner product) of ker L_p.
struct HarmonicBasis {
    int degree = 0;
    std::vector<std::vector<double>> vectors;  // coefficients over K_p
    std::vector<double> residuals;             // |L_p h_i|
    std::optional<double> spectral_gap;        // smallest eigenvalue above the kernel
    double kernel_threshold = 0.0;             // absolute eigenvalue cutoff used
    double largest_eigenvalue = 0.0;           // estimate
    std::string solver;                        // "dense" or "iterative"
    int iterations = 0;

    std::size_t dimension() const { return vectors.size(); }
};

/// Eigenvalue counting and the exact Betti number disagree.
class KernelMismatchError : public std::runtime_error {
public:
    KernelMismatchError(const std::string& what, std::size_t betti, std::size_t kernel)
        : std::runtime_error(what), betti_(betti), kernel_(kernel) {}
    std::size_t betti() const { return betti_; }
    std::size_t kernel() const { return kernel_; }

private:
    std::size_t betti_, kernel_;
};

/// Harmonic basis of degree p. Throws KernelMismatchError if the number of
/// eigenvalues below the threshold differs from betti(complex, p), and
/// ConvergenceError if the iterative solver runs out of iterations.
HarmonicBasis harmonic_basis(const SimplicialComplex& complex, int p, const HarmonicOptions& options = {});

/// Symmetric operator view (W^{1/2} L W^{-1/2}) of a Laplacian.
SymmetricOperator symmetric_view(const LaplacianOperator& laplacian);

struct LowSpectrumOptions {
    double kernel_tolerance = 1e-8;     // relative, as in HarmonicOptions
    double residual_tolerance = 1e-11;  // relative
    SolverKind solver = SolverKind::automatic;
    std::size_t dense_threshold = 2000;
    int max_iterations = 20000;
    std::uint64_t seed = 0x5eed;
    std::vector<double> preconditioner;
};

/// The `count` smallest eigenpairs; with skip_kernel, the smallest ones
/// whose eigenvalue lies above the kernel threshold.
SpectralReport low_spectrum(const SymmetricOperator& op, std::size_t count, bool skip_kernel,
                            const LowSpectrumOptions& options = {});
/// Same, for an explicit symmetric matrix (dense oracle available).
SpectralReport low_spectrum(const CsrMatrix& symmetric, std::size_t count, bool skip_kernel,
                            const LowSpectrumOptions& options = {});

struct HodgeReport {
    std::size_t samples = 0;
    std::size_t harmonic_dimension = 0;
    /// max over samples of the pairwise |<.,.>_p| between the harmonic,
    /// boundary and remainder components, relative to <x,x>_p.
    double max_orthogonality = 0.0;
    /// max |B_p h| over basis vectors and sampled harmonic components.
    double max_cycle_residual = 0.0;
    /// max |B*_{p+1} h| likewise.
    double max_cocycle_residual = 0.0;
    /// max over perturbations z = h + B_{p+1} y of max(0, <h,h> - <z,z>).
    double max_minimality_violation = 0.0;
};

/// Decomposes random chains as harmonic + boundary + remainder and reports
/// the largest violations of the orthogonal decomposition, of the
/// cycle/cocycle property of harmonics and of their norm minimality.
HodgeReport hodge_check(const SimplicialComplex& complex, int p, std::size_t samples, std::uint64_t seed,
                        const HarmonicOptions& options = {});

}  // namespace hclust
