#include "hclust/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <iostream>
#include <limits>
#include <numeric>

#include <Eigen/Dense>

#include "hclust/random.hpp"
#include "hclust/rank.hpp"

namespace hclust {

namespace {

double dot(std::span<const double> a, std::span<const double> b) {
    return std::inner_product(a.begin(), a.end(), b.begin(), 0.0);
}

double weighted_dot(std::span<const double> a, std::span<const double> b, std::span<const double> gram) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i] * gram[i];
    return s;
}

double norm(std::span<const double> a) { return std::sqrt(dot(a, a)); }

bool use_dense(SolverKind kind, std::size_t n, std::size_t threshold) {
    return kind == SolverKind::dense || (kind == SolverKind::automatic && n <= threshold);
}

// Fixes the sign so that the first entry of largest magnitude is positive.
void normalize_sign(std::vector<double>& v) {
    std::size_t best = 0;
    for (std::size_t i = 1; i < v.size(); ++i)
        if (std::abs(v[i]) > std::abs(v[best]) * (1.0 + 1e-9)) best = i;
    if (!v.empty() && v[best] < 0)
        for (double& x : v) x = -x;
}

}  // namespace

std::vector<std::size_t> betti_numbers(const SimplicialComplex& complex) {
    const int dim = complex.dimension();
    std::vector<std::size_t> ranks(dim + 2, 0);  // ranks[p] = rank B_p
    for (int p = 1; p <= dim; ++p) ranks[p] = integer_rank(boundary_matrix(complex, p));
    std::vector<std::size_t> out;
    for (int p = 0; p <= dim; ++p) out.push_back(complex.size(p) - ranks[p] - ranks[p + 1]);
    return out;
}

std::size_t betti(const SimplicialComplex& complex, int p) {
    if (p < 0 || p > complex.dimension()) return 0;
    const std::size_t rank_down = p == 0 ? 0 : integer_rank(boundary_matrix(complex, p));
    const std::size_t rank_up = integer_rank(boundary_matrix(complex, p + 1));
    return complex.size(p) - rank_down - rank_up;
}

SymmetricOperator symmetric_view(const LaplacianOperator& laplacian) {
    return {laplacian.size(),
            [&laplacian](std::span<const double> x, std::span<double> y) { laplacian.apply_symmetric(x, y); }};
}

HarmonicBasis harmonic_basis(const SimplicialComplex& complex, int p, const HarmonicOptions& options) {
    HarmonicBasis basis;
    basis.degree = p;
    const std::size_t n = complex.size(p);
    if (n == 0) return basis;

    const std::size_t beta = betti(complex, p);
    if (beta > 10)
        std::cerr << "warning: beta_" << p << " = " << beta
                  << " is large; harmonic clustering is intended for low homological complexity\n";

    const LaplacianOperator laplacian(complex, p, options.laplacian);
    const SymmetricOperator op = symmetric_view(laplacian);
    const double lmax = estimate_largest_eigenvalue(op, 30, options.seed);
    const double scale = lmax > 0 ? lmax : 1.0;
    basis.largest_eigenvalue = lmax;
    basis.kernel_threshold = options.kernel_tolerance * scale;

    const std::size_t count = std::min(n, beta + 1);
    SpectralReport rep;
    if (use_dense(options.solver, n, options.dense_threshold)) {
        rep = dense_smallest(laplacian.assemble_symmetric(), count);
        basis.solver = "dense";
    } else {
        EigensolverOptions eo;
        eo.tolerance = options.residual_tolerance * scale;
        eo.max_iterations = options.max_iterations;
        eo.seed = options.seed;
        if (options.precondition) {
            eo.preconditioner = laplacian.diagonal();
            for (double& d : eo.preconditioner) d = d > 0 ? 1.0 / d : 1.0;
        }
        rep = lobpcg_smallest(op, count, eo);
        basis.solver = "iterative";
        basis.iterations = rep.iterations;
    }

    std::size_t kernel = 0;
    while (kernel < rep.eigenvalues.size() && rep.eigenvalues[kernel] < basis.kernel_threshold) ++kernel;
    if (kernel != beta) {
        const std::string relation = kernel == count && count > beta ? "at least " : "";
        throw KernelMismatchError("kernel of L_" + std::to_string(p) + " has dimension " + relation +
                                      std::to_string(kernel) + " at threshold " +
                                      std::to_string(basis.kernel_threshold) + " but beta_" + std::to_string(p) +
                                      " = " + std::to_string(beta),
                                  beta, kernel);
    }
    if (rep.eigenvalues.size() > beta) basis.spectral_gap = rep.eigenvalues[beta];

    const auto w = laplacian.weights();
    for (std::size_t i = 0; i < beta; ++i) {
        std::vector<double> h = rep.eigenvectors[i];
        for (std::size_t j = 0; j < n; ++j) h[j] /= w[j];
        normalize_sign(h);
        basis.residuals.push_back(norm(laplacian.apply(h)));
        basis.vectors.push_back(std::move(h));
    }
    return basis;
}

namespace {

SpectralReport low_spectrum_impl(const SymmetricOperator& op, const CsrMatrix* matrix, std::size_t count,
                                 bool skip_kernel, const LowSpectrumOptions& options) {
    const std::size_t n = op.size;
    if (count == 0 || n == 0) return {};
    const double lmax = estimate_largest_eigenvalue(op, 30, options.seed);
    const double scale = lmax > 0 ? lmax : 1.0;
    const double threshold = options.kernel_tolerance * scale;

    auto solve = [&](std::size_t m) {
        if (use_dense(options.solver, n, options.dense_threshold))
            return matrix ? dense_smallest(*matrix, m) : dense_smallest(op, m);
        EigensolverOptions eo;
        eo.tolerance = options.residual_tolerance * scale;
        eo.max_iterations = options.max_iterations;
        eo.seed = options.seed;
        eo.preconditioner = options.preconditioner;
        return lobpcg_smallest(op, m, eo);
    };

    if (!skip_kernel) return solve(std::min(count, n));

    std::size_t m = std::min(n, count + 2);
    while (true) {
        SpectralReport rep = solve(m);
        std::size_t kernel = 0;
        while (kernel < rep.eigenvalues.size() && rep.eigenvalues[kernel] < threshold) ++kernel;
        if (rep.eigenvalues.size() - kernel >= count || m == n) {
            SpectralReport out;
            out.iterations = rep.iterations;
            out.matvecs = rep.matvecs;
            const std::size_t end = std::min(rep.eigenvalues.size(), kernel + count);
            for (std::size_t j = kernel; j < end; ++j) {
                out.eigenvalues.push_back(rep.eigenvalues[j]);
                out.eigenvectors.push_back(std::move(rep.eigenvectors[j]));
                out.residuals.push_back(rep.residuals[j]);
                out.converged.push_back(rep.converged[j]);
            }
            return out;
        }
        m = std::min(n, 2 * m);
    }
}

}  // namespace

SpectralReport low_spectrum(const SymmetricOperator& op, std::size_t count, bool skip_kernel,
                            const LowSpectrumOptions& options) {
    return low_spectrum_impl(op, nullptr, count, skip_kernel, options);
}

SpectralReport low_spectrum(const CsrMatrix& symmetric, std::size_t count, bool skip_kernel,
                            const LowSpectrumOptions& options) {
    return low_spectrum_impl(SymmetricOperator::from_matrix(symmetric), &symmetric, count, skip_kernel, options);
}

HodgeReport hodge_check(const SimplicialComplex& complex, int p, std::size_t samples, std::uint64_t seed,
                        const HarmonicOptions& options) {
    HodgeReport report;
    report.samples = samples;
    const std::size_t n = complex.size(p);
    if (n == 0) return report;

    const HarmonicBasis basis = harmonic_basis(complex, p, options);
    report.harmonic_dimension = basis.dimension();
    const CsrMatrix bp = boundary_matrix(complex, p);
    const CsrMatrix bup = boundary_matrix(complex, p + 1);
    const CsrMatrix adj_up = adjoint_boundary(complex, p + 1);
    const std::vector<double> gram = complex.inner_product(p).diagonal;
    const std::size_t m = bup.cols();

    auto check_harmonic = [&](const std::vector<double>& h) {
        if (bp.rows() > 0) report.max_cycle_residual = std::max(report.max_cycle_residual, norm(bp.multiply(h)));
        if (m > 0) report.max_cocycle_residual = std::max(report.max_cocycle_residual, norm(adj_up.multiply(h)));
    };
    for (const auto& h : basis.vectors) check_harmonic(h);

    // Weighted least squares onto im B_{p+1}: minimize |W^{1/2}(x - B y)|.
    if (n * m > 20'000'000)
        throw std::invalid_argument("hodge_check uses a dense least-squares solve; complex too large");
    Eigen::MatrixXd a(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(m));
    a.setZero();
    for (std::size_t r = 0; r < n; ++r)
        for (std::size_t k = bup.row_ptr()[r]; k < bup.row_ptr()[r + 1]; ++k)
            a(static_cast<Eigen::Index>(r), bup.col_idx()[k]) = bup.values()[k] * std::sqrt(gram[r]);
    Eigen::CompleteOrthogonalDecomposition<Eigen::MatrixXd> cod;
    if (m > 0) cod.compute(a);

    Rng rng(seed);
    for (std::size_t s = 0; s < samples; ++s) {
        std::vector<double> x(n);
        for (double& v : x) v = rng.normal();
        const double xx = weighted_dot(x, x, gram);

        std::vector<double> h(n, 0.0);
        for (const auto& hi : basis.vectors) {
            const double c = weighted_dot(x, hi, gram);
            for (std::size_t j = 0; j < n; ++j) h[j] += c * hi[j];
        }
        std::vector<double> b(n, 0.0);
        if (m > 0) {
            Eigen::VectorXd rhs(static_cast<Eigen::Index>(n));
            for (std::size_t j = 0; j < n; ++j) rhs(static_cast<Eigen::Index>(j)) = x[j] * std::sqrt(gram[j]);
            const Eigen::VectorXd y = cod.solve(rhs);
            b = bup.multiply(std::span<const double>(y.data(), m));
        }
        std::vector<double> c(n);
        for (std::size_t j = 0; j < n; ++j) c[j] = x[j] - h[j] - b[j];

        const double orth = std::max({std::abs(weighted_dot(h, b, gram)), std::abs(weighted_dot(h, c, gram)),
                                      std::abs(weighted_dot(b, c, gram))}) /
                            xx;
        report.max_orthogonality = std::max(report.max_orthogonality, orth);
        check_harmonic(h);

        // Homologous perturbation z = h + B_{p+1} y.
        const double hh = weighted_dot(h, h, gram);
        if (m > 0) {
            std::vector<double> y(m);
            for (double& v : y) v = rng.normal();
            const auto by = bup.multiply(y);
            std::vector<double> z(n);
            for (std::size_t j = 0; j < n; ++j) z[j] = h[j] + by[j];
            const double zz = weighted_dot(z, z, gram);
            report.max_minimality_violation = std::max(report.max_minimality_violation, hh - zz);
        }
    }
    return report;
}

}  // namespace hclust
