#include "hclust/eigensolver.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include <Eigen/Dense>

#include "hclust/random.hpp"

namespace hclust {

namespace {

using Mat = Eigen::MatrixXd;
using Vec = Eigen::VectorXd;

void apply_block(const SymmetricOperator& op, const Mat& v, Mat& av, std::size_t& matvecs) {
    av.resize(v.rows(), v.cols());
    for (Eigen::Index j = 0; j < v.cols(); ++j) {
        op.apply(std::span<const double>(v.col(j).data(), v.rows()), std::span<double>(av.col(j).data(), v.rows()));
        ++matvecs;
    }
}

// Orthonormalizes the columns of v (and applies the same transform to av)
// through the eigendecomposition of the Gram matrix, discarding directions
// that are numerically dependent.
void svqb(Mat& v, Mat* av, double drop = 1e-12) {
    for (int pass = 0; pass < 2 && v.cols() > 0; ++pass) {
        Vec norms = v.colwise().norm().transpose();
        for (Eigen::Index j = 0; j < norms.size(); ++j) norms(j) = norms(j) > 0 ? 1.0 / norms(j) : 0.0;
        Mat g = norms.asDiagonal() * (v.transpose() * v) * norms.asDiagonal();
        Eigen::SelfAdjointEigenSolver<Mat> es(0.5 * (g + g.transpose()));
        const Vec& e = es.eigenvalues();
        const double top = e.maxCoeff();
        std::vector<Eigen::Index> keep;
        for (Eigen::Index k = 0; k < e.size(); ++k)
            if (e(k) > drop * top && e(k) > 0) keep.push_back(k);
        Mat t(v.cols(), static_cast<Eigen::Index>(keep.size()));
        for (std::size_t k = 0; k < keep.size(); ++k)
            t.col(static_cast<Eigen::Index>(k)) = es.eigenvectors().col(keep[k]) / std::sqrt(e(keep[k]));
        t = norms.asDiagonal() * t;
        v = v * t;
        if (av) *av = *av * t;
    }
}

SpectralReport rayleigh_ritz_full(const SymmetricOperator& op, std::size_t count) {
    const auto n = static_cast<Eigen::Index>(op.size);
    Mat a(n, n);
    Mat id = Mat::Identity(n, n);
    std::size_t matvecs = 0;
    apply_block(op, id, a, matvecs);
    Eigen::SelfAdjointEigenSolver<Mat> es(0.5 * (a + a.transpose()));
    SpectralReport rep;
    rep.matvecs = matvecs;
    rep.iterations = 1;
    for (std::size_t j = 0; j < count; ++j) {
        const Vec v = es.eigenvectors().col(static_cast<Eigen::Index>(j));
        const double lambda = es.eigenvalues()(static_cast<Eigen::Index>(j));
        rep.eigenvalues.push_back(lambda);
        rep.eigenvectors.emplace_back(v.data(), v.data() + n);
        rep.residuals.push_back((a * v - lambda * v).norm());
        rep.converged.push_back(true);
    }
    return rep;
}

SpectralReport report_from(const Mat& x, const Mat& ax, std::size_t count, double tol) {
    SpectralReport rep;
    for (std::size_t j = 0; j < count; ++j) {
        const auto jj = static_cast<Eigen::Index>(j);
        const double lambda = x.col(jj).dot(ax.col(jj));
        rep.eigenvalues.push_back(lambda);
        rep.eigenvectors.emplace_back(x.col(jj).data(), x.col(jj).data() + x.rows());
        const double res = (ax.col(jj) - lambda * x.col(jj)).norm();
        rep.residuals.push_back(res);
        rep.converged.push_back(res <= tol);
    }
    return rep;
}

}  // namespace

bool SpectralReport::all_converged() const {
    return std::all_of(converged.begin(), converged.end(), [](bool c) { return c; });
}

SymmetricOperator SymmetricOperator::from_matrix(const CsrMatrix& m) {
    if (m.rows() != m.cols()) throw std::invalid_argument("operator matrix must be square");
    return {m.rows(), [&m](std::span<const double> x, std::span<double> y) { m.multiply(x, y); }};
}

SpectralReport lobpcg_smallest(const SymmetricOperator& op, std::size_t count, const EigensolverOptions& options) {
    const std::size_t n = op.size;
    count = std::min(count, n);
    if (count == 0) return {};
    const std::size_t m = std::min(n, count + options.guard_vectors);
    if (n <= std::max<std::size_t>(3 * m, 12)) return rayleigh_ritz_full(op, count);

    const auto N = static_cast<Eigen::Index>(n);
    const bool precondition = options.preconditioner.size() == n;
    std::size_t matvecs = 0;

    Rng rng(options.seed);
    Mat x(N, static_cast<Eigen::Index>(m));
    for (Eigen::Index j = 0; j < x.cols(); ++j)
        for (Eigen::Index i = 0; i < N; ++i) x(i, j) = rng.normal();
    svqb(x, nullptr);
    Mat ax;
    apply_block(op, x, ax, matvecs);
    {
        Mat h = x.transpose() * ax;
        Eigen::SelfAdjointEigenSolver<Mat> es(0.5 * (h + h.transpose()));
        x = x * es.eigenvectors();
        ax = ax * es.eigenvectors();
    }
    Mat p(N, 0), ap(N, 0);
    Vec lambda(x.cols());

    int it = 0;
    for (; it < options.max_iterations; ++it) {
        if (it > 0 && it % 25 == 0) {
            // Refresh products accumulated through linear combinations.
            apply_block(op, x, ax, matvecs);
            if (p.cols() > 0) apply_block(op, p, ap, matvecs);
        }
        for (Eigen::Index j = 0; j < x.cols(); ++j) lambda(j) = x.col(j).dot(ax.col(j));
        Mat r = ax - x * lambda.asDiagonal();
        std::vector<Eigen::Index> active;
        bool wanted_done = true;
        for (Eigen::Index j = 0; j < r.cols(); ++j) {
            const bool conv = r.col(j).norm() <= options.tolerance;
            if (!conv) active.push_back(j);
            if (!conv && static_cast<std::size_t>(j) < count) wanted_done = false;
        }
        if (wanted_done) break;

        Mat w(N, static_cast<Eigen::Index>(active.size()));
        for (std::size_t k = 0; k < active.size(); ++k) w.col(static_cast<Eigen::Index>(k)) = r.col(active[k]);
        if (precondition)
            for (Eigen::Index i = 0; i < N; ++i) w.row(i) *= options.preconditioner[static_cast<std::size_t>(i)];
        for (int pass = 0; pass < 2; ++pass) w -= x * (x.transpose() * w);
        svqb(w, nullptr);
        for (int pass = 0; pass < 2; ++pass) w -= x * (x.transpose() * w);
        svqb(w, nullptr);
        Mat aw;
        apply_block(op, w, aw, matvecs);

        if (p.cols() > 0) {
            Mat c1 = x.transpose() * p;
            p -= x * c1;
            ap -= ax * c1;
            Mat c2 = w.transpose() * p;
            p -= w * c2;
            ap -= aw * c2;
            svqb(p, &ap);
        }

        const Eigen::Index kx = x.cols(), kw = w.cols(), kp = p.cols();
        Mat s(N, kx + kw + kp), as(N, kx + kw + kp);
        s << x, w, p;
        as << ax, aw, ap;
        Mat g = s.transpose() * s;
        Mat h = s.transpose() * as;
        h = 0.5 * (h + h.transpose());
        // The basis is orthonormal up to rounding; solve the small generalized
        // problem through the Gram matrix to absorb the residual skew.
        Eigen::GeneralizedSelfAdjointEigenSolver<Mat> es(h, 0.5 * (g + g.transpose()));
        if (es.info() != Eigen::Success) {
            // Fall back to a standard problem on a re-orthonormalized basis.
            svqb(s, &as);
            Mat h2 = s.transpose() * as;
            Eigen::SelfAdjointEigenSolver<Mat> es2(0.5 * (h2 + h2.transpose()));
            const Mat c = es2.eigenvectors().leftCols(kx);
            x = s * c;
            ax = as * c;
            p.resize(N, 0);
            ap.resize(N, 0);
            continue;
        }
        const Mat c = es.eigenvectors().leftCols(kx);
        Mat xn = s * c;
        Mat axn = as * c;
        Mat cp(kw + kp, static_cast<Eigen::Index>(active.size()));
        for (std::size_t k = 0; k < active.size(); ++k)
            cp.col(static_cast<Eigen::Index>(k)) = c.col(active[k]).tail(kw + kp);
        p = s.rightCols(kw + kp) * cp;
        ap = as.rightCols(kw + kp) * cp;
        x = std::move(xn);
        ax = std::move(axn);
        // Keep X orthonormal and its Ritz vectors sorted.
        svqb(x, &ax);
        Mat hx = x.transpose() * ax;
        Eigen::SelfAdjointEigenSolver<Mat> esx(0.5 * (hx + hx.transpose()));
        x = x * esx.eigenvectors();
        ax = ax * esx.eigenvectors();
    }

    apply_block(op, x, ax, matvecs);
    SpectralReport rep = report_from(x, ax, count, options.tolerance);
    rep.iterations = it;
    rep.matvecs = matvecs;
    if (!rep.all_converged()) {
        double worst = 0.0;
        for (double res : rep.residuals) worst = std::max(worst, res);
        throw ConvergenceError("eigensolver did not converge in " + std::to_string(it) +
                                   " iterations (worst residual " + std::to_string(worst) + ")",
                               std::move(rep));
    }
    return rep;
}

SpectralReport dense_smallest(const CsrMatrix& symmetric, std::size_t count) {
    const auto n = static_cast<Eigen::Index>(symmetric.rows());
    count = std::min<std::size_t>(count, symmetric.rows());
    const auto d = symmetric.to_dense();
    Mat a = Eigen::Map<const Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>>(d.data(), n, n);
    Eigen::SelfAdjointEigenSolver<Mat> es(0.5 * (a + a.transpose()));
    SpectralReport rep;
    rep.iterations = 1;
    for (std::size_t j = 0; j < count; ++j) {
        const auto jj = static_cast<Eigen::Index>(j);
        const Vec v = es.eigenvectors().col(jj);
        const double lambda = es.eigenvalues()(jj);
        rep.eigenvalues.push_back(lambda);
        rep.eigenvectors.emplace_back(v.data(), v.data() + n);
        rep.residuals.push_back((a * v - lambda * v).norm());
        rep.converged.push_back(true);
    }
    return rep;
}

SpectralReport dense_smallest(const SymmetricOperator& op, std::size_t count) {
    return rayleigh_ritz_full(op, std::min(count, op.size));
}

double estimate_largest_eigenvalue(const SymmetricOperator& op, int iterations, std::uint64_t seed) {
    if (op.size == 0) return 0.0;
    Rng rng(seed);
    std::vector<double> x(op.size), y(op.size);
    for (double& v : x) v = rng.normal();
    double estimate = 0.0;
    for (int it = 0; it < iterations; ++it) {
        double nx = std::sqrt(std::inner_product(x.begin(), x.end(), x.begin(), 0.0));
        if (nx == 0.0) return 0.0;
        for (double& v : x) v /= nx;
        op.apply(x, y);
        estimate = std::max(estimate, std::inner_product(x.begin(), x.end(), y.begin(), 0.0));
        x.swap(y);
    }
    return estimate;
}

}  // namespace hclust
