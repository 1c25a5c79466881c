#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "hclust/eigensolver.hpp"
#include "hclust/rank.hpp"
#include "hclust/spectral.hpp"
#include "hclust/synthetic.hpp"
#include "support.hpp"

using namespace hclust;

namespace {

SimplicialComplex hollow_triangle(Vertex offset = 0) {
    SimplicialComplex k;
    k.insert({offset, offset + 1});
    k.insert({offset, offset + 2});
    k.insert({offset + 1, offset + 2});
    return k;
}

SimplicialComplex two_hollow_triangles() {
    SimplicialComplex k = hollow_triangle();
    k.insert({3, 4});
    k.insert({3, 5});
    k.insert({4, 5});
    return k;
}

double weighted_dot(const std::vector<double>& a, const std::vector<double>& b, const std::vector<double>& w) {
    double s = 0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i] * w[i];
    return s;
}

CsrMatrix integer_matrix(Rng& rng, std::size_t r, std::size_t c, double density, int range) {
    std::vector<CsrMatrix::Triplet> t;
    for (std::size_t i = 0; i < r; ++i)
        for (std::size_t j = 0; j < c; ++j)
            if (rng.uniform() < density)
                t.push_back({i, j, static_cast<double>(static_cast<int>(rng.below(2 * range + 1)) - range)});
    return CsrMatrix::from_triplets(r, c, t);
}

}  // namespace

TEST_CASE("rank algorithms agree with the LU oracle") {
    Rng rng(21);
    for (int trial = 0; trial < 120; ++trial) {
        const std::size_t r = 1 + rng.below(25), c = 1 + rng.below(25);
        auto m = integer_matrix(rng, r, c, rng.uniform(0.1, 0.6), 1 + static_cast<int>(rng.below(4)));
        if (trial % 3 == 0) {
            // Force dependencies: duplicate a combination of rows as the last row.
            auto d = support::dense(m);
            d.row(d.rows() - 1) = d.row(0) * 2 - (d.rows() > 1 ? d.row(1) : d.row(0));
            std::vector<CsrMatrix::Triplet> t;
            for (Eigen::Index i = 0; i < d.rows(); ++i)
                for (Eigen::Index j = 0; j < d.cols(); ++j)
                    if (d(i, j) != 0) t.push_back({static_cast<std::size_t>(i), static_cast<std::size_t>(j), d(i, j)});
            m = CsrMatrix::from_triplets(r, c, t);
        }
        const auto expected = support::oracle_rank(m);
        CHECK(rank_fraction_free(m) == expected);
        CHECK(rank_modular(m, 2147483647u) == expected);
        CHECK(rank_modular(m, 2147483629u) == expected);
        CHECK(integer_rank(m) == expected);
    }
    CHECK(integer_rank(CsrMatrix(0, 5)) == 0);
    CHECK(integer_rank(CsrMatrix(4, 0)) == 0);
}

TEST_CASE("fraction-free rank survives entries that overflow 64-bit minors") {
    // Hilbert-like integer matrix scaled up: minors exceed 2^63 quickly.
    std::vector<CsrMatrix::Triplet> t;
    const std::size_t n = 14;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) t.push_back({i, j, std::pow(3.0, static_cast<double>((i * j) % 11)) + static_cast<double>(i + j)});
    const auto m = CsrMatrix::from_triplets(n, n, t);
    CHECK(rank_fraction_free(m) == rank_modular(m, 2147483647u));
}

TEST_CASE("Betti numbers of small complexes") {
    const auto tri = hollow_triangle();
    CHECK(betti(tri, 0) == 1);
    CHECK(betti(tri, 1) == 1);
    const auto two = two_hollow_triangles();
    CHECK(betti_numbers(two) == std::vector<std::size_t>{2, 2});
    CHECK(betti_numbers(flat_torus_triangulation(true)) == std::vector<std::size_t>{1, 2, 1});
    CHECK(betti_numbers(flat_torus_triangulation(false)) == std::vector<std::size_t>{1, 2, 1});
    SimplicialComplex filled;
    filled.insert({0, 1, 2});
    CHECK(betti_numbers(filled) == std::vector<std::size_t>{1, 0, 0});
    CHECK(betti(filled, 5) == 0);
}

TEST_CASE("harmonic basis of the hollow and the filled triangle") {
    const auto h = harmonic_basis(hollow_triangle(), 1);
    REQUIRE(h.dimension() == 1);
    const double r = 1 / std::sqrt(3.0);
    CHECK(h.vectors[0][0] == doctest::Approx(r));
    CHECK(h.vectors[0][1] == doctest::Approx(-r));
    CHECK(h.vectors[0][2] == doctest::Approx(r));
    CHECK(h.residuals[0] < 1e-12);
    REQUIRE(h.spectral_gap.has_value());
    CHECK(*h.spectral_gap == doctest::Approx(3.0));

    SimplicialComplex filled;
    filled.insert({0, 1, 2});
    const auto none = harmonic_basis(filled, 1);
    CHECK(none.dimension() == 0);
}

TEST_CASE("flat torus harmonics are orthonormal cycles and cocycles") {
    const auto torus = flat_torus_triangulation(true);
    for (SolverKind kind : {SolverKind::dense, SolverKind::iterative}) {
        HarmonicOptions o;
        o.solver = kind;
        const auto h = harmonic_basis(torus, 1, o);
        REQUIRE(h.dimension() == 2);
        const std::vector<double> w(torus.size(1), 1.0);
        for (std::size_t i = 0; i < 2; ++i) {
            CHECK(h.residuals[i] < 1e-8);
            for (std::size_t j = 0; j < 2; ++j)
                CHECK(std::abs(weighted_dot(h.vectors[i], h.vectors[j], w) - (i == j ? 1.0 : 0.0)) < 1e-8);
            const auto bh = boundary_matrix(torus, 1).multiply(h.vectors[i]);
            const auto ch = adjoint_boundary(torus, 2).multiply(h.vectors[i]);
            double nb = 0, nc = 0;
            for (double x : bh) nb += x * x;
            for (double x : ch) nc += x * x;
            CHECK(std::sqrt(nb) < 1e-8);
            CHECK(std::sqrt(nc) < 1e-8);
        }
    }
}

TEST_CASE("weighted harmonics are orthonormal in the weighted inner product") {
    Rng rng(22);
    auto k = two_hollow_triangles();
    for (int p = 0; p <= 1; ++p)
        for (std::size_t i = 0; i < k.size(p); ++i) k.set_weight(p, i, rng.uniform(0.5, 2.0));
    const auto h = harmonic_basis(k, 1);
    REQUIRE(h.dimension() == 2);
    const auto w = k.inner_product(1).diagonal;
    for (std::size_t i = 0; i < 2; ++i)
        for (std::size_t j = 0; j < 2; ++j)
            CHECK(std::abs(weighted_dot(h.vectors[i], h.vectors[j], w) - (i == j ? 1.0 : 0.0)) < 1e-8);
    for (const auto& v : h.vectors) {
        const auto lv = LaplacianOperator(k, 1).apply(v);
        for (double x : lv) CHECK(std::abs(x) < 1e-8);
    }
}

TEST_CASE("low spectrum of a path and of disconnected graphs") {
    SimplicialComplex path;
    path.insert({0, 1});
    path.insert({1, 2});
    const auto l = graph_laplacian(path, false);
    const auto fiedler = low_spectrum(l, 1, true);
    REQUIRE(fiedler.eigenvalues.size() == 1);
    CHECK(fiedler.eigenvalues[0] == doctest::Approx(1.0));
    const auto& v = fiedler.eigenvectors[0];
    CHECK(std::abs(v[1]) < 1e-10);
    CHECK(v[0] == doctest::Approx(-v[2]));

    const auto kernel = low_spectrum(l, 1, false);
    CHECK(std::abs(kernel.eigenvalues[0]) < 1e-10);
    CHECK(kernel.eigenvectors[0][0] == doctest::Approx(kernel.eigenvectors[0][1]));
    CHECK(kernel.eigenvectors[0][1] == doctest::Approx(kernel.eigenvectors[0][2]));

    const auto two = two_hollow_triangles();
    const auto rep = low_spectrum(graph_laplacian(two, false), 3, false);
    CHECK(std::abs(rep.eigenvalues[0]) < 1e-10);
    CHECK(std::abs(rep.eigenvalues[1]) < 1e-10);
    CHECK(rep.eigenvalues[2] > 1.0);

    LowSpectrumOptions it;
    it.solver = SolverKind::iterative;
    const auto iter = low_spectrum(graph_laplacian(two, false), 2, true, it);
    CHECK(iter.eigenvalues[0] == doctest::Approx(3.0));
    CHECK(iter.eigenvalues[1] == doctest::Approx(3.0));
}

TEST_CASE("LOBPCG matches the dense oracle on larger operators") {
    Rng rng(23);
    const auto cloud = sample_torus(400, 2, 1, 0.0, 5);
    const auto k = build_vietoris_rips(cloud, 0.8, 2);
    const LaplacianOperator l(k, 1);
    const auto op = symmetric_view(l);
    EigensolverOptions eo;
    eo.tolerance = 1e-9;
    auto pre = l.diagonal();
    for (double& d : pre) d = 1.0 / d;
    eo.preconditioner = pre;
    const auto it = lobpcg_smallest(op, 6, eo);
    const auto dn = dense_smallest(l.assemble_symmetric(), 6);
    REQUIRE(it.all_converged());
    for (std::size_t i = 0; i < 6; ++i) CHECK(std::abs(it.eigenvalues[i] - dn.eigenvalues[i]) < 1e-7);
    CHECK(estimate_largest_eigenvalue(op) <= dense_smallest(l.assemble_symmetric(), l.size()).eigenvalues.back() * (1 + 1e-9));
}

TEST_CASE("eigensolver failures are reported") {
    const auto k = build_vietoris_rips(sample_torus(300, 2, 1, 0.0, 9), 0.8, 2);
    const LaplacianOperator l(k, 1);
    EigensolverOptions eo;
    eo.tolerance = 1e-14;
    eo.max_iterations = 2;
    CHECK_THROWS_AS(lobpcg_smallest(symmetric_view(l), 4, eo), ConvergenceError);
    try {
        lobpcg_smallest(symmetric_view(l), 4, eo);
    } catch (const ConvergenceError& e) {
        CHECK(e.best().eigenvalues.size() == 4);
    }

    // An absurd kernel tolerance swallows non-zero eigenvalues.
    HarmonicOptions loose;
    loose.kernel_tolerance = 0.5;
    CHECK_THROWS_AS(harmonic_basis(flat_torus_triangulation(true), 1, loose), KernelMismatchError);
}

TEST_CASE("hodge check on the small examples") {
    const auto hollow = hodge_check(hollow_triangle(), 1, 20, 1);
    CHECK(hollow.harmonic_dimension == 1);
    CHECK(hollow.max_orthogonality < 1e-12);

    SimplicialComplex filled;
    filled.insert({0, 1, 2});
    const auto f = hodge_check(filled, 1, 20, 2);
    CHECK(f.harmonic_dimension == 0);
    CHECK(f.max_orthogonality < 1e-12);

    const auto torus = hodge_check(flat_torus_triangulation(true), 1, 100, 3);
    CHECK(torus.harmonic_dimension == 2);
    CHECK(torus.max_orthogonality < 1e-8);
    CHECK(torus.max_cycle_residual < 1e-8);
    CHECK(torus.max_cocycle_residual < 1e-8);
    CHECK(torus.max_minimality_violation <= 1e-12);
}

TEST_CASE("property: kernel dimension equals the rank-based Betti number") {
    const auto corpus = support::corpus(80, 31);
    for (const auto& k : corpus)
        for (int p = 0; p <= k.dimension(); ++p) {
            const auto l = LaplacianOperator(k, p).assemble_symmetric();
            const auto all = dense_smallest(l, l.rows());
            std::size_t zeros = 0;
            const double top = all.eigenvalues.empty() ? 1.0 : std::max(all.eigenvalues.back(), 1.0);
            for (double e : all.eigenvalues) zeros += e < 1e-8 * top;
            const std::size_t rank_down = p == 0 ? 0 : support::oracle_rank(boundary_matrix(k, p));
            const std::size_t rank_up = support::oracle_rank(boundary_matrix(k, p + 1));
            CHECK(zeros == k.size(p) - rank_down - rank_up);
            CHECK(betti(k, p) == zeros);
            for (double e : all.eigenvalues) CHECK(e >= -1e-10);
        }
}
