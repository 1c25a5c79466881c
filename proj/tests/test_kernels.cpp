#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "hclust/kernels.hpp"
#include "hclust/synthetic.hpp"
#include "support.hpp"

using namespace hclust;

// The parallel kernels must reproduce the serial references bit for bit,
// whatever the thread count.

TEST_CASE("parallel mat-vec equals the serial reference") {
    Rng rng(61);
    for (int trial = 0; trial < 20; ++trial) {
        const std::size_t n = 1 + rng.below(3000), m = 1 + rng.below(3000);
        std::vector<CsrMatrix::Triplet> t;
        for (std::size_t i = 0; i < 10 * n; ++i) t.push_back({rng.below(n), rng.below(m), rng.normal()});
        const auto a = CsrMatrix::from_triplets(n, m, t);
        std::vector<double> x(m);
        for (double& v : x) v = rng.normal();
        std::vector<double> ys(n), yp(n);
        kernels::spmv_serial(a.row_ptr(), a.col_idx(), a.values(), x, ys);
        kernels::spmv_parallel(a.row_ptr(), a.col_idx(), a.values(), x, yp);
        CHECK(ys == yp);
        CHECK(a.multiply(x) == ys);
    }
}

TEST_CASE("parallel neighbor search and clique expansion equal the serial references") {
    Rng rng(62);
    for (int trial = 0; trial < 10; ++trial) {
        const std::size_t n = 50 + rng.below(600);
        const auto cloud = support::random_cloud(rng, n, 2 + rng.below(2));
        const double scale = rng.uniform(0.05, 0.2);
        const auto us = kernels::upper_neighbors_serial(cloud.coords, cloud.dim, scale);
        const auto up = kernels::upper_neighbors_parallel(cloud.coords, cloud.dim, scale);
        CHECK(us == up);
        const std::size_t max_size = 2 + rng.below(3);
        const auto cs = kernels::cliques_serial(us, max_size);
        const auto cp = kernels::cliques_parallel(us, max_size);
        CHECK(cs == cp);
        REQUIRE(cs.size() == max_size);
        // lexicographic order within every size
        for (std::size_t k = 1; k <= cs.size(); ++k) {
            const auto& flat = cs[k - 1];
            for (std::size_t i = k; i + k <= flat.size(); i += k)
                CHECK(std::lexicographical_compare(flat.begin() + static_cast<std::ptrdiff_t>(i - k),
                                                   flat.begin() + static_cast<std::ptrdiff_t>(i),
                                                   flat.begin() + static_cast<std::ptrdiff_t>(i),
                                                   flat.begin() + static_cast<std::ptrdiff_t>(i + k)));
        }
    }
}

TEST_CASE("parallel projection norms equal the serial reference") {
    Rng rng(63);
    for (int trial = 0; trial < 20; ++trial) {
        const std::size_t n = 1 + rng.below(5000), dim = 1 + rng.below(5), k = 1 + rng.below(4);
        std::vector<double> pts(n * dim), dirs(k * dim);
        for (double& v : pts) v = rng.normal();
        for (double& v : dirs) v = rng.normal();
        std::vector<double> os(n * k), op(n * k);
        kernels::projection_norms_serial(pts, dirs, dim, 0.5, os);
        kernels::projection_norms_parallel(pts, dirs, dim, 0.5, op);
        CHECK(os == op);
        for (std::size_t i = 0; i < n; ++i) {
            double norm = 0;
            for (std::size_t c = 0; c < dim; ++c) norm += pts[i * dim + c] * pts[i * dim + c];
            if (std::sqrt(norm) < 0.5) CHECK(os[i * k] == -1.0);
        }
    }
    CHECK(kernels::max_threads() >= 1);
}
