#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <set>

#include "hclust/spectral.hpp"
#include "hclust/synthetic.hpp"
#include "support.hpp"

using namespace hclust;

namespace {

double dist(std::span<const double> p, const Point3& c) {
    return std::sqrt((p[0] - c[0]) * (p[0] - c[0]) + (p[1] - c[1]) * (p[1] - c[1]) + (p[2] - c[2]) * (p[2] - c[2]));
}

std::set<std::vector<Vertex>> simplex_set(const SimplicialComplex& k) {
    std::set<std::vector<Vertex>> out;
    for (int p = 0; p <= k.dimension(); ++p)
        for (std::size_t i = 0; i < k.size(p); ++i) {
            const auto s = k.simplex(p, i);
            out.emplace(s.begin(), s.end());
        }
    return out;
}

}  // namespace

TEST_CASE("wedge sizes and geometry") {
    CHECK(sample_wedge(1000, 100, 0.01, 1).size() == 1200);
    CHECK(sample_wedge(0, 0, 0, 1).size() == 0);
    const auto clean = sample_wedge(100, 10, 0.0, 2);
    const auto centers = wedge_centers(false);
    for (std::size_t i = 0; i < 100; ++i) CHECK(dist(clean.point(i), centers[0]) == doctest::Approx(1.0).epsilon(1e-12));
    for (std::size_t i = 100; i < 110; ++i) {
        CHECK(dist(clean.point(i), centers[1]) == doctest::Approx(1.0).epsilon(1e-12));
        CHECK(clean.point(i)[1] == 0.0);
    }
    for (std::size_t i = 110; i < 120; ++i) CHECK(dist(clean.point(i), centers[2]) == doctest::Approx(1.0).epsilon(1e-12));

    const auto noisy = sample_wedge(200, 50, 0.05, 3);
    for (std::size_t i = 0; i < 200; ++i) CHECK(std::abs(dist(noisy.point(i), centers[0]) - 1.0) <= 0.05);
    CHECK_THROWS_AS(sample_wedge(1, 1, -0.1, 1), std::invalid_argument);
}

TEST_CASE("chained wedge attaches the second circle to the first") {
    CHECK(sample_chained_wedge(1000, 100, 0.01, 1).size() == 1200);
    CHECK(sample_chained_wedge(0, 0, 0, 1).size() == 0);
    const auto centers = wedge_centers(true);
    CHECK(centers[2][0] - centers[1][0] == 2.0);
    const auto clean = sample_chained_wedge(10, 20, 0.0, 4);
    for (std::size_t i = 10; i < 30; ++i) CHECK(dist(clean.point(i), centers[1]) == doctest::Approx(1.0).epsilon(1e-12));
    for (std::size_t i = 30; i < 50; ++i) CHECK(dist(clean.point(i), centers[2]) == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("punctured square avoids the holes") {
    const std::vector<Point2> holes = {{0.5, 0.8}, {0.4, 0.2}, {0.8, 0.3}};
    const auto cloud = sample_punctured_square(1000, holes, 0.1, 5);
    CHECK(cloud.size() == 1000);
    CHECK(cloud.dim == 2);
    for (std::size_t i = 0; i < cloud.size(); ++i) {
        const auto p = cloud.point(i);
        CHECK(p[0] >= 0.0);
        CHECK(p[0] <= 1.0);
        for (const auto& c : holes) CHECK(std::hypot(p[0] - c[0], p[1] - c[1]) >= 0.1);
    }
    CHECK(sample_punctured_square(50, {}, 0.3, 5).size() == 50);
    CHECK_THROWS_AS(sample_punctured_square(10, {{1.5, 0.5}}, 0.1, 1), std::invalid_argument);
    CHECK_THROWS_AS(sample_punctured_square(10, {{0.5, 0.5}}, 2.0, 1), std::runtime_error);
}

TEST_CASE("torus samples lie near the surface") {
    CHECK(sample_torus(1500, 2, 1, 0.01, 1).size() == 1500);
    const auto exact = sample_torus(300, 2, 1, 0.0, 6);
    for (std::size_t i = 0; i < exact.size(); ++i) {
        const auto p = exact.point(i);
        const double ring = std::hypot(p[0], p[1]);
        CHECK(std::hypot(ring - 2.0, p[2]) == doctest::Approx(1.0).epsilon(1e-12));
    }
    const double a = 0.05;
    const auto noisy = sample_torus(500, 2, 1, a, 7);
    for (std::size_t i = 0; i < noisy.size(); ++i) {
        const double ring = std::hypot(noisy.point(i)[0], noisy.point(i)[1]);
        CHECK(ring >= 2 - 1 - 2 * a);
        CHECK(ring <= 2 + 1 + 2 * a);
    }
    CHECK_THROWS_AS(sample_torus(10, 1, 1, 0, 1), std::invalid_argument);
}

TEST_CASE("two spheres") {
    const std::vector<Point3> centers = {{-1, 0, 0}, {1, 0, 0}};
    CHECK(sample_two_spheres(1000, centers, 1, 0.01, 1).size() == 2000);
    CHECK(sample_two_spheres(0, centers, 1, 0.01, 1).size() == 0);
    const auto clean = sample_two_spheres(100, centers, 1, 0.0, 8);
    for (std::size_t i = 0; i < clean.size(); ++i) {
        const double d = std::min(dist(clean.point(i), centers[0]), dist(clean.point(i), centers[1]));
        CHECK(d == doctest::Approx(1.0).epsilon(1e-12));
    }
}

TEST_CASE("samplers are pure functions of their seed") {
    CHECK(sample_wedge(50, 5, 0.01, 9).coords == sample_wedge(50, 5, 0.01, 9).coords);
    CHECK(sample_wedge(50, 5, 0.01, 9).coords != sample_wedge(50, 5, 0.01, 10).coords);
    CHECK(sample_torus(50, 2, 1, 0.01, 9).coords == sample_torus(50, 2, 1, 0.01, 9).coords);
    CHECK(sample_punctured_square(50, {{0.5, 0.5}}, 0.1, 9).coords ==
          sample_punctured_square(50, {{0.5, 0.5}}, 0.1, 9).coords);
}

TEST_CASE("flat torus triangulation") {
    for (bool symmetric : {true, false}) {
        const auto k = flat_torus_triangulation(symmetric);
        CHECK(validate(k).empty());
        CHECK(k.size(0) == 9);
        CHECK(k.size(1) == 27);
        CHECK(k.size(2) == 18);
        CHECK(betti_numbers(k) == std::vector<std::size_t>{1, 2, 1});
        // every edge is in exactly two triangles
        std::vector<int> cofaces(27, 0);
        for (std::size_t t = 0; t < 18; ++t)
            for (const auto& f : faces(k.simplex_at(2, t))) ++cofaces[*k.index_of(f.face.vertices())];
        for (int c : cofaces) CHECK(c == 2);
    }
    const auto sym = flat_torus_triangulation(true);
    int counts[4] = {0, 0, 0, 0};
    for (std::size_t e = 0; e < 27; ++e) {
        const auto s = sym.simplex(1, e);
        ++counts[static_cast<int>(flat_torus_edge_family(s[0], s[1]))];
    }
    CHECK(counts[0] == 9);
    CHECK(counts[1] == 9);
    CHECK(counts[2] == 9);
    CHECK(counts[3] == 0);
    CHECK(simplex_set(sym) != simplex_set(flat_torus_triangulation(false)));
}

TEST_CASE("Vietoris-Rips examples") {
    PointCloud tri;
    tri.dim = 2;
    tri.coords = {0, 0, 1, 0, 0.5, 0.8};
    const auto full = build_vietoris_rips(tri, 1.0, 2);
    CHECK(full.size(0) == 3);
    CHECK(full.size(1) == 3);
    CHECK(full.size(2) == 1);

    CHECK(build_vietoris_rips(tri, 0.0, 2).size(1) == 0);
    CHECK(build_vietoris_rips(tri, 0.0, 2).size(0) == 3);

    PointCloud square;
    square.dim = 2;
    square.coords = {0, 0, 1, 0, 1, 1, 0, 1};
    const auto sq = build_vietoris_rips(square, 1.0, 2);
    CHECK(sq.size(0) == 4);
    CHECK(sq.size(1) == 4);
    CHECK(sq.size(2) == 0);
    CHECK(betti(sq, 1) == 1);

    CHECK_THROWS_AS(build_vietoris_rips(square, 1.0, 4), std::invalid_argument);
    VietorisRipsOptions relaxed;
    relaxed.max_dim_limit = 4;
    CHECK_NOTHROW(build_vietoris_rips(square, 1.0, 4, relaxed));
    CHECK_THROWS_AS(build_vietoris_rips(square, -1.0, 2), std::invalid_argument);

    PointCloud empty;
    CHECK(build_vietoris_rips(empty, 1.0, 2).dimension() == -1);
}

TEST_CASE("property: VR complexes are valid flag complexes, monotone in the scale") {
    Rng rng(41);
    for (int trial = 0; trial < 60; ++trial) {
        const std::size_t n = 4 + rng.below(30);
        const auto cloud = support::random_cloud(rng, n, 2 + rng.below(2));
        const double s = rng.uniform(0.1, 0.5), t = s + rng.uniform(0.0, 0.3);
        const int max_dim = 1 + static_cast<int>(rng.below(3));
        const auto ks = build_vietoris_rips(cloud, s, max_dim);
        const auto kt = build_vietoris_rips(cloud, t, max_dim);
        CHECK(validate(ks).empty());
        CHECK(validate(kt).empty());
        const auto small = simplex_set(ks), large = simplex_set(kt);
        for (const auto& simplex : small) CHECK(large.count(simplex) == 1);

        // Brute-force flag property: a simplex is present iff all its pairwise distances are within scale.
        for (std::size_t a = 0; a < n; ++a)
            for (std::size_t b = a + 1; b < n; ++b) {
                double d2 = 0;
                for (std::size_t c = 0; c < cloud.dim; ++c) {
                    const double x = cloud.point(a)[c] - cloud.point(b)[c];
                    d2 += x * x;
                }
                const bool edge = std::sqrt(d2) <= s;
                CHECK(small.count({static_cast<Vertex>(a), static_cast<Vertex>(b)}) == (edge ? 1u : 0u));
            }
        if (max_dim >= 2) {
            std::size_t triangles = 0;
            for (Vertex a = 0; a < n; ++a)
                for (Vertex b = a + 1; b < n; ++b)
                    for (Vertex c = b + 1; c < n; ++c)
                        triangles += small.count({a, b}) && small.count({a, c}) && small.count({b, c});
            CHECK(ks.size(2) == triangles);
        }
        for (const auto& simplex : small)
            if (simplex.size() >= 3)
                for (std::size_t i = 0; i < simplex.size(); ++i)
                    for (std::size_t j = i + 1; j < simplex.size(); ++j)
                        CHECK(small.count({simplex[i], simplex[j]}) == 1);
    }
}
