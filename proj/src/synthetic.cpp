#include "hclust/synthetic.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

#include "hclust/kernels.hpp"
#include "hclust/random.hpp"

namespace hclust {

namespace {

constexpr double two_pi = 2.0 * std::numbers::pi;

void push_sphere_point(PointCloud& cloud, Rng& rng, const Point3& center, double radius, double noise) {
    double x, y, z, n;
    do {
        x = rng.normal();
        y = rng.normal();
        z = rng.normal();
        n = std::sqrt(x * x + y * y + z * z);
    } while (n == 0.0);
    const double r = radius + (noise > 0 ? rng.uniform(-noise, noise) : 0.0);
    cloud.push({center[0] + r * x / n, center[1] + r * y / n, center[2] + r * z / n});
}

// Circle of the given radius in the xz-plane.
void push_circle_point(PointCloud& cloud, Rng& rng, const Point3& center, double radius, double noise) {
    const double t = two_pi * rng.uniform();
    const double r = radius + (noise > 0 ? rng.uniform(-noise, noise) : 0.0);
    cloud.push({center[0] + r * std::cos(t), center[1], center[2] + r * std::sin(t)});
}

PointCloud sample_wedge_impl(std::size_t n_sphere, std::size_t n_circle, double noise, std::uint64_t seed,
                             bool chained) {
    if (noise < 0) throw std::invalid_argument("noise amplitude must be non-negative");
    const auto centers = wedge_centers(chained);
    PointCloud cloud;
    cloud.dim = 3;
    cloud.seed = seed;
    cloud.coords.reserve(3 * (n_sphere + 2 * n_circle));
    Rng rng(seed);
    for (std::size_t i = 0; i < n_sphere; ++i) push_sphere_point(cloud, rng, centers[0], 1.0, noise);
    for (std::size_t c = 1; c <= 2; ++c)
        for (std::size_t i = 0; i < n_circle; ++i) push_circle_point(cloud, rng, centers[c], 1.0, noise);
    return cloud;
}

}  // namespace

std::array<Point3, 3> wedge_centers(bool chained) {
    if (chained) return {Point3{0, 0, 0}, Point3{2, 0, 0}, Point3{4, 0, 0}};
    return {Point3{0, 0, 0}, Point3{2, 0, 0}, Point3{-2, 0, 0}};
}

PointCloud sample_wedge(std::size_t n_sphere, std::size_t n_circle, double noise, std::uint64_t seed) {
    return sample_wedge_impl(n_sphere, n_circle, noise, seed, false);
}

PointCloud sample_chained_wedge(std::size_t n_sphere, std::size_t n_circle, double noise, std::uint64_t seed) {
    return sample_wedge_impl(n_sphere, n_circle, noise, seed, true);
}

PointCloud sample_punctured_square(std::size_t n, const std::vector<Point2>& hole_centers, double hole_radius,
                                   std::uint64_t seed) {
    for (const auto& c : hole_centers)
        if (c[0] < 0 || c[0] > 1 || c[1] < 0 || c[1] > 1)
            throw std::invalid_argument("hole centers must lie inside the unit square");
    if (hole_radius < 0) throw std::invalid_argument("hole radius must be non-negative");
    PointCloud cloud;
    cloud.dim = 2;
    cloud.seed = seed;
    cloud.coords.reserve(2 * n);
    Rng rng(seed);
    const std::size_t max_attempts = 1000 * n + 100000;
    std::size_t attempts = 0;
    const double r2 = hole_radius * hole_radius;
    while (cloud.size() < n) {
        if (++attempts > max_attempts)
            throw std::runtime_error("punctured square rejection sampling gave up after " +
                                     std::to_string(max_attempts) + " attempts; holes cover the square");
        const double x = rng.uniform(), y = rng.uniform();
        bool inside_hole = false;
        for (const auto& c : hole_centers) {
            const double dx = x - c[0], dy = y - c[1];
            if (dx * dx + dy * dy < r2) {
                inside_hole = true;
                break;
            }
        }
        if (!inside_hole) cloud.push({x, y});
    }
    return cloud;
}

PointCloud sample_torus(std::size_t n, double major_radius, double minor_radius, double noise, std::uint64_t seed) {
    if (!(major_radius > minor_radius && minor_radius > 0))
        throw std::invalid_argument("torus requires R > r > 0");
    if (noise < 0) throw std::invalid_argument("noise amplitude must be non-negative");
    PointCloud cloud;
    cloud.dim = 3;
    cloud.seed = seed;
    cloud.coords.reserve(3 * n);
    Rng rng(seed);
    for (std::size_t i = 0; i < n; ++i) {
        const double phi = rng.uniform(), theta = rng.uniform();
        double big = major_radius, small = minor_radius;
        if (noise > 0) {
            big += rng.uniform(-noise, noise);
            small += rng.uniform(-noise, noise);
        }
        const double ring = big + small * std::sin(two_pi * phi);
        cloud.push({ring * std::cos(two_pi * theta), ring * std::sin(two_pi * theta), small * std::cos(two_pi * phi)});
    }
    return cloud;
}

PointCloud sample_two_spheres(std::size_t n_each, const std::vector<Point3>& centers, double radius, double noise,
                              std::uint64_t seed) {
    if (noise < 0) throw std::invalid_argument("noise amplitude must be non-negative");
    PointCloud cloud;
    cloud.dim = 3;
    cloud.seed = seed;
    cloud.coords.reserve(3 * n_each * centers.size());
    Rng rng(seed);
    for (const auto& c : centers)
        for (std::size_t i = 0; i < n_each; ++i) push_sphere_point(cloud, rng, c, radius, noise);
    return cloud;
}

SimplicialComplex flat_torus_triangulation(bool symmetric) {
    auto id = [](int i, int j) { return static_cast<Vertex>(3 * ((j % 3 + 3) % 3) + (i % 3 + 3) % 3); };
    std::vector<std::vector<Vertex>> triangles;
    for (int j = 0; j < 3; ++j) {
        for (int i = 0; i < 3; ++i) {
            if (symmetric || i != 0 || j != 0) {
                triangles.push_back({id(i, j), id(i + 1, j), id(i, j + 1)});
                triangles.push_back({id(i + 1, j), id(i + 1, j + 1), id(i, j + 1)});
            } else {
                triangles.push_back({id(i, j), id(i + 1, j), id(i + 1, j + 1)});
                triangles.push_back({id(i, j), id(i + 1, j + 1), id(i, j + 1)});
            }
        }
    }
    return SimplicialComplex::closure_of(triangles);
}

EdgeFamily flat_torus_edge_family(Vertex a, Vertex b) {
    const int ai = static_cast<int>(a % 3), aj = static_cast<int>(a / 3);
    const int bi = static_cast<int>(b % 3), bj = static_cast<int>(b / 3);
    const int di = ((bi - ai) % 3 + 3) % 3, dj = ((bj - aj) % 3 + 3) % 3;
    if (dj == 0 && di != 0) return EdgeFamily::horizontal;
    if (di == 0 && dj != 0) return EdgeFamily::vertical;
    // (+1, -1) or (-1, +1) mod 3
    if ((di == 1 && dj == 2) || (di == 2 && dj == 1)) return EdgeFamily::diagonal;
    return EdgeFamily::other;
}

SimplicialComplex build_vietoris_rips(const PointCloud& cloud, double scale, int max_dim,
                                      VietorisRipsOptions options) {
    if (scale < 0) throw std::invalid_argument("scale must be non-negative");
    if (max_dim < 0) throw std::invalid_argument("max_dim must be non-negative");
    if (max_dim > options.max_dim_limit)
        throw std::invalid_argument("max_dim " + std::to_string(max_dim) + " exceeds the limit " +
                                    std::to_string(options.max_dim_limit));
    const auto upper = kernels::upper_neighbors_parallel(cloud.coords, cloud.dim, scale);
    auto cliques = kernels::cliques_parallel(upper, static_cast<std::size_t>(max_dim) + 1);
    std::vector<std::vector<Vertex>> flat(cliques.size());
    for (std::size_t k = 0; k < cliques.size(); ++k) flat[k].assign(cliques[k].begin(), cliques[k].end());
    return SimplicialComplex::from_canonical(std::move(flat));
}

}  // namespace hclust
