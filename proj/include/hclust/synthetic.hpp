#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "hclust/complex.hpp"

namespace hclust {

/// Points in R^d stored row-major.
struct PointCloud {
    std::size_t dim = 3;
    std::vector<double> coords;
    std::uint64_t seed = 0;

    std::size_t size() const { return dim ? coords.size() / dim : 0; }
    std::span<const double> point(std::size_t i) const { return std::span<const double>(coords).subspan(i * dim, dim); }
    void push(std::initializer_list<double> p) { coords.insert(coords.end(), p.begin(), p.end()); }
};

using Point3 = std::array<double, 3>;
using Point2 = std::array<double, 2>;

// Noise model for every sampler: a point at distance r from its center is
// placed at distance r + U(-a, a) along the same ray.

/// Unit sphere at the origin plus two unit circles in the xz-plane centered
/// at (+-2, 0, 0), touching the sphere at (+-1, 0, 0). Order: sphere points,
/// then the circle at +2, then the circle at -2.
PointCloud sample_wedge(std::size_t n_sphere, std::size_t n_circle, double noise, std::uint64_t seed);

/// As sample_wedge, but the second circle is centered at (4, 0, 0), touching
/// the first circle at (3, 0, 0) instead of the sphere.
PointCloud sample_chained_wedge(std::size_t n_sphere, std::size_t n_circle, double noise, std::uint64_t seed);

/// Centers of the wedge's sphere and circles, in sampling order.
std::array<Point3, 3> wedge_centers(bool chained);

/// Uniform points in [0,1]^2 outside the given disks (rejection sampling).
/// Throws std::invalid_argument for hole centers outside the square and
/// std::runtime_error if rejection fails for too long.
PointCloud sample_punctured_square(std::size_t n, const std::vector<Point2>& hole_centers, double hole_radius,
                                   std::uint64_t seed);

/// (phi, theta) uniform on the unit square mapped to
/// ((R + r sin 2pi phi) cos 2pi theta, (R + r sin 2pi phi) sin 2pi theta, r cos 2pi phi),
/// both radii perturbed by U(-noise, noise). Requires R > r > 0.
PointCloud sample_torus(std::size_t n, double major_radius, double minor_radius, double noise, std::uint64_t seed);

/// n_each points on each sphere, sphere by sphere.
PointCloud sample_two_spheres(std::size_t n_each, const std::vector<Point3>& centers, double radius, double noise,
                              std::uint64_t seed);

/// 3x3 grid triangulation of the flat torus (9 vertices, 27 edges, 18
/// triangles). Vertex (i, j) has id 3j + i. With symmetric = true every
/// square is split by the diagonal (i+1, j)-(i, j+1); otherwise the square at
/// (0, 0) uses the opposite diagonal.
SimplicialComplex flat_torus_triangulation(bool symmetric);

enum class EdgeFamily { horizontal, vertical, diagonal, other };
/// Classifies an edge of the flat torus triangulation by grid direction.
EdgeFamily flat_torus_edge_family(Vertex a, Vertex b);

struct VietorisRipsOptions {
    int max_dim_limit = 3;
};

/// Flag complex of the proximity graph |p_i - p_j| <= scale, simplices up to
/// max_dim. Vertex ids are point indices. Throws std::invalid_argument when
/// max_dim exceeds the limit or scale < 0.
SimplicialComplex build_vietoris_rips(const PointCloud& cloud, double scale, int max_dim,
                                      VietorisRipsOptions options = {});

}  // namespace hclust
