#pragma once
// Hand-rolled generators and dense oracles shared by the test binaries.

#include <algorithm>
#include <cstdint>
#include <vector>

#include <Eigen/Dense>

#include "hclust/complex.hpp"
#include "hclust/random.hpp"
#include "hclust/sparse.hpp"
#include "hclust/synthetic.hpp"

namespace support {

using hclust::Rng;
using hclust::SimplicialComplex;
using hclust::Vertex;

inline hclust::PointCloud random_cloud(Rng& rng, std::size_t n, std::size_t dim) {
    hclust::PointCloud cloud;
    cloud.dim = dim;
    for (std::size_t i = 0; i < n * dim; ++i) cloud.coords.push_back(rng.uniform());
    return cloud;
}

/// VR complex of 3..max_vertices uniform points in the unit square or cube.
inline SimplicialComplex random_vr(Rng& rng, std::size_t max_vertices = 12) {
    const std::size_t n = 3 + rng.below(max_vertices - 2);
    const std::size_t dim = 2 + rng.below(2);
    const auto cloud = random_cloud(rng, n, dim);
    const double scale = rng.uniform(0.2, 0.8);
    const int max_dim = 1 + static_cast<int>(rng.below(3));
    return hclust::build_vietoris_rips(cloud, scale, max_dim);
}

/// Downward closure of a few random vertex subsets of size 1..4.
inline SimplicialComplex random_closed(Rng& rng, std::size_t max_vertices = 12) {
    const std::size_t n = 2 + rng.below(max_vertices - 1);
    const std::size_t count = 1 + rng.below(10);
    std::vector<std::vector<Vertex>> tops;
    for (std::size_t t = 0; t < count; ++t) {
        std::vector<Vertex> all(n);
        for (std::size_t i = 0; i < n; ++i) all[i] = static_cast<Vertex>(i);
        for (std::size_t i = n - 1; i > 0; --i) std::swap(all[i], all[rng.below(i + 1)]);
        const std::size_t k = 1 + rng.below(std::min<std::size_t>(4, n));
        tops.emplace_back(all.begin(), all.begin() + static_cast<std::ptrdiff_t>(k));
    }
    return SimplicialComplex::closure_of(tops);
}

/// The 200-complex corpus: alternating random VR and random closed sets.
inline std::vector<SimplicialComplex> corpus(std::size_t count = 200, std::uint64_t seed = 2024) {
    Rng rng(seed);
    std::vector<SimplicialComplex> out;
    for (std::size_t i = 0; i < count; ++i) out.push_back(i % 2 == 0 ? random_vr(rng) : random_closed(rng));
    return out;
}

inline Eigen::MatrixXd dense(const hclust::CsrMatrix& m) {
    Eigen::MatrixXd d = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(m.rows()), static_cast<Eigen::Index>(m.cols()));
    for (std::size_t r = 0; r < m.rows(); ++r)
        for (std::size_t k = m.row_ptr()[r]; k < m.row_ptr()[r + 1]; ++k)
            d(static_cast<Eigen::Index>(r), m.col_idx()[k]) = m.values()[k];
    return d;
}

/// Rank oracle: full-pivot LU in floating point; fine for small 0/+-1 matrices.
inline std::size_t oracle_rank(const hclust::CsrMatrix& m) {
    if (m.rows() == 0 || m.cols() == 0) return 0;
    Eigen::FullPivLU<Eigen::MatrixXd> lu(dense(m));
    lu.setThreshold(1e-9);
    return static_cast<std::size_t>(lu.rank());
}

}  // namespace support
