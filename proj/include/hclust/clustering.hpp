#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <vector>

#include "hclust/complex.hpp"
#include "hclust/spectral.hpp"

namespace hclust {

/// Image of K_p under the harmonic embedding: row j holds
/// (<sigma_j, h_1>_p, ..., <sigma_j, h_beta>_p).
struct Embedding {
    int degree = 0;
    std::size_t dim = 0;         // beta_p
    std::vector<double> coords;  // row-major, |K_p| x dim

    std::size_t size() const { return dim ? coords.size() / dim : 0; }
    std::span<const double> point(std::size_t i) const { return std::span<const double>(coords).subspan(i * dim, dim); }
    double norm(std::size_t i) const;
};

class ClusteringError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Throws ClusteringError when the basis is empty (no degree-p homology)
/// or does not match the complex.
Embedding harmonic_embedding(const SimplicialComplex& complex, int p, const HarmonicBasis& basis);

/// 2% of the median embedding norm.
double default_min_norm(const Embedding& embedding);

struct Subspace {
    std::vector<double> direction;  // unit vector, first nonzero coordinate positive
    std::size_t inliers = 0;        // points within the angular tolerance
    double angular_spread = 0.0;    // mean angle of the inliers to the line (radians)
};

struct SubspaceOptions {
    std::optional<std::size_t> k_hint;
    std::optional<double> min_norm;  // default_min_norm when unset
    double angular_tolerance = 0.1;  // radians
    double stop_fraction = 0.05;
    std::size_t max_candidates = 2000;
};

struct SubspaceSet {
    std::size_t dim = 0;
    std::vector<Subspace> subspaces;  // by descending inlier count
    double min_norm = 0.0;
    std::size_t considered = 0;  // points above min_norm

    std::vector<std::vector<double>> directions() const;
};

/// Greedy mode finding on the projective sphere: points above min_norm are
/// normalized, each candidate line scores the points within the angular
/// tolerance (antipodes identified), the best line is refined to the
/// principal direction of its inliers, which are then removed. Throws
/// ClusteringError when no point is above min_norm.
SubspaceSet detect_subspaces(const Embedding& embedding, const SubspaceOptions& options = {});

inline constexpr int unclustered = -1;

struct AssignmentThresholds {
    double accept = 0.98;
    double reject = 0.02;
    double min_norm = 0.0;
};

struct ClusterAssignment {
    int degree = 0;
    std::vector<int> labels;  // per simplex: cluster index or `unclustered`
    std::size_t cluster_count = 0;
    std::vector<std::vector<double>> directions;
    AssignmentThresholds thresholds;

    std::vector<std::vector<std::size_t>> clusters() const;
    std::vector<std::size_t> unclustered_indices() const;
};

/// Projects u = psi/|psi| onto each direction. With i the direction of
/// largest projection, sigma joins cluster i iff |<u,d_i>| >= accept and
/// |<u,d_j>| < |<d_i,d_j>| + reject for every other j. For mutually
/// orthogonal directions this is exactly "at least accept on V_i, below
/// reject on all others". Points with |psi| < min_norm stay unclustered.
/// Directions need not be normalized.
ClusterAssignment assign_clusters(const Embedding& embedding, const std::vector<std::vector<double>>& directions,
                                  const AssignmentThresholds& thresholds);

struct BaselineOptions {
    bool normalized = false;
    std::size_t restarts = 100;
    int max_iterations = 300;
};

/// Classical spectral clustering of the vertices: embed by the first
/// n_eigenvectors eigenvectors of the graph Laplacian with non-zero
/// eigenvalue, then k-means. Labels are indexed by K_0 position.
ClusterAssignment graph_spectral_clustering(const SimplicialComplex& complex, std::size_t n_eigenvectors,
                                            std::size_t k, std::uint64_t seed, const BaselineOptions& options = {});

struct KMeansResult {
    std::vector<int> labels;
    std::vector<double> centroids;  // k x dim
    double inertia = 0.0;
    std::size_t best_restart = 0;
};

/// k-means++ seeded Lloyd iterations, best of `restarts` runs. Labels are
/// renumbered in order of first appearance.
KMeansResult kmeans(std::span<const double> points, std::size_t dim, std::size_t k, std::uint64_t seed,
                    std::size_t restarts = 100, int max_iterations = 300);

}  // namespace hclust
