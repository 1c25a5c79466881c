#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "hclust/clustering.hpp"
#include "hclust/io.hpp"
#include "hclust/spectral.hpp"
#include "hclust/synthetic.hpp"

namespace hclust {

/// Sampler name plus the union of all sampler parameters; each sampler
/// reads only its own fields.
struct SamplerConfig {
    std::string name = "wedge";  // wedge, chained_wedge, punctured_square, torus, two_spheres, flat_torus
    std::size_t n = 1000;        // punctured_square, torus
    std::size_t n_sphere = 300;  // wedge, chained_wedge
    std::size_t n_circle = 30;
    std::size_t n_each = 500;  // two_spheres
    double noise = 0.01;
    std::vector<Point2> holes = {{0.5, 0.8}, {0.4, 0.2}, {0.8, 0.3}};
    double hole_radius = 0.1;
    double major_radius = 2.0;
    double minor_radius = 1.0;
    std::vector<Point3> centers = {{-1, 0, 0}, {1, 0, 0}};
    double radius = 1.0;
    bool symmetric = true;  // flat_torus

    /// The flat torus is generated as a complex, not as a point cloud.
    bool combinatorial() const { return name == "flat_torus"; }
};

struct ComplexConfig {
    std::optional<double> scale;  // fixed VR scale; otherwise selected from `scales`
    std::vector<double> scales;
    int max_dim = 2;
    std::vector<std::size_t> target_betti;  // prefix (beta_0, beta_1, ...) the selected scale must show
};

struct ClusterConfig {
    double accept = 0.98;
    double reject = 0.02;
    std::optional<double> min_norm;
    double angular_tolerance = 0.1;
    std::optional<std::size_t> k_hint;
    std::vector<std::vector<double>> directions;  // manual directions; empty = detect
};

struct BaselineConfig {
    std::size_t n_eigenvectors = 2;
    std::size_t k = 2;
    bool normalized = false;
};

struct ExperimentConfig {
    std::string name = "experiment";
    SamplerConfig sampler;
    ComplexConfig complex;
    int degree = 1;
    HarmonicOptions solver;
    ClusterConfig clustering;
    BaselineConfig baseline;
    std::uint64_t seed = 1;
    std::string output = "out";

    /// Missing keys keep their defaults; unknown keys are rejected.
    static ExperimentConfig from_json(const io::json& doc);
    io::json to_json() const;
    /// Throws std::invalid_argument naming the first out-of-range parameter.
    void validate() const;
};

/// Sub-seeds derived from the experiment seed.
std::uint64_t solver_seed(std::uint64_t seed);
std::uint64_t baseline_seed(std::uint64_t seed);

/// Runs the named point-cloud sampler. Throws std::invalid_argument for an
/// unknown or combinatorial sampler.
PointCloud generate_cloud(const SamplerConfig& sampler, std::uint64_t seed);

/// Complex for combinatorial samplers (the flat torus).
SimplicialComplex generate_complex(const SamplerConfig& sampler);

struct BettiScanRow {
    double scale = 0.0;
    std::vector<std::size_t> sizes;  // |K_p|
    std::vector<std::size_t> betti;  // beta_p of the max_dim-skeleton
    bool stable = false;             // beta_degree agrees with a neighboring scale
};

/// Betti numbers of the VR complex at each scale (in the given order).
std::vector<BettiScanRow> betti_scan(const PointCloud& cloud, const std::vector<double>& scales, int max_dim,
                                     int degree);

/// First scale whose Betti numbers start with `target` and which has a
/// neighboring scale with the same prefix; failing that, the first scale
/// matching at all.
std::optional<double> select_scale(const std::vector<BettiScanRow>& rows, const std::vector<std::size_t>& target);

struct ClusterRun {
    HarmonicBasis basis;
    Embedding embedding;
    std::optional<SubspaceSet> subspaces;  // empty when directions were given
    ClusterAssignment assignment;
};

/// harmonic_basis -> harmonic_embedding -> detect_subspaces (unless
/// directions are given) -> assign_clusters.
ClusterRun run_harmonic_clustering(const SimplicialComplex& complex, int p, const HarmonicOptions& solver,
                                   const ClusterConfig& clustering);

struct ExperimentResult {
    std::optional<PointCloud> cloud;
    std::vector<BettiScanRow> scan;
    std::optional<double> scale;
    SimplicialComplex complex;
    std::vector<std::size_t> betti;
    ClusterRun run;
};

/// Whole pipeline for a config: sample, pick the scale, build, cluster.
/// Throws std::runtime_error when no scanned scale meets target_betti.
ExperimentResult run_experiment(const ExperimentConfig& config);

}  // namespace hclust
