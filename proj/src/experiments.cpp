#include "hclust/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <stdexcept>

#include "hclust/random.hpp"

namespace hclust {

namespace {

using io::json;

void check_keys(const json& obj, const std::string& where, std::initializer_list<const char*> allowed) {
    if (!obj.is_object()) throw std::invalid_argument(where + " must be an object");
    const std::set<std::string> ok(allowed.begin(), allowed.end());
    for (const auto& [key, value] : obj.items())
        if (!ok.count(key)) throw std::invalid_argument("unknown key \"" + key + "\" in " + where);
}

template <class T>
void read(const json& obj, const char* key, T& out) {
    if (obj.contains(key)) out = obj.at(key).get<T>();
}

template <class T>
void read(const json& obj, const char* key, std::optional<T>& out) {
    if (obj.contains(key) && !obj.at(key).is_null()) out = obj.at(key).get<T>();
}

const char* solver_name(SolverKind kind) {
    switch (kind) {
        case SolverKind::dense: return "dense";
        case SolverKind::iterative: return "iterative";
        default: return "automatic";
    }
}

SolverKind parse_solver(const std::string& s) {
    if (s == "automatic") return SolverKind::automatic;
    if (s == "dense") return SolverKind::dense;
    if (s == "iterative") return SolverKind::iterative;
    throw std::invalid_argument("unknown solver \"" + s + "\" (automatic, dense, iterative)");
}

bool prefix_matches(const std::vector<std::size_t>& betti, const std::vector<std::size_t>& target) {
    if (target.size() > betti.size()) return false;
    return std::equal(target.begin(), target.end(), betti.begin());
}

}  // namespace

std::uint64_t solver_seed(std::uint64_t seed) { return mix_seed(seed, 1); }
std::uint64_t baseline_seed(std::uint64_t seed) { return mix_seed(seed, 2); }

ExperimentConfig ExperimentConfig::from_json(const json& doc) {
    check_keys(doc, "config",
               {"name", "sampler", "complex", "degree", "solver", "clustering", "baseline", "seed", "output"});
    ExperimentConfig c;
    try {
        read(doc, "name", c.name);
        read(doc, "degree", c.degree);
        read(doc, "seed", c.seed);
        read(doc, "output", c.output);
        if (doc.contains("sampler")) {
            const auto& s = doc["sampler"];
            check_keys(s, "sampler",
                       {"name", "n", "n_sphere", "n_circle", "n_each", "noise", "holes", "hole_radius",
                        "major_radius", "minor_radius", "centers", "radius", "symmetric"});
            auto& o = c.sampler;
            read(s, "name", o.name);
            read(s, "n", o.n);
            read(s, "n_sphere", o.n_sphere);
            read(s, "n_circle", o.n_circle);
            read(s, "n_each", o.n_each);
            read(s, "noise", o.noise);
            read(s, "holes", o.holes);
            read(s, "hole_radius", o.hole_radius);
            read(s, "major_radius", o.major_radius);
            read(s, "minor_radius", o.minor_radius);
            read(s, "centers", o.centers);
            read(s, "radius", o.radius);
            read(s, "symmetric", o.symmetric);
        }
        if (doc.contains("complex")) {
            const auto& s = doc["complex"];
            check_keys(s, "complex", {"scale", "scales", "max_dim", "target_betti"});
            read(s, "scale", c.complex.scale);
            read(s, "scales", c.complex.scales);
            read(s, "max_dim", c.complex.max_dim);
            read(s, "target_betti", c.complex.target_betti);
        }
        if (doc.contains("solver")) {
            const auto& s = doc["solver"];
            check_keys(s, "solver",
                       {"kernel_tolerance", "residual_tolerance", "solver", "dense_threshold", "max_iterations",
                        "precondition", "explicit_threshold"});
            auto& o = c.solver;
            read(s, "kernel_tolerance", o.kernel_tolerance);
            read(s, "residual_tolerance", o.residual_tolerance);
            if (s.contains("solver")) o.solver = parse_solver(s["solver"].get<std::string>());
            read(s, "dense_threshold", o.dense_threshold);
            read(s, "max_iterations", o.max_iterations);
            read(s, "precondition", o.precondition);
            read(s, "explicit_threshold", o.laplacian.explicit_threshold);
        }
        if (doc.contains("clustering")) {
            const auto& s = doc["clustering"];
            check_keys(s, "clustering", {"accept", "reject", "min_norm", "angular_tolerance", "k_hint", "directions"});
            auto& o = c.clustering;
            read(s, "accept", o.accept);
            read(s, "reject", o.reject);
            read(s, "min_norm", o.min_norm);
            read(s, "angular_tolerance", o.angular_tolerance);
            read(s, "k_hint", o.k_hint);
            read(s, "directions", o.directions);
        }
        if (doc.contains("baseline")) {
            const auto& s = doc["baseline"];
            check_keys(s, "baseline", {"n_eigenvectors", "k", "normalized"});
            read(s, "n_eigenvectors", c.baseline.n_eigenvectors);
            read(s, "k", c.baseline.k);
            read(s, "normalized", c.baseline.normalized);
        }
    } catch (const json::exception& e) {
        throw std::invalid_argument(std::string("config: ") + e.what());
    }
    c.validate();
    return c;
}

json ExperimentConfig::to_json() const {
    json doc;
    doc["name"] = name;
    doc["seed"] = seed;
    doc["output"] = output;
    doc["degree"] = degree;
    const auto& s = sampler;
    doc["sampler"] = {{"name", s.name},
                      {"n", s.n},
                      {"n_sphere", s.n_sphere},
                      {"n_circle", s.n_circle},
                      {"n_each", s.n_each},
                      {"noise", s.noise},
                      {"holes", s.holes},
                      {"hole_radius", s.hole_radius},
                      {"major_radius", s.major_radius},
                      {"minor_radius", s.minor_radius},
                      {"centers", s.centers},
                      {"radius", s.radius},
                      {"symmetric", s.symmetric}};
    doc["complex"] = {{"scale", complex.scale ? json(*complex.scale) : json(nullptr)},
                      {"scales", complex.scales},
                      {"max_dim", complex.max_dim},
                      {"target_betti", complex.target_betti}};
    doc["solver"] = {{"kernel_tolerance", solver.kernel_tolerance},
                     {"residual_tolerance", solver.residual_tolerance},
                     {"solver", solver_name(solver.solver)},
                     {"dense_threshold", solver.dense_threshold},
                     {"max_iterations", solver.max_iterations},
                     {"precondition", solver.precondition},
                     {"explicit_threshold", solver.laplacian.explicit_threshold}};
    doc["clustering"] = {{"accept", clustering.accept},
                         {"reject", clustering.reject},
                         {"min_norm", clustering.min_norm ? json(*clustering.min_norm) : json(nullptr)},
                         {"angular_tolerance", clustering.angular_tolerance},
                         {"k_hint", clustering.k_hint ? json(*clustering.k_hint) : json(nullptr)},
                         {"directions", clustering.directions}};
    doc["baseline"] = {
        {"n_eigenvectors", baseline.n_eigenvectors}, {"k", baseline.k}, {"normalized", baseline.normalized}};
    return doc;
}

void ExperimentConfig::validate() const {
    static const std::set<std::string> samplers = {"wedge",  "chained_wedge", "punctured_square",
                                                   "torus",  "two_spheres",   "flat_torus"};
    if (!samplers.count(sampler.name)) throw std::invalid_argument("unknown sampler \"" + sampler.name + "\"");
    if (sampler.noise < 0) throw std::invalid_argument("sampler.noise must be non-negative");
    if (sampler.hole_radius < 0) throw std::invalid_argument("sampler.hole_radius must be non-negative");
    if (sampler.name == "torus" && !(sampler.major_radius > sampler.minor_radius && sampler.minor_radius > 0))
        throw std::invalid_argument("torus needs major_radius > minor_radius > 0");
    if (sampler.radius <= 0) throw std::invalid_argument("sampler.radius must be positive");
    if (complex.scale && *complex.scale < 0) throw std::invalid_argument("complex.scale must be non-negative");
    for (double s : complex.scales)
        if (s < 0) throw std::invalid_argument("complex.scales must be non-negative");
    if (complex.max_dim < 0 || complex.max_dim > 3) throw std::invalid_argument("complex.max_dim must be in [0, 3]");
    if (degree < 0) throw std::invalid_argument("degree must be non-negative");
    if (!sampler.combinatorial() && degree > complex.max_dim)
        throw std::invalid_argument("degree exceeds complex.max_dim");
    if (!(solver.kernel_tolerance > 0) || !(solver.residual_tolerance > 0))
        throw std::invalid_argument("solver tolerances must be positive");
    if (solver.max_iterations <= 0) throw std::invalid_argument("solver.max_iterations must be positive");
    if (!(clustering.reject > 0 && clustering.accept < 1 && clustering.reject < clustering.accept))
        throw std::invalid_argument("clustering thresholds need 0 < reject < accept < 1");
    if (clustering.min_norm && *clustering.min_norm < 0) throw std::invalid_argument("min_norm must be non-negative");
    if (!(clustering.angular_tolerance > 0 && clustering.angular_tolerance < 0.785))
        throw std::invalid_argument("angular_tolerance must be in (0, pi/4)");
    if (clustering.k_hint && *clustering.k_hint == 0) throw std::invalid_argument("k_hint must be positive");
    if (baseline.k == 0 || baseline.n_eigenvectors == 0)
        throw std::invalid_argument("baseline k and n_eigenvectors must be positive");
}

PointCloud generate_cloud(const SamplerConfig& s, std::uint64_t seed) {
    if (s.name == "wedge") return sample_wedge(s.n_sphere, s.n_circle, s.noise, seed);
    if (s.name == "chained_wedge") return sample_chained_wedge(s.n_sphere, s.n_circle, s.noise, seed);
    if (s.name == "punctured_square") return sample_punctured_square(s.n, s.holes, s.hole_radius, seed);
    if (s.name == "torus") return sample_torus(s.n, s.major_radius, s.minor_radius, s.noise, seed);
    if (s.name == "two_spheres") return sample_two_spheres(s.n_each, s.centers, s.radius, s.noise, seed);
    if (s.name == "flat_torus") throw std::invalid_argument("flat_torus is a complex, not a point cloud");
    throw std::invalid_argument("unknown sampler \"" + s.name + "\"");
}

SimplicialComplex generate_complex(const SamplerConfig& s) {
    if (s.name != "flat_torus") throw std::invalid_argument("sampler \"" + s.name + "\" produces a point cloud");
    return flat_torus_triangulation(s.symmetric);
}

std::vector<BettiScanRow> betti_scan(const PointCloud& cloud, const std::vector<double>& scales, int max_dim,
                                     int degree) {
    std::vector<BettiScanRow> rows;
    for (double scale : scales) {
        const auto complex = build_vietoris_rips(cloud, scale, max_dim);
        BettiScanRow row;
        row.scale = scale;
        for (int p = 0; p <= max_dim; ++p) row.sizes.push_back(complex.size(p));
        row.betti = betti_numbers(complex);
        row.betti.resize(static_cast<std::size_t>(max_dim) + 1, 0);
        rows.push_back(std::move(row));
    }
    const auto d = static_cast<std::size_t>(std::max(degree, 0));
    auto value = [&](std::size_t i) { return d < rows[i].betti.size() ? rows[i].betti[d] : 0; };
    for (std::size_t i = 0; i < rows.size(); ++i)
        rows[i].stable = (i > 0 && value(i - 1) == value(i)) || (i + 1 < rows.size() && value(i + 1) == value(i));
    return rows;
}

std::optional<double> select_scale(const std::vector<BettiScanRow>& rows, const std::vector<std::size_t>& target) {
    std::optional<double> fallback;
    for (std::size_t i = 0; i < rows.size(); ++i) {
        if (!prefix_matches(rows[i].betti, target)) continue;
        if (!fallback) fallback = rows[i].scale;
        const bool prev = i > 0 && prefix_matches(rows[i - 1].betti, target);
        const bool next = i + 1 < rows.size() && prefix_matches(rows[i + 1].betti, target);
        if (prev || next) return rows[i].scale;
    }
    return fallback;
}

ClusterRun run_harmonic_clustering(const SimplicialComplex& complex, int p, const HarmonicOptions& solver,
                                   const ClusterConfig& clustering) {
    ClusterRun run;
    run.basis = harmonic_basis(complex, p, solver);
    run.embedding = harmonic_embedding(complex, p, run.basis);
    const double min_norm = clustering.min_norm ? *clustering.min_norm : default_min_norm(run.embedding);
    std::vector<std::vector<double>> directions = clustering.directions;
    if (directions.empty()) {
        SubspaceOptions so;
        so.k_hint = clustering.k_hint;
        so.min_norm = min_norm;
        so.angular_tolerance = clustering.angular_tolerance;
        run.subspaces = detect_subspaces(run.embedding, so);
        directions = run.subspaces->directions();
    }
    run.assignment = assign_clusters(run.embedding, directions, {clustering.accept, clustering.reject, min_norm});
    return run;
}

ExperimentResult run_experiment(const ExperimentConfig& config) {
    config.validate();
    ExperimentResult result;
    if (config.sampler.combinatorial()) {
        result.complex = generate_complex(config.sampler);
    } else {
        result.cloud = generate_cloud(config.sampler, config.seed);
        if (config.complex.scale) {
            result.scale = config.complex.scale;
        } else {
            result.scan = betti_scan(*result.cloud, config.complex.scales, config.complex.max_dim, config.degree);
            result.scale = select_scale(result.scan, config.complex.target_betti);
            if (!result.scale) throw std::runtime_error("no scanned scale has the target Betti numbers");
        }
        result.complex = build_vietoris_rips(*result.cloud, *result.scale, config.complex.max_dim);
    }
    result.betti = betti_numbers(result.complex);
    HarmonicOptions solver = config.solver;
    solver.seed = solver_seed(config.seed);
    result.run = run_harmonic_clustering(result.complex, config.degree, solver, config.clustering);
    return result;
}

}  // namespace hclust
