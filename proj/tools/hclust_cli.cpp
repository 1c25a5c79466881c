// hclust: data generation, complex construction, Betti scans and harmonic
// clustering runs from the command line.
//
// Exit codes: 0 success, 1 usage or input error, 2 numerical failure.

#include <CLI11.hpp>

#include <filesystem>
#include <iomanip>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "hclust/clustering.hpp"
#include "hclust/experiments.hpp"
#include "hclust/io.hpp"
#include "hclust/spectral.hpp"
#include "hclust/svg.hpp"
#include "hclust/synthetic.hpp"

namespace fs = std::filesystem;
using namespace hclust;
using io::json;

namespace {

constexpr const char* version = "1.0.0";

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Flags shared by the subcommands; unset optionals fall back to the config.
struct Flags {
    std::string config;
    std::optional<std::uint64_t> seed;
    std::optional<double> scale;
    std::optional<int> dim;
    std::optional<int> degree;
    std::optional<double> accept, reject, min_norm, angular_tolerance;
    std::optional<std::size_t> k_hint;
    std::string directions;
    std::optional<std::string> out;
    std::string input;

    std::optional<std::string> sampler;
    std::optional<std::size_t> n, n_sphere, n_circle, n_each;
    std::optional<double> noise;
    std::optional<bool> asymmetric;

    std::string scales;
    std::optional<std::size_t> n_eigenvectors, k;
    bool normalized = false;
    std::optional<std::string> solver;
};

std::vector<double> parse_list(const std::string& text) {
    std::vector<double> out;
    std::stringstream ss(text);
    std::string cell;
    while (std::getline(ss, cell, ',')) {
        if (cell.find_first_not_of(" \t") == std::string::npos) continue;
        std::size_t used = 0;
        double x = 0;
        try {
            x = std::stod(cell, &used);
        } catch (const std::exception&) {
            throw UsageError("bad number \"" + cell + "\"");
        }
        if (cell.find_first_not_of(" \t", used) != std::string::npos) throw UsageError("bad number \"" + cell + "\"");
        out.push_back(x);
    }
    return out;
}

std::vector<std::vector<double>> parse_directions(const std::string& text) {
    std::vector<std::vector<double>> out;
    std::stringstream ss(text);
    std::string vec;
    while (std::getline(ss, vec, ';')) {
        auto v = parse_list(vec);
        if (v.empty()) continue;
        if (!out.empty() && v.size() != out.front().size())
            throw UsageError("directions must all have the same length");
        out.push_back(std::move(v));
    }
    return out;
}

ExperimentConfig load_config(const Flags& f) {
    ExperimentConfig c;
    if (!f.config.empty()) c = ExperimentConfig::from_json(io::read_json(f.config));
    if (f.seed) c.seed = *f.seed;
    if (f.scale) c.complex.scale = *f.scale;
    if (f.dim) c.complex.max_dim = *f.dim;
    if (f.degree) c.degree = *f.degree;
    if (f.accept) c.clustering.accept = *f.accept;
    if (f.reject) c.clustering.reject = *f.reject;
    if (f.min_norm) c.clustering.min_norm = *f.min_norm;
    if (f.angular_tolerance) c.clustering.angular_tolerance = *f.angular_tolerance;
    if (f.k_hint) c.clustering.k_hint = *f.k_hint;
    if (!f.directions.empty()) c.clustering.directions = parse_directions(f.directions);
    if (f.out) c.output = *f.out;
    if (f.sampler) c.sampler.name = *f.sampler;
    if (f.n) c.sampler.n = *f.n;
    if (f.n_sphere) c.sampler.n_sphere = *f.n_sphere;
    if (f.n_circle) c.sampler.n_circle = *f.n_circle;
    if (f.n_each) c.sampler.n_each = *f.n_each;
    if (f.noise) c.sampler.noise = *f.noise;
    if (f.asymmetric) c.sampler.symmetric = !*f.asymmetric;
    if (!f.scales.empty()) c.complex.scales = parse_list(f.scales);
    if (f.n_eigenvectors) c.baseline.n_eigenvectors = *f.n_eigenvectors;
    if (f.k) c.baseline.k = *f.k;
    if (f.normalized) c.baseline.normalized = true;
    if (f.solver) {
        json s = {{"solver", {{"solver", *f.solver}}}};
        c.solver.solver = ExperimentConfig::from_json(s).solver.solver;
    }
    try {
        c.validate();
    } catch (const std::invalid_argument& e) {
        throw UsageError(e.what());
    }
    return c;
}

HarmonicOptions solver_options(const ExperimentConfig& c) {
    HarmonicOptions o = c.solver;
    o.seed = solver_seed(c.seed);
    return o;
}

void write_manifest(const fs::path& dir, const std::string& command, const std::vector<std::string>& args,
                    const ExperimentConfig& c, const std::vector<std::string>& outputs) {
    json m;
    m["command"] = command;
    m["arguments"] = args;
    m["seed"] = c.seed;
    m["config"] = c.to_json();
    m["versions"] = {{"hclust", version},
                     {"compiler", __VERSION__},
                     {"eigen", std::to_string(EIGEN_WORLD_VERSION) + "." + std::to_string(EIGEN_MAJOR_VERSION) + "." +
                                   std::to_string(EIGEN_MINOR_VERSION)},
                     {"openmp", _OPENMP}};
    m["outputs"] = outputs;
    io::write_json(dir / (command + ".manifest.json"), m);
}

io::ComplexFile load_complex(const std::string& path) {
    auto file = io::read_complex(path);
    const auto violations = validate(file.complex);
    if (!violations.empty())
        throw UsageError(path + " is not a valid complex (" + violations.front().message + "; run `hclust validate`)");
    return file;
}

std::string betti_text(const std::vector<std::size_t>& b) {
    std::string s = "(";
    for (std::size_t i = 0; i < b.size(); ++i) s += (i ? "," : "") + std::to_string(b[i]);
    return s + ")";
}

int cmd_generate(const Flags& f, const std::vector<std::string>& args) {
    const auto c = load_config(f);
    const fs::path dir = c.output;
    if (c.sampler.combinatorial()) {
        const auto complex = generate_complex(c.sampler);
        io::write_complex(dir / "complex.json", complex);
        std::cout << "flat torus: " << complex.size(0) << " vertices, " << complex.size(1) << " edges, "
                  << complex.size(2) << " triangles -> " << (dir / "complex.json").string() << '\n';
        write_manifest(dir, "generate", args, c, {"complex.json"});
        return 0;
    }
    const auto cloud = generate_cloud(c.sampler, c.seed);
    io::write_point_cloud(dir / "cloud.csv", cloud);
    std::cout << cloud.size() << " points -> " << (dir / "cloud.csv").string() << '\n';
    write_manifest(dir, "generate", args, c, {"cloud.csv"});
    return 0;
}

int cmd_build(const Flags& f, const std::vector<std::string>& args) {
    const auto c = load_config(f);
    if (!c.complex.scale) throw UsageError("build needs --scale (or complex.scale in the config)");
    const fs::path dir = c.output;
    const auto cloud = io::read_point_cloud(f.input);
    const auto complex = build_vietoris_rips(cloud, *c.complex.scale, c.complex.max_dim);
    auto betti = betti_numbers(complex);
    betti.resize(static_cast<std::size_t>(c.complex.max_dim) + 1, 0);
    io::write_complex(dir / "complex.json", complex, &cloud);

    json summary;
    summary["scale"] = *c.complex.scale;
    summary["max_dim"] = c.complex.max_dim;
    std::vector<std::size_t> sizes;
    for (int p = 0; p <= c.complex.max_dim; ++p) sizes.push_back(complex.size(p));
    summary["sizes"] = sizes;
    summary["betti"] = betti;
    io::write_json(dir / "summary.json", summary);

    std::cout << "scale " << *c.complex.scale << ", max_dim " << c.complex.max_dim << '\n';
    for (int p = 0; p <= c.complex.max_dim; ++p) std::cout << "  |K_" << p << "| = " << complex.size(p) << '\n';
    std::cout << "  betti " << betti_text(betti) << '\n';
    write_manifest(dir, "build", args, c, {"complex.json", "summary.json"});
    return 0;
}

int cmd_betti_scan(const Flags& f, const std::vector<std::string>& args) {
    const auto c = load_config(f);
    const fs::path dir = c.output;
    if (c.complex.scales.empty()) throw UsageError("betti-scan needs --scales (or complex.scales in the config)");
    const auto cloud = io::read_point_cloud(f.input);
    const auto rows = betti_scan(cloud, c.complex.scales, c.complex.max_dim, c.degree);

    std::cout << std::setw(10) << "scale";
    for (int p = 0; p <= c.complex.max_dim; ++p) std::cout << std::setw(10) << ("|K_" + std::to_string(p) + "|");
    for (int p = 0; p <= c.complex.max_dim; ++p) std::cout << std::setw(8) << ("b" + std::to_string(p));
    std::cout << '\n';
    json table = json::array();
    for (const auto& r : rows) {
        std::cout << std::setw(10) << r.scale;
        for (auto s : r.sizes) std::cout << std::setw(10) << s;
        for (auto b : r.betti) std::cout << std::setw(8) << b;
        if (r.stable) std::cout << "   * stable b" << c.degree;
        std::cout << '\n';
        table.push_back({{"scale", r.scale}, {"sizes", r.sizes}, {"betti", r.betti}, {"stable", r.stable}});
    }
    json doc;
    doc["degree"] = c.degree;
    doc["max_dim"] = c.complex.max_dim;
    doc["rows"] = std::move(table);
    if (!c.complex.target_betti.empty()) {
        const auto s = select_scale(rows, c.complex.target_betti);
        doc["target_betti"] = c.complex.target_betti;
        doc["selected_scale"] = s ? json(*s) : json(nullptr);
        std::cout << "target " << betti_text(c.complex.target_betti) << ": "
                  << (s ? "scale " + io::format_double(*s) : std::string("no scale matches")) << '\n';
    }
    io::write_json(dir / "betti_scan.json", doc);
    write_manifest(dir, "betti-scan", args, c, {"betti_scan.json"});
    return 0;
}

std::vector<std::string> write_cluster_outputs(const fs::path& dir, const SimplicialComplex& complex,
                                               const std::optional<PointCloud>& coords, int p, const ClusterRun& run) {
    std::vector<std::string> outputs = {"assignment.json", "basis.json", "embedding.csv", "embedding.svg"};
    io::write_json(dir / "assignment.json", io::assignment_to_json(run.assignment));
    io::write_json(dir / "basis.json", io::basis_to_json(run.basis));
    io::write_embedding_csv(dir / "embedding.csv", complex, run.embedding);
    io::write_text(dir / "embedding.svg",
                   svg::embedding_plot(run.embedding, run.assignment.labels, run.assignment.directions));
    if (run.subspaces) {
        io::write_json(dir / "subspaces.json", io::subspaces_to_json(*run.subspaces));
        outputs.push_back("subspaces.json");
    }
    if (coords) {
        io::write_text(dir / "clusters.svg", svg::complex_plot(complex, *coords, p, run.assignment.labels));
        outputs.push_back("clusters.svg");
    }
    return outputs;
}

void print_assignment(const ClusterAssignment& a) {
    const auto clusters = a.clusters();
    std::cout << clusters.size() << " clusters:";
    for (const auto& c : clusters) std::cout << ' ' << c.size();
    std::cout << ", " << a.unclustered_indices().size() << " unclustered\n";
}

int no_homology(int p) {
    std::cerr << "error: no degree-" << p << " homology (beta_" << p << " = 0); nothing to cluster\n";
    return 1;
}

int cmd_cluster(const Flags& f, const std::vector<std::string>& args) {
    const auto c = load_config(f);
    const fs::path dir = c.output;
    const auto file = load_complex(f.input);
    const int p = c.degree;
    if (p > file.complex.dimension() || betti(file.complex, p) == 0) return no_homology(p);
    const auto run = run_harmonic_clustering(file.complex, p, solver_options(c), c.clustering);
    std::cout << "beta_" << p << " = " << run.basis.dimension() << " (" << run.basis.solver << " solver";
    if (run.basis.spectral_gap) std::cout << ", spectral gap " << *run.basis.spectral_gap;
    std::cout << ")\n";
    print_assignment(run.assignment);
    auto outputs = write_cluster_outputs(dir, file.complex, file.coordinates, p, run);
    write_manifest(dir, "cluster", args, c, outputs);
    return 0;
}

int cmd_baseline(const Flags& f, const std::vector<std::string>& args) {
    const auto c = load_config(f);
    const fs::path dir = c.output;
    const auto file = load_complex(f.input);
    BaselineOptions bo;
    bo.normalized = c.baseline.normalized;
    const auto a = graph_spectral_clustering(file.complex, c.baseline.n_eigenvectors, c.baseline.k,
                                             baseline_seed(c.seed), bo);
    print_assignment(a);
    std::vector<std::string> outputs = {"baseline_assignment.json"};
    io::write_json(dir / "baseline_assignment.json", io::assignment_to_json(a));
    if (file.coordinates) {
        io::write_text(dir / "baseline.svg", svg::complex_plot(file.complex, *file.coordinates, 0, a.labels));
        outputs.push_back("baseline.svg");
    }
    write_manifest(dir, "baseline", args, c, outputs);
    return 0;
}

int cmd_validate(const Flags& f, const std::vector<std::string>& args) {
    const auto c = load_config(f);
    const auto file = io::read_complex(f.input);
    const auto violations = validate(file.complex);
    json doc = json::array();
    for (const auto& v : violations) {
        std::cout << to_string(v.kind) << ": " << v.message << '\n';
        doc.push_back({{"kind", to_string(v.kind)}, {"dimension", v.dimension}, {"simplex", v.simplex},
                       {"message", v.message}});
    }
    if (f.out) {
        io::write_json(fs::path(c.output) / "violations.json", doc);
        write_manifest(c.output, "validate", args, c, {"violations.json"});
    }
    if (violations.empty()) {
        std::cout << "valid\n";
        return 0;
    }
    std::cout << violations.size() << " violation(s)\n";
    return 1;
}

int cmd_run(const Flags& f, const std::vector<std::string>& args) {
    const auto c = load_config(f);
    const fs::path dir = c.output;
    const auto result = run_experiment(c);
    std::vector<std::string> outputs;
    if (result.cloud) {
        io::write_point_cloud(dir / "cloud.csv", *result.cloud);
        outputs.push_back("cloud.csv");
    }
    io::write_complex(dir / "complex.json", result.complex, result.cloud ? &*result.cloud : nullptr);
    outputs.push_back("complex.json");
    if (result.scale) std::cout << "scale " << *result.scale << '\n';
    std::cout << "betti " << betti_text(result.betti) << '\n';
    print_assignment(result.run.assignment);
    for (auto& o : write_cluster_outputs(dir, result.complex, result.cloud, c.degree, result.run))
        outputs.push_back(std::move(o));
    write_manifest(dir, "run", args, c, outputs);
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Harmonic clustering of simplicial complexes"};
    app.set_version_flag("--version", version);
    app.require_subcommand(1);
    Flags f;

    auto common = [&](CLI::App* sub) {
        sub->add_option("--config", f.config, "experiment config (JSON)")->check(CLI::ExistingFile);
        sub->add_option("--seed", f.seed, "random seed");
        sub->add_option("--out", f.out, "output directory");
    };
    auto clustering_flags = [&](CLI::App* sub) {
        sub->add_option("--degree", f.degree, "simplex dimension p to cluster");
        sub->add_option("--accept", f.accept, "projection needed onto the own subspace (default 0.98)");
        sub->add_option("--reject", f.reject, "projection allowed onto other subspaces (default 0.02)");
        sub->add_option("--min-norm", f.min_norm, "embedding norm below which simplices stay unclustered");
        sub->add_option("--angular-tolerance", f.angular_tolerance, "subspace detection tolerance (radians)");
        sub->add_option("--k", f.k_hint, "number of subspaces to detect");
        sub->add_option("--directions", f.directions, "manual subspace directions, e.g. \"1,0;0,1\"");
        sub->add_option("--solver", f.solver, "automatic, dense or iterative");
    };

    auto* gen = app.add_subcommand("generate", "sample a point cloud (or the flat torus complex)");
    common(gen);
    gen->add_option("--sampler", f.sampler, "wedge, chained_wedge, punctured_square, torus, two_spheres, flat_torus");
    gen->add_option("--n", f.n, "points (punctured_square, torus)");
    gen->add_option("--n-sphere", f.n_sphere, "sphere points (wedge samplers)");
    gen->add_option("--n-circle", f.n_circle, "points per circle (wedge samplers)");
    gen->add_option("--n-each", f.n_each, "points per sphere (two_spheres)");
    gen->add_option("--noise", f.noise, "radial noise amplitude");
    gen->add_flag("--asymmetric", f.asymmetric, "flat torus with one flipped diagonal");

    auto* build = app.add_subcommand("build", "Vietoris-Rips complex of a point cloud");
    common(build);
    build->add_option("cloud", f.input, "point cloud CSV")->required()->check(CLI::ExistingFile);
    build->add_option("--scale", f.scale, "VR scale");
    build->add_option("--dim", f.dim, "maximal simplex dimension");

    auto* scan = app.add_subcommand("betti-scan", "Betti numbers of VR complexes over a list of scales");
    common(scan);
    scan->add_option("cloud", f.input, "point cloud CSV")->required()->check(CLI::ExistingFile);
    scan->add_option("--scales", f.scales, "comma separated scales");
    scan->add_option("--dim", f.dim, "maximal simplex dimension");
    scan->add_option("--degree", f.degree, "degree whose stability is highlighted");

    auto* cluster = app.add_subcommand("cluster", "harmonic clustering of the p-simplices of a complex");
    common(cluster);
    cluster->add_option("complex", f.input, "complex JSON")->required()->check(CLI::ExistingFile);
    clustering_flags(cluster);

    auto* base = app.add_subcommand("baseline", "graph spectral clustering of the vertices");
    common(base);
    base->add_option("complex", f.input, "complex JSON")->required()->check(CLI::ExistingFile);
    base->add_option("--n", f.n_eigenvectors, "number of non-zero eigenvectors");
    base->add_option("--k", f.k, "number of clusters");
    base->add_flag("--normalized", f.normalized, "use the normalized graph Laplacian");

    auto* val = app.add_subcommand("validate", "check a complex file");
    common(val);
    val->add_option("complex", f.input, "complex JSON")->required()->check(CLI::ExistingFile);

    auto* run = app.add_subcommand("run", "whole experiment from a config: sample, scan, build, cluster");
    common(run);
    run->add_option("--scale", f.scale, "fixed VR scale instead of the scan");
    clustering_flags(run);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 1;
    }

    const std::vector<std::string> args(argv + 1, argv + argc);
    try {
        if (*gen) return cmd_generate(f, args);
        if (*build) return cmd_build(f, args);
        if (*scan) return cmd_betti_scan(f, args);
        if (*cluster) return cmd_cluster(f, args);
        if (*base) return cmd_baseline(f, args);
        if (*val) return cmd_validate(f, args);
        if (*run) return cmd_run(f, args);
    } catch (const KernelMismatchError& e) {
        std::cerr << "numerical failure: " << e.what() << '\n';
        return 2;
    } catch (const ConvergenceError& e) {
        std::cerr << "numerical failure: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 1;
}
