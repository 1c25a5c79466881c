#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <sys/wait.h>

#include "hclust/experiments.hpp"
#include "hclust/io.hpp"

using namespace hclust;
namespace fs = std::filesystem;

namespace {

const fs::path root = fs::temp_directory_path() / "hclust_test_cli";

int run(const std::string& args) {
    const std::string cmd = std::string(HCLUST_CLI_PATH) + " " + args + " >/dev/null 2>&1";
    const int status = std::system(cmd.c_str());
    return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

std::string dir(const std::string& name) {
    const auto d = root / name;
    fs::remove_all(d);
    return d.string();
}

}  // namespace

TEST_CASE("usage errors exit with 1") {
    CHECK(run("") == 1);
    CHECK(run("frobnicate") == 1);
    CHECK(run("cluster /nonexistent/complex.json") == 1);
    CHECK(run("generate --sampler cube --out " + dir("bad_sampler")) == 1);
    CHECK(run("generate --noise -1 --out " + dir("bad_noise")) == 1);
    CHECK(run("--help") == 0);
}

TEST_CASE("flat torus through the CLI gives three clusters of nine edges") {
    const auto out = dir("flat_torus");
    REQUIRE(run("generate --sampler flat_torus --out " + out) == 0);
    REQUIRE(fs::exists(fs::path(out) / "complex.json"));
    CHECK(fs::exists(fs::path(out) / "generate.manifest.json"));
    CHECK(run("validate " + out + "/complex.json") == 0);

    const auto c1 = dir("flat_torus_cluster");
    REQUIRE(run("cluster " + out + "/complex.json --degree 1 --seed 5 --out " + c1) == 0);
    const auto doc = io::read_json(fs::path(c1) / "assignment.json");
    REQUIRE(doc["clusters"].size() == 3);
    for (const auto& c : doc["clusters"]) CHECK(c.size() == 9);
    CHECK(doc["unclustered"].empty());
    for (const char* f : {"basis.json", "embedding.csv", "embedding.svg", "subspaces.json", "cluster.manifest.json"})
        CHECK(fs::exists(fs::path(c1) / f));

    const auto manifest = io::read_json(fs::path(c1) / "cluster.manifest.json");
    CHECK(manifest["command"] == "cluster");
    CHECK(manifest["seed"] == 5);
    CHECK(manifest.contains("versions"));

    // the same invocation reproduces the JSON byte for byte
    const auto c2 = dir("flat_torus_cluster_again");
    REQUIRE(run("cluster " + out + "/complex.json --degree 1 --seed 5 --out " + c2) == 0);
    CHECK(slurp(fs::path(c1) / "assignment.json") == slurp(fs::path(c2) / "assignment.json"));
    CHECK(slurp(fs::path(c1) / "embedding.csv") == slurp(fs::path(c2) / "embedding.csv"));

    // the CLI output matches the library pipeline
    ExperimentConfig config;
    config.sampler.name = "flat_torus";
    config.seed = 5;
    const auto lib = run_experiment(config);
    CHECK(io::assignment_to_json(lib.run.assignment) == doc);
}

TEST_CASE("clustering a degree without homology is an error") {
    const auto out = dir("flat_torus_p0");
    REQUIRE(run("generate --sampler flat_torus --out " + out) == 0);
    CHECK(run("cluster " + out + "/complex.json --degree 0 --out " + out + "/c0") == 0);
    CHECK(run("cluster " + out + "/complex.json --degree 3 --out " + out + "/c3") == 1);

    // a filled triangle has no 1-dimensional homology
    const auto tri = fs::path(dir("filled")) / "complex.json";
    io::write_text(tri, R"({"dimensions": {"0": [[0],[1],[2]], "1": [[0,1],[0,2],[1,2]], "2": [[0,1,2]]}})");
    CHECK(run("cluster " + tri.string() + " --degree 1 --out " + tri.parent_path().string()) == 1);
    CHECK_FALSE(fs::exists(tri.parent_path() / "assignment.json"));
}

TEST_CASE("validate reports invalid complexes") {
    const auto bad = fs::path(dir("invalid")) / "complex.json";
    io::write_text(bad, R"({"dimensions": {"0": [[0],[1]], "1": [[0,1],[1,2]]}})");
    CHECK(run("validate " + bad.string()) == 1);
    CHECK(run("validate " + bad.string() + " --out " + bad.parent_path().string()) == 1);
    const auto v = io::read_json(bad.parent_path() / "violations.json");
    CHECK(v.size() == 1);
    CHECK(run("cluster " + bad.string()) == 1);
}

TEST_CASE("point cloud pipeline: generate, scan, build, cluster, baseline") {
    const auto out = dir("pipeline");
    REQUIRE(run("generate --sampler punctured_square --n 300 --seed 3 --out " + out) == 0);
    const auto cloud = io::read_point_cloud(fs::path(out) / "cloud.csv");
    CHECK(cloud.size() == 300);
    CHECK(cloud.dim == 2);

    REQUIRE(run("betti-scan " + out + "/cloud.csv --scales 0.05,0.1,0.15 --dim 2 --out " + out) == 0);
    const auto scan = io::read_json(fs::path(out) / "betti_scan.json");
    CHECK(scan["rows"].size() == 3);

    CHECK(run("build " + out + "/cloud.csv --dim 2 --out " + out) == 1);  // no scale
    REQUIRE(run("build " + out + "/cloud.csv --scale 0.12 --dim 2 --out " + out) == 0);
    const auto file = io::read_complex(fs::path(out) / "complex.json");
    CHECK(file.coordinates.has_value());
    const auto summary = io::read_json(fs::path(out) / "summary.json");
    CHECK(summary["betti"].size() == 3);
    CHECK(summary["betti"][0] == betti(file.complex, 0));

    if (betti(file.complex, 1) > 0) {
        REQUIRE(run("cluster " + out + "/complex.json --out " + out + "/cluster") == 0);
        CHECK(fs::exists(fs::path(out) / "cluster" / "clusters.svg"));
    }
    REQUIRE(run("baseline " + out + "/complex.json --k 2 --n 2 --out " + out + "/baseline") == 0);
    const auto base = io::read_json(fs::path(out) / "baseline" / "baseline_assignment.json");
    CHECK(base["degree"] == 0);
    CHECK(base["clusters"].size() == 2);
}

TEST_CASE("manual directions and config files") {
    const auto out = dir("manual");
    REQUIRE(run("generate --sampler flat_torus --out " + out) == 0);
    CHECK(run("cluster " + out + "/complex.json --directions \"1,0;0\" --out " + out + "/m") == 1);
    const auto cfg = fs::path(out) / "config.json";
    io::write_text(cfg, R"({"sampler": {"name": "flat_torus"}, "clustering": {"k_hint": 3}, "seed": 4})");
    REQUIRE(run("run --config " + cfg.string() + " --out " + out + "/run") == 0);
    const auto doc = io::read_json(fs::path(out) / "run" / "assignment.json");
    CHECK(doc["clusters"].size() == 3);
    CHECK(io::read_json(fs::path(out) / "run" / "run.manifest.json")["config"]["seed"] == 4);

    io::write_text(cfg, R"({"sampler": {"name": "flat_torus"}, "typo": 1})");
    CHECK(run("run --config " + cfg.string() + " --out " + out + "/run2") == 1);
}
