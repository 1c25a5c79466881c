#include "hclust/io.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <sstream>

namespace hclust::io {

namespace {

std::ofstream open_out(const std::filesystem::path& path) {
    if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + path.string());
    return out;
}

std::ifstream open_in(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot read " + path.string());
    return in;
}

std::vector<Vertex> parse_key(const std::string& key) {
    std::vector<Vertex> out;
    std::stringstream ss(key);
    std::string part;
    while (std::getline(ss, part, ',')) {
        Vertex v{};
        const auto* end = part.data() + part.size();
        const auto [ptr, ec] = std::from_chars(part.data(), end, v);
        if (ec != std::errc() || ptr != end) throw FormatError("bad simplex key \"" + key + "\"");
        out.push_back(v);
    }
    if (out.empty()) throw FormatError("empty simplex key");
    return out;
}

std::string join_vertices(std::span<const Vertex> vs, char sep) {
    std::string s;
    for (std::size_t i = 0; i < vs.size(); ++i) {
        if (i) s += sep;
        s += std::to_string(vs[i]);
    }
    return s;
}

}  // namespace

std::string format_double(double x) {
    char buf[64];
    const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, x);
    if (ec != std::errc()) return "nan";
    return std::string(buf, ptr);
}

json complex_to_json(const SimplicialComplex& complex, const PointCloud* coordinates) {
    json doc;
    json dims = json::object();
    json weights = json::object();
    for (int p = 0; p <= complex.dimension(); ++p) {
        json list = json::array();
        for (std::size_t i = 0; i < complex.size(p); ++i) {
            const auto s = complex.simplex(p, i);
            list.push_back(std::vector<Vertex>(s.begin(), s.end()));
            const double w = complex.weight(p, i);
            if (w != 1.0) weights[join_vertices(s, ',')] = w;
        }
        dims[std::to_string(p)] = std::move(list);
    }
    doc["dimensions"] = std::move(dims);
    if (!weights.empty()) doc["weights"] = std::move(weights);
    if (coordinates) {
        json pts = json::array();
        for (std::size_t i = 0; i < coordinates->size(); ++i) {
            const auto pt = coordinates->point(i);
            pts.push_back(std::vector<double>(pt.begin(), pt.end()));
        }
        doc["coordinates"] = std::move(pts);
    }
    return doc;
}

ComplexFile complex_from_json(const json& doc) {
    if (!doc.is_object() || !doc.contains("dimensions") || !doc["dimensions"].is_object())
        throw FormatError("complex file needs a \"dimensions\" object");
    std::vector<std::vector<std::vector<Vertex>>> by_dim;
    for (const auto& [key, list] : doc["dimensions"].items()) {
        int p = -1;
        const auto [ptr, ec] = std::from_chars(key.data(), key.data() + key.size(), p);
        if (ec != std::errc() || ptr != key.data() + key.size() || p < 0)
            throw FormatError("dimension key \"" + key + "\" is not a non-negative integer");
        if (!list.is_array()) throw FormatError("dimension " + key + " must be an array of simplices");
        if (by_dim.size() <= static_cast<std::size_t>(p)) by_dim.resize(p + 1);
        for (const auto& s : list) {
            if (!s.is_array()) throw FormatError("simplex entries must be arrays of vertex ids");
            std::vector<Vertex> vs;
            for (const auto& v : s) {
                if (!v.is_number_integer() || v.get<std::int64_t>() < 0 ||
                    v.get<std::int64_t>() > std::numeric_limits<Vertex>::max())
                    throw FormatError("vertex ids must be non-negative integers");
                vs.push_back(v.get<Vertex>());
            }
            by_dim[p].push_back(std::move(vs));
        }
    }

    ComplexFile out;
    try {
        out.complex = SimplicialComplex::from_lists(by_dim);
    } catch (const ComplexError& e) {
        throw FormatError(e.what());
    }

    if (doc.contains("weights")) {
        if (!doc["weights"].is_object()) throw FormatError("\"weights\" must be an object");
        for (const auto& [key, w] : doc["weights"].items()) {
            if (!w.is_number()) throw FormatError("weight of \"" + key + "\" is not a number");
            auto vs = parse_key(key);
            std::sort(vs.begin(), vs.end());
            const int p = static_cast<int>(vs.size()) - 1;
            bool found = false;
            for (std::size_t i = 0; i < out.complex.size(p) && !found; ++i) {
                auto s = out.complex.simplex(p, i);
                std::vector<Vertex> sorted(s.begin(), s.end());
                std::sort(sorted.begin(), sorted.end());
                if (sorted == vs) {
                    out.complex.set_weight(p, i, w.get<double>());
                    found = true;
                }
            }
            if (!found) throw FormatError("weight given for absent simplex \"" + key + "\"");
        }
    }

    if (doc.contains("coordinates")) {
        const auto& pts = doc["coordinates"];
        if (!pts.is_array()) throw FormatError("\"coordinates\" must be an array of points");
        PointCloud cloud;
        cloud.dim = pts.empty() ? 3 : pts[0].size();
        for (const auto& pt : pts) {
            if (!pt.is_array() || pt.size() != cloud.dim) throw FormatError("coordinates have inconsistent dimension");
            for (const auto& x : pt) cloud.coords.push_back(x.get<double>());
        }
        out.coordinates = std::move(cloud);
    }
    return out;
}

void write_complex(const std::filesystem::path& path, const SimplicialComplex& complex,
                   const PointCloud* coordinates) {
    write_json(path, complex_to_json(complex, coordinates));
}

ComplexFile read_complex(const std::filesystem::path& path) { return complex_from_json(read_json(path)); }

void write_point_cloud(const std::filesystem::path& path, const PointCloud& cloud) {
    auto out = open_out(path);
    for (std::size_t i = 0; i < cloud.size(); ++i) {
        const auto pt = cloud.point(i);
        for (std::size_t d = 0; d < pt.size(); ++d) out << (d ? "," : "") << format_double(pt[d]);
        out << '\n';
    }
}

PointCloud read_point_cloud(const std::filesystem::path& path) {
    auto in = open_in(path);
    PointCloud cloud;
    cloud.dim = 0;
    std::string line;
    std::size_t row = 0;
    while (std::getline(in, line)) {
        ++row;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        std::vector<double> values;
        std::stringstream ss(line);
        std::string cell;
        while (std::getline(ss, cell, ',')) {
            const auto first = cell.find_first_not_of(" \t");
            const auto last = cell.find_last_not_of(" \t");
            if (first == std::string::npos) throw FormatError("empty cell on row " + std::to_string(row));
            const std::string trimmed = cell.substr(first, last - first + 1);
            std::size_t used = 0;
            double x = 0;
            try {
                x = std::stod(trimmed, &used);
            } catch (const std::exception&) {
                used = 0;
            }
            if (used != trimmed.size() || !std::isfinite(x))
                throw FormatError("bad number \"" + trimmed + "\" on row " + std::to_string(row));
            values.push_back(x);
        }
        if (cloud.dim == 0) cloud.dim = values.size();
        if (values.size() != cloud.dim) throw FormatError("row " + std::to_string(row) + " has the wrong arity");
        cloud.coords.insert(cloud.coords.end(), values.begin(), values.end());
    }
    if (cloud.dim == 0) cloud.dim = 3;
    return cloud;
}

json assignment_to_json(const ClusterAssignment& assignment) {
    json doc;
    doc["degree"] = assignment.degree;
    doc["clusters"] = assignment.clusters();
    doc["unclustered"] = assignment.unclustered_indices();
    doc["directions"] = assignment.directions;
    doc["thresholds"] = {{"accept", assignment.thresholds.accept},
                         {"reject", assignment.thresholds.reject},
                         {"min_norm", assignment.thresholds.min_norm}};
    return doc;
}

json basis_to_json(const HarmonicBasis& basis) {
    json doc;
    doc["degree"] = basis.degree;
    doc["dimension"] = basis.dimension();
    doc["solver"] = basis.solver;
    doc["iterations"] = basis.iterations;
    doc["largest_eigenvalue"] = basis.largest_eigenvalue;
    doc["kernel_threshold"] = basis.kernel_threshold;
    doc["spectral_gap"] = basis.spectral_gap ? json(*basis.spectral_gap) : json(nullptr);
    doc["residuals"] = basis.residuals;
    doc["vectors"] = basis.vectors;
    return doc;
}

json report_to_json(const SpectralReport& report) {
    json doc;
    doc["eigenvalues"] = report.eigenvalues;
    doc["residuals"] = report.residuals;
    doc["converged"] = report.converged;
    doc["iterations"] = report.iterations;
    doc["matvecs"] = report.matvecs;
    doc["eigenvectors"] = report.eigenvectors;
    return doc;
}

json subspaces_to_json(const SubspaceSet& subspaces) {
    json doc;
    doc["dimension"] = subspaces.dim;
    doc["min_norm"] = subspaces.min_norm;
    doc["considered"] = subspaces.considered;
    json list = json::array();
    for (const auto& s : subspaces.subspaces)
        list.push_back({{"direction", s.direction}, {"inliers", s.inliers}, {"angular_spread", s.angular_spread}});
    doc["subspaces"] = std::move(list);
    return doc;
}

void write_embedding_csv(const std::filesystem::path& path, const SimplicialComplex& complex,
                         const Embedding& embedding) {
    if (embedding.size() != complex.size(embedding.degree))
        throw std::invalid_argument("embedding does not match the complex");
    auto out = open_out(path);
    out << "index,vertices";
    for (std::size_t i = 0; i < embedding.dim; ++i) out << ",psi_" << i + 1;
    out << '\n';
    for (std::size_t j = 0; j < embedding.size(); ++j) {
        out << j << ',' << join_vertices(complex.simplex(embedding.degree, j), ' ');
        for (double x : embedding.point(j)) out << ',' << format_double(x);
        out << '\n';
    }
}

void write_json(const std::filesystem::path& path, const json& doc) {
    auto out = open_out(path);
    out << doc.dump(2) << '\n';
}

json read_json(const std::filesystem::path& path) {
    auto in = open_in(path);
    try {
        return json::parse(in);
    } catch (const json::parse_error& e) {
        throw FormatError(path.string() + ": " + e.what());
    }
}

void write_text(const std::filesystem::path& path, const std::string& text) {
    auto out = open_out(path);
    out << text;
}

}  // namespace hclust::io
