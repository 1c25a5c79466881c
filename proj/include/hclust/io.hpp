#pragma once

#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>

#include <json.hpp>

#include "hclust/clustering.hpp"
#include "hclust/complex.hpp"
#include "hclust/eigensolver.hpp"
#include "hclust/spectral.hpp"
#include "hclust/synthetic.hpp"

namespace hclust::io {

using json = nlohmann::ordered_json;

class FormatError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A complex as read from disk, with the point coordinates it was built from
/// when the file carries them.
struct ComplexFile {
    SimplicialComplex complex;
    std::optional<PointCloud> coordinates;
};

/// {"dimensions": {"0": [[v],...], ...}, "weights": {"u,v": w, ...},
///  "coordinates": [[x,y,z], ...]}. Only non-unit weights are written;
/// coordinates are indexed by vertex id.
json complex_to_json(const SimplicialComplex& complex, const PointCloud* coordinates = nullptr);

/// Stores the lists verbatim (no closure, no sorting) so that validate()
/// sees the file as written. Throws FormatError on structural problems.
ComplexFile complex_from_json(const json& doc);

void write_complex(const std::filesystem::path& path, const SimplicialComplex& complex,
                   const PointCloud* coordinates = nullptr);
ComplexFile read_complex(const std::filesystem::path& path);

/// One point per row, comma separated, no header.
void write_point_cloud(const std::filesystem::path& path, const PointCloud& cloud);
PointCloud read_point_cloud(const std::filesystem::path& path);

json assignment_to_json(const ClusterAssignment& assignment);
json basis_to_json(const HarmonicBasis& basis);
json report_to_json(const SpectralReport& report);
json subspaces_to_json(const SubspaceSet& subspaces);

/// Header "index,vertices,psi_1,..."; vertices space separated.
void write_embedding_csv(const std::filesystem::path& path, const SimplicialComplex& complex,
                         const Embedding& embedding);

/// Two-space indented dump with a trailing newline.
void write_json(const std::filesystem::path& path, const json& doc);
json read_json(const std::filesystem::path& path);
void write_text(const std::filesystem::path& path, const std::string& text);

/// Shortest round-trip decimal form ("%.17g" trimmed).
std::string format_double(double x);

}  // namespace hclust::io
