#pragma once

#include <string>
#include <vector>

#include "hclust/clustering.hpp"
#include "hclust/complex.hpp"
#include "hclust/synthetic.hpp"

namespace hclust::svg {

/// Fixed palette, cycled by label; `unclustered` maps to gray.
std::string color(int label);

/// Scatter of im psi colored by label. One dimension: value against simplex
/// index. Two: the plane. Three or more: the (1,2), (1,3) and (2,3)
/// coordinate-plane projections side by side. Detected directions, when
/// given, are drawn as lines through the origin.
std::string embedding_plot(const Embedding& embedding, const std::vector<int>& labels,
                           const std::vector<std::vector<double>>& directions = {});

/// The point cloud with the p-simplices of the complex drawn in label colors
/// (vertices as dots, edges as segments, triangles as filled polygons),
/// unclustered ones in gray. Three-dimensional clouds are shown in the xz
/// plane with a slight oblique offset along y.
std::string complex_plot(const SimplicialComplex& complex, const PointCloud& coordinates, int p,
                         const std::vector<int>& labels);

}  // namespace hclust::svg
