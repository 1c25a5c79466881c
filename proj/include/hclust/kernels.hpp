#pragma once

// Data-parallel inner loops. Each kernel has a serial reference that the
// tests compare against bit for bit and the benchmark times against.

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace hclust::kernels {

// CSR mat-vec y = A x.
void spmv_serial(std::span<const std::size_t> row_ptr, std::span<const std::uint32_t> col_idx,
                 std::span<const double> values, std::span<const double> x, std::span<double> y);
void spmv_parallel(std::span<const std::size_t> row_ptr, std::span<const std::uint32_t> col_idx,
                   std::span<const double> values, std::span<const double> x, std::span<double> y);

/// Upper neighbor lists of the proximity graph: for every point i, the
/// indices j > i with |p_i - p_j| <= scale, ascending. `coords` is row-major
/// with `dim` columns.
std::vector<std::vector<std::uint32_t>> upper_neighbors_serial(std::span<const double> coords, std::size_t dim,
                                                               double scale);
std::vector<std::vector<std::uint32_t>> upper_neighbors_parallel(std::span<const double> coords, std::size_t dim,
                                                                 double scale);

/// Cliques of the proximity graph with at most max_size vertices, grouped
/// by size and sorted lexicographically. Entry k-1 is the flat array of
/// k-cliques (stride k).
std::vector<std::vector<std::uint32_t>> cliques_serial(const std::vector<std::vector<std::uint32_t>>& upper,
                                                       std::size_t max_size);
std::vector<std::vector<std::uint32_t>> cliques_parallel(const std::vector<std::vector<std::uint32_t>>& upper,
                                                         std::size_t max_size);

/// Projection of unit-normalized rows onto each unit direction:
/// out[i * k + j] = |<u_i, d_j>| with u_i = x_i / |x_i|, or -1 when
/// |x_i| < min_norm. `points` is row-major n x dim, `directions` k x dim.
void projection_norms_serial(std::span<const double> points, std::span<const double> directions, std::size_t dim,
                             double min_norm, std::span<double> out);
void projection_norms_parallel(std::span<const double> points, std::span<const double> directions,
                               std::size_t dim, double min_norm, std::span<double> out);

int max_threads();

}  // namespace hclust::kernels
