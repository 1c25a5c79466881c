#include "hclust/kernels.hpp"

#include <algorithm>
#include <cmath>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace hclust::kernels {

namespace {

inline double row_dot(std::span<const std::size_t> row_ptr, std::span<const std::uint32_t> col_idx,
                      std::span<const double> values, std::span<const double> x, std::size_t row) {
    double sum = 0.0;
    for (std::size_t k = row_ptr[row]; k < row_ptr[row + 1]; ++k) sum += values[k] * x[col_idx[k]];
    return sum;
}

std::vector<std::uint32_t> neighbors_of(std::span<const double> coords, std::size_t dim, std::size_t n,
                                        double scale, std::size_t i) {
    std::vector<std::uint32_t> out;
    const double s2 = scale * scale;
    const double* pi = coords.data() + i * dim;
    for (std::size_t j = i + 1; j < n; ++j) {
        const double* pj = coords.data() + j * dim;
        double d2 = 0.0;
        for (std::size_t c = 0; c < dim; ++c) {
            const double d = pi[c] - pj[c];
            d2 += d * d;
        }
        if (d2 <= s2) out.push_back(static_cast<std::uint32_t>(j));
    }
    return out;
}

// Depth-first expansion of all cliques whose smallest vertex is `root`.
void expand(const std::vector<std::vector<std::uint32_t>>& upper, std::size_t max_size,
            std::vector<std::uint32_t>& clique, const std::vector<std::uint32_t>& candidates,
            std::vector<std::vector<std::uint32_t>>& out) {
    const std::size_t k = clique.size();
    out[k - 1].insert(out[k - 1].end(), clique.begin(), clique.end());
    if (k == max_size) return;
    std::vector<std::uint32_t> next;
    for (std::uint32_t u : candidates) {
        next.clear();
        if (k + 1 < max_size) {
            const auto& nu = upper[u];
            std::set_intersection(candidates.begin(), candidates.end(), nu.begin(), nu.end(),
                                  std::back_inserter(next));
        }
        clique.push_back(u);
        expand(upper, max_size, clique, next, out);
        clique.pop_back();
    }
}

std::vector<std::vector<std::uint32_t>> cliques_from(const std::vector<std::vector<std::uint32_t>>& upper,
                                                     std::size_t max_size, std::size_t root) {
    std::vector<std::vector<std::uint32_t>> out(max_size);
    std::vector<std::uint32_t> clique{static_cast<std::uint32_t>(root)};
    expand(upper, max_size, clique, upper[root], out);
    return out;
}

inline void project_row(std::span<const double> points, std::span<const double> directions, std::size_t dim,
                        double min_norm, std::span<double> out, std::size_t i) {
    const std::size_t k = directions.size() / dim;
    const double* x = points.data() + i * dim;
    double norm2 = 0.0;
    for (std::size_t c = 0; c < dim; ++c) norm2 += x[c] * x[c];
    const double norm = std::sqrt(norm2);
    for (std::size_t j = 0; j < k; ++j) {
        if (norm < min_norm || norm == 0.0) {
            out[i * k + j] = -1.0;
            continue;
        }
        const double* d = directions.data() + j * dim;
        double dot = 0.0;
        for (std::size_t c = 0; c < dim; ++c) dot += x[c] * d[c];
        out[i * k + j] = std::abs(dot) / norm;
    }
}

}  // namespace

int max_threads() {
#ifdef _OPENMP
    return omp_get_max_threads();
#else
    return 1;
#endif
}

void spmv_serial(std::span<const std::size_t> row_ptr, std::span<const std::uint32_t> col_idx,
                 std::span<const double> values, std::span<const double> x, std::span<double> y) {
    const std::size_t rows = row_ptr.size() - 1;
    for (std::size_t r = 0; r < rows; ++r) y[r] = row_dot(row_ptr, col_idx, values, x, r);
}

void spmv_parallel(std::span<const std::size_t> row_ptr, std::span<const std::uint32_t> col_idx,
                   std::span<const double> values, std::span<const double> x, std::span<double> y) {
    const auto rows = static_cast<std::int64_t>(row_ptr.size() - 1);
#pragma omp parallel for schedule(static) if (rows > 4096)
    for (std::int64_t r = 0; r < rows; ++r) y[r] = row_dot(row_ptr, col_idx, values, x, static_cast<std::size_t>(r));
}

std::vector<std::vector<std::uint32_t>> upper_neighbors_serial(std::span<const double> coords, std::size_t dim,
                                                               double scale) {
    const std::size_t n = dim ? coords.size() / dim : 0;
    std::vector<std::vector<std::uint32_t>> out(n);
    for (std::size_t i = 0; i < n; ++i) out[i] = neighbors_of(coords, dim, n, scale, i);
    return out;
}

std::vector<std::vector<std::uint32_t>> upper_neighbors_parallel(std::span<const double> coords, std::size_t dim,
                                                                 double scale) {
    const std::size_t n = dim ? coords.size() / dim : 0;
    std::vector<std::vector<std::uint32_t>> out(n);
#pragma omp parallel for schedule(dynamic, 16)
    for (std::int64_t i = 0; i < static_cast<std::int64_t>(n); ++i)
        out[i] = neighbors_of(coords, dim, n, scale, static_cast<std::size_t>(i));
    return out;
}

std::vector<std::vector<std::uint32_t>> cliques_serial(const std::vector<std::vector<std::uint32_t>>& upper,
                                                       std::size_t max_size) {
    std::vector<std::vector<std::uint32_t>> out(max_size);
    if (max_size == 0) return out;
    for (std::size_t v = 0; v < upper.size(); ++v) {
        std::vector<std::uint32_t> clique{static_cast<std::uint32_t>(v)};
        expand(upper, max_size, clique, upper[v], out);
    }
    return out;
}

std::vector<std::vector<std::uint32_t>> cliques_parallel(const std::vector<std::vector<std::uint32_t>>& upper,
                                                         std::size_t max_size) {
    std::vector<std::vector<std::uint32_t>> out(max_size);
    if (max_size == 0) return out;
    const std::size_t n = upper.size();
    std::vector<std::vector<std::vector<std::uint32_t>>> per_root(n);
#pragma omp parallel for schedule(dynamic, 8)
    for (std::int64_t v = 0; v < static_cast<std::int64_t>(n); ++v)
        per_root[v] = cliques_from(upper, max_size, static_cast<std::size_t>(v));
    // Concatenating in root order reproduces the serial lexicographic order.
    for (std::size_t k = 0; k < max_size; ++k) {
        std::size_t total = 0;
        for (const auto& r : per_root) total += r[k].size();
        out[k].reserve(total);
        for (const auto& r : per_root) out[k].insert(out[k].end(), r[k].begin(), r[k].end());
    }
    return out;
}

void projection_norms_serial(std::span<const double> points, std::span<const double> directions, std::size_t dim,
                             double min_norm, std::span<double> out) {
    const std::size_t n = points.size() / dim;
    for (std::size_t i = 0; i < n; ++i) project_row(points, directions, dim, min_norm, out, i);
}

void projection_norms_parallel(std::span<const double> points, std::span<const double> directions,
                               std::size_t dim, double min_norm, std::span<double> out) {
    const auto n = static_cast<std::int64_t>(points.size() / dim);
#pragma omp parallel for schedule(static) if (n > 4096)
    for (std::int64_t i = 0; i < n; ++i)
        project_row(points, directions, dim, min_norm, out, static_cast<std::size_t>(i));
}

}  // namespace hclust::kernels
