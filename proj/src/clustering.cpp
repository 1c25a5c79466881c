#include "hclust/clustering.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <numeric>

#include <Eigen/Dense>

#include "hclust/kernels.hpp"
#include "hclust/laplacian.hpp"
#include "hclust/random.hpp"

namespace hclust {

namespace {

void canonical_sign(std::vector<double>& d) {
    for (double x : d) {
        if (std::abs(x) > 1e-12) {
            if (x < 0)
                for (double& y : d) y = -y;
            return;
        }
    }
}

std::vector<double> normalized(std::span<const double> v) {
    double n = 0.0;
    for (double x : v) n += x * x;
    n = std::sqrt(n);
    std::vector<double> out(v.begin(), v.end());
    if (n > 0)
        for (double& x : out) x /= n;
    return out;
}

double abs_dot(const double* a, const double* b, std::size_t dim) {
    double s = 0.0;
    for (std::size_t c = 0; c < dim; ++c) s += a[c] * b[c];
    return std::abs(s);
}

// Principal direction of a set of unit vectors (sign-insensitive mean).
std::vector<double> principal_direction(const std::vector<double>& units, std::size_t dim,
                                        const std::vector<std::size_t>& members) {
    Eigen::MatrixXd scatter = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(dim), static_cast<Eigen::Index>(dim));
    for (std::size_t i : members) {
        Eigen::Map<const Eigen::VectorXd> u(units.data() + i * dim, static_cast<Eigen::Index>(dim));
        scatter += u * u.transpose();
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(scatter);
    const Eigen::VectorXd top = es.eigenvectors().col(static_cast<Eigen::Index>(dim) - 1);
    std::vector<double> d(top.data(), top.data() + dim);
    canonical_sign(d);
    return d;
}

}  // namespace

double Embedding::norm(std::size_t i) const {
    double s = 0.0;
    for (double x : point(i)) s += x * x;
    return std::sqrt(s);
}

Embedding harmonic_embedding(const SimplicialComplex& complex, int p, const HarmonicBasis& basis) {
    if (basis.degree != p) throw ClusteringError("harmonic basis degree does not match");
    if (basis.vectors.empty()) throw ClusteringError("no harmonic structure to embed (beta_" + std::to_string(p) + " = 0)");
    const std::size_t n = complex.size(p);
    const auto w = complex.weights(p);
    Embedding e;
    e.degree = p;
    e.dim = basis.vectors.size();
    e.coords.resize(n * e.dim);
    for (std::size_t i = 0; i < e.dim; ++i) {
        if (basis.vectors[i].size() != n) throw ClusteringError("harmonic basis does not match the complex");
        for (std::size_t j = 0; j < n; ++j) e.coords[j * e.dim + i] = w[j] * w[j] * basis.vectors[i][j];
    }
    return e;
}

double default_min_norm(const Embedding& embedding) {
    std::vector<double> norms(embedding.size());
    for (std::size_t i = 0; i < norms.size(); ++i) norms[i] = embedding.norm(i);
    if (norms.empty()) return 0.0;
    const auto mid = norms.begin() + static_cast<std::ptrdiff_t>(norms.size() / 2);
    std::nth_element(norms.begin(), mid, norms.end());
    double median = *mid;
    if (norms.size() % 2 == 0) {
        const double lower = *std::max_element(norms.begin(), mid);
        median = 0.5 * (median + lower);
    }
    return 0.02 * median;
}

std::vector<std::vector<double>> SubspaceSet::directions() const {
    std::vector<std::vector<double>> out;
    for (const auto& s : subspaces) out.push_back(s.direction);
    return out;
}

SubspaceSet detect_subspaces(const Embedding& embedding, const SubspaceOptions& options) {
    const std::size_t dim = embedding.dim;
    SubspaceSet result;
    result.dim = dim;
    result.min_norm = options.min_norm ? *options.min_norm : default_min_norm(embedding);
    if (embedding.size() == 0 || dim == 0) throw ClusteringError("empty embedding");

    std::vector<double> units;
    for (std::size_t i = 0; i < embedding.size(); ++i) {
        const double n = embedding.norm(i);
        if (n < result.min_norm || n == 0.0) continue;
        for (double x : embedding.point(i)) units.push_back(x / n);
    }
    const std::size_t total = units.size() / dim;
    result.considered = total;
    if (total == 0) throw ClusteringError("no embedded point has norm above min_norm");

    const double cos_tol = std::cos(options.angular_tolerance);
    const double min_sep = 2.0 * options.angular_tolerance;
    const double min_mass = options.stop_fraction * static_cast<double>(total);
    std::vector<std::size_t> remaining(total);
    std::iota(remaining.begin(), remaining.end(), 0);

    auto inliers_of = [&](const double* dir, const std::vector<std::size_t>& pool) {
        std::vector<std::size_t> in;
        for (std::size_t i : pool)
            if (abs_dot(units.data() + i * dim, dir, dim) >= cos_tol) in.push_back(i);
        return in;
    };

    std::vector<Subspace> found;
    std::size_t attempts = 0;
    while (!remaining.empty() && attempts++ < 64) {
        if (options.k_hint && found.size() >= *options.k_hint) break;
        if (!options.k_hint && static_cast<double>(remaining.size()) < min_mass) break;

        const std::size_t stride = std::max<std::size_t>(1, remaining.size() / options.max_candidates);
        std::vector<std::size_t> candidates;
        for (std::size_t c = 0; c < remaining.size(); c += stride) candidates.push_back(remaining[c]);
        std::vector<std::size_t> scores(candidates.size(), 0);
#pragma omp parallel for schedule(dynamic, 16)
        for (std::int64_t c = 0; c < static_cast<std::int64_t>(candidates.size()); ++c) {
            const double* dir = units.data() + candidates[c] * dim;
            std::size_t s = 0;
            for (std::size_t i : remaining)
                if (abs_dot(units.data() + i * dim, dir, dim) >= cos_tol) ++s;
            scores[c] = s;
        }
        const auto best = static_cast<std::size_t>(std::max_element(scores.begin(), scores.end()) - scores.begin());
        if (scores[best] == 0) break;
        if (!options.k_hint && static_cast<double>(scores[best]) < min_mass) break;

        auto members = inliers_of(units.data() + candidates[best] * dim, remaining);
        std::vector<double> dir;
        for (int refine = 0; refine < 3; ++refine) {
            dir = principal_direction(units, dim, members);
            auto next = inliers_of(dir.data(), remaining);
            if (next.empty()) break;
            if (next == members) break;
            members = std::move(next);
        }
        if (members.empty()) members = inliers_of(units.data() + candidates[best] * dim, remaining);

        bool separated = true;
        for (const auto& f : found)
            if (std::acos(std::min(1.0, abs_dot(f.direction.data(), dir.data(), dim))) < min_sep) separated = false;

        std::vector<char> drop(total, 0);
        for (std::size_t i : members) drop[i] = 1;
        if (members.empty()) drop[candidates[best]] = 1;
        std::erase_if(remaining, [&](std::size_t i) { return drop[i] != 0; });
        if (!separated) continue;

        Subspace s;
        s.direction = std::move(dir);
        found.push_back(std::move(s));
    }

    // Final statistics against all considered points.
    std::vector<std::size_t> all(total);
    std::iota(all.begin(), all.end(), 0);
    for (auto& s : found) {
        const auto in = inliers_of(s.direction.data(), all);
        s.inliers = in.size();
        double spread = 0.0;
        for (std::size_t i : in) spread += std::acos(std::min(1.0, abs_dot(units.data() + i * dim, s.direction.data(), dim)));
        s.angular_spread = in.empty() ? 0.0 : spread / static_cast<double>(in.size());
    }
    std::stable_sort(found.begin(), found.end(), [](const Subspace& a, const Subspace& b) {
        if (a.inliers != b.inliers) return a.inliers > b.inliers;
        return a.direction < b.direction;
    });
    result.subspaces = std::move(found);
    return result;
}

std::vector<std::vector<std::size_t>> ClusterAssignment::clusters() const {
    std::vector<std::vector<std::size_t>> out(cluster_count);
    for (std::size_t i = 0; i < labels.size(); ++i)
        if (labels[i] != unclustered) out[static_cast<std::size_t>(labels[i])].push_back(i);
    return out;
}

std::vector<std::size_t> ClusterAssignment::unclustered_indices() const {
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < labels.size(); ++i)
        if (labels[i] == unclustered) out.push_back(i);
    return out;
}

ClusterAssignment assign_clusters(const Embedding& embedding, const std::vector<std::vector<double>>& directions,
                                  const AssignmentThresholds& thresholds) {
    if (!(thresholds.accept > 0 && thresholds.accept < 1 && thresholds.reject > 0 && thresholds.reject < 1 &&
          thresholds.accept > thresholds.reject))
        throw std::invalid_argument("thresholds must satisfy 0 < reject < accept < 1");
    const std::size_t dim = embedding.dim;
    const std::size_t k = directions.size();
    ClusterAssignment out;
    out.degree = embedding.degree;
    out.thresholds = thresholds;
    out.cluster_count = k;
    std::vector<double> dirs;
    for (const auto& d : directions) {
        if (d.size() != dim) throw std::invalid_argument("direction dimension does not match the embedding");
        auto u = normalized(d);
        out.directions.push_back(u);
        dirs.insert(dirs.end(), u.begin(), u.end());
    }
    const std::size_t n = embedding.size();
    out.labels.assign(n, unclustered);
    if (k == 0) return out;

    std::vector<double> between(k * k);
    for (std::size_t a = 0; a < k; ++a)
        for (std::size_t b = 0; b < k; ++b) between[a * k + b] = abs_dot(dirs.data() + a * dim, dirs.data() + b * dim, dim);

    std::vector<double> proj(n * k);
    kernels::projection_norms_parallel(embedding.coords, dirs, dim, thresholds.min_norm, proj);
    for (std::size_t i = 0; i < n; ++i) {
        const double* row = proj.data() + i * k;
        if (row[0] < 0) continue;  // below min_norm
        const std::size_t best = static_cast<std::size_t>(std::max_element(row, row + k) - row);
        if (row[best] < thresholds.accept) continue;
        bool ok = true;
        for (std::size_t j = 0; j < k && ok; ++j)
            if (j != best && row[j] >= between[best * k + j] + thresholds.reject) ok = false;
        if (ok) out.labels[i] = static_cast<int>(best);
    }
    return out;
}

KMeansResult kmeans(std::span<const double> points, std::size_t dim, std::size_t k, std::uint64_t seed,
                    std::size_t restarts, int max_iterations) {
    const std::size_t n = dim ? points.size() / dim : 0;
    if (k == 0 || k > n) throw std::invalid_argument("k-means needs 1 <= k <= number of points");
    restarts = std::clamp<std::size_t>(restarts, 1, 100);

    auto dist2 = [&](std::size_t i, const double* c) {
        double s = 0.0;
        for (std::size_t d = 0; d < dim; ++d) {
            const double t = points[i * dim + d] - c[d];
            s += t * t;
        }
        return s;
    };

    KMeansResult best;
    best.inertia = std::numeric_limits<double>::infinity();
    for (std::size_t r = 0; r < restarts; ++r) {
        Rng rng(mix_seed(seed, r));
        std::vector<double> centers;
        centers.reserve(k * dim);
        const std::size_t first = rng.below(n);
        centers.insert(centers.end(), points.begin() + first * dim, points.begin() + (first + 1) * dim);
        std::vector<double> d2(n, std::numeric_limits<double>::infinity());
        while (centers.size() < k * dim) {
            const double* last = centers.data() + centers.size() - dim;
            double total = 0.0;
            for (std::size_t i = 0; i < n; ++i) {
                d2[i] = std::min(d2[i], dist2(i, last));
                total += d2[i];
            }
            std::size_t pick = 0;
            if (total <= 0.0) {
                pick = rng.below(n);
            } else {
                double target = rng.uniform() * total;
                for (pick = 0; pick + 1 < n; ++pick) {
                    target -= d2[pick];
                    if (target < 0) break;
                }
            }
            centers.insert(centers.end(), points.begin() + pick * dim, points.begin() + (pick + 1) * dim);
        }

        std::vector<int> labels(n, -1);
        double inertia = 0.0;
        for (int it = 0; it < max_iterations; ++it) {
            bool changed = false;
            inertia = 0.0;
            for (std::size_t i = 0; i < n; ++i) {
                int arg = 0;
                double bd = dist2(i, centers.data());
                for (std::size_t c = 1; c < k; ++c) {
                    const double d = dist2(i, centers.data() + c * dim);
                    if (d < bd) {
                        bd = d;
                        arg = static_cast<int>(c);
                    }
                }
                inertia += bd;
                if (labels[i] != arg) {
                    labels[i] = arg;
                    changed = true;
                }
            }
            if (!changed) break;
            std::vector<double> sums(k * dim, 0.0);
            std::vector<std::size_t> counts(k, 0);
            for (std::size_t i = 0; i < n; ++i) {
                ++counts[labels[i]];
                for (std::size_t d = 0; d < dim; ++d) sums[labels[i] * dim + d] += points[i * dim + d];
            }
            for (std::size_t c = 0; c < k; ++c) {
                if (counts[c] == 0) {
                    // Re-seed an empty cluster at the point farthest from its center.
                    std::size_t far = 0;
                    double fd = -1.0;
                    for (std::size_t i = 0; i < n; ++i) {
                        const double d = dist2(i, centers.data() + labels[i] * dim);
                        if (d > fd) {
                            fd = d;
                            far = i;
                        }
                    }
                    std::copy_n(points.begin() + far * dim, dim, centers.begin() + c * dim);
                    labels[far] = static_cast<int>(c);
                    continue;
                }
                for (std::size_t d = 0; d < dim; ++d) centers[c * dim + d] = sums[c * dim + d] / counts[c];
            }
        }
        if (inertia < best.inertia) {
            best.inertia = inertia;
            best.labels = labels;
            best.centroids = centers;
            best.best_restart = r;
        }
    }

    // Renumber by first appearance.
    std::vector<int> remap(k, -1);
    int next = 0;
    for (int& l : best.labels) {
        if (remap[l] < 0) remap[l] = next++;
        l = remap[l];
    }
    std::vector<double> c2(best.centroids.size(), 0.0);
    for (std::size_t c = 0; c < k; ++c)
        if (remap[c] >= 0) std::copy_n(best.centroids.begin() + c * dim, dim, c2.begin() + remap[c] * dim);
    best.centroids = std::move(c2);
    return best;
}

namespace {

std::vector<int> cluster_connected(const std::vector<std::size_t>& vertices,
                                   const std::vector<std::pair<std::size_t, std::size_t>>& edges,
                                   std::size_t n_eigenvectors, std::size_t k, std::uint64_t seed,
                                   const BaselineOptions& options) {
    const std::size_t m = vertices.size();
    if (k <= 1 || m <= 1) return std::vector<int>(m, 0);
    k = std::min(k, m);
    std::map<std::size_t, std::size_t> local;
    for (std::size_t i = 0; i < m; ++i) local[vertices[i]] = i;
    std::vector<double> degree(m, 0.0);
    std::vector<CsrMatrix::Triplet> t;
    for (const auto& [a, b] : edges) {
        const auto ia = local.find(a), ib = local.find(b);
        if (ia == local.end() || ib == local.end()) continue;
        t.push_back({ia->second, ib->second, -1.0});
        t.push_back({ib->second, ia->second, -1.0});
        degree[ia->second] += 1;
        degree[ib->second] += 1;
    }
    for (std::size_t i = 0; i < m; ++i) t.push_back({i, i, degree[i]});
    CsrMatrix lap = CsrMatrix::from_triplets(m, m, std::move(t));
    if (options.normalized) {
        std::vector<double> s(m);
        for (std::size_t i = 0; i < m; ++i) s[i] = 1.0 / std::sqrt(degree[i]);
        lap = lap.scaled(s, s);
    }
    const std::size_t count = std::min(n_eigenvectors, m - 1);
    LowSpectrumOptions lo;
    lo.seed = seed;
    const SpectralReport rep = low_spectrum(lap, std::max<std::size_t>(count, 1), true, lo);
    const std::size_t dim = rep.eigenvectors.size();
    std::vector<double> pts(m * dim);
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t d = 0; d < dim; ++d) pts[i * dim + d] = rep.eigenvectors[d][i];
    return kmeans(pts, dim, k, seed, options.restarts, options.max_iterations).labels;
}

}  // namespace

ClusterAssignment graph_spectral_clustering(const SimplicialComplex& complex, std::size_t n_eigenvectors,
                                            std::size_t k, std::uint64_t seed, const BaselineOptions& options) {
    if (k == 0) throw std::invalid_argument("k must be at least 1");
    if (n_eigenvectors == 0) throw std::invalid_argument("need at least one eigenvector");
    const std::size_t n = complex.size(0);
    ClusterAssignment out;
    out.degree = 0;
    out.labels.assign(n, 0);
    if (n == 0) return out;

    std::vector<std::pair<std::size_t, std::size_t>> edges;
    std::vector<std::size_t> parent(n);
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](std::size_t x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    };
    for (std::size_t e = 0; e < complex.size(1); ++e) {
        const auto s = complex.simplex(1, e);
        const auto a = *complex.index_of(s.subspan(0, 1));
        const auto b = *complex.index_of(s.subspan(1, 1));
        edges.emplace_back(a, b);
        parent[find(a)] = find(b);
    }
    std::map<std::size_t, std::vector<std::size_t>> by_root;
    for (std::size_t v = 0; v < n; ++v) by_root[find(v)].push_back(v);
    std::vector<std::vector<std::size_t>> comps;
    for (auto& [root, vs] : by_root) comps.push_back(std::move(vs));
    std::stable_sort(comps.begin(), comps.end(), [](const auto& a, const auto& b) {
        if (a.size() != b.size()) return a.size() > b.size();
        return a.front() < b.front();
    });

    const std::size_t c = comps.size();
    std::vector<std::size_t> share(c, 1);
    if (k < c) {
        for (std::size_t i = 0; i < c; ++i)
            for (std::size_t v : comps[i]) out.labels[v] = static_cast<int>(std::min(i, k - 1));
    } else {
        for (std::size_t extra = k - c; extra > 0; --extra) {
            std::size_t pick = 0;
            double best = -1.0;
            for (std::size_t i = 0; i < c; ++i) {
                const double ratio = static_cast<double>(comps[i].size()) / static_cast<double>(share[i]);
                if (share[i] < comps[i].size() && ratio > best) {
                    best = ratio;
                    pick = i;
                }
            }
            if (best < 0) break;
            ++share[pick];
        }
        int offset = 0;
        for (std::size_t i = 0; i < c; ++i) {
            const auto local =
                cluster_connected(comps[i], edges, n_eigenvectors, share[i], mix_seed(seed, i), options);
            int top = 0;
            for (std::size_t j = 0; j < comps[i].size(); ++j) {
                out.labels[comps[i][j]] = offset + local[j];
                top = std::max(top, local[j] + 1);
            }
            offset += top;
        }
    }

    // Number clusters by their smallest vertex.
    std::map<int, int> remap;
    int next = 0;
    for (int& l : out.labels) {
        auto [it, inserted] = remap.try_emplace(l, next);
        if (inserted) ++next;
        l = it->second;
    }
    out.cluster_count = static_cast<std::size_t>(next);
    return out;
}

}  // namespace hclust
