#include "hclust/complex.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace hclust {

namespace {

bool lex_less(std::span<const Vertex> a, std::span<const Vertex> b) {
    return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
}

std::vector<Vertex> sorted_checked(std::vector<Vertex> vertices) {
    if (vertices.empty()) throw ComplexError("simplex must have at least one vertex");
    std::sort(vertices.begin(), vertices.end());
    if (auto dup = std::adjacent_find(vertices.begin(), vertices.end()); dup != vertices.end())
        throw ComplexError("simplex has a repeated vertex " + std::to_string(*dup));
    return vertices;
}

std::string join(std::span<const Vertex> vs) {
    std::string out;
    for (std::size_t i = 0; i < vs.size(); ++i) {
        if (i) out += ',';
        out += std::to_string(vs[i]);
    }
    return out;
}

}  // namespace

Simplex::Simplex(std::vector<Vertex> vertices) : vertices_(sorted_checked(std::move(vertices))) {}

std::string Simplex::key() const { return join(vertices_); }

std::vector<SignedFace> faces(const Simplex& simplex) {
    std::vector<SignedFace> out;
    const auto vs = simplex.vertices();
    if (vs.size() < 2) return out;
    out.reserve(vs.size());
    for (std::size_t i = 0; i < vs.size(); ++i) {
        std::vector<Vertex> face;
        face.reserve(vs.size() - 1);
        for (std::size_t j = 0; j < vs.size(); ++j)
            if (j != i) face.push_back(vs[j]);
        out.push_back({Simplex(std::move(face)), (i % 2 == 0) ? 1 : -1});
    }
    return out;
}

std::string to_string(Violation::Kind kind) {
    switch (kind) {
        case Violation::Kind::malformed_simplex: return "malformed-simplex";
        case Violation::Kind::unsorted: return "unsorted";
        case Violation::Kind::duplicate: return "duplicate";
        case Violation::Kind::missing_face: return "missing-face";
        case Violation::Kind::non_positive_weight: return "non-positive-weight";
    }
    return "unknown";
}

SimplicialComplex SimplicialComplex::closure_of(const std::vector<std::vector<Vertex>>& simplices) {
    std::vector<std::vector<std::vector<Vertex>>> by_dim;
    for (const auto& raw : simplices) {
        const auto vs = sorted_checked(raw);
        if (vs.size() > 31) throw ComplexError("simplex dimension too large for closure");
        const std::uint32_t full = (1u << vs.size()) - 1;
        for (std::uint32_t mask = 1; mask <= full; ++mask) {
            std::vector<Vertex> face;
            for (std::size_t i = 0; i < vs.size(); ++i)
                if (mask & (1u << i)) face.push_back(vs[i]);
            const std::size_t p = face.size() - 1;
            if (by_dim.size() <= p) by_dim.resize(p + 1);
            by_dim[p].push_back(std::move(face));
        }
    }
    std::vector<std::vector<Vertex>> flat(by_dim.size());
    for (std::size_t p = 0; p < by_dim.size(); ++p) {
        auto& list = by_dim[p];
        std::sort(list.begin(), list.end());
        list.erase(std::unique(list.begin(), list.end()), list.end());
        for (const auto& s : list) flat[p].insert(flat[p].end(), s.begin(), s.end());
    }
    return from_canonical(std::move(flat));
}

SimplicialComplex SimplicialComplex::from_lists(std::vector<std::vector<std::vector<Vertex>>> by_dim) {
    SimplicialComplex out;
    out.flat_.resize(by_dim.size());
    out.weights_.resize(by_dim.size());
    for (std::size_t p = 0; p < by_dim.size(); ++p) {
        for (const auto& s : by_dim[p]) {
            if (s.size() != p + 1)
                throw ComplexError("simplex [" + join(s) + "] listed under dimension " + std::to_string(p));
            out.flat_[p].insert(out.flat_[p].end(), s.begin(), s.end());
        }
        out.weights_[p].assign(by_dim[p].size(), 1.0);
    }
    while (!out.flat_.empty() && out.flat_.back().empty()) {
        out.flat_.pop_back();
        out.weights_.pop_back();
    }
    return out;
}

SimplicialComplex SimplicialComplex::from_canonical(std::vector<std::vector<Vertex>> flat_by_dim) {
    SimplicialComplex out;
    out.flat_ = std::move(flat_by_dim);
    while (!out.flat_.empty() && out.flat_.back().empty()) out.flat_.pop_back();
    out.weights_.resize(out.flat_.size());
    for (std::size_t p = 0; p < out.flat_.size(); ++p) out.weights_[p].assign(out.flat_[p].size() / (p + 1), 1.0);
    return out;
}

void SimplicialComplex::ensure_dimension(int p) {
    if (static_cast<int>(flat_.size()) <= p) {
        flat_.resize(p + 1);
        weights_.resize(p + 1);
    }
}

void SimplicialComplex::insert(std::vector<Vertex> vertices) {
    const auto vs = sorted_checked(std::move(vertices));
    if (vs.size() > 31) throw ComplexError("simplex dimension too large");
    const std::uint32_t full = (1u << vs.size()) - 1;
    std::vector<Vertex> face;
    for (std::uint32_t mask = 1; mask <= full; ++mask) {
        face.clear();
        for (std::size_t i = 0; i < vs.size(); ++i)
            if (mask & (1u << i)) face.push_back(vs[i]);
        const int p = static_cast<int>(face.size()) - 1;
        ensure_dimension(p);
        const std::size_t stride = p + 1;
        const std::size_t count = flat_[p].size() / stride;
        std::size_t lo = 0, hi = count;
        while (lo < hi) {
            const std::size_t mid = (lo + hi) / 2;
            if (lex_less(simplex(p, mid), face)) lo = mid + 1;
            else hi = mid;
        }
        if (lo < count && std::ranges::equal(simplex(p, lo), face)) continue;
        flat_[p].insert(flat_[p].begin() + lo * stride, face.begin(), face.end());
        weights_[p].insert(weights_[p].begin() + lo, 1.0);
    }
}

int SimplicialComplex::dimension() const { return static_cast<int>(flat_.size()) - 1; }

std::size_t SimplicialComplex::size(int p) const {
    if (p < 0 || p >= static_cast<int>(flat_.size())) return 0;
    return flat_[p].size() / (p + 1);
}

std::span<const Vertex> SimplicialComplex::simplex(int p, std::size_t index) const {
    const std::size_t stride = p + 1;
    return std::span<const Vertex>(flat_[p]).subspan(index * stride, stride);
}

Simplex SimplicialComplex::simplex_at(int p, std::size_t index) const {
    const auto s = simplex(p, index);
    return Simplex(std::vector<Vertex>(s.begin(), s.end()));
}

std::optional<std::size_t> SimplicialComplex::index_of(std::span<const Vertex> sorted_vertices) const {
    const int p = static_cast<int>(sorted_vertices.size()) - 1;
    const std::size_t count = size(p);
    std::size_t lo = 0, hi = count;
    while (lo < hi) {
        const std::size_t mid = (lo + hi) / 2;
        if (lex_less(simplex(p, mid), sorted_vertices)) lo = mid + 1;
        else hi = mid;
    }
    if (lo < count && std::ranges::equal(simplex(p, lo), sorted_vertices)) return lo;
    return std::nullopt;
}

std::span<const Vertex> SimplicialComplex::flat(int p) const {
    if (p < 0 || p >= static_cast<int>(flat_.size())) return {};
    return flat_[p];
}

std::span<const double> SimplicialComplex::weights(int p) const {
    if (p < 0 || p >= static_cast<int>(weights_.size())) return {};
    return weights_[p];
}

void SimplicialComplex::set_weight(int p, std::size_t index, double w) { weights_.at(p).at(index) = w; }

void SimplicialComplex::set_weight(const Simplex& simplex, double w) {
    const auto idx = index_of(simplex.vertices());
    if (!idx) throw ComplexError("no simplex [" + simplex.key() + "] in complex");
    set_weight(simplex.dimension(), *idx, w);
}

bool SimplicialComplex::has_unit_weights() const {
    for (const auto& ws : weights_)
        for (double w : ws)
            if (w != 1.0) return false;
    return true;
}

InnerProduct SimplicialComplex::inner_product(int p) const {
    InnerProduct ip;
    ip.degree = p;
    const auto ws = weights(p);
    ip.diagonal.reserve(ws.size());
    for (double w : ws) ip.diagonal.push_back(w * w);
    return ip;
}

std::vector<Vertex> SimplicialComplex::vertex_ids() const {
    const auto f = flat(0);
    return {f.begin(), f.end()};
}

std::vector<Violation> validate(const SimplicialComplex& complex) {
    std::vector<Violation> out;
    std::vector<std::set<std::vector<Vertex>>> present(complex.dimension() + 1);
    for (int p = 0; p <= complex.dimension(); ++p) {
        for (std::size_t i = 0; i < complex.size(p); ++i) {
            const auto s = complex.simplex(p, i);
            std::vector<Vertex> vs(s.begin(), s.end());
            if (!std::is_sorted(vs.begin(), vs.end()) ||
                std::adjacent_find(vs.begin(), vs.end()) != vs.end()) {
                out.push_back({Violation::Kind::malformed_simplex, p, vs,
                               "vertices of [" + join(vs) + "] are not strictly increasing"});
            } else if (i > 0) {
                const auto prev = complex.simplex(p, i - 1);
                if (std::ranges::equal(prev, s))
                    out.push_back({Violation::Kind::duplicate, p, vs, "[" + join(vs) + "] listed twice"});
                else if (!lex_less(prev, s))
                    out.push_back({Violation::Kind::unsorted, p, vs,
                                   "[" + join(vs) + "] out of lexicographic order"});
            }
            if (!(complex.weight(p, i) > 0.0))
                out.push_back({Violation::Kind::non_positive_weight, p, vs,
                               "[" + join(vs) + "] has weight " + std::to_string(complex.weight(p, i))});
            present[p].insert(std::move(vs));
        }
    }
    for (int p = 1; p <= complex.dimension(); ++p) {
        std::set<std::vector<Vertex>> reported;
        for (const auto& vs : present[p]) {
            for (std::size_t i = 0; i < vs.size(); ++i) {
                std::vector<Vertex> face;
                for (std::size_t j = 0; j < vs.size(); ++j)
                    if (j != i) face.push_back(vs[j]);
                std::sort(face.begin(), face.end());
                if (!present[p - 1].contains(face) && reported.insert(face).second)
                    out.push_back({Violation::Kind::missing_face, p - 1, face,
                                   "face [" + join(face) + "] of [" + join(vs) + "] is missing"});
            }
        }
    }
    return out;
}

SimplicialComplex canonicalize(const SimplicialComplex& complex) {
    std::vector<std::vector<Vertex>> all;
    std::map<std::vector<Vertex>, double> weights;
    for (int p = 0; p <= complex.dimension(); ++p) {
        for (std::size_t i = 0; i < complex.size(p); ++i) {
            const auto s = complex.simplex(p, i);
            std::vector<Vertex> vs(s.begin(), s.end());
            std::sort(vs.begin(), vs.end());
            weights[vs] = complex.weight(p, i);
            all.push_back(std::move(vs));
        }
    }
    auto out = SimplicialComplex::closure_of(all);
    for (const auto& [vs, w] : weights) out.set_weight(Simplex(vs), w);
    return out;
}

}  // namespace hclust
