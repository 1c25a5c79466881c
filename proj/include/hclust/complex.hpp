#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace hclust {

using Vertex = std::uint32_t;

class ComplexError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A simplex in canonical orientation: strictly increasing vertex ids.
class Simplex {
public:
    Simplex() = default;

    /// Sorts the input; throws ComplexError on an empty list or a repeated vertex.
    explicit Simplex(std::vector<Vertex> vertices);
    Simplex(std::initializer_list<Vertex> vertices) : Simplex(std::vector<Vertex>(vertices)) {}

    std::span<const Vertex> vertices() const { return vertices_; }
    int dimension() const { return static_cast<int>(vertices_.size()) - 1; }

    /// "u,v,w" -- the key used by the complex JSON weight map.
    std::string key() const;

    auto operator<=>(const Simplex&) const = default;
    bool operator==(const Simplex&) const = default;

private:
    std::vector<Vertex> vertices_;
};

struct SignedFace {
    Simplex face;
    int sign;  // (-1)^i for the face omitting vertex i
};

/// Faces of a simplex in the order i = 0..p, face i omitting vertex i.
/// A vertex has no faces.
std::vector<SignedFace> faces(const Simplex& simplex);

/// Gram matrix diagonal of the weighted inner product on C_p.
struct InnerProduct {
    int degree = 0;
    std::vector<double> diagonal;  // w(sigma)^2 in basis order
};

struct Violation {
    enum class Kind { malformed_simplex, unsorted, duplicate, missing_face, non_positive_weight };
    Kind kind;
    int dimension;
    std::vector<Vertex> simplex;
    std::string message;
};

std::string to_string(Violation::Kind kind);

/// Finite abstract simplicial complex. Within each dimension the simplices
/// are stored lexicographically sorted and indexed contiguously from 0, which
/// fixes the basis of every chain space.
///
/// Complexes assembled through insert() or the closure constructors always
/// satisfy the invariants. from_lists() stores its input verbatim so that
/// externally supplied data can be checked with validate().
class SimplicialComplex {
public:
    SimplicialComplex() = default;

    /// Downward closure of the given simplices.
    static SimplicialComplex closure_of(const std::vector<std::vector<Vertex>>& simplices);

    /// Verbatim storage of per-dimension simplex lists, no checks beyond shape.
    /// Entry p of `by_dim` holds the p-simplices.
    static SimplicialComplex from_lists(std::vector<std::vector<std::vector<Vertex>>> by_dim);

    /// Adopts per-dimension flat arrays (stride p+1) that the caller guarantees
    /// are canonical: sorted, unique, closed.
    static SimplicialComplex from_canonical(std::vector<std::vector<Vertex>> flat_by_dim);

    /// Inserts the simplex with all its faces. Idempotent. Throws ComplexError
    /// for an empty or repeated-vertex input.
    void insert(std::vector<Vertex> vertices);

    /// Highest p with a nonempty K_p, or -1 for the empty complex.
    int dimension() const;

    /// |K_p|; zero for p outside [0, dimension()].
    std::size_t size(int p) const;

    std::span<const Vertex> simplex(int p, std::size_t index) const;
    Simplex simplex_at(int p, std::size_t index) const;

    /// Basis index of a sorted vertex list in K_p, if present.
    std::optional<std::size_t> index_of(std::span<const Vertex> sorted_vertices) const;

    /// Flat storage for K_p, stride p+1.
    std::span<const Vertex> flat(int p) const;

    double weight(int p, std::size_t index) const { return weights_.at(p).at(index); }
    std::span<const double> weights(int p) const;
    void set_weight(int p, std::size_t index, double w);
    /// Throws ComplexError if the simplex is absent.
    void set_weight(const Simplex& simplex, double w);
    bool has_unit_weights() const;

    InnerProduct inner_product(int p) const;

    /// Vertex ids in K_0 order.
    std::vector<Vertex> vertex_ids() const;

private:
    void ensure_dimension(int p);

    std::vector<std::vector<Vertex>> flat_;      // per dimension, stride p+1
    std::vector<std::vector<double>> weights_;   // per dimension, parallel to flat_
};

/// Empty iff the complex is closed under faces, sorted, deduplicated and has
/// strictly positive weights.
std::vector<Violation> validate(const SimplicialComplex& complex);

/// Sorted, deduplicated and downward-closed copy; weights of surviving
/// simplices are preserved, added faces get weight 1.
SimplicialComplex canonicalize(const SimplicialComplex& complex);

}  // namespace hclust
