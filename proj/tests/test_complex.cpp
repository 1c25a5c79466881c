#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>

#include "hclust/complex.hpp"
#include "support.hpp"

using namespace hclust;

namespace {

std::vector<std::vector<Vertex>> listing(const SimplicialComplex& k, int p) {
    std::vector<std::vector<Vertex>> out;
    for (std::size_t i = 0; i < k.size(p); ++i) {
        const auto s = k.simplex(p, i);
        out.emplace_back(s.begin(), s.end());
    }
    return out;
}

std::size_t count_kind(const std::vector<Violation>& vs, Violation::Kind kind) {
    return static_cast<std::size_t>(
        std::count_if(vs.begin(), vs.end(), [&](const Violation& v) { return v.kind == kind; }));
}

}  // namespace

TEST_CASE("simplex is stored in sorted order") {
    const Simplex s{2, 0, 1};
    CHECK(std::vector<Vertex>(s.vertices().begin(), s.vertices().end()) == std::vector<Vertex>{0, 1, 2});
    CHECK(s.dimension() == 2);
    CHECK(s.key() == "0,1,2");
    CHECK_THROWS_AS(Simplex(std::vector<Vertex>{}), ComplexError);
    CHECK_THROWS_AS((Simplex{1, 1}), ComplexError);
}

TEST_CASE("insert closes a triangle") {
    SimplicialComplex k;
    k.insert({0, 1, 2});
    CHECK(listing(k, 0) == std::vector<std::vector<Vertex>>{{0}, {1}, {2}});
    CHECK(listing(k, 1) == std::vector<std::vector<Vertex>>{{0, 1}, {0, 2}, {1, 2}});
    CHECK(listing(k, 2) == std::vector<std::vector<Vertex>>{{0, 1, 2}});
    CHECK(k.dimension() == 2);
}

TEST_CASE("insert canonicalizes and is idempotent") {
    SimplicialComplex k;
    k.insert({1, 0});
    CHECK(listing(k, 1) == std::vector<std::vector<Vertex>>{{0, 1}});
    k.insert({0, 1});
    CHECK(k.size(1) == 1);
    CHECK(k.size(0) == 2);
    CHECK_THROWS_AS(k.insert({3, 3}), ComplexError);
    CHECK_THROWS_AS(k.insert({}), ComplexError);
}

TEST_CASE("faces carry alternating signs") {
    const auto f1 = faces(Simplex{0, 1});
    REQUIRE(f1.size() == 2);
    CHECK(f1[0].face == Simplex{1});
    CHECK(f1[0].sign == 1);
    CHECK(f1[1].face == Simplex{0});
    CHECK(f1[1].sign == -1);

    const auto f2 = faces(Simplex{0, 1, 2});
    REQUIRE(f2.size() == 3);
    CHECK(f2[0].face == Simplex{1, 2});
    CHECK(f2[0].sign == 1);
    CHECK(f2[1].face == Simplex{0, 2});
    CHECK(f2[1].sign == -1);
    CHECK(f2[2].face == Simplex{0, 1});
    CHECK(f2[2].sign == 1);

    CHECK(faces(Simplex{5}).empty());
}

TEST_CASE("validate reports missing faces and bad weights") {
    SimplicialComplex tri;
    tri.insert({0, 1, 2});
    CHECK(validate(tri).empty());

    const auto bare = SimplicialComplex::from_lists({{}, {{0, 1}}});
    const auto vs = validate(bare);
    CHECK(vs.size() == 2);
    CHECK(count_kind(vs, Violation::Kind::missing_face) == 2);
    std::vector<std::vector<Vertex>> missing;
    for (const auto& v : vs) missing.push_back(v.simplex);
    std::sort(missing.begin(), missing.end());
    CHECK(missing == std::vector<std::vector<Vertex>>{{0}, {1}});

    SimplicialComplex weighted = tri;
    weighted.set_weight(Simplex{0, 2}, 0.0);
    const auto wv = validate(weighted);
    REQUIRE(wv.size() == 1);
    CHECK(wv[0].kind == Violation::Kind::non_positive_weight);
}

TEST_CASE("validate reports unsorted, duplicate and malformed input") {
    const auto unsorted = SimplicialComplex::from_lists({{{1}, {0}}});
    CHECK(count_kind(validate(unsorted), Violation::Kind::unsorted) >= 1);

    const auto dup = SimplicialComplex::from_lists({{{0}, {0}}});
    CHECK(count_kind(validate(dup), Violation::Kind::duplicate) >= 1);

    const auto malformed = SimplicialComplex::from_lists({{{0}, {1}}, {{1, 0}}});
    CHECK(count_kind(validate(malformed), Violation::Kind::malformed_simplex) >= 1);

    CHECK_THROWS_AS(SimplicialComplex::from_lists({{{0, 1}}}), ComplexError);
}

TEST_CASE("canonicalize repairs verbatim input") {
    const auto raw = SimplicialComplex::from_lists({{{2}}, {{1, 2}, {0, 1}, {0, 1}}});
    const auto fixed = canonicalize(raw);
    CHECK(validate(fixed).empty());
    CHECK(listing(fixed, 0) == std::vector<std::vector<Vertex>>{{0}, {1}, {2}});
    CHECK(listing(fixed, 1) == std::vector<std::vector<Vertex>>{{0, 1}, {1, 2}});
}

TEST_CASE("index lookup, weights and inner product") {
    SimplicialComplex k;
    k.insert({0, 1, 2});
    k.insert({2, 3});
    const std::vector<Vertex> e{1, 2};
    REQUIRE(k.index_of(e).has_value());
    CHECK(*k.index_of(e) == 2);
    const std::vector<Vertex> absent{0, 3};
    CHECK_FALSE(k.index_of(absent).has_value());
    CHECK(k.has_unit_weights());
    k.set_weight(Simplex{0, 1}, 2.0);
    CHECK_FALSE(k.has_unit_weights());
    const auto ip = k.inner_product(1);
    CHECK(ip.degree == 1);
    CHECK(ip.diagonal == std::vector<double>{4.0, 1.0, 1.0, 1.0});
    CHECK_THROWS_AS(k.set_weight(Simplex{0, 3}, 1.0), ComplexError);
    CHECK(k.size(7) == 0);
    CHECK(SimplicialComplex().dimension() == -1);
    CHECK(k.vertex_ids() == std::vector<Vertex>{0, 1, 2, 3});
}

TEST_CASE("property: every face of a valid complex resolves to an index") {
    Rng rng(11);
    for (int trial = 0; trial < 200; ++trial) {
        const auto k = trial % 2 ? support::random_closed(rng) : support::random_vr(rng);
        REQUIRE(validate(k).empty());
        for (int p = 1; p <= k.dimension(); ++p)
            for (std::size_t i = 0; i < k.size(p); ++i)
                for (const auto& f : faces(k.simplex_at(p, i))) {
                    const auto idx = k.index_of(f.face.vertices());
                    REQUIRE(idx.has_value());
                    CHECK(*idx < k.size(p - 1));
                }
    }
}

TEST_CASE("property: basis order depends only on the simplex set") {
    Rng rng(12);
    for (int trial = 0; trial < 100; ++trial) {
        const auto k = support::random_closed(rng);
        std::vector<std::vector<Vertex>> all;
        for (int p = 0; p <= k.dimension(); ++p)
            for (auto& s : listing(k, p)) all.push_back(std::move(s));
        for (std::size_t i = all.size() - 1; i > 0; --i) std::swap(all[i], all[rng.below(i + 1)]);
        SimplicialComplex shuffled;
        for (auto s : all) {
            for (std::size_t i = s.size() - 1; i > 0; --i) std::swap(s[i], s[rng.below(i + 1)]);
            shuffled.insert(s);
        }
        REQUIRE(shuffled.dimension() == k.dimension());
        for (int p = 0; p <= k.dimension(); ++p) CHECK(listing(shuffled, p) == listing(k, p));
        CHECK(listing(SimplicialComplex::closure_of(all), k.dimension()) == listing(k, k.dimension()));
    }
}

TEST_CASE("property: insert then validate is always clean") {
    Rng rng(13);
    SimplicialComplex k;
    for (int step = 0; step < 300; ++step) {
        std::vector<Vertex> s;
        const std::size_t len = 1 + rng.below(4);
        while (s.size() < len) {
            const auto v = static_cast<Vertex>(rng.below(15));
            if (std::find(s.begin(), s.end(), v) == s.end()) s.push_back(v);
        }
        k.insert(s);
        if (step % 25 == 0) CHECK(validate(k).empty());
    }
    CHECK(validate(k).empty());
}
