#include <doctest.h>

#include <algorithm>
#include <random>

#include "oracles.hpp"
#include "repfield/errors.hpp"
#include "repfield/lattices.hpp"
#include "repfield/orders.hpp"

using namespace repfield;

namespace {

Submodule rows(const ModulusRing& r, std::size_t n, std::vector<std::int64_t> e) {
    const std::size_t k = e.size() / n;
    return Submodule(ZMat(r, k, n, std::move(e)));
}

std::vector<ZMat> all_units(const ModulusRing& r, std::size_t n) {
    std::vector<ZMat> g;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) g.push_back(matrix_unit(r, n, i, j));
    return g;
}

}  // namespace

TEST_CASE("colength classes") {
    const ModulusRing r(2, 1);
    CHECK(colength_class(Submodule::full(r, 4)).value == 0);
    CHECK(colength_class(rows(r, 4, {1, 0, 0, 0, 0, 1, 0, 0})).value == 2);
    CHECK(colength_class(rows(r, 4, {1, 0, 0, 0})).value == 3);
    CHECK(colength_class(rows(r, 4, {1, 0, 0, 0}), 3) == DistanceClass{3, 0});
}

TEST_CASE("colength is stable under homothety") {
    std::mt19937_64 rng(3);
    const ModulusRing r(3, 3);
    for (int i = 0; i < 30; ++i) {
        // a module inside p^0 .. p^1 so that p L still fits
        const Submodule l(oracle::random_rows(rng, r.with_precision(2), 2, 3));
        std::vector<std::int64_t> e(l.basis().entries());
        const Submodule lifted(ZMat(r, l.basis().rows(), 3, e));
        const Submodule wide = join(lifted, Submodule(ZMat(r, 3, 3, {9, 0, 0, 0, 9, 0, 0, 0, 9})));
        CHECK(colength_class(wide.scaled(3)).value == colength_class(wide).value);
    }
}

TEST_CASE("spin") {
    const ModulusRing r(2, 1);
    const auto units = all_units(r, 4);
    CHECK(spin(units, std::vector<std::int64_t>{0, 0, 0, 0}).is_zero());
    CHECK(spin(units, std::vector<std::int64_t>{1, 0, 0, 0}) == Submodule::full(r, 4));
    const auto mord = build_mord(2, 1).generators();
    CHECK(spin(mord, std::vector<std::int64_t>{0, 0, 1, 0}) == Submodule::full(r, 4));
    CHECK_THROWS_AS(spin(units, std::vector<std::int64_t>{1, 0, 0}), TypeError);
}

TEST_CASE("invariant submodules of named residual actions") {
    const ModulusRing r(2, 1);
    CHECK(invariant_submodules(r, 4, all_units(r, 4)).size() == 2);

    const auto mord = build_mord(2, 1).generators();
    const auto subs = invariant_submodules(r, 4, mord);
    CHECK(subs.size() == 6);
    const Submodule plane = rows(r, 4, {1, 0, 0, 0, 0, 1, 0, 0});
    int lines_in_plane = 0;
    for (const auto& s : subs)
        if (s.log_size() == 1 && plane.contains(s)) ++lines_in_plane;
    CHECK(lines_in_plane == 3);
    CHECK(std::find(subs.begin(), subs.end(), plane) != subs.end());

    // Eichler shape (K, K; 0, M_2(K))
    std::vector<ZMat> eich{ZMat::identity(r, 3), matrix_unit(r, 3, 0, 1), matrix_unit(r, 3, 0, 2)};
    for (std::size_t i = 1; i < 3; ++i)
        for (std::size_t j = 1; j < 3; ++j) eich.push_back(matrix_unit(r, 3, i, j));
    const auto es = invariant_submodules(r, 3, eich);
    REQUIRE(es.size() == 3);
    CHECK(es[1] == rows(r, 3, {1, 0, 0}));
}

TEST_CASE("enumeration respects the cap") {
    const ModulusRing r(3, 2);
    const std::vector<ZMat> id{ZMat::identity(r, 4)};
    CHECK_THROWS_AS(invariant_submodules(r, 4, id, 4096), ResourceError);
    try {
        invariant_submodules(r, 4, id, 4096);
    } catch (const ResourceError& e) {
        CHECK(std::string(e.what()).find("4096") != std::string::npos);
    }
}

TEST_CASE("join and meet against element sets") {
    std::mt19937_64 rng(5);
    const ModulusRing r(2, 2);
    const auto amb = oracle::ambient(r, 3);
    const auto zero = Submodule(r, 3);
    const auto full = Submodule::full(r, 3);
    for (int i = 0; i < 60; ++i) {
        const Submodule a(oracle::random_rows(rng, r, 2, 3));
        const Submodule b(oracle::random_rows(rng, r, 2, 3));
        const auto sa = oracle::row_span_set(a.basis());
        const auto sb = oracle::row_span_set(b.basis());
        const auto sj = oracle::row_span_set(join(a, b).basis());
        const auto sm = oracle::row_span_set(meet(a, b).basis());
        for (std::size_t x = 0; x < amb.size(); ++x) CHECK(sm[x] == (sa[x] && sb[x]));
        std::vector<std::vector<std::int64_t>> both;
        for (std::size_t x = 0; x < amb.size(); ++x)
            if (sa[x] || sb[x]) both.push_back(amb.decode(x));
        CHECK(oracle::closure(amb, both, {}) == sj);

        CHECK(join(a, zero) == a);
        CHECK(meet(a, full) == a);
        CHECK(join(a, b) == join(b, a));
        CHECK(meet(a, b) == meet(b, a));
        CHECK(join(a, meet(a, b)) == a);
        CHECK(meet(a, join(a, b)) == a);
        // modular law: a <= c implies a v (b ^ c) = (a v b) ^ c
        const Submodule c = join(a, Submodule(oracle::random_rows(rng, r, 1, 3)));
        CHECK(join(a, meet(b, c)) == meet(join(a, b), c));
    }
}

TEST_CASE("invariant submodules agree with the brute-force filter") {
    std::mt19937_64 rng(9);
    for (auto [p, m, n] : {std::tuple{2, 1, 4}, std::tuple{2, 2, 3}, std::tuple{3, 1, 3}, std::tuple{2, 3, 2}, std::tuple{3, 2, 2}}) {
        const ModulusRing r(p, m);
        const auto amb = oracle::ambient(r, static_cast<std::size_t>(n));
        for (int trial = 0; trial < 6; ++trial) {
            std::vector<ZMat> gens;
            for (int g = 0; g < 1 + trial % 2; ++g)
                gens.push_back(oracle::random_rows(rng, r, static_cast<std::size_t>(n), static_cast<std::size_t>(n)));
            const auto subs = invariant_submodules(r, static_cast<std::size_t>(n), gens);
            auto expected = oracle::invariant_sets_by_filter(amb, oracle::flat(gens));
            std::vector<oracle::ElemSet> got;
            for (const auto& s : subs) {
                CHECK(is_invariant(gens, s));
                got.push_back(oracle::row_span_set(s.basis()));
            }
            std::sort(expected.begin(), expected.end());
            std::sort(got.begin(), got.end());
            CHECK(got == expected);
            // spin minimality
            for (const auto& s : subs) {
                for (std::size_t x = 1; x < amb.size(); x += 5) {
                    const auto v = amb.decode(x);
                    if (s.contains(v)) CHECK(s.contains(spin(gens, v)));
                }
            }
        }
    }
}
