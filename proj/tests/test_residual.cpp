#include <doctest.h>

#include <numeric>
#include <random>

#include "oracles.hpp"
#include "repfield/cases.hpp"
#include "repfield/errors.hpp"
#include "repfield/orders.hpp"
#include "repfield/residual.hpp"

using namespace repfield;

namespace {

std::vector<int> class_dims(const ChopResult& c) {
    std::vector<int> d(c.class_dims.begin(), c.class_dims.end());
    std::sort(d.begin(), d.end());
    return d;
}

std::vector<int> factor_dims(const ChopResult& c) {
    std::vector<int> d;
    for (const auto& f : c.factors) d.push_back(static_cast<int>(f.dimension));
    std::sort(d.begin(), d.end());
    return d;
}

}  // namespace

TEST_CASE("residual algebras of named orders") {
    CHECK(residual_algebra(maximal_order(2, 3, 4)).dimension() == 16);
    CHECK(residual_algebra(build_mord(2, 3)).dimension() == 5);
    CHECK(residual_algebra(eichler_preimage(2, 3, 3)).dimension() == 7);
    const auto a = residual_algebra(build_mord(3, 2));
    for (const auto& x : a.basis())
        for (const auto& y : a.basis()) CHECK(a.contains(x * y));
    CHECK(a.contains(FqMat::identity(a.field(), 4)));
}

TEST_CASE("non-unital spans are rejected") {
    const auto f = FiniteField::create(2, 1);
    const std::vector<FqMat> e12{FqMat(f, 2, 2, {0, 1, 0, 0})};
    CHECK_THROWS_AS(ResidualAlgebra(f, 2, e12), PreconditionError);
    CHECK(generate_algebra(f, 2, e12).dimension() == 2);
}

TEST_CASE("chop of small modules") {
    const auto f2 = FiniteField::create(2, 1);
    const auto f3 = FiniteField::create(3, 1);
    const auto m2 = residual_algebra(maximal_order(2, 1, 2));
    const auto nat = chop(m2, ModuleKind::natural);
    CHECK(nat.factors.size() == 1);
    CHECK(nat.factors[0].dimension == 2);

    const auto ut = generate_algebra(f3, 2, std::vector<FqMat>{FqMat(f3, 2, 2, {0, 1, 0, 0}), FqMat(f3, 2, 2, {1, 0, 0, 0})});
    const auto c = chop(ut, ModuleKind::natural);
    CHECK(factor_dims(c) == std::vector<int>{1, 1});
    CHECK(c.class_dims.size() == 2);

    const auto mord = residual_algebra(build_mord(2, 1));
    const auto reg = chop(mord, ModuleKind::regular);
    CHECK(class_dims(reg) == std::vector<int>{1, 2});
    const auto oracle_prof = oracle::module_profile(mord.regular_representation());
    CHECK(oracle_prof.distinct_dims == std::vector<int>{1, 2});
    CHECK(factor_dims(reg) == oracle_prof.factor_dims);

    // companion of x^2 + x + 1 splits over F_4
    const FqMat comp(f2, 2, 2, {0, 1, 1, 1});
    CHECK(chop_module(std::vector<FqMat>{comp}).factors.size() == 1);
    const auto ext = scalar_extend(std::vector<FqMat>{comp}, 2);
    const auto split = chop_module(ext);
    CHECK(factor_dims(split) == std::vector<int>{1, 1});
    CHECK(split.class_dims.size() == 2);
}

TEST_CASE("chop conserves dimension and is deterministic") {
    std::mt19937_64 rng(21);
    for (int i = 0; i < 20; ++i) {
        const std::int64_t p = i % 2 == 0 ? 2 : 3;
        const auto h = random_closed_order(rng, p, 3, 1, 2);
        const auto a = residual_algebra(h);
        const auto c = chop(a, ModuleKind::regular, 7);
        std::size_t total = 0;
        for (const auto& f : c.factors) total += f.dimension;
        CHECK(total == a.dimension());
        const auto again = chop(a, ModuleKind::regular, 7);
        CHECK(factor_dims(again) == factor_dims(c));
        CHECK(class_dims(again) == class_dims(c));
        for (std::size_t k = 0; k < c.factors.size(); ++k) CHECK(again.factors[k].iso_class == c.factors[k].iso_class);
    }
}

TEST_CASE("isomorphism of irreducibles") {
    const auto f = FiniteField::create(3, 1);
    const FqMat a(f, 2, 2, {0, 2, 1, 0});  // x^2 + 1, irreducible over F_3
    const FqMat p(f, 2, 2, {1, 1, 0, 1});
    const FqMat b = p * a * inverse(p);
    CHECK(irreducibles_isomorphic(std::vector<FqMat>{a}, std::vector<FqMat>{b}));
    const FqMat c(f, 2, 2, {0, 1, 1, 1});  // x^2 - x - 1 = x^2 + 2x + 2, also irreducible
    CHECK_FALSE(irreducibles_isomorphic(std::vector<FqMat>{a}, std::vector<FqMat>{c}));
}

TEST_CASE("irreducible profiles") {
    const auto m4 = irreducible_profile(maximal_order(2, 2, 4));
    CHECK(m4.dims == std::vector<int>{4});
    CHECK(m4.t == 4);
    CHECK(m4.uniform);
    const auto mord = irreducible_profile(build_mord(2, 2));
    CHECK(mord.dims == std::vector<int>{1, 2});
    CHECK(mord.t == 1);
    CHECK_FALSE(mord.uniform);
    // O_E splits over the quadratic extension
    const auto oe = irreducible_profile(unramified_integers(2, 2));
    CHECK(oe.dims == std::vector<int>{2});
    const auto oe2 = irreducible_profile(unramified_integers(2, 2), 2);
    CHECK(oe2.dims == std::vector<int>{1, 1});
}

TEST_CASE("profiles of quaternion orders have t in {1, 2}") {
    std::mt19937_64 rng(4);
    for (std::int64_t p : {2, 3}) {
        for (const auto& alg : unital_subalgebras(FiniteField::create(p, 1), 2)) {
            const auto prof = irreducible_profile(alg);
            CHECK((prof.t == 1 || prof.t == 2));
            CHECK(prof.t == std::accumulate(prof.dims.begin(), prof.dims.end(), 0, [](int g, int d) { return std::gcd(g, d); }));
        }
        for (int i = 0; i < 20; ++i) {
            const auto prof = irreducible_profile(random_closed_order(rng, p, 2, 2));
            CHECK((prof.t == 1 || prof.t == 2));
        }
    }
}

TEST_CASE("the profile depends only on the residual algebra") {
    std::mt19937_64 rng(8);
    for (int i = 0; i < 15; ++i) {
        const std::int64_t p = i % 2 == 0 ? 2 : 3;
        const auto h = random_closed_order(rng, p, 3, 3);
        const auto a = residual_algebra(h);
        const auto pre = build_residual_preimage(a.basis(), 3, 3);
        for (int d : {1, 2}) {
            const auto ph = irreducible_profile(h, d);
            CHECK(ph.dims == irreducible_profile(deep_lift(h, 1), d).dims);
            CHECK(ph.dims == irreducible_profile(pre, d).dims);
        }
    }
}

TEST_CASE("chop agrees with the subspace oracle on small algebras") {
    for (auto [p, n] : {std::pair{2, 2}, std::pair{3, 2}}) {
        for (const auto& alg : unital_subalgebras(FiniteField::create(p, 1), static_cast<std::size_t>(n))) {
            const auto reg = alg.regular_representation();
            const auto expect = oracle::module_profile(reg);
            const auto c = chop(alg, ModuleKind::regular);
            CHECK(class_dims(c) == expect.distinct_dims);
            CHECK(factor_dims(c) == expect.factor_dims);
        }
    }
}
