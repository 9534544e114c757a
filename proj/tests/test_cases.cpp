#include <doctest.h>

#include <random>

#include "repfield/cases.hpp"
#include "repfield/errors.hpp"
#include "repfield/spinor.hpp"

using namespace repfield;

TEST_CASE("unital subalgebras of M_2") {
    const auto f2 = unital_subalgebras(FiniteField::create(2, 1), 2);
    const auto f3 = unital_subalgebras(FiniteField::create(3, 1), 2);
    CHECK(f2.size() == 12);
    CHECK(f3.size() == 19);
    for (const auto& a : f2) CHECK(a.contains(FqMat::identity(a.field(), 2)));
    CHECK(f2.front().dimension() == 1);
    CHECK(f2.back().dimension() == 4);
}

TEST_CASE("named orders") {
    CHECK(deep_lift(block_lift(2, 1, 2, 4), 1) == eichler_preimage(2, 3, 4));
    CHECK(residual_algebra(iwahori_order(3, 2)).dimension() == 3);
    CHECK(unramified_integers(2, 3).rank() == 2);
}

TEST_CASE("sample generators honour their contracts") {
    std::mt19937_64 rng(31);
    for (int i = 0; i < 30; ++i) {
        const std::int64_t p = i % 2 == 0 ? 2 : 3;
        const std::size_t n = i % 4 < 2 ? 3 : 4;
        const auto s = random_low_rank_order(rng, p, n);
        CHECK(s.rational_dim <= 7);
        CHECK(s.order.closed());
        CHECK(s.order.rank() <= 7);
        const auto c = random_commutative_residual_order(rng, p, n);
        CHECK(c.order.closed());
        // semisimple quotient commutative: commutators of the residual basis are nilpotent
        const auto a = residual_algebra(c.order);
        for (const auto& x : a.basis())
            for (const auto& y : a.basis()) {
                FqMat comm = x * y - y * x;
                FqMat pw = comm;
                for (std::size_t k = 1; k < n; ++k) pw = pw * comm;
                CHECK(pw.is_zero());
            }
    }
}

TEST_CASE("cases are named and reproducible") {
    CHECK(case_names().size() == 8);
    CHECK_THROWS_AS(run_case("nope"), ConfigError);
    const auto a = run_case("thm3", 5);
    CHECK(a.pass);
    CHECK(run_case("thm3", 5).details == a.details);
}
