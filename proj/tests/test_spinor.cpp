#include <doctest.h>

#include <algorithm>
#include <random>

#include "repfield/cases.hpp"
#include "repfield/errors.hpp"
#include "repfield/orders.hpp"
#include "repfield/spinor.hpp"

using namespace repfield;

namespace {

std::vector<int> negate(int n, const std::vector<int>& s) {
    std::vector<int> out;
    for (int x : s) out.push_back((n - x) % n);
    return normalize_classes(n, out);
}

SpinorImageSet image_of(int n, std::vector<int> c) {
    SpinorImageSet s;
    s.n = n;
    s.classes = normalize_classes(n, std::move(c));
    return s;
}

// Every subset of Z/n containing 0.
std::vector<std::vector<int>> subsets_with_zero(int n) {
    std::vector<std::vector<int>> out;
    for (unsigned mask = 0; mask < (1u << (n - 1)); ++mask) {
        std::vector<int> s{0};
        for (int i = 1; i < n; ++i)
            if (mask & (1u << (i - 1))) s.push_back(i);
        out.push_back(s);
    }
    return out;
}

}  // namespace

TEST_CASE("spinor images of named orders") {
    const auto m4 = spinor_image(maximal_order(2, 3, 4));
    CHECK(m4.classes == std::vector<int>{0});
    CHECK(m4.certified);

    const auto mord = spinor_image(build_mord(2, 3));
    CHECK(mord.classes == std::vector<int>{0, 2, 3});
    CHECK(mord.certified);
    CHECK(mord.depth == 1);
    CHECK(mord.modulus == 2);

    const auto eich = spinor_image(eichler_preimage(2, 3, 3));
    CHECK(eich.classes == std::vector<int>{0, 2});
    CHECK(eich.n == 3);
}

TEST_CASE("window one over the cap is a resource error") {
    CHECK_THROWS_AS(spinor_image(maximal_order(3, 2, 8), {3, 256}), ResourceError);
}

TEST_CASE("group predicates") {
    CHECK(is_group(4, {0}));
    CHECK_FALSE(is_group(4, {0, 2, 3}));
    CHECK(is_group(4, {0, 2}));
    CHECK(generated_subgroup(4, {0, 2, 3}) == SubgroupZn{4, 1});
    CHECK(translation_stabilizer(4, {0, 2, 3}) == SubgroupZn{4, 4});
    CHECK(generated_subgroup(3, {0, 2}) == SubgroupZn{3, 1});
    CHECK(translation_stabilizer(3, {0, 2}) == SubgroupZn{3, 3});
    CHECK(generated_subgroup(6, {0, 2, 4}) == SubgroupZn{6, 2});
    CHECK(translation_stabilizer(6, {0, 2, 4}) == SubgroupZn{6, 2});
    CHECK(SubgroupZn{6, 2}.elements() == std::vector<int>{0, 2, 4});
}

TEST_CASE("predicates are negation invariant and mutually consistent") {
    for (int n = 1; n <= 7; ++n) {
        for (const auto& s : subsets_with_zero(n)) {
            const auto neg = negate(n, s);
            CHECK(is_group(n, s) == is_group(n, neg));
            CHECK(generated_subgroup(n, s) == generated_subgroup(n, neg));
            CHECK(translation_stabilizer(n, s) == translation_stabilizer(n, neg));
            const auto rep = local_defined(image_of(n, s));
            CHECK(rep.is_group == rep.stabilizer_is_generated);
            CHECK(rep.is_group == rep.image_is_generated);
            // brute force: closed under addition
            bool closed = true;
            for (int a : s)
                for (int b : s) closed = closed && std::binary_search(s.begin(), s.end(), (a + b) % n);
            CHECK(rep.is_group == closed);
            const auto st = translation_stabilizer(n, s);
            for (int g = 0; g < n; ++g) {
                bool fixes = true;
                for (int a : s) fixes = fixes && std::binary_search(s.begin(), s.end(), (a + g) % n);
                CHECK(st.contains(g) == fixes);
            }
        }
    }
}

TEST_CASE("sumsets") {
    const auto s = image_of(4, {0, 2, 3});
    CHECK(sumset(s, image_of(4, {0})).classes == s.classes);
    CHECK(sumset(image_of(4, {0, 2}), image_of(4, {0, 2})).classes == std::vector<int>{0, 2});
    CHECK_THROWS_AS(sumset(image_of(4, {0}), image_of(3, {0})), TypeError);
    for (int n = 2; n <= 5; ++n) {
        const auto all = subsets_with_zero(n);
        for (const auto& a : all)
            for (const auto& b : all) {
                CHECK(sumset(n, a, b) == sumset(n, b, a));
                for (const auto& c : {all.front(), all.back()})
                    CHECK(sumset(n, sumset(n, a, b), c) == sumset(n, a, sumset(n, b, c)));
            }
    }
}

TEST_CASE("images grow with the window and contain zero") {
    std::mt19937_64 rng(12);
    for (int i = 0; i < 25; ++i) {
        const std::int64_t p = i % 2 == 0 ? 2 : 3;
        const std::size_t n = p == 2 ? 3 : 2;
        const auto h = random_closed_order(rng, p, n, 3);
        std::vector<int> prev;
        for (int w = 1; w <= 3; ++w) {
            if (ambient_size(h.ring().with_precision(w), n) > 4096) break;
            const auto c = classes_at_window(h, w);
            CHECK(std::binary_search(c.begin(), c.end(), 0));
            CHECK(std::includes(c.begin(), c.end(), prev.begin(), prev.end()));
            prev = c;
        }
        const auto img = spinor_image(h);
        CHECK(img.history.size() == static_cast<std::size_t>(img.depth));
        CHECK(img.modulus == h.ring().power(img.depth));
    }
}

TEST_CASE("certified windows see every class") {
    std::mt19937_64 rng(13);
    int checked = 0;
    for (int i = 0; i < 40; ++i) {
        const auto h = random_closed_order(rng, 2, 3, 3);
        for (int m0 = 1; m0 <= 2; ++m0) {
            if (!primitivity_certificate(h, m0, 1 << 12).verified) continue;
            ++checked;
            CHECK(classes_at_window(h, m0, 1 << 12) == classes_at_window(h, m0 + 1, 1 << 12));
        }
    }
    CHECK(checked > 0);
}

TEST_CASE("local definedness reports") {
    const auto mord = local_defined(build_mord(2, 2));
    CHECK_FALSE(mord.defined);
    CHECK(mord.generated == SubgroupZn{4, 1});
    CHECK(mord.stabilizer == SubgroupZn{4, 4});

    const auto lift = local_defined(deep_lift(block_lift(2, 1, 2, 5), 2));
    CHECK(lift.defined);
    CHECK(lift.image.classes == generated_subgroup(3, {0, 2}).elements());

    std::mt19937_64 rng(2);
    for (int i = 0; i < 30; ++i) {
        const auto rep = local_defined(random_closed_order(rng, i % 2 == 0 ? 2 : 3, 2, 3), {3, 1 << 12});
        if (rep.image.certified || rep.image.stabilized) CHECK(rep.defined);
    }
}
