#include <doctest.h>

#include <algorithm>
#include <random>

#include "repfield/classfield.hpp"
#include "repfield/errors.hpp"
#include "repfield/spinor.hpp"

using namespace repfield;

namespace {

PlaceDatum place(std::string label, AbelianGroup::Element frob, int n, std::vector<int> classes) {
    return {std::move(label), std::move(frob), ImagePayload{n, std::move(classes)}, std::nullopt};
}

PlaceDatum t_place(std::string label, AbelianGroup::Element frob, int t) {
    return {std::move(label), std::move(frob), std::nullopt, t};
}

std::vector<std::size_t> idx(const AbelianGroup& g, std::initializer_list<AbelianGroup::Element> es) {
    std::vector<std::size_t> out;
    for (const auto& e : es) out.push_back(g.index(e));
    std::sort(out.begin(), out.end());
    return out;
}

}  // namespace

TEST_CASE("abelian groups") {
    const AbelianGroup g({2, 4});
    CHECK(g.order() == 8);
    CHECK(g.add({1, 3}, {1, 2}) == AbelianGroup::Element{0, 1});
    CHECK(g.scale(-1, {1, 1}) == AbelianGroup::Element{1, 3});
    for (std::size_t i = 0; i < g.order(); ++i) CHECK(g.index(g.element(i)) == i);
    CHECK_THROWS(AbelianGroup({4, 2}));
    CHECK_THROWS(AbelianGroup({0}));
}

TEST_CASE("subgroups and quotients") {
    const AbelianGroup g({2, 4});
    const auto h = generated_subgroup(g, idx(g, {{0, 2}}));
    CHECK(h.order() == 2);
    CHECK(h.quotient_invariant_factors == std::vector<int>{2, 2});
    CHECK(quotient_invariant_factors(g, generated_subgroup(g, idx(g, {{1, 1}})).elements) == std::vector<int>{2});
    CHECK(quotient_invariant_factors(g, generated_subgroup(g, idx(g, {{1, 0}})).elements) == std::vector<int>{4});
    CHECK(is_subgroup(g, h.elements));
    CHECK_FALSE(is_subgroup(g, idx(g, {{0, 0}, {0, 1}})));
    const auto st = translation_stabilizer(g, idx(g, {{0, 0}, {0, 2}, {1, 0}, {1, 2}}));
    CHECK(st.order() == 4);
}

TEST_CASE("cyclic group of order 4 with image {0, 2, 3}") {
    GaloisScenario sc{AbelianGroup({4}), 4, {place("P", {1}, 4, {0, 2, 3})}};
    CHECK(global_image_set(sc) == std::vector<std::size_t>{0, 2, 3});
    const auto v = is_defined_global(sc);
    CHECK_FALSE(v.defined);
    CHECK(v.lower.order() == 4);
    CHECK(v.lower.quotient_invariant_factors.empty());
    CHECK(v.upper.order() == 1);
    CHECK(v.upper.quotient_invariant_factors == std::vector<int>{4});
}

TEST_CASE("small scenarios") {
    const AbelianGroup z4({4});
    GaloisScenario zeros{z4, 4, {place("A", {1}, 4, {0}), place("B", {3}, 4, {0})}};
    CHECK(global_image_set(zeros) == std::vector<std::size_t>{0});
    CHECK(is_defined_global(zeros).defined);
    CHECK(lower_field_subgroup(zeros).order() == 1);

    GaloisScenario two{z4, 4, {place("A", {1}, 4, {0, 2}), place("B", {2}, 4, {0, 1})}};
    CHECK(global_image_set(two) == std::vector<std::size_t>{0, 2});
    CHECK(is_defined_global(two).defined);

    GaloisScenario half{z4, 4, {place("A", {1}, 4, {0, 2})}};
    CHECK(is_defined_global(half).defined);
    CHECK(lower_field_subgroup(half) == upper_field_subgroup(half));

    GaloisScenario eich{AbelianGroup({3}), 3, {place("P", {1}, 3, {0, 2})}};
    CHECK_FALSE(is_defined_global(eich).defined);
}

TEST_CASE("lower fields from t") {
    const AbelianGroup z4({4});
    GaloisScenario q{z4, 4, {t_place("P", {1}, 2)}};
    const auto l = lower_field_from_t(q);
    CHECK(l.order() == 2);
    CHECK(l.quotient_invariant_factors == std::vector<int>{2});
    GaloisScenario one{z4, 4, {t_place("P", {1}, 1)}};
    CHECK(lower_field_from_t(one).order() == 4);
    GaloisScenario max{AbelianGroup({2, 4}), 4, {t_place("P", {1, 1}, 4), t_place("Q", {0, 3}, 4)}};
    CHECK(lower_field_from_t(max).order() == 1);
    CHECK(lower_field_from_t(max).quotient_invariant_factors == std::vector<int>{2, 4});

    GaloisScenario mixed{z4, 4, {t_place("P", {1}, 2), place("Q", {1}, 4, {0})}};
    CHECK_THROWS_AS(lower_field_from_t(mixed), PreconditionError);
    CHECK_THROWS_AS(global_image_set(q), PreconditionError);
}

TEST_CASE("malformed scenarios") {
    const AbelianGroup z4({4});
    GaloisScenario no_zero{z4, 4, {place("P", {1}, 4, {2})}};
    CHECK_THROWS(no_zero.validate());
    GaloisScenario wrong_n{z4, 4, {place("P", {1}, 3, {0})}};
    CHECK_THROWS(wrong_n.validate());
    GaloisScenario empty{z4, 4, {}};
    CHECK_THROWS(empty.validate());
}

TEST_CASE("scenario properties") {
    std::mt19937_64 rng(17);
    const AbelianGroup g({2, 4});
    const int n = 4;
    auto random_classes = [&] {
        std::vector<int> c{0};
        for (int x = 1; x < n; ++x)
            if (rng() % 2) c.push_back(x);
        return c;
    };
    auto random_elem = [&] { return g.element(rng() % g.order()); };
    for (int trial = 0; trial < 200; ++trial) {
        GaloisScenario sc{g, n, {}};
        const int places = 1 + static_cast<int>(rng() % 3);
        for (int i = 0; i < places; ++i) sc.places.push_back(place("P" + std::to_string(i), random_elem(), n, random_classes()));
        const auto v = is_defined_global(sc);
        CHECK(std::binary_search(v.image.begin(), v.image.end(), std::size_t{0}));
        CHECK(v.defined == is_subgroup(g, v.image));

        GaloisScenario rev = sc;
        std::reverse(rev.places.begin(), rev.places.end());
        CHECK(global_image_set(rev) == v.image);

        GaloisScenario glued = sc;
        glued.places.push_back(place("Z", random_elem(), n, {0}));
        const auto vg = is_defined_global(glued);
        CHECK(vg.image == v.image);
        CHECK(vg.lower == v.lower);
        CHECK(vg.upper == v.upper);

        GaloisScenario neg = sc;
        for (auto& p : neg.places) {
            std::vector<int> c;
            for (int x : p.image->classes) c.push_back((n - x) % n);
            p.image->classes = normalize_classes(n, c);
        }
        CHECK(is_defined_global(neg).defined == v.defined);

        // uniform places: image t Z/n agrees with the lower field from t
        GaloisScenario uni{g, n, {}}, ts{g, n, {}};
        for (int i = 0; i < places; ++i) {
            const int t = std::array{1, 2, 4}[rng() % 3];
            const auto e = random_elem();
            uni.places.push_back(place("U", e, n, SubgroupZn{n, t}.elements()));
            ts.places.push_back(t_place("U", e, t));
        }
        CHECK(lower_field_subgroup(uni) == lower_field_from_t(ts));
        CHECK(is_defined_global(uni).defined);
    }
}
