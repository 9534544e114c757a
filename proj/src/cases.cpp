#include "repfield/cases.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>
#include <sstream>

#include "repfield/classfield.hpp"
#include "repfield/errors.hpp"
#include "repfield/spinor.hpp"

namespace repfield {

namespace {

using IntMat = std::vector<std::int64_t>;  // n x n, row-major

constexpr std::uint64_t kCaseCap = 1u << 16;
constexpr std::uint64_t kSampleCap = 1u << 15;

IntMat int_identity(std::size_t n) {
    IntMat m(n * n, 0);
    for (std::size_t i = 0; i < n; ++i) m[i * n + i] = 1;
    return m;
}

IntMat int_mul(const IntMat& a, const IntMat& b, std::size_t n) {
    IntMat c(n * n, 0);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t k = 0; k < n; ++k)
            for (std::size_t j = 0; j < n; ++j) c[i * n + j] += a[i * n + k] * b[k * n + j];
    return c;
}

// A random product of elementary matrices and its inverse.
std::pair<IntMat, IntMat> unimodular(std::mt19937_64& rng, std::size_t n) {
    IntMat u = int_identity(n), uinv = int_identity(n);
    if (n < 2) return {u, uinv};
    std::uniform_int_distribution<std::size_t> idx(0, n - 1);
    std::uniform_int_distribution<int> sign(0, 1);
    for (std::size_t step = 0; step < 2 * n; ++step) {
        const std::size_t i = idx(rng);
        std::size_t j = idx(rng);
        if (i == j) j = (j + 1) % n;
        const std::int64_t c = sign(rng) ? 1 : -1;
        IntMat e = int_identity(n), einv = int_identity(n);
        e[i * n + j] = c;
        einv[i * n + j] = -c;
        u = int_mul(e, u, n);
        uinv = int_mul(uinv, einv, n);
    }
    return {u, uinv};
}

LocalOrder close_integer(std::int64_t p, int precision, std::size_t n, const std::vector<IntMat>& gens) {
    const ModulusRing ring(p, precision);
    std::vector<ZMat> mats{ZMat::identity(ring, n)};
    for (const auto& g : gens) mats.push_back(unflatten(ring, n, g));
    return close(ring, n, mats);
}

std::vector<std::size_t> random_blocks(std::mt19937_64& rng, std::size_t n, std::size_t max_block) {
    std::vector<std::size_t> out;
    std::size_t left = n;
    while (left > 0) {
        std::uniform_int_distribution<std::size_t> d(1, std::min(left, max_block));
        out.push_back(d(rng));
        left -= out.back();
    }
    return out;
}

std::vector<std::size_t> block_of(const std::vector<std::size_t>& blocks) {
    std::vector<std::size_t> out;
    for (std::size_t b = 0; b < blocks.size(); ++b) out.insert(out.end(), blocks[b], b);
    return out;
}

std::string blocks_name(const std::vector<std::size_t>& blocks) {
    std::string s;
    for (auto b : blocks) s += (s.empty() ? "" : "+") + std::to_string(b);
    return s;
}

FqMat prime_field_matrix(const FieldPtr& f, std::size_t n, std::initializer_list<std::pair<std::size_t, std::size_t>> ones) {
    FqMat m(f, n, n);
    for (auto [i, j] : ones) m.at(i, j) = 1;
    return m;
}

std::vector<int> expected_classes(std::initializer_list<int> c) { return c; }

// Profile consistency: a uniform profile forces a group, and the image
// generates t Z/n.
bool profile_consistent(const LocalOrder& h, const SpinorImageSet& img, Json& out) {
    const auto prof = irreducible_profile(h);
    const int n = img.n;
    const auto gen = generated_subgroup(n, img.classes);
    const bool group_ok = !prof.uniform || is_group(n, img.classes);
    const bool gen_ok = gen.generator == std::gcd(prof.t, n);
    out["t"] = prof.t;
    out["uniform"] = prof.uniform;
    out["profile_consistent"] = group_ok && gen_ok;
    return group_ok && gen_ok;
}

struct Verdicts {
    int certified = 0;
    int stabilized_only = 0;
    int skipped = 0;
    int failures = 0;
    int profile_mismatches = 0;
    Json failing = Json::array();
};

void tally(Verdicts& v, const LocalOrder& h, const std::string& shape, const SpinorImageOptions& opts) {
    const auto rep = local_defined(h, opts);
    if (!rep.image.certified && !rep.image.stabilized) {
        ++v.skipped;
        return;
    }
    (rep.image.certified ? v.certified : v.stabilized_only)++;
    Json scratch;
    if (!profile_consistent(h, rep.image, scratch)) ++v.profile_mismatches;
    if (!rep.defined) {
        ++v.failures;
        Json f = image_report(rep);
        f["shape"] = shape;
        v.failing.push_back(f);
    }
}

Json verdicts_json(const Verdicts& v) {
    return Json{{"certified", v.certified},          {"stabilized_only", v.stabilized_only}, {"skipped", v.skipped},
                {"failures", v.failures},            {"profile_mismatches", v.profile_mismatches},
                {"failing", v.failing}};
}

CaseResult case_mord(std::mt19937_64&) {
    CaseResult r{"mord", true, "", Json::object()};
    for (std::int64_t p : {2, 3}) {
        const auto h = build_mord(p, 4);
        const auto rep = local_defined(h, {3, kCaseCap});
        Json d = image_report(rep);
        const bool ok = rep.image.classes == expected_classes({0, 2, 3}) && rep.image.certified && rep.image.depth == 1 &&
                        !rep.is_group && profile_consistent(h, rep.image, d);
        r.pass = r.pass && ok;
        r.details["p" + std::to_string(p)] = d;
    }
    r.summary = "classes [0,2,3] mod 4, certified at depth 1, not a group (p = 2, 3)";
    return r;
}

CaseResult case_eichler3(std::mt19937_64&) {
    CaseResult r{"eichler3", true, "", Json::object()};
    for (std::int64_t p : {2, 3}) {
        const auto h = eichler_preimage(p);
        const auto rep = local_defined(h, {3, kCaseCap});
        Json d = image_report(rep);
        const bool ok = rep.image.classes == expected_classes({0, 2}) && rep.image.certified && !rep.is_group &&
                        profile_consistent(h, rep.image, d);
        r.pass = r.pass && ok;
        r.details["p" + std::to_string(p)] = d;
    }
    r.summary = "classes [0,2] mod 3, not a group (p = 2, 3)";
    return r;
}

CaseResult case_prop51(std::mt19937_64&) {
    CaseResult r{"prop51", true, "", Json::array()};
    struct Lift {
        std::int64_t p;
        std::size_t a, b;
    };
    for (const Lift s : {Lift{2, 1, 2}, Lift{3, 1, 2}, Lift{2, 1, 3}}) {
        const int precision = 5;
        const SpinorImageOptions opts{3, kCaseCap};
        const auto base = block_lift(s.p, s.a, s.b, precision);
        const auto base_img = spinor_image(base, opts);
        const auto gen = generated_subgroup(base_img.n, base_img.classes);
        Json d;
        d["p"] = s.p;
        d["blocks"] = {s.a, s.b};
        d["base_classes"] = base_img.classes;
        d["generated"] = gen.elements();
        Json lifts = Json::array();
        bool ok = base_img.certified;
        std::vector<int> prev;
        int stable_n = 0;
        for (int depth = 1; depth < precision; ++depth) {
            const auto img = spinor_image(deep_lift(base, depth), opts);
            lifts.push_back({{"lift_depth", depth}, {"classes", img.classes}, {"certified", img.certified}});
            ok = ok && img.certified;
            if (depth > 1 && img.classes == prev) {
                stable_n = depth - 1;
                break;
            }
            prev = img.classes;
        }
        d["lifts"] = lifts;
        d["stable_lift_depth"] = stable_n;
        ok = ok && stable_n > 0 && is_group(base_img.n, prev) && prev == gen.elements();
        if (s.b == s.a + 1 && s.a == 1)
            // The first lift is the residual preimage itself.
            ok = ok && deep_lift(base, 1) == eichler_preimage(s.p, 3, precision);
        d["pass"] = ok;
        r.pass = r.pass && ok;
        r.details.push_back(d);
    }
    r.summary = "deep lifts of block lifts become groups equal to the generated subgroup";
    return r;
}

CaseResult case_thm3(std::mt19937_64&) {
    CaseResult r{"thm3", false, "", Json::object()};
    const auto img = spinor_image(build_mord(2, 4));
    GaloisScenario sc{AbelianGroup({4}), 4, {}};
    sc.places.push_back({"P", {1}, ImagePayload{4, img.classes}, std::nullopt});
    const auto v = is_defined_global(sc);
    r.details = scenario_report(sc, v);
    r.pass = img.classes == expected_classes({0, 2, 3}) && !v.defined && v.lower.quotient_invariant_factors.empty() &&
             v.lower.order() == 4 && v.upper.order() == 1 && v.upper.quotient_invariant_factors == std::vector<int>{4};
    r.summary = "G = Z/4: not defined, lower field trivial, upper field of degree 4";
    return r;
}

CaseResult case_lemma_l3(std::mt19937_64&) {
    CaseResult r{"lemma-l3", true, "", Json::array()};
    const std::int64_t p = 2;
    const int precision = 5, depth = 3;
    const std::vector<std::pair<std::string, LocalOrder>> parts{
        {"maximal", maximal_order(p, precision, 2)},
        {"iwahori", iwahori_order(p, precision)},
        {"unramified", unramified_integers(p, precision)},
    };
    const std::vector<std::pair<std::size_t, std::size_t>> pairs{{0, 0}, {1, 0}, {2, 0}, {1, 1}, {2, 1}};
    for (auto [i, j] : pairs) {
        const LocalOrder comps[] = {parts[i].second, parts[j].second};
        const int exps[] = {0, 0};
        const auto block = build_block_triangular(comps, exps, depth);
        Json d;
        d["components"] = {parts[i].first, parts[j].first};
        Json windows = Json::array();
        bool ok = true;
        std::vector<int> last_block, last_sum;
        for (int w = 1; w <= 3; ++w) {
            const auto bc = classes_at_window(block, w, kCaseCap);
            const auto sum = sumset(4, classes_at_window(comps[0], w, kCaseCap, 4), classes_at_window(comps[1], w, kCaseCap, 4));
            const bool contains = std::includes(bc.begin(), bc.end(), sum.begin(), sum.end());
            windows.push_back({{"window", w}, {"block", bc}, {"sumset", sum}, {"contains", contains}});
            ok = ok && contains;
            last_block = bc;
            last_sum = sum;
        }
        const auto img = spinor_image(block, {3, kCaseCap});
        ok = ok && (img.certified || img.stabilized) && img.classes == last_block && last_block == last_sum;
        d["windows"] = windows;
        d["image"] = img.classes;
        d["pass"] = ok;
        r.pass = r.pass && ok;
        r.details.push_back(d);
    }
    r.summary = "block image contains the component sumset at windows 1..3, equal at depth 3";
    return r;
}

CaseResult case_quaternion(std::mt19937_64& rng) {
    CaseResult r{"quaternion", true, "", Json::object()};
    for (std::int64_t p : {2, 3}) {
        const auto f = FiniteField::create(p, 1);
        int count = 0, bad = 0;
        for (const auto& alg : unital_subalgebras(f, 2)) {
            const auto h = build_residual_preimage(alg.basis(), 2, 4);
            const auto rep = local_defined(h, {3, kCaseCap});
            const auto prof = irreducible_profile(h);
            const bool dims_ok = std::all_of(prof.dims.begin(), prof.dims.end(), [](int d) { return d == 1 || d == 2; });
            ++count;
            if (!rep.defined || !dims_ok || !(rep.image.certified || rep.image.stabilized)) ++bad;
        }
        r.details["residual_algebras_p" + std::to_string(p)] = {{"count", count}, {"failures", bad}};
        r.pass = r.pass && bad == 0;
    }
    Verdicts v;
    for (int i = 0; i < 100; ++i) tally(v, random_closed_order(rng, 2, 2, 2), "M2(Z/4)", {3, kCaseCap});
    r.details["random_orders_mod4"] = verdicts_json(v);
    r.pass = r.pass && v.failures == 0 && v.skipped == 0;
    r.summary = "every order in M_2 has a group image";
    return r;
}

CaseResult sampling_case(const std::string& name, std::mt19937_64& rng, int count, bool commutative) {
    CaseResult r{name, false, "", Json::object()};
    Verdicts v;
    std::map<std::string, int> shapes;
    std::map<int, int> ranks;
    for (int i = 0; i < count; ++i) {
        const std::int64_t p = i % 2 == 0 ? 2 : 3;
        const std::size_t n = (i / 2) % 2 == 0 ? 3 : 4;
        const auto s = commutative ? random_commutative_residual_order(rng, p, n) : random_low_rank_order(rng, p, n);
        ++shapes["M" + std::to_string(n) + " p" + std::to_string(p) + " " + s.shape];
        ++ranks[s.rational_dim];
        tally(v, s.order, s.shape, {3, kSampleCap});
    }
    r.details = verdicts_json(v);
    r.details["samples"] = count;
    Json rk = Json::object();
    for (auto [k, c] : ranks) rk[std::to_string(k)] = c;
    r.details["ranks"] = rk;
    r.details["shapes"] = shapes.size();
    r.pass = v.failures == 0;
    std::ostringstream os;
    os << count << " samples: " << v.certified << " certified, " << v.stabilized_only << " stabilized, " << v.skipped
       << " skipped, " << v.failures << " not defined";
    r.summary = os.str();
    return r;
}

CaseResult case_rank7(std::mt19937_64& rng) { return sampling_case("rank7", rng, 200, false); }
CaseResult case_commutative(std::mt19937_64& rng) { return sampling_case("commutative", rng, 100, true); }

}  // namespace

LocalOrder eichler_preimage(std::int64_t p, std::size_t n, int precision) {
    if (n < 2) throw PreconditionError("eichler preimage needs n >= 2");
    const auto f = FiniteField::create(p, 1);
    std::vector<FqMat> res;
    for (std::size_t j = 0; j < n; ++j) res.push_back(prime_field_matrix(f, n, {{0, j}}));
    for (std::size_t i = 1; i < n; ++i)
        for (std::size_t j = 1; j < n; ++j) res.push_back(prime_field_matrix(f, n, {{i, j}}));
    return build_residual_preimage(res, n, precision);
}

LocalOrder block_lift(std::int64_t p, std::size_t a, std::size_t b, int precision) {
    const LocalOrder comps[] = {maximal_order(p, precision, a), maximal_order(p, precision, b)};
    const int exps[] = {0, 0};
    return build_block_triangular(comps, exps, 0);
}

LocalOrder iwahori_order(std::int64_t p, int precision) {
    const auto f = FiniteField::create(p, 1);
    const FqMat res[] = {prime_field_matrix(f, 2, {{0, 0}}), prime_field_matrix(f, 2, {{0, 1}}),
                         prime_field_matrix(f, 2, {{1, 1}})};
    return build_residual_preimage(res, 2, precision);
}

LocalOrder unramified_integers(std::int64_t p, int precision) {
    const auto emb = embed_unramified(1, p, precision);
    const ZMat gens[] = {emb.unit(0, 0, 1, 0), emb.unit(0, 0, 0, 1)};
    return close(emb.ring(), 2, gens);
}

std::vector<ResidualAlgebra> unital_subalgebras(const FieldPtr& field, std::size_t n) {
    const std::size_t q = field->size();
    std::size_t total = 1;
    for (std::size_t i = 0; i < n * n; ++i) {
        total *= q;
        if (total > (1u << 16)) throw ResourceError("subalgebra enumeration too large", total, 1u << 16);
    }
    auto key = [](const ResidualAlgebra& a) {
        std::vector<FiniteField::Elem> k;
        for (const auto& b : a.basis()) k.insert(k.end(), b.entries().begin(), b.entries().end());
        return std::make_pair(a.dimension(), k);
    };
    std::vector<FqMat> all;
    for (std::size_t code = 0; code < total; ++code) {
        std::vector<FiniteField::Elem> e(n * n);
        std::size_t c = code;
        for (auto& x : e) {
            x = static_cast<FiniteField::Elem>(c % q);
            c /= q;
        }
        all.emplace_back(field, n, n, std::move(e));
    }
    std::map<std::pair<std::size_t, std::vector<FiniteField::Elem>>, std::size_t> seen;
    std::vector<ResidualAlgebra> out;
    std::vector<FqMat> none;
    out.push_back(generate_algebra(field, n, none));
    seen[key(out.front())] = 0;
    // Every subalgebra arises by adjoining elements one at a time.
    for (std::size_t i = 0; i < out.size(); ++i)
        for (const auto& x : all) {
            if (out[i].contains(x)) continue;
            std::vector<FqMat> gens = out[i].basis();
            gens.push_back(x);
            auto next = generate_algebra(field, n, gens);
            if (seen.emplace(key(next), out.size()).second) out.push_back(std::move(next));
        }
    std::sort(out.begin(), out.end(), [&](const ResidualAlgebra& a, const ResidualAlgebra& b) { return key(a) < key(b); });
    return out;
}

LocalOrder random_closed_order(std::mt19937_64& rng, std::int64_t p, std::size_t n, int precision, int max_gens) {
    const ModulusRing ring(p, precision);
    std::uniform_int_distribution<std::int64_t> entry(0, ring.modulus() - 1);
    std::uniform_int_distribution<int> count(1, std::max(1, max_gens));
    std::vector<ZMat> gens{ZMat::identity(ring, n)};
    const int k = count(rng);
    for (int g = 0; g < k; ++g) {
        std::vector<std::int64_t> e(n * n);
        for (auto& x : e) x = entry(rng);
        gens.push_back(unflatten(ring, n, e));
    }
    return close(ring, n, gens);
}

namespace {

// Companion matrix of x^k - c_(k-1) x^(k-1) - ... - c_0 placed at rows/columns [s, s + k).
void put_companion(IntMat& m, std::size_t n, std::size_t s, const std::vector<std::int64_t>& c) {
    const std::size_t k = c.size();
    for (std::size_t i = 1; i < k; ++i) m[(s + i) * n + s + i - 1] = 1;
    for (std::size_t i = 0; i < k; ++i) m[(s + i) * n + s + k - 1] = c[i];
}

std::vector<std::int64_t> random_coeffs(std::mt19937_64& rng, std::size_t k) {
    std::uniform_int_distribution<int> small(-2, 2);
    std::vector<std::int64_t> c(k);
    for (auto& x : c) x = small(rng);
    return c;
}

// Generators with entries in [-2, 2] supported on a random block upper triangular pattern.
std::vector<IntMat> pattern_generators(std::mt19937_64& rng, std::int64_t p, std::size_t n, std::string& shape) {
    std::uniform_int_distribution<int> coin(0, 1), small(-2, 2), exp(0, 2), ngens(1, 3);
    const auto blocks = random_blocks(rng, n, 3);
    const auto blk = block_of(blocks);
    const std::size_t nb = blocks.size();
    std::vector<int> allowed(nb * nb, 0);  // -1 = zero block, else p-exponent
    for (std::size_t i = 0; i < nb; ++i)
        for (std::size_t j = 0; j < nb; ++j) allowed[i * nb + j] = i == j ? 0 : (i < j && coin(rng) ? exp(rng) : -1);
    std::vector<IntMat> gens;
    const int k = ngens(rng);
    for (int g = 0; g < k; ++g) {
        IntMat m(n * n, 0);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) {
                const int e = allowed[blk[i] * nb + blk[j]];
                if (e < 0 || coin(rng)) continue;
                m[i * n + j] = small(rng) * checked_pow(p, e);
            }
        gens.push_back(std::move(m));
    }
    shape = "pattern " + blocks_name(blocks) + " gens " + std::to_string(k);
    return gens;
}

// diag(X, X, ...) for random square X of size n / copies, plus an optional scaled
// strictly block upper term.
std::vector<IntMat> diagonal_copy_generators(std::mt19937_64& rng, std::int64_t p, std::size_t n, std::string& shape) {
    std::uniform_int_distribution<int> coin(0, 1), small(-2, 2), exp(0, 2), ngens(1, 2);
    const std::size_t copies = n % 2 == 0 ? 2 : 3;
    const std::size_t k = n / copies;
    std::vector<IntMat> gens;
    const int count = ngens(rng);
    for (int g = 0; g < count; ++g) {
        IntMat x(k * k);
        for (auto& e : x) e = small(rng);
        IntMat m(n * n, 0);
        for (std::size_t c = 0; c < copies; ++c)
            for (std::size_t i = 0; i < k; ++i)
                for (std::size_t j = 0; j < k; ++j) m[(c * k + i) * n + c * k + j] = x[i * k + j];
        gens.push_back(std::move(m));
    }
    shape = "copies " + std::to_string(copies) + "x" + std::to_string(k) + " gens " + std::to_string(count);
    if (coin(rng)) {
        const std::int64_t s = checked_pow(p, exp(rng));
        IntMat m(n * n, 0);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j)
                if (i / k < j / k && coin(rng)) m[i * n + j] = small(rng) * s;
        gens.push_back(std::move(m));
        shape += " nilpotent";
    }
    return gens;
}

}  // namespace

OrderSample random_low_rank_order(std::mt19937_64& rng, std::int64_t p, std::size_t n, int max_dim, int precision) {
    std::uniform_int_distribution<int> family(0, 3), exp(1, 2);
    for (int attempt = 0; attempt < 10000; ++attempt) {
        std::string shape;
        std::vector<IntMat> gens;
        switch (family(rng)) {
            case 0:
                gens = pattern_generators(rng, p, n, shape);
                break;
            case 1: {
                IntMat m(n * n, 0);
                put_companion(m, n, 0, random_coeffs(rng, n));
                gens.push_back(std::move(m));
                shape = "companion";
                break;
            }
            case 2:
                gens = diagonal_copy_generators(rng, p, n, shape);
                break;
            default: {
                // A deeper suborder of one of the other shapes.
                gens = rng() % 2 ? pattern_generators(rng, p, n, shape) : diagonal_copy_generators(rng, p, n, shape);
                const std::int64_t s = checked_pow(p, exp(rng));
                for (auto& g : gens)
                    for (auto& x : g) x *= s;
                shape = "scaled " + shape;
            }
        }
        const int dim = rational_algebra_dimension(gens, n);
        if (dim > max_dim) continue;
        const auto [u, uinv] = unimodular(rng, n);
        for (auto& g : gens) g = int_mul(int_mul(u, g, n), uinv, n);
        return {close_integer(p, precision, n, gens), dim, shape};
    }
    throw std::runtime_error("no low-rank sample found");
}

OrderSample random_commutative_residual_order(std::mt19937_64& rng, std::int64_t p, std::size_t n, int precision) {
    std::uniform_int_distribution<int> coin(0, 1), small(-2, 2), exp(0, 2), nilps(1, 2);
    const auto blocks = random_blocks(rng, n, n);
    const auto blk = block_of(blocks);
    std::vector<std::size_t> start;
    for (std::size_t b = 0, s = 0; b < blocks.size(); s += blocks[b], ++b) start.push_back(s);

    auto nilpotent = [&](int e) {
        IntMat m(n * n, 0);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j)
                if (blk[i] < blk[j] && coin(rng)) m[i * n + j] = small(rng) * checked_pow(p, e);
        return m;
    };
    auto plus = [&](IntMat a, const IntMat& b) {
        for (std::size_t i = 0; i < a.size(); ++i) a[i] += b[i];
        return a;
    };

    std::vector<IntMat> gens;
    std::string shape = "blocks " + blocks_name(blocks);
    // Tied blocks share one companion polynomial per size, so they act as one
    // commutative ring repeated along the diagonal.
    const bool tied = coin(rng);
    std::map<std::size_t, std::vector<std::int64_t>> poly_for_size;
    IntMat tied_gen(n * n, 0);
    for (std::size_t b = 0; b < blocks.size(); ++b) {
        const std::size_t k = blocks[b];
        if (!tied) {
            IntMat idem(n * n, 0);
            for (std::size_t i = 0; i < k; ++i) idem[(start[b] + i) * n + start[b] + i] = 1;
            gens.push_back(coin(rng) ? plus(idem, nilpotent(exp(rng))) : idem);
        }
        if (k >= 2 && (tied || coin(rng))) {
            auto& c = poly_for_size[k];
            if (c.empty() || !tied) c = random_coeffs(rng, k);
            IntMat& target = tied ? tied_gen : gens.emplace_back(n * n, 0);
            put_companion(target, n, start[b], c);
            shape += " companion" + std::to_string(k);
        }
    }
    if (tied) {
        gens.push_back(coin(rng) ? plus(tied_gen, nilpotent(exp(rng))) : tied_gen);
        shape += " tied";
    }
    const int k = blocks.size() > 1 ? nilps(rng) : 0;
    for (int i = 0; i < k; ++i) gens.push_back(nilpotent(exp(rng)));
    const int dim = rational_algebra_dimension(gens, n);
    const auto [u, uinv] = unimodular(rng, n);
    for (auto& g : gens) g = int_mul(int_mul(u, g, n), uinv, n);
    return {close_integer(p, precision, n, gens), dim, shape};
}

const std::vector<std::string>& case_names() {
    static const std::vector<std::string> names{"mord",     "eichler3",   "prop51", "thm3",
                                                "lemma-l3", "quaternion", "rank7",  "commutative"};
    return names;
}

CaseResult run_case(const std::string& name, std::uint64_t seed) {
    const auto& names = case_names();
    const auto it = std::find(names.begin(), names.end(), name);
    if (it == names.end()) throw ConfigError("unknown case '" + name + "'");
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(it - names.begin())};
    std::mt19937_64 rng(seq);
    if (name == "mord") return case_mord(rng);
    if (name == "eichler3") return case_eichler3(rng);
    if (name == "prop51") return case_prop51(rng);
    if (name == "thm3") return case_thm3(rng);
    if (name == "lemma-l3") return case_lemma_l3(rng);
    if (name == "quaternion") return case_quaternion(rng);
    if (name == "rank7") return case_rank7(rng);
    return case_commutative(rng);
}

}  // namespace repfield
