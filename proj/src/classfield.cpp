#include "repfield/classfield.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <stdexcept>

#include "repfield/errors.hpp"

namespace repfield {

namespace {

constexpr std::size_t kMaxGroupOrder = std::size_t{1} << 20;

std::vector<std::size_t> members(const std::vector<bool>& mark) {
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < mark.size(); ++i)
        if (mark[i]) out.push_back(i);
    return out;
}

std::vector<bool> marks(const AbelianGroup& g, const std::vector<std::size_t>& set) {
    std::vector<bool> m(g.order(), false);
    for (auto i : set) {
        if (i >= g.order()) throw TypeError("element index out of range");
        m[i] = true;
    }
    return m;
}

std::vector<std::int64_t> prime_factors(std::int64_t n) {
    std::vector<std::int64_t> out;
    for (std::int64_t p = 2; p * p <= n; ++p)
        if (n % p == 0) {
            out.push_back(p);
            while (n % p == 0) n /= p;
        }
    if (n > 1) out.push_back(n);
    return out;
}

Subgroup make_subgroup(const AbelianGroup& g, std::vector<std::size_t> elements) {
    Subgroup s;
    s.quotient_invariant_factors = quotient_invariant_factors(g, elements);
    s.elements = std::move(elements);
    return s;
}

void require_images(const GaloisScenario& sc) {
    sc.validate();
    for (const auto& pl : sc.places)
        if (!pl.image) throw PreconditionError("place '" + pl.label + "' carries no image set");
}

}  // namespace

AbelianGroup::AbelianGroup(std::vector<int> invariant_factors) : factors_(std::move(invariant_factors)) {
    for (std::size_t i = 0; i < factors_.size(); ++i) {
        if (factors_[i] < 1) throw TypeError("invariant factors must be positive");
        if (i + 1 < factors_.size() && factors_[i + 1] % factors_[i] != 0)
            throw TypeError("invariant factors must divide each other in order");
        order_ *= static_cast<std::size_t>(factors_[i]);
        if (order_ > kMaxGroupOrder) throw TypeError("group order exceeds 2^20");
    }
}

AbelianGroup::Element AbelianGroup::normalize(Element e) const {
    if (e.size() != factors_.size())
        throw TypeError("element has " + std::to_string(e.size()) + " coordinates, group has rank " +
                        std::to_string(factors_.size()));
    for (std::size_t i = 0; i < e.size(); ++i) e[i] = ((e[i] % factors_[i]) + factors_[i]) % factors_[i];
    return e;
}

AbelianGroup::Element AbelianGroup::add(const Element& a, const Element& b) const {
    Element c = normalize(a);
    const Element d = normalize(b);
    for (std::size_t i = 0; i < c.size(); ++i) c[i] = (c[i] + d[i]) % factors_[i];
    return c;
}

AbelianGroup::Element AbelianGroup::scale(std::int64_t k, const Element& a) const {
    Element c = normalize(a);
    for (std::size_t i = 0; i < c.size(); ++i) {
        const std::int64_t d = factors_[i];
        c[i] = static_cast<int>((((k % d) * c[i]) % d + d) % d);
    }
    return c;
}

std::size_t AbelianGroup::index(const Element& e) const {
    const Element n = normalize(e);
    std::size_t idx = 0;
    for (std::size_t i = 0; i < n.size(); ++i) idx = idx * static_cast<std::size_t>(factors_[i]) + static_cast<std::size_t>(n[i]);
    return idx;
}

AbelianGroup::Element AbelianGroup::element(std::size_t index) const {
    if (index >= order_) throw TypeError("element index out of range");
    Element e(factors_.size());
    for (std::size_t i = factors_.size(); i-- > 0;) {
        e[i] = static_cast<int>(index % static_cast<std::size_t>(factors_[i]));
        index /= static_cast<std::size_t>(factors_[i]);
    }
    return e;
}

bool is_subgroup(const AbelianGroup& g, const std::vector<std::size_t>& set) {
    const auto m = marks(g, set);
    if (!m[g.index(g.zero())]) return false;
    // A finite nonempty subset closed under addition is a subgroup.
    for (auto a : set)
        for (auto b : set)
            if (!m[g.index(g.add(g.element(a), g.element(b)))]) return false;
    return true;
}

Subgroup generated_subgroup(const AbelianGroup& g, const std::vector<std::size_t>& set) {
    std::vector<bool> m(g.order(), false);
    std::vector<std::size_t> queue{g.index(g.zero())};
    m[queue.front()] = true;
    const auto gens = members(marks(g, set));
    for (std::size_t i = 0; i < queue.size(); ++i) {
        const auto x = g.element(queue[i]);
        for (auto s : gens) {
            const auto y = g.index(g.add(x, g.element(s)));
            if (!m[y]) {
                m[y] = true;
                queue.push_back(y);
            }
        }
    }
    return make_subgroup(g, members(m));
}

Subgroup translation_stabilizer(const AbelianGroup& g, const std::vector<std::size_t>& set) {
    const auto m = marks(g, set);
    const auto s = members(m);
    std::vector<bool> stab(g.order(), false);
    for (std::size_t h = 0; h < g.order(); ++h) {
        const auto he = g.element(h);
        stab[h] = std::all_of(s.begin(), s.end(), [&](std::size_t x) { return m[g.index(g.add(he, g.element(x)))]; });
    }
    return make_subgroup(g, members(stab));
}

std::vector<int> quotient_invariant_factors(const AbelianGroup& g, const std::vector<std::size_t>& subgroup) {
    const auto h = marks(g, subgroup);
    const std::size_t hsize = subgroup.size();
    if (hsize == 0) throw TypeError("empty subgroup");
    const std::int64_t exponent = g.invariant_factors().empty() ? 1 : g.invariant_factors().back();
    // Elementary divisors of Q = G/H from |Q[p^k]| = #{x : p^k x in H} / |H|.
    std::vector<int> out;
    std::map<std::int64_t, std::vector<std::int64_t>> parts;
    for (auto p : prime_factors(exponent)) {
        std::vector<std::size_t> torsion{1};  // |Q[p^k]| for k = 0, 1, ...
        std::int64_t pk = 1;
        while (exponent % (pk * p) == 0) {
            pk *= p;
            std::size_t count = 0;
            for (std::size_t x = 0; x < g.order(); ++x)
                if (h[g.index(g.scale(pk, g.element(x)))]) ++count;
            torsion.push_back(count / hsize);
        }
        // Number of cyclic factors of order >= p^k is log_p(|Q[p^k]| / |Q[p^(k-1)]|).
        std::vector<int> at_least;
        for (std::size_t k = 1; k < torsion.size(); ++k) {
            std::size_t ratio = torsion[k] / torsion[k - 1];
            int e = 0;
            while (ratio > 1) {
                ratio /= static_cast<std::size_t>(p);
                ++e;
            }
            at_least.push_back(e);
        }
        std::vector<std::int64_t> cyclic;  // orders p^k, descending
        for (std::size_t k = at_least.size(); k-- > 0;) {
            const int exact = at_least[k] - (k + 1 < at_least.size() ? at_least[k + 1] : 0);
            std::int64_t order = 1;
            for (std::size_t j = 0; j <= k; ++j) order *= p;
            for (int r = 0; r < exact; ++r) cyclic.push_back(order);
        }
        parts[p] = cyclic;
    }
    std::size_t len = 0;
    for (const auto& [p, c] : parts) len = std::max(len, c.size());
    // Combine the i-th largest p-parts across primes, then list ascending.
    for (std::size_t i = 0; i < len; ++i) {
        std::int64_t d = 1;
        for (const auto& [p, c] : parts)
            if (i < c.size()) d *= c[i];
        out.push_back(static_cast<int>(d));
    }
    std::reverse(out.begin(), out.end());
    return out;
}

void GaloisScenario::validate() const {
    if (places.empty()) throw PreconditionError("scenario has no places");
    if (n < 1) throw PreconditionError("scenario degree n must be positive");
    for (const auto& pl : places) {
        const auto sigma = group.normalize(pl.frobenius);
        if (pl.image.has_value() == pl.t.has_value())
            throw PreconditionError("place '" + pl.label + "' needs exactly one of an image set or a t-invariant");
        if (pl.image) {
            if (pl.image->n != n)
                throw PreconditionError("place '" + pl.label + "' has image modulus " + std::to_string(pl.image->n) +
                                        ", scenario degree is " + std::to_string(n));
            if (std::find(pl.image->classes.begin(), pl.image->classes.end(), 0) == pl.image->classes.end())
                throw PreconditionError("place '" + pl.label + "' image does not contain 0");
            if (group.scale(n, sigma) != group.zero())
                throw PreconditionError("place '" + pl.label + "': n * frobenius must vanish");
        } else if (*pl.t < 1) {
            throw PreconditionError("place '" + pl.label + "' has non-positive t");
        }
    }
}

std::vector<std::size_t> global_image_set(const GaloisScenario& sc) {
    require_images(sc);
    const auto& g = sc.group;
    std::vector<bool> cur(g.order(), false);
    cur[g.index(g.zero())] = true;
    for (const auto& pl : sc.places) {
        std::vector<bool> next(g.order(), false);
        for (auto x : members(cur)) {
            const auto xe = g.element(x);
            for (int s : pl.image->classes) next[g.index(g.add(xe, g.scale(s, pl.frobenius)))] = true;
        }
        cur = std::move(next);
    }
    return members(cur);
}

Subgroup lower_field_subgroup(const GaloisScenario& sc) { return generated_subgroup(sc.group, global_image_set(sc)); }

Subgroup upper_field_subgroup(const GaloisScenario& sc) { return translation_stabilizer(sc.group, global_image_set(sc)); }

Subgroup lower_field_from_t(const GaloisScenario& sc) {
    sc.validate();
    std::vector<std::size_t> gens;
    for (const auto& pl : sc.places) {
        if (!pl.t) throw PreconditionError("place '" + pl.label + "' carries no t-invariant");
        gens.push_back(sc.group.index(sc.group.scale(*pl.t, pl.frobenius)));
    }
    return generated_subgroup(sc.group, gens);
}

GlobalVerdict is_defined_global(const GaloisScenario& sc) {
    GlobalVerdict v;
    v.image = global_image_set(sc);
    v.lower = generated_subgroup(sc.group, v.image);
    v.upper = translation_stabilizer(sc.group, v.image);
    v.image_is_subgroup = is_subgroup(sc.group, v.image);
    v.defined = v.lower == v.upper;
    if (v.defined != v.image_is_subgroup) throw std::logic_error("global definedness criteria disagree");
    return v;
}

}  // namespace repfield
