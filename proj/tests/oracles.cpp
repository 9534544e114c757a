#include "oracles.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <set>

namespace oracle {

std::size_t Ambient::size() const {
    std::size_t s = 1;
    for (std::size_t i = 0; i < n; ++i) s *= static_cast<std::size_t>(m);
    return s;
}

std::size_t Ambient::encode(const std::vector<std::int64_t>& v) const {
    std::size_t x = 0;
    for (auto c : v) x = x * static_cast<std::size_t>(m) + static_cast<std::size_t>(((c % m) + m) % m);
    return x;
}

std::vector<std::int64_t> Ambient::decode(std::size_t x) const {
    std::vector<std::int64_t> v(n);
    for (std::size_t i = n; i-- > 0;) {
        v[i] = static_cast<std::int64_t>(x % static_cast<std::size_t>(m));
        x /= static_cast<std::size_t>(m);
    }
    return v;
}

Ambient ambient(const ModulusRing& ring, std::size_t n) { return {ring.modulus(), n}; }

namespace {

std::vector<std::int64_t> act(const Ambient& a, const std::vector<std::int64_t>& mat, const std::vector<std::int64_t>& v) {
    std::vector<std::int64_t> w(a.n, 0);
    for (std::size_t i = 0; i < a.n; ++i) {
        std::int64_t s = 0;
        for (std::size_t j = 0; j < a.n; ++j) s += mat[i * a.n + j] * v[j];
        w[i] = ((s % a.m) + a.m) % a.m;
    }
    return w;
}

std::vector<std::int64_t> add(const Ambient& a, const std::vector<std::int64_t>& x, const std::vector<std::int64_t>& y) {
    std::vector<std::int64_t> z(a.n);
    for (std::size_t i = 0; i < a.n; ++i) z[i] = (x[i] + y[i]) % a.m;
    return z;
}

ElemSet join_sets(const Ambient& a, const ElemSet& s, const ElemSet& t) {
    // s + t for additive subgroups, which is again invariant when both are.
    ElemSet out(a.size(), false);
    std::vector<std::size_t> ts;
    for (std::size_t y = 0; y < t.size(); ++y)
        if (t[y]) ts.push_back(y);
    for (std::size_t x = 0; x < s.size(); ++x) {
        if (!s[x]) continue;
        const auto xv = a.decode(x);
        for (auto y : ts) out[a.encode(add(a, xv, a.decode(y)))] = true;
    }
    return out;
}

bool contains(const ElemSet& big, const ElemSet& small) {
    for (std::size_t i = 0; i < small.size(); ++i)
        if (small[i] && !big[i]) return false;
    return true;
}

std::vector<ElemSet> joins_of(const Ambient& a, const std::vector<ElemSet>& cyclic) {
    std::set<ElemSet> seen;
    std::deque<ElemSet> queue;
    ElemSet zero(a.size(), false);
    zero[0] = true;
    seen.insert(zero);
    queue.push_back(zero);
    while (!queue.empty()) {
        const ElemSet cur = queue.front();
        queue.pop_front();
        for (const auto& c : cyclic) {
            if (contains(cur, c)) continue;
            ElemSet j = join_sets(a, cur, c);
            if (seen.insert(j).second) queue.push_back(std::move(j));
        }
    }
    return {seen.begin(), seen.end()};
}

}  // namespace

ElemSet closure(const Ambient& a, const std::vector<std::vector<std::int64_t>>& start,
                const std::vector<std::vector<std::int64_t>>& mats) {
    ElemSet in(a.size(), false);
    std::vector<std::size_t> elems{0};
    in[0] = true;
    std::vector<std::vector<std::int64_t>> gens;
    for (const auto& v : start) gens.push_back(v);
    // Grow the set of generators by the images of generators, then close additively.
    for (std::size_t i = 0; i < gens.size(); ++i)
        for (const auto& m : mats) {
            auto w = act(a, m, gens[i]);
            if (std::find(gens.begin(), gens.end(), w) == gens.end()) gens.push_back(std::move(w));
        }
    for (std::size_t i = 0; i < elems.size(); ++i) {
        const auto x = a.decode(elems[i]);
        for (const auto& g : gens) {
            const auto y = a.encode(add(a, x, g));
            if (!in[y]) {
                in[y] = true;
                elems.push_back(y);
            }
        }
    }
    return in;
}

std::size_t count(const ElemSet& s) { return static_cast<std::size_t>(std::count(s.begin(), s.end(), true)); }

std::vector<ElemSet> invariant_sets(const Ambient& a, const std::vector<std::vector<std::int64_t>>& mats) {
    std::set<ElemSet> cyclic;
    for (std::size_t x = 1; x < a.size(); ++x) cyclic.insert(closure(a, {a.decode(x)}, mats));
    return joins_of(a, {cyclic.begin(), cyclic.end()});
}

std::vector<ElemSet> invariant_sets_by_filter(const Ambient& a, const std::vector<std::vector<std::int64_t>>& mats) {
    std::set<ElemSet> cyclic;
    for (std::size_t x = 1; x < a.size(); ++x) cyclic.insert(closure(a, {a.decode(x)}, {}));
    std::vector<ElemSet> out;
    for (auto& s : joins_of(a, {cyclic.begin(), cyclic.end()})) {
        bool stable = true;
        for (std::size_t x = 0; x < s.size() && stable; ++x) {
            if (!s[x]) continue;
            const auto v = a.decode(x);
            for (const auto& m : mats)
                if (!s[a.encode(act(a, m, v))]) {
                    stable = false;
                    break;
                }
        }
        if (stable) out.push_back(std::move(s));
    }
    std::sort(out.begin(), out.end());
    return out;
}

ElemSet row_span_set(const ZMat& rows) {
    const Ambient a = ambient(rows.ring(), rows.cols());
    std::vector<std::vector<std::int64_t>> start;
    for (std::size_t i = 0; i < rows.rows(); ++i) start.emplace_back(rows.row(i).begin(), rows.row(i).end());
    return closure(a, start, {});
}

std::vector<std::vector<std::int64_t>> flat(const std::vector<ZMat>& mats) {
    std::vector<std::vector<std::int64_t>> out;
    for (const auto& m : mats) out.push_back(m.entries());
    return out;
}

std::vector<std::vector<std::int64_t>> flat(const std::vector<FqMat>& mats) {
    std::vector<std::vector<std::int64_t>> out;
    for (const auto& m : mats) out.emplace_back(m.entries().begin(), m.entries().end());
    return out;
}

std::vector<int> colength_classes(const Ambient& a, std::int64_t p, const std::vector<ElemSet>& sets, int modulus) {
    int total_log = 0;
    for (std::size_t s = a.size(); s > 1; s /= static_cast<std::size_t>(p)) ++total_log;
    std::set<int> out;
    for (const auto& s : sets) {
        int lg = 0;
        for (std::size_t c = count(s); c > 1; c /= static_cast<std::size_t>(p)) ++lg;
        out.insert((total_log - lg) % modulus);
    }
    return {out.begin(), out.end()};
}

ModuleProfile module_profile(const std::vector<FqMat>& action) {
    const auto p = action.front().field()->p();
    const std::size_t d = action.front().rows();
    const Ambient a{p, d};
    const auto mats = flat(action);
    auto subs = invariant_sets(a, mats);

    // A composition series: repeatedly step to a smallest invariant subspace above.
    std::vector<ElemSet> chain{subs.front()};
    for (const auto& s : subs)
        if (count(s) == 1) chain.front() = s;
    while (count(chain.back()) < a.size()) {
        const ElemSet* best = nullptr;
        for (const auto& s : subs)
            if (count(s) > count(chain.back()) && contains(s, chain.back()) && (!best || count(s) < count(*best)))
                best = &s;
        chain.push_back(*best);
    }

    // All elements of the span of the identity and the action matrices, as a list.
    std::vector<std::vector<std::int64_t>> span_gens = mats;
    std::vector<std::int64_t> id(d * d, 0);
    for (std::size_t i = 0; i < d; ++i) id[i * d + i] = 1;
    span_gens.push_back(id);
    std::set<std::vector<std::int64_t>> algebra_set{std::vector<std::int64_t>(d * d, 0)};
    for (const auto& g : span_gens) {
        std::vector<std::vector<std::int64_t>> grown;
        for (const auto& x : algebra_set)
            for (std::int64_t c = 1; c < p; ++c) {
                auto y = x;
                for (std::size_t k = 0; k < y.size(); ++k) y[k] = (y[k] + c * g[k]) % p;
                grown.push_back(std::move(y));
            }
        algebra_set.insert(grown.begin(), grown.end());
    }
    const std::vector<std::vector<std::int64_t>> algebra(algebra_set.begin(), algebra_set.end());

    auto log_size = [&](const ElemSet& s) {
        int lg = 0;
        for (std::size_t c = count(s); c > 1; c /= static_cast<std::size_t>(p)) ++lg;
        return lg;
    };
    auto basis_of = [&](const ElemSet& s) {
        std::vector<std::vector<std::int64_t>> basis;
        ElemSet spanned(a.size(), false);
        spanned[0] = true;
        for (std::size_t x = 0; x < s.size(); ++x)
            if (s[x] && !spanned[x]) {
                basis.push_back(a.decode(x));
                spanned = closure(a, basis, {});
            }
        return basis;
    };

    ModuleProfile out;
    std::map<std::vector<bool>, int> classes;
    for (std::size_t i = 1; i < chain.size(); ++i) {
        const int dim = log_size(chain[i]) - log_size(chain[i - 1]);
        out.factor_dims.push_back(dim);
        const auto basis = basis_of(chain[i]);
        // annihilator of chain[i] / chain[i-1] inside the algebra
        std::vector<bool> ann(algebra.size(), false);
        for (std::size_t x = 0; x < algebra.size(); ++x)
            ann[x] = std::all_of(basis.begin(), basis.end(),
                                 [&](const auto& b) { return chain[i - 1][a.encode(act(a, algebra[x], b))]; });
        classes.emplace(ann, dim);
    }
    for (const auto& [ann, dim] : classes) out.distinct_dims.push_back(dim);
    std::sort(out.factor_dims.begin(), out.factor_dims.end());
    std::sort(out.distinct_dims.begin(), out.distinct_dims.end());
    return out;
}

ZMat random_rows(std::mt19937_64& rng, const ModulusRing& ring, std::size_t rows, std::size_t cols) {
    std::uniform_int_distribution<std::int64_t> entry(0, ring.modulus() - 1);
    std::uniform_int_distribution<int> val(0, ring.precision());
    ZMat m(ring, rows, cols);
    for (std::size_t i = 0; i < rows; ++i) {
        // Mix in p-power scalings so that non-free modules are common.
        const std::int64_t s = ring.power(std::min(val(rng), ring.precision() - 1));
        for (std::size_t j = 0; j < cols; ++j) m.set(i, j, entry(rng) * s);
    }
    return m;
}

ZMat regenerate(std::mt19937_64& rng, const ZMat& rows) {
    const auto& ring = rows.ring();
    const std::size_t k = rows.rows(), n = rows.cols();
    std::vector<std::vector<std::int64_t>> r;
    for (std::size_t i = 0; i < k; ++i) r.emplace_back(rows.row(i).begin(), rows.row(i).end());
    if (k == 0) return rows;
    std::uniform_int_distribution<std::size_t> pick(0, k - 1);
    std::uniform_int_distribution<std::int64_t> entry(0, ring.modulus() - 1);
    // Invertible row operations: add multiples, scale by units, swap.
    for (int step = 0; step < 12; ++step) {
        const std::size_t i = pick(rng), j = pick(rng);
        if (i != j) {
            const std::int64_t c = entry(rng);
            for (std::size_t t = 0; t < n; ++t) r[i][t] = ring.add(r[i][t], ring.mul(c, r[j][t]));
        }
        std::int64_t u = entry(rng);
        if (u % ring.p() == 0) u += 1;
        for (auto& x : r[i]) x = ring.mul(x, u);
        std::swap(r[i], r[j]);
    }
    // Redundant combinations.
    for (int extra = 0; extra < 2; ++extra) {
        std::vector<std::int64_t> v(n, 0);
        for (const auto& row : r) {
            const std::int64_t c = entry(rng);
            for (std::size_t t = 0; t < n; ++t) v[t] = ring.add(v[t], ring.mul(c, row[t]));
        }
        r.push_back(v);
    }
    std::shuffle(r.begin(), r.end(), rng);
    ZMat out(ring, 0, n);
    for (const auto& row : r) out.append_row(row);
    return out;
}

}  // namespace oracle
