#include "repfield/lattices.hpp"

#include <algorithm>
#include <deque>
#include <limits>
#include <unordered_set>

#include "repfield/errors.hpp"

namespace repfield {

namespace {

void check_ambient(const Submodule& a, const Submodule& b) {
    if (!(a.ring() == b.ring()) || a.dimension() != b.dimension())
        throw TypeError("ambient mismatch: " + a.ring().name() + "^" + std::to_string(a.dimension()) + " vs " +
                        b.ring().name() + "^" + std::to_string(b.dimension()));
}

void check_gens(std::span<const ZMat> gens, const ModulusRing& ring, std::size_t n) {
    for (const auto& g : gens) {
        if (!(g.ring() == ring)) throw TypeError("generator over " + g.ring().name() + ", expected " + ring.name());
        if (g.rows() != n || g.cols() != n)
            throw TypeError("generator is " + std::to_string(g.rows()) + "x" + std::to_string(g.cols()) + ", expected " +
                            std::to_string(n) + "x" + std::to_string(n));
    }
}

}  // namespace

Submodule::Submodule(ModulusRing ring, std::size_t n) : basis_(ring, 0, n) {}

Submodule::Submodule(const ZMat& rows) : basis_(howell_form(rows)) {}

Submodule Submodule::full(ModulusRing ring, std::size_t n) { return Submodule(ZMat::identity(ring, n)); }

bool Submodule::contains(const Submodule& o) const {
    check_ambient(*this, o);
    for (std::size_t i = 0; i < o.basis_.rows(); ++i)
        if (!in_span(basis_, o.basis_.row(i))) return false;
    return true;
}

DistanceClass colength_class(const Submodule& l, int modulus) {
    const int n = modulus > 0 ? modulus : static_cast<int>(l.dimension());
    return {n, ((l.colength() % n) + n) % n};
}

Submodule join(const Submodule& a, const Submodule& b) {
    check_ambient(a, b);
    return Submodule(vstack(a.basis(), b.basis()));
}

// Zassenhaus: rows (x, x) for x in A and (y, 0) for y in B; the rows of the
// Howell form that vanish on the first half span A meet B in the second half.
Submodule meet(const Submodule& a, const Submodule& b) {
    check_ambient(a, b);
    const std::size_t n = a.dimension();
    ZMat big(a.ring(), 0, 2 * n);
    std::vector<std::int64_t> row(2 * n);
    for (std::size_t i = 0; i < a.basis().rows(); ++i) {
        auto r = a.basis().row(i);
        std::copy(r.begin(), r.end(), row.begin());
        std::copy(r.begin(), r.end(), row.begin() + static_cast<std::ptrdiff_t>(n));
        big.append_row(row);
    }
    for (std::size_t i = 0; i < b.basis().rows(); ++i) {
        auto r = b.basis().row(i);
        std::copy(r.begin(), r.end(), row.begin());
        std::fill(row.begin() + static_cast<std::ptrdiff_t>(n), row.end(), 0);
        big.append_row(row);
    }
    const ZMat h = howell_form(big);
    const auto piv = pivot_columns(h);
    ZMat out(a.ring(), 0, n);
    for (std::size_t i = 0; i < h.rows(); ++i) {
        if (piv[i] < n) continue;
        auto r = h.row(i);
        out.append_row(r.subspan(n));
    }
    return Submodule(out);
}

Submodule spin(std::span<const ZMat> gens, const Submodule& start) {
    check_gens(gens, start.ring(), start.dimension());
    ZMat cur = start.basis();
    for (;;) {
        ZMat next = cur;
        for (const auto& g : gens)
            for (std::size_t i = 0; i < cur.rows(); ++i) {
                auto img = g.apply(cur.row(i));
                if (!in_span(cur, img)) next.append_row(img);
            }
        if (next.rows() == cur.rows()) return Submodule(cur);
        cur = howell_form(next);
    }
}

Submodule spin(std::span<const ZMat> gens, std::span<const std::int64_t> v) {
    if (gens.empty()) throw PreconditionError("spin needs at least one generator");
    ZMat start(gens.front().ring(), 0, v.size());
    start.append_row(v);
    return spin(gens, Submodule(start));
}

bool is_invariant(std::span<const ZMat> gens, const Submodule& l) {
    check_gens(gens, l.ring(), l.dimension());
    for (const auto& g : gens)
        for (std::size_t i = 0; i < l.basis().rows(); ++i)
            if (!l.contains(g.apply(l.basis().row(i)))) return false;
    return true;
}

std::uint64_t ambient_size(const ModulusRing& ring, std::size_t n) {
    std::uint64_t total = 1;
    const auto m = static_cast<std::uint64_t>(ring.modulus());
    for (std::size_t i = 0; i < n; ++i) {
        if (total > std::numeric_limits<std::uint64_t>::max() / m) return std::numeric_limits<std::uint64_t>::max();
        total *= m;
    }
    return total;
}

void for_each_vector(const ModulusRing& ring, std::size_t n, const std::function<void(std::span<const std::int64_t>)>& f) {
    std::vector<std::int64_t> v(n, 0);
    const auto m = ring.modulus();
    for (;;) {
        f(v);
        std::size_t i = n;
        while (i > 0) {
            --i;
            if (++v[i] < m) break;
            v[i] = 0;
            if (i == 0) return;
        }
        if (n == 0) return;
    }
}

void visit_invariant_submodules(const ModulusRing& ring, std::size_t n, std::span<const ZMat> gens, std::uint64_t cap,
                                const std::function<bool(const Submodule&)>& visit) {
    check_gens(gens, ring, n);
    const std::uint64_t total = ambient_size(ring, n);
    if (total > cap)
        throw ResourceError("invariant enumeration over " + ring.name() + "^" + std::to_string(n) + " exceeds cap", total, cap);

    // Cyclic invariant submodules: spins of vectors whose leading entry is a power of p.
    // Unit multiples have the same spin, so this covers every nonzero vector.
    std::vector<Submodule> cyclic;
    std::unordered_set<Submodule, SubmoduleHash> cyclic_seen;
    for_each_vector(ring, n, [&](std::span<const std::int64_t> v) {
        auto it = std::find_if(v.begin(), v.end(), [](auto x) { return x != 0; });
        if (it == v.end()) return;
        const std::int64_t lead = *it;
        if (lead != ring.power(ring.valuation(lead))) return;
        ZMat start(ring, 0, n);
        start.append_row(v);
        Submodule s = gens.empty() ? Submodule(start) : spin(gens, Submodule(start));
        if (cyclic_seen.insert(s).second) cyclic.push_back(std::move(s));
    });

    // Every invariant submodule is a join of cyclic ones.
    std::unordered_set<Submodule, SubmoduleHash> seen;
    std::deque<Submodule> queue;
    Submodule zero(ring, n);
    seen.insert(zero);
    queue.push_back(zero);
    if (!visit(zero)) return;
    while (!queue.empty()) {
        Submodule cur = std::move(queue.front());
        queue.pop_front();
        for (const auto& c : cyclic) {
            if (cur.contains(c)) continue;
            Submodule j = join(cur, c);
            if (seen.insert(j).second) {
                if (!visit(j)) return;
                queue.push_back(std::move(j));
            }
        }
    }
}

std::vector<Submodule> invariant_submodules(const ModulusRing& ring, std::size_t n, std::span<const ZMat> gens,
                                            std::uint64_t cap) {
    std::vector<Submodule> out;
    visit_invariant_submodules(ring, n, gens, cap, [&](const Submodule& s) {
        out.push_back(s);
        return true;
    });
    std::sort(out.begin(), out.end(), [](const Submodule& a, const Submodule& b) {
        const int la = a.log_size(), lb = b.log_size();
        if (la != lb) return la < lb;
        return a.basis().entries() < b.basis().entries();
    });
    return out;
}

}  // namespace repfield
