#include "repfield/orders.hpp"

#include <algorithm>
#include <boost/multiprecision/cpp_int.hpp>

#include "repfield/errors.hpp"

namespace repfield {

std::vector<std::int64_t> flatten(const ZMat& m) { return m.entries(); }

ZMat unflatten(const ModulusRing& ring, std::size_t n, std::span<const std::int64_t> entries) {
    return ZMat(ring, n, n, std::vector<std::int64_t>(entries.begin(), entries.end()));
}

ZMat matrix_unit(const ModulusRing& ring, std::size_t n, std::size_t i, std::size_t j, std::int64_t s) {
    ZMat m(ring, n, n);
    m.set(i, j, s);
    return m;
}

namespace {

ZMat flattened_span(const ModulusRing& ring, std::size_t n, std::span<const ZMat> gens) {
    ZMat rows(ring, 0, n * n);
    for (const auto& g : gens) {
        if (!(g.ring() == ring)) throw TypeError("generator over " + g.ring().name() + ", expected " + ring.name());
        if (g.rows() != n || g.cols() != n) throw TypeError("generator has wrong size");
        rows.append_row(g.entries());
    }
    return howell_form(rows);
}

void require_identity(const ZMat& span, const ModulusRing& ring, std::size_t n) {
    if (!in_span(span, flatten(ZMat::identity(ring, n))))
        throw PreconditionError("generators do not span the identity");
}

}  // namespace

LocalOrder::LocalOrder(ModulusRing ring, std::size_t n, std::span<const ZMat> gens)
    : n_(n), span_(flattened_span(ring, n, gens)) {
    require_identity(span_, ring, n);
}

std::vector<ZMat> LocalOrder::generators() const {
    std::vector<ZMat> out;
    out.reserve(span_.rows());
    for (std::size_t i = 0; i < span_.rows(); ++i) out.push_back(unflatten(ring(), n_, span_.row(i)));
    return out;
}

LocalOrder LocalOrder::reduced_to(int precision) const {
    return LocalOrder(n_, howell_form(span_.reduced_to(precision)), closed_);
}

LocalOrder close(const ModulusRing& ring, std::size_t n, std::span<const ZMat> gens) {
    ZMat cur = flattened_span(ring, n, gens);
    require_identity(cur, ring, n);
    // Spans of words of growing length; the identity is a word of length zero.
    for (;;) {
        ZMat next = cur;
        for (const auto& g : gens)
            for (std::size_t i = 0; i < cur.rows(); ++i) {
                auto prod = g * unflatten(ring, n, cur.row(i));
                if (!in_span(cur, prod.entries())) next.append_row(prod.entries());
            }
        if (next.rows() == cur.rows()) break;
        cur = howell_form(next);
    }
    return LocalOrder(n, std::move(cur), true);
}

LocalOrder close(const LocalOrder& h) {
    auto gens = h.generators();
    return close(h.ring(), h.n(), gens);
}

UnramifiedEmbedding::UnramifiedEmbedding(std::size_t n, std::int64_t p, int precision)
    : ring_(p, precision), n_(n), quadratic_(least_irreducible(p, 2)), omega_(ring_, 2, 2) {
    omega_.set(0, 1, -quadratic_[0]);
    omega_.set(1, 0, 1);
    omega_.set(1, 1, -quadratic_[1]);
}

ZMat UnramifiedEmbedding::unit(std::size_t i, std::size_t j, std::int64_t a, std::int64_t b) const {
    if (i >= n_ || j >= n_) throw TypeError("matrix unit index out of range");
    ZMat out(ring_, 2 * n_, 2 * n_);
    for (std::size_t r = 0; r < 2; ++r)
        for (std::size_t c = 0; c < 2; ++c) {
            std::int64_t v = b * omega_(r, c) + (r == c ? a : 0);
            out.set(2 * i + r, 2 * j + c, v);
        }
    return out;
}

ZMat UnramifiedEmbedding::operator()(std::span<const std::pair<std::int64_t, std::int64_t>> entries) const {
    if (entries.size() != n_ * n_) throw TypeError("expected " + std::to_string(n_ * n_) + " entries");
    ZMat out(ring_, 2 * n_, 2 * n_);
    for (std::size_t i = 0; i < n_; ++i)
        for (std::size_t j = 0; j < n_; ++j) {
            const auto [a, b] = entries[i * n_ + j];
            out = out + unit(i, j, a, b);
        }
    return out;
}

UnramifiedEmbedding embed_unramified(std::size_t n, std::int64_t p, int precision) {
    return UnramifiedEmbedding(n, p, precision);
}

LocalOrder build_mord(std::int64_t p, int precision) {
    const auto phi = embed_unramified(2, p, precision);
    std::vector<ZMat> gens{
        phi.unit(0, 0, 1, 0),  // O_k 1_E in the corner
        phi.unit(0, 1, 1, 0), phi.unit(0, 1, 0, 1),  // O_E
        phi.unit(1, 1, 1, 0), phi.unit(1, 1, 0, 1),  // O_E
    };
    for (std::size_t i = 0; i < 2; ++i)
        for (std::size_t j = 0; j < 2; ++j) {
            gens.push_back(phi.unit(i, j, p, 0));
            gens.push_back(phi.unit(i, j, 0, p));
        }
    return close(phi.ring(), 4, gens);
}

LocalOrder maximal_order(std::int64_t p, int precision, std::size_t n) {
    ModulusRing ring(p, precision);
    std::vector<ZMat> gens;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) gens.push_back(matrix_unit(ring, n, i, j));
    return close(ring, n, gens);
}

LocalOrder build_residual_preimage(std::span<const FqMat> residual_gens, std::size_t n, int precision) {
    if (residual_gens.empty()) throw PreconditionError("residual algebra needs generators");
    const auto& F = residual_gens.front().field();
    if (F->degree() != 1) throw TypeError("residual generators must lie over a prime field");
    FqMat flat(F, 0, n * n);
    for (const auto& g : residual_gens) {
        if (!g.field()->same_as(*F)) throw TypeError("mixed fields in residual generators");
        if (g.rows() != n || g.cols() != n) throw TypeError("residual generator has wrong size");
        flat.append_row(g.entries());
    }
    // Unital check: the identity lies in the F_p-span.
    {
        FqMat with_id = flat;
        std::vector<FiniteField::Elem> id(n * n, 0);
        for (std::size_t i = 0; i < n; ++i) id[i * n + i] = 1;
        with_id.append_row(id);
        if (rank(with_id) != rank(flat)) throw PreconditionError("residual algebra is not unital");
    }
    ModulusRing ring(F->p(), precision);
    std::vector<ZMat> gens;
    for (const auto& g : residual_gens) {
        std::vector<std::int64_t> e(g.entries().begin(), g.entries().end());
        gens.emplace_back(ring, n, n, std::move(e));
    }
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) gens.push_back(matrix_unit(ring, n, i, j, F->p()));
    return close(ring, n, gens);
}

LocalOrder build_block_triangular(std::span<const LocalOrder> components, std::span<const int> exponents,
                                  int off_diagonal_depth) {
    if (components.empty()) throw PreconditionError("no components");
    if (exponents.size() != components.size()) throw PreconditionError("one exponent per component required");
    for (std::size_t i = 1; i < exponents.size(); ++i)
        if (exponents[i] < exponents[i - 1]) throw PreconditionError("exponents must be nondecreasing");
    const ModulusRing ring = components.front().ring();
    for (const auto& c : components)
        if (!(c.ring() == ring)) throw TypeError("components over different rings");
    if (off_diagonal_depth < 0 || off_diagonal_depth > ring.precision())
        throw PreconditionError("off-diagonal depth must lie in [0, precision]");
    for (int t : exponents)
        if (t < 0 || t >= ring.precision())
            throw ResourceError("block exponent " + std::to_string(t) + " does not fit the precision", t + 1,
                                static_cast<unsigned long long>(ring.precision()));

    std::size_t n = 0;
    std::vector<std::size_t> offset;
    for (const auto& c : components) {
        offset.push_back(n);
        n += c.n();
    }
    std::vector<ZMat> gens;
    for (std::size_t b = 0; b < components.size(); ++b) {
        for (const auto& g : components[b].generators()) {
            ZMat big(ring, n, n);
            for (std::size_t r = 0; r < g.rows(); ++r)
                for (std::size_t c = 0; c < g.cols(); ++c) big.set(offset[b] + r, offset[b] + c, g(r, c));
            gens.push_back(std::move(big));
        }
    }
    // Block-diagonal identity, in case a component basis omits it.
    gens.push_back(ZMat::identity(ring, n));
    for (std::size_t bi = 0; bi < components.size(); ++bi)
        for (std::size_t bj = bi + 1; bj < components.size(); ++bj) {
            const int e = std::min(ring.precision(), off_diagonal_depth + exponents[bj] - exponents[bi]);
            const std::int64_t s = ring.power(e);
            if (s == 0) continue;
            for (std::size_t r = 0; r < components[bi].n(); ++r)
                for (std::size_t c = 0; c < components[bj].n(); ++c)
                    gens.push_back(matrix_unit(ring, n, offset[bi] + r, offset[bj] + c, s));
        }
    return close(ring, n, gens);
}

LocalOrder deep_lift(const LocalOrder& h0, int depth) {
    const auto& ring = h0.ring();
    if (depth < 0 || depth > ring.precision()) throw PreconditionError("lift depth must lie in [0, precision]");
    auto gens = h0.generators();
    const std::int64_t s = ring.power(depth);
    if (s != 0)
        for (std::size_t i = 0; i < h0.n(); ++i)
            for (std::size_t j = 0; j < h0.n(); ++j) gens.push_back(matrix_unit(ring, h0.n(), i, j, s));
    return close(ring, h0.n(), gens);
}

PrimitivityCertificate primitivity_certificate(const LocalOrder& h, int depth, std::uint64_t cap) {
    if (depth < 0) throw PreconditionError("certificate depth must be >= 0");
    if (depth + 1 > h.ring().precision())
        throw PreconditionError("certificate at depth " + std::to_string(depth) + " needs precision " +
                                std::to_string(depth + 1) + ", order has " + std::to_string(h.ring().precision()));
    const ModulusRing ring = h.ring().with_precision(depth + 1);
    const std::size_t n = h.n();
    const std::uint64_t total = ambient_size(ring, n);
    if (total > cap) throw ResourceError("primitivity certificate at depth " + std::to_string(depth) + " exceeds cap", total, cap);

    const auto gens = h.reduced_to(depth + 1).generators();
    const Submodule target(ZMat::identity(ring, n).scaled(ring.power(depth)));

    PrimitivityCertificate cert;
    cert.depth = depth;
    // Spins are unchanged by unit scaling: normalize the first unit coordinate to 1.
    bool ok = true;
    for (std::size_t lead = 0; lead < n && ok; ++lead) {
        for_each_vector(ring, n, [&](std::span<const std::int64_t> v) {
            if (!ok || v[lead] != 1) return;
            for (std::size_t i = 0; i < lead; ++i)
                if (v[i] % ring.p() != 0) return;
            if (!spin(gens, v).contains(target)) {
                ok = false;
                cert.failing_vector = std::vector<std::int64_t>(v.begin(), v.end());
            }
        });
    }
    cert.verified = ok;
    return cert;
}

int rational_algebra_dimension(std::span<const std::vector<std::int64_t>> gens, std::size_t n) {
    using boost::multiprecision::cpp_int;
    using boost::multiprecision::cpp_rational;
    using RMat = std::vector<cpp_int>;

    std::vector<std::pair<std::size_t, std::vector<cpp_rational>>> echelon;  // (pivot, row with pivot 1)
    auto insert = [&](const RMat& m) {
        std::vector<cpp_rational> v(m.begin(), m.end());
        for (const auto& [piv, row] : echelon) {
            if (v[piv] == 0) continue;
            const cpp_rational f = v[piv];
            for (std::size_t k = piv; k < v.size(); ++k) v[k] -= f * row[k];
        }
        auto it = std::find_if(v.begin(), v.end(), [](const cpp_rational& x) { return x != 0; });
        if (it == v.end()) return false;
        const std::size_t piv = static_cast<std::size_t>(it - v.begin());
        const cpp_rational lead = v[piv];
        for (auto& x : v) x /= lead;
        auto pos = std::lower_bound(echelon.begin(), echelon.end(), piv, [](const auto& e, std::size_t p) { return e.first < p; });
        echelon.insert(pos, {piv, std::move(v)});
        return true;
    };
    auto mul = [&](const RMat& a, const RMat& b) {
        RMat c(n * n, 0);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t k = 0; k < n; ++k) {
                if (a[i * n + k] == 0) continue;
                for (std::size_t j = 0; j < n; ++j) c[i * n + j] += a[i * n + k] * b[k * n + j];
            }
        return c;
    };

    std::vector<RMat> gmats;
    for (const auto& g : gens) {
        if (g.size() != n * n) throw TypeError("generator has wrong size");
        gmats.emplace_back(g.begin(), g.end());
    }
    RMat id(n * n, 0);
    for (std::size_t i = 0; i < n; ++i) id[i * n + i] = 1;
    std::vector<RMat> words{id};
    insert(id);
    for (std::size_t w = 0; w < words.size(); ++w)
        for (const auto& g : gmats) {
            RMat prod = mul(g, words[w]);
            if (insert(prod)) words.push_back(std::move(prod));
        }
    return static_cast<int>(echelon.size());
}

}  // namespace repfield
