#include "repfield/residual.hpp"

#include <algorithm>
#include <numeric>
#include <optional>
#include <random>
#include <stdexcept>

#include "repfield/errors.hpp"

namespace repfield {

namespace {

using Elem = FiniteField::Elem;

FqMat square(const FieldPtr& f, std::size_t n, std::span<const Elem> entries) {
    return FqMat(f, n, n, std::vector<Elem>(entries.begin(), entries.end()));
}

// Incremental echelon basis with pivot-normalized rows, used for spinning.
class Echelon {
  public:
    Echelon(FieldPtr f, std::size_t dim) : f_(std::move(f)), dim_(dim) {}

    // Reduces v against the basis; inserts and returns true if it was independent.
    bool insert(std::vector<Elem> v) {
        const auto& F = *f_;
        for (std::size_t i = 0; i < rows_.size(); ++i) {
            const Elem c = v[piv_[i]];
            if (c == 0) continue;
            for (std::size_t k = 0; k < dim_; ++k)
                if (rows_[i][k] != 0) v[k] = F.sub(v[k], F.mul(c, rows_[i][k]));
        }
        auto it = std::find_if(v.begin(), v.end(), [](Elem x) { return x != 0; });
        if (it == v.end()) return false;
        const std::size_t p = static_cast<std::size_t>(it - v.begin());
        const Elem inv = F.inv(v[p]);
        for (auto& x : v) x = F.mul(x, inv);
        rows_.push_back(v);
        piv_.push_back(p);
        return true;
    }

    std::size_t size() const { return rows_.size(); }
    const std::vector<Elem>& operator[](std::size_t i) const { return rows_[i]; }

    FqMat matrix() const {
        FqMat m(f_, 0, dim_);
        for (const auto& r : rows_) m.append_row(r);
        rref(m);
        return m;
    }

  private:
    FieldPtr f_;
    std::size_t dim_;
    std::vector<std::vector<Elem>> rows_;
    std::vector<std::size_t> piv_;
};

// Basis of the algebra generated by the action (including the identity).
std::vector<FqMat> enveloping_basis(std::span<const FqMat> action) {
    const auto& f = action.front().field();
    const std::size_t d = action.front().rows();
    Echelon ech(f, d * d);
    std::vector<FqMat> basis;
    auto add = [&](const FqMat& m) {
        if (ech.insert(m.entries())) basis.push_back(m);
    };
    add(FqMat::identity(f, d));
    for (const auto& a : action) add(a);
    for (std::size_t i = 0; i < basis.size(); ++i)
        for (const auto& a : action) add(a * basis[i]);
    return basis;
}

FqMat random_element(std::span<const FqMat> env, std::mt19937_64& rng) {
    const auto& f = env.front().field();
    std::uniform_int_distribution<std::uint32_t> dist(0, f->size() - 1);
    FqMat out(f, env.front().rows(), env.front().cols());
    for (const auto& b : env) out = out + b.scaled(dist(rng));
    return out;
}

std::vector<FqMat> transposes(std::span<const FqMat> action) {
    std::vector<FqMat> out;
    for (const auto& a : action) out.push_back(a.transposed());
    return out;
}

// A proper nonzero submodule (RREF rows), or nothing when the module is irreducible.
std::optional<FqMat> find_submodule(std::span<const FqMat> action, std::mt19937_64& rng) {
    const std::size_t d = action.front().rows();
    const auto env = enveloping_basis(action);
    if (env.size() == d * d) return std::nullopt;  // full matrix algebra: absolutely irreducible
    const auto& F = *action.front().field();
    const auto trans = transposes(action);
    for (int attempt = 0; attempt < 400; ++attempt) {
        const FqMat theta = random_element(env, rng);
        const auto factors = poly::irreducible_factors(F, characteristic_polynomial(theta), rng);
        for (const auto& fac : factors) {
            const FqMat kernel_map = poly::evaluate(fac, theta);
            const FqMat ker = nullspace(kernel_map);
            const FqMat w = spin_vector(action, ker.row(0));
            if (w.rows() < d) return w;
            if (ker.rows() != static_cast<std::size_t>(poly::degree(fac))) continue;
            // Norton: if v spins to everything, either the module is irreducible or
            // a vector in ker f(theta)^T spins to a proper submodule of the dual.
            const FqMat ker_t = nullspace(kernel_map.transposed());
            const FqMat wt = spin_vector(trans, ker_t.row(0));
            if (wt.rows() == d) return std::nullopt;
            FqMat ann = nullspace(wt);
            rref(ann);
            return ann;
        }
    }
    throw std::runtime_error("meataxe failed to decide irreducibility");
}

struct Split {
    std::vector<FqMat> sub;
    std::vector<FqMat> quotient;
};

// Action on W and on V/W in a basis adapted to W.
Split split(std::span<const FqMat> action, FqMat w) {
    const auto& f = action.front().field();
    const std::size_t d = action.front().rows();
    const auto piv = rref(w);
    const std::size_t s = w.rows();
    FqMat p(f, d, d);
    for (std::size_t j = 0; j < s; ++j)
        for (std::size_t i = 0; i < d; ++i) p.at(i, j) = w(j, i);
    std::size_t col = s;
    for (std::size_t i = 0; i < d; ++i)
        if (std::find(piv.begin(), piv.end(), i) == piv.end()) p.at(i, col++) = 1;
    const FqMat pinv = inverse(p);
    Split out;
    for (const auto& a : action) {
        const FqMat b = pinv * a * p;
        FqMat sub(f, s, s), quo(f, d - s, d - s);
        for (std::size_t i = 0; i < s; ++i)
            for (std::size_t j = 0; j < s; ++j) sub.at(i, j) = b(i, j);
        for (std::size_t i = s; i < d; ++i)
            for (std::size_t j = s; j < d; ++j) quo.at(i - s, j - s) = b(i, j);
        out.sub.push_back(std::move(sub));
        out.quotient.push_back(std::move(quo));
    }
    return out;
}

void chop_into(std::vector<FqMat> action, std::mt19937_64& rng, std::vector<std::vector<FqMat>>& out) {
    const std::size_t d = action.front().rows();
    if (d == 0) return;
    if (d == 1) {
        out.push_back(std::move(action));
        return;
    }
    auto w = find_submodule(action, rng);
    if (!w) {
        out.push_back(std::move(action));
        return;
    }
    auto parts = split(action, std::move(*w));
    chop_into(std::move(parts.sub), rng, out);
    chop_into(std::move(parts.quotient), rng, out);
}

}  // namespace

ResidualAlgebra::ResidualAlgebra(FieldPtr field, std::size_t n, std::span<const FqMat> spanning)
    : field_(std::move(field)), n_(n) {
    FqMat flat(field_, 0, n * n);
    for (const auto& m : spanning) {
        if (m.rows() != n || m.cols() != n) throw TypeError("residual element has wrong shape");
        flat.append_row(m.entries());
    }
    pivots_ = rref(flat);
    for (std::size_t i = 0; i < flat.rows(); ++i) basis_.push_back(square(field_, n, flat.row(i)));
    if (!contains(FqMat::identity(field_, n))) throw PreconditionError("residual algebra is not unital");
    for (const auto& a : basis_)
        for (const auto& b : basis_)
            if (!contains(a * b)) throw PreconditionError("residual span is not closed under multiplication");
}

bool ResidualAlgebra::contains(const FqMat& x) const {
    const auto& F = *field_;
    std::vector<Elem> rest = x.entries();
    for (std::size_t i = 0; i < basis_.size(); ++i) {
        const Elem c = rest[pivots_[i]];
        if (c == 0) continue;
        const auto& b = basis_[i].entries();
        for (std::size_t k = 0; k < rest.size(); ++k)
            if (b[k] != 0) rest[k] = F.sub(rest[k], F.mul(c, b[k]));
    }
    return std::all_of(rest.begin(), rest.end(), [](Elem e) { return e == 0; });
}

std::vector<Elem> ResidualAlgebra::coordinates(const FqMat& x) const {
    if (!contains(x)) throw PreconditionError("element is outside the residual algebra");
    std::vector<Elem> c(basis_.size());
    for (std::size_t i = 0; i < basis_.size(); ++i) c[i] = x.entries()[pivots_[i]];
    return c;
}

std::vector<FqMat> ResidualAlgebra::regular_representation() const {
    const std::size_t k = basis_.size();
    std::vector<FqMat> out;
    for (const auto& a : basis_) {
        FqMat l(field_, k, k);
        for (std::size_t j = 0; j < k; ++j) {
            const auto c = coordinates(a * basis_[j]);
            for (std::size_t i = 0; i < k; ++i) l.at(i, j) = c[i];
        }
        out.push_back(std::move(l));
    }
    return out;
}

ResidualAlgebra ResidualAlgebra::extended(int d) const {
    if (d == 1) return *this;
    auto ext = scalar_extend(basis_, d);
    return ResidualAlgebra(ext.front().field(), n_, ext);
}

ResidualAlgebra generate_algebra(FieldPtr field, std::size_t n, std::span<const FqMat> gens) {
    std::vector<FqMat> action(gens.begin(), gens.end());
    if (action.empty()) action.push_back(FqMat::identity(field, n));
    for (const auto& g : action)
        if (g.rows() != n || g.cols() != n) throw TypeError("generator has wrong shape");
    return ResidualAlgebra(field, n, enveloping_basis(action));
}

ResidualAlgebra residual_algebra(const LocalOrder& h) {
    if (!h.closed()) throw PreconditionError("residual algebra needs a closed order");
    const auto p = h.ring().p();
    auto f = FiniteField::create(p, 1);
    std::vector<FqMat> mats;
    for (const auto& g : h.generators()) {
        std::vector<Elem> e;
        for (auto x : g.entries()) e.push_back(static_cast<Elem>(x % p));
        mats.emplace_back(f, h.n(), h.n(), std::move(e));
    }
    return ResidualAlgebra(f, h.n(), mats);
}

FqMat spin_vector(std::span<const FqMat> action, std::span<const Elem> v) {
    const auto& f = action.front().field();
    const std::size_t d = action.front().rows();
    Echelon ech(f, d);
    std::vector<std::vector<Elem>> found;
    if (ech.insert(std::vector<Elem>(v.begin(), v.end()))) found.emplace_back(v.begin(), v.end());
    for (std::size_t i = 0; i < found.size(); ++i)
        for (const auto& a : action) {
            auto w = a.apply(found[i]);
            if (ech.insert(w)) found.push_back(std::move(w));
        }
    return ech.matrix();
}

bool irreducibles_isomorphic(std::span<const FqMat> a, std::span<const FqMat> b) {
    if (a.size() != b.size()) throw TypeError("modules have different generator counts");
    if (a.empty()) return true;
    const std::size_t d = a.front().rows();
    if (b.front().rows() != d) return false;
    const auto& f = a.front().field();
    const auto& F = *f;
    // Unknown X (d x d, row-major) with X A_i = B_i X.
    FqMat eqs(f, 0, d * d);
    std::vector<Elem> row(d * d);
    for (std::size_t g = 0; g < a.size(); ++g)
        for (std::size_t r = 0; r < d; ++r)
            for (std::size_t c = 0; c < d; ++c) {
                std::fill(row.begin(), row.end(), 0);
                for (std::size_t k = 0; k < d; ++k) {
                    row[r * d + k] = F.add(row[r * d + k], a[g](k, c));
                    row[k * d + c] = F.sub(row[k * d + c], b[g](r, k));
                }
                eqs.append_row(row);
            }
    // Schur: any nonzero intertwiner between irreducibles is invertible.
    return rank(eqs) < d * d;
}

ChopResult chop_module(std::span<const FqMat> action, std::uint64_t seed) {
    if (action.empty()) throw PreconditionError("chop needs at least one action matrix");
    std::mt19937_64 rng(seed);
    std::vector<std::vector<FqMat>> pieces;
    chop_into(std::vector<FqMat>(action.begin(), action.end()), rng, pieces);
    ChopResult out;
    std::vector<std::size_t> reps;
    for (auto& piece : pieces) {
        CompositionFactor cf;
        cf.dimension = piece.front().rows();
        cf.action = std::move(piece);
        std::size_t cls = reps.size();
        for (std::size_t r = 0; r < reps.size(); ++r)
            if (out.class_dims[r] == cf.dimension && irreducibles_isomorphic(out.factors[reps[r]].action, cf.action)) {
                cls = r;
                break;
            }
        if (cls == reps.size()) {
            reps.push_back(out.factors.size());
            out.class_dims.push_back(cf.dimension);
        }
        cf.iso_class = cls;
        out.factors.push_back(std::move(cf));
    }
    return out;
}

ChopResult chop(const ResidualAlgebra& a, ModuleKind kind, std::uint64_t seed) {
    if (kind == ModuleKind::natural) return chop_module(a.basis(), seed);
    return chop_module(a.regular_representation(), seed);
}

IrreducibleProfile irreducible_profile(const ResidualAlgebra& a, int ext_degree, std::uint64_t seed) {
    const ResidualAlgebra ext = a.extended(ext_degree);
    const ChopResult res = chop(ext, ModuleKind::regular, seed);
    IrreducibleProfile out;
    for (auto d : res.class_dims) out.dims.push_back(static_cast<int>(d));
    std::sort(out.dims.begin(), out.dims.end());
    out.t = 0;
    for (int d : out.dims) out.t = std::gcd(out.t, d);
    out.uniform = std::adjacent_find(out.dims.begin(), out.dims.end(), std::not_equal_to<>()) == out.dims.end();
    return out;
}

IrreducibleProfile irreducible_profile(const LocalOrder& h, int ext_degree, std::uint64_t seed) {
    return irreducible_profile(residual_algebra(h), ext_degree, seed);
}

}  // namespace repfield
