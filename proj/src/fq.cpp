#include "repfield/fq.hpp"

#include <algorithm>
#include <sstream>

#include "repfield/errors.hpp"
#include "repfield/modring.hpp"

namespace repfield {

namespace {

constexpr std::uint64_t kMaxFieldSize = std::uint64_t{1} << 20;

using IntPoly = std::vector<std::int64_t>;

void trim_int(IntPoly& f) {
    while (!f.empty() && f.back() == 0) f.pop_back();
}

// Remainder of a by a monic b over F_p.
IntPoly int_mod(IntPoly a, const IntPoly& b, std::int64_t p) {
    trim_int(a);
    const std::size_t db = b.size() - 1;
    while (a.size() > db && !a.empty()) {
        const std::int64_t lead = a.back();
        const std::size_t shift = a.size() - 1 - db;
        for (std::size_t i = 0; i <= db; ++i) a[shift + i] = ((a[shift + i] - lead * b[i]) % p + p) % p;
        trim_int(a);
    }
    return a;
}

std::vector<std::int64_t> prime_factors(std::uint64_t n) {
    std::vector<std::int64_t> out;
    for (std::uint64_t d = 2; d * d <= n; ++d) {
        if (n % d == 0) {
            out.push_back(static_cast<std::int64_t>(d));
            while (n % d == 0) n /= d;
        }
    }
    if (n > 1) out.push_back(static_cast<std::int64_t>(n));
    return out;
}

void check_same(const FieldPtr& a, const FieldPtr& b) {
    if (!a->same_as(*b)) throw TypeError("field mismatch: " + a->name() + " vs " + b->name());
}

}  // namespace

bool is_irreducible_mod_p(std::int64_t p, std::span<const int> coeffs) {
    if (!is_prime(p)) throw TypeError("not prime: " + std::to_string(p));
    if (coeffs.empty() || coeffs.back() != 1) throw PreconditionError("polynomial must be monic");
    const int m = static_cast<int>(coeffs.size()) - 1;
    if (m < 1) return false;
    IntPoly f(coeffs.begin(), coeffs.end());
    for (auto& c : f) c = ((c % p) + p) % p;
    for (int k = 1; k <= m / 2; ++k) {
        const std::uint64_t count = static_cast<std::uint64_t>(checked_pow(p, k));
        for (std::uint64_t code = 0; code < count; ++code) {
            IntPoly g(static_cast<std::size_t>(k) + 1);
            std::uint64_t c = code;
            for (int i = 0; i < k; ++i) {
                g[static_cast<std::size_t>(i)] = static_cast<std::int64_t>(c % static_cast<std::uint64_t>(p));
                c /= static_cast<std::uint64_t>(p);
            }
            g[static_cast<std::size_t>(k)] = 1;
            if (int_mod(f, g, p).empty()) return false;
        }
    }
    return true;
}

std::vector<int> least_irreducible(std::int64_t p, int degree) {
    if (degree < 1) throw PreconditionError("degree must be >= 1");
    const std::uint64_t count = static_cast<std::uint64_t>(checked_pow(p, degree));
    for (std::uint64_t code = 0; code < count; ++code) {
        std::vector<int> f(static_cast<std::size_t>(degree) + 1);
        std::uint64_t c = code;
        for (int i = 0; i < degree; ++i) {
            f[static_cast<std::size_t>(i)] = static_cast<int>(c % static_cast<std::uint64_t>(p));
            c /= static_cast<std::uint64_t>(p);
        }
        f.back() = 1;
        if (degree > 1 && f[0] == 0) continue;
        if (is_irreducible_mod_p(p, f)) return f;
    }
    throw ConfigError("no irreducible polynomial found");
}

std::shared_ptr<const FiniteField> FiniteField::create(std::int64_t p, int degree) {
    return create(p, least_irreducible(p, degree));
}

std::shared_ptr<const FiniteField> FiniteField::create(std::int64_t p, std::vector<int> modulus) {
    if (!is_irreducible_mod_p(p, modulus))
        throw ConfigError("modulus is not irreducible over F_" + std::to_string(p));
    return std::shared_ptr<const FiniteField>(new FiniteField(p, std::move(modulus)));
}

FiniteField::FiniteField(std::int64_t p, std::vector<int> modulus)
    : p_(p), degree_(static_cast<int>(modulus.size()) - 1), modulus_(std::move(modulus)) {
    std::uint64_t q = 1;
    for (int i = 0; i < degree_; ++i) {
        pow_p_.push_back(static_cast<std::uint32_t>(q));
        q *= static_cast<std::uint64_t>(p_);
        if (q > kMaxFieldSize) throw ConfigError("field of size " + std::to_string(p_) + "^" + std::to_string(degree_) + " too large");
    }
    q_ = static_cast<std::uint32_t>(q);

    if (q_ <= 256 && p_ != 2) {
        add_table_.resize(static_cast<std::size_t>(q_) * q_);
        for (std::uint32_t a = 0; a < q_; ++a) {
            for (std::uint32_t b = 0; b < q_; ++b) {
                std::uint32_t r = 0;
                for (int i = 0; i < degree_; ++i) {
                    const auto da = (a / pow_p_[static_cast<std::size_t>(i)]) % p_;
                    const auto db = (b / pow_p_[static_cast<std::size_t>(i)]) % p_;
                    r += static_cast<std::uint32_t>((da + db) % p_) * pow_p_[static_cast<std::size_t>(i)];
                }
                add_table_[static_cast<std::size_t>(a) * q_ + b] = r;
            }
        }
    }

    // Log tables from a primitive element found by order testing.
    const std::uint64_t order = q_ - 1;
    const auto primes = prime_factors(order);
    auto slow_pow = [&](Elem a, std::uint64_t e) {
        Elem r = 1, b = a;
        while (e) {
            if (e & 1) r = slow_mul(r, b);
            b = slow_mul(b, b);
            e >>= 1;
        }
        return r;
    };
    Elem g = 1;
    for (Elem cand = (q_ == 2 ? 1 : 2); cand < q_; ++cand) {
        bool prim = true;
        for (auto r : primes) {
            if (slow_pow(cand, order / static_cast<std::uint64_t>(r)) == 1) {
                prim = false;
                break;
            }
        }
        if (prim) {
            g = cand;
            break;
        }
    }
    exp_.resize(order);
    log_.assign(q_, 0);
    Elem x = 1;
    for (std::uint64_t i = 0; i < order; ++i) {
        exp_[i] = x;
        log_[x] = static_cast<std::uint32_t>(i);
        x = slow_mul(x, g);
    }
}

FiniteField::Elem FiniteField::slow_mul(Elem a, Elem b) const {
    auto ca = coeffs(a), cb = coeffs(b);
    IntPoly prod(static_cast<std::size_t>(2 * degree_), 0);
    for (int i = 0; i < degree_; ++i)
        for (int j = 0; j < degree_; ++j)
            prod[static_cast<std::size_t>(i + j)] =
                (prod[static_cast<std::size_t>(i + j)] + static_cast<std::int64_t>(ca[static_cast<std::size_t>(i)]) * cb[static_cast<std::size_t>(j)]) % p_;
    IntPoly mod(modulus_.begin(), modulus_.end());
    auto r = int_mod(prod, mod, p_);
    std::vector<int> c(static_cast<std::size_t>(degree_), 0);
    for (std::size_t i = 0; i < r.size(); ++i) c[i] = static_cast<int>(r[i]);
    return from_coeffs(c);
}

FiniteField::Elem FiniteField::add(Elem a, Elem b) const noexcept {
    if (p_ == 2) return a ^ b;
    if (!add_table_.empty()) return add_table_[static_cast<std::size_t>(a) * q_ + b];
    Elem r = 0;
    for (int i = 0; i < degree_; ++i) {
        const auto pp = pow_p_[static_cast<std::size_t>(i)];
        r += static_cast<Elem>(((a / pp) % p_ + (b / pp) % p_) % p_) * pp;
    }
    return r;
}

FiniteField::Elem FiniteField::neg(Elem a) const noexcept {
    if (p_ == 2) return a;
    Elem r = 0;
    for (int i = 0; i < degree_; ++i) {
        const auto pp = pow_p_[static_cast<std::size_t>(i)];
        r += static_cast<Elem>((p_ - (a / pp) % p_) % p_) * pp;
    }
    return r;
}

FiniteField::Elem FiniteField::sub(Elem a, Elem b) const noexcept { return add(a, neg(b)); }

FiniteField::Elem FiniteField::inv(Elem a) const {
    if (a == 0) throw PreconditionError("division by zero in " + name());
    const std::uint32_t l = log_[a];
    return exp_[l == 0 ? 0 : (q_ - 1) - l];
}

FiniteField::Elem FiniteField::pow(Elem a, std::uint64_t e) const noexcept {
    if (e == 0) return 1;
    if (a == 0) return 0;
    return exp_[(static_cast<std::uint64_t>(log_[a]) * (e % (q_ - 1))) % (q_ - 1)];
}

FiniteField::Elem FiniteField::from_int(std::int64_t x) const noexcept {
    return static_cast<Elem>(((x % p_) + p_) % p_);
}

std::vector<int> FiniteField::coeffs(Elem a) const {
    std::vector<int> c(static_cast<std::size_t>(degree_));
    for (int i = 0; i < degree_; ++i) {
        c[static_cast<std::size_t>(i)] = static_cast<int>(a % static_cast<Elem>(p_));
        a /= static_cast<Elem>(p_);
    }
    return c;
}

FiniteField::Elem FiniteField::from_coeffs(std::span<const int> c) const {
    Elem r = 0;
    for (int i = 0; i < degree_ && static_cast<std::size_t>(i) < c.size(); ++i)
        r += static_cast<Elem>(((c[static_cast<std::size_t>(i)] % p_) + p_) % p_) * pow_p_[static_cast<std::size_t>(i)];
    return r;
}

std::string FiniteField::name() const {
    return degree_ == 1 ? "F_" + std::to_string(p_) : "F_" + std::to_string(p_) + "^" + std::to_string(degree_);
}

FqMat::FqMat(FieldPtr field, std::size_t rows, std::size_t cols)
    : field_(std::move(field)), rows_(rows), cols_(cols), data_(rows * cols, 0) {}

FqMat::FqMat(FieldPtr field, std::size_t rows, std::size_t cols, std::vector<Elem> entries)
    : field_(std::move(field)), rows_(rows), cols_(cols), data_(std::move(entries)) {
    if (data_.size() != rows * cols) throw TypeError("entry count mismatch");
    for (auto x : data_)
        if (x >= field_->size()) throw TypeError("entry out of range for " + field_->name());
}

FqMat FqMat::identity(FieldPtr field, std::size_t n) {
    FqMat m(std::move(field), n, n);
    for (std::size_t i = 0; i < n; ++i) m.at(i, i) = 1;
    return m;
}

void FqMat::append_row(std::span<const Elem> r) {
    if (r.size() != cols_) throw TypeError("row length mismatch");
    data_.insert(data_.end(), r.begin(), r.end());
    ++rows_;
}

FqMat FqMat::operator*(const FqMat& o) const {
    check_same(field_, o.field_);
    if (cols_ != o.rows_) throw TypeError("dimension mismatch in product");
    const auto& F = *field_;
    FqMat out(field_, rows_, o.cols_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t k = 0; k < cols_; ++k) {
            const Elem a = data_[i * cols_ + k];
            if (a == 0) continue;
            for (std::size_t j = 0; j < o.cols_; ++j) {
                Elem& dst = out.data_[i * o.cols_ + j];
                dst = F.add(dst, F.mul(a, o.data_[k * o.cols_ + j]));
            }
        }
    return out;
}

FqMat FqMat::operator+(const FqMat& o) const {
    check_same(field_, o.field_);
    if (rows_ != o.rows_ || cols_ != o.cols_) throw TypeError("dimension mismatch in sum");
    FqMat out = *this;
    for (std::size_t i = 0; i < data_.size(); ++i) out.data_[i] = field_->add(data_[i], o.data_[i]);
    return out;
}

FqMat FqMat::operator-(const FqMat& o) const {
    check_same(field_, o.field_);
    if (rows_ != o.rows_ || cols_ != o.cols_) throw TypeError("dimension mismatch in difference");
    FqMat out = *this;
    for (std::size_t i = 0; i < data_.size(); ++i) out.data_[i] = field_->sub(data_[i], o.data_[i]);
    return out;
}

FqMat FqMat::scaled(Elem s) const {
    FqMat out = *this;
    for (auto& x : out.data_) x = field_->mul(x, s);
    return out;
}

FqMat FqMat::transposed() const {
    FqMat out(field_, cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j) out.data_[j * rows_ + i] = data_[i * cols_ + j];
    return out;
}

std::vector<FqMat::Elem> FqMat::apply(std::span<const Elem> v) const {
    if (v.size() != cols_) throw TypeError("vector length mismatch");
    const auto& F = *field_;
    std::vector<Elem> out(rows_, 0);
    for (std::size_t i = 0; i < rows_; ++i) {
        Elem acc = 0;
        for (std::size_t j = 0; j < cols_; ++j) acc = F.add(acc, F.mul(data_[i * cols_ + j], v[j]));
        out[i] = acc;
    }
    return out;
}

bool FqMat::is_zero() const noexcept {
    return std::all_of(data_.begin(), data_.end(), [](Elem x) { return x == 0; });
}

std::string FqMat::to_string() const {
    std::ostringstream os;
    os << "[";
    for (std::size_t i = 0; i < rows_; ++i) {
        os << (i ? "; " : "");
        for (std::size_t j = 0; j < cols_; ++j) os << (j ? " " : "") << data_[i * cols_ + j];
    }
    os << "]";
    return os.str();
}

std::vector<std::size_t> rref(FqMat& m) {
    const auto& F = *m.field();
    const std::size_t R = m.rows(), C = m.cols();
    std::vector<std::size_t> pivots;
    std::size_t r = 0;
    for (std::size_t c = 0; c < C && r < R; ++c) {
        std::size_t sel = R;
        for (std::size_t i = r; i < R; ++i)
            if (m(i, c) != 0) {
                sel = i;
                break;
            }
        if (sel == R) continue;
        if (sel != r)
            for (std::size_t j = 0; j < C; ++j) std::swap(m.at(r, j), m.at(sel, j));
        const auto inv = F.inv(m(r, c));
        for (std::size_t j = c; j < C; ++j) m.at(r, j) = F.mul(m(r, j), inv);
        for (std::size_t i = 0; i < R; ++i) {
            if (i == r || m(i, c) == 0) continue;
            const auto f = m(i, c);
            for (std::size_t j = c; j < C; ++j) m.at(i, j) = F.sub(m(i, j), F.mul(f, m(r, j)));
        }
        pivots.push_back(c);
        ++r;
    }
    std::vector<FqMat::Elem> kept(m.entries().begin(), m.entries().begin() + static_cast<std::ptrdiff_t>(r * C));
    m = FqMat(m.field(), r, C, std::move(kept));
    return pivots;
}

std::size_t rank(FqMat m) { return rref(m).size(); }

FqMat nullspace(const FqMat& m) {
    FqMat e = m;
    auto piv = rref(e);
    const auto& F = *m.field();
    const std::size_t C = m.cols();
    std::vector<bool> is_piv(C, false);
    for (auto c : piv) is_piv[c] = true;
    FqMat out(m.field(), 0, C);
    for (std::size_t f = 0; f < C; ++f) {
        if (is_piv[f]) continue;
        std::vector<FqMat::Elem> v(C, 0);
        v[f] = 1;
        for (std::size_t i = 0; i < piv.size(); ++i) v[piv[i]] = F.neg(e(i, f));
        out.append_row(v);
    }
    return out;
}

FqMat inverse(const FqMat& m) {
    if (m.rows() != m.cols()) throw TypeError("inverse of non-square matrix");
    const std::size_t n = m.rows();
    FqMat aug(m.field(), n, 2 * n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) aug.at(i, j) = m(i, j);
        aug.at(i, n + i) = 1;
    }
    auto piv = rref(aug);
    if (piv.size() < n || piv[n - 1] != n - 1) throw PreconditionError("matrix is singular");
    FqMat out(m.field(), n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) out.at(i, j) = aug(i, n + j);
    return out;
}

namespace poly {

void trim(FqPoly& f) {
    while (!f.empty() && f.back() == 0) f.pop_back();
}

int degree(const FqPoly& f) { return static_cast<int>(f.size()) - 1; }

FqPoly add(const FiniteField& F, const FqPoly& a, const FqPoly& b) {
    FqPoly r(std::max(a.size(), b.size()), 0);
    for (std::size_t i = 0; i < r.size(); ++i)
        r[i] = F.add(i < a.size() ? a[i] : 0, i < b.size() ? b[i] : 0);
    trim(r);
    return r;
}

FqPoly sub(const FiniteField& F, const FqPoly& a, const FqPoly& b) {
    FqPoly r(std::max(a.size(), b.size()), 0);
    for (std::size_t i = 0; i < r.size(); ++i)
        r[i] = F.sub(i < a.size() ? a[i] : 0, i < b.size() ? b[i] : 0);
    trim(r);
    return r;
}

FqPoly mul(const FiniteField& F, const FqPoly& a, const FqPoly& b) {
    if (a.empty() || b.empty()) return {};
    FqPoly r(a.size() + b.size() - 1, 0);
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i] == 0) continue;
        for (std::size_t j = 0; j < b.size(); ++j) r[i + j] = F.add(r[i + j], F.mul(a[i], b[j]));
    }
    trim(r);
    return r;
}

std::pair<FqPoly, FqPoly> divmod(const FiniteField& F, const FqPoly& a, const FqPoly& b) {
    if (b.empty()) throw PreconditionError("polynomial division by zero");
    FqPoly r = a;
    trim(r);
    if (r.size() < b.size()) return {{}, r};
    FqPoly q(r.size() - b.size() + 1, 0);
    const auto lead_inv = F.inv(b.back());
    while (r.size() >= b.size() && !r.empty()) {
        const std::size_t shift = r.size() - b.size();
        const auto c = F.mul(r.back(), lead_inv);
        q[shift] = c;
        for (std::size_t i = 0; i < b.size(); ++i) r[shift + i] = F.sub(r[shift + i], F.mul(c, b[i]));
        trim(r);
    }
    trim(q);
    return {q, r};
}

FqPoly mod(const FiniteField& F, const FqPoly& a, const FqPoly& b) { return divmod(F, a, b).second; }

FqPoly monic(const FiniteField& F, const FqPoly& a) {
    if (a.empty()) return a;
    const auto inv = F.inv(a.back());
    FqPoly r = a;
    for (auto& c : r) c = F.mul(c, inv);
    return r;
}

FqPoly gcd(const FiniteField& F, FqPoly a, FqPoly b) {
    trim(a);
    trim(b);
    while (!b.empty()) {
        auto r = mod(F, a, b);
        a = std::move(b);
        b = std::move(r);
    }
    return monic(F, a);
}

FqPoly powmod(const FiniteField& F, FqPoly base, std::uint64_t e, const FqPoly& m) {
    FqPoly r{1};
    r = mod(F, r, m);
    base = mod(F, base, m);
    while (e) {
        if (e & 1) r = mod(F, mul(F, r, base), m);
        base = mod(F, mul(F, base, base), m);
        e >>= 1;
    }
    return r;
}

namespace {

FqPoly random_poly(const FiniteField& F, int deg_bound, std::mt19937_64& rng) {
    std::uniform_int_distribution<std::uint32_t> dist(0, F.size() - 1);
    FqPoly a(static_cast<std::size_t>(deg_bound));
    for (auto& c : a) c = dist(rng);
    trim(a);
    return a;
}

// Split a squarefree product of irreducibles of equal degree k.
void equal_degree_split(const FiniteField& F, const FqPoly& f, int k, std::mt19937_64& rng, std::vector<FqPoly>& out) {
    const int n = degree(f);
    if (n == k) {
        out.push_back(f);
        return;
    }
    for (;;) {
        FqPoly a = random_poly(F, n, rng);
        if (degree(a) < 1) continue;
        FqPoly g;
        if (F.p() == 2) {
            FqPoly t = a, tr = a;
            const int steps = F.degree() * k;
            for (int i = 1; i < steps; ++i) {
                t = mod(F, mul(F, t, t), f);
                tr = add(F, tr, t);
            }
            g = gcd(F, f, tr);
        } else {
            FqPoly t = a, prod = a;
            for (int i = 1; i < k; ++i) {
                t = powmod(F, t, F.size(), f);
                prod = mod(F, mul(F, prod, t), f);
            }
            FqPoly b = powmod(F, prod, (F.size() - 1) / 2, f);
            g = gcd(F, f, sub(F, b, FqPoly{1}));
        }
        if (degree(g) > 0 && degree(g) < n) {
            equal_degree_split(F, g, k, rng, out);
            equal_degree_split(F, divmod(F, f, g).first, k, rng, out);
            return;
        }
    }
}

}  // namespace

namespace {

// Distinct-degree then equal-degree factorization of a squarefree polynomial.
void split_squarefree(const FiniteField& F, FqPoly rem, std::mt19937_64& rng, std::vector<FqPoly>& out) {
    const FqPoly x{0, 1};
    FqPoly h = mod(F, x, rem);
    for (int k = 1; degree(rem) > 0; ++k) {
        h = powmod(F, h, F.size(), rem);
        FqPoly d = gcd(F, rem, sub(F, h, mod(F, x, rem)));
        if (degree(d) <= 0) continue;
        std::vector<FqPoly> found;
        equal_degree_split(F, d, k, rng, found);
        for (auto& g : found) out.push_back(monic(F, g));
        rem = divmod(F, rem, d).first;
        if (degree(rem) > 0) h = mod(F, h, rem);
    }
}

FqPoly derivative(const FiniteField& F, const FqPoly& f) {
    FqPoly d(f.size() > 1 ? f.size() - 1 : 0);
    for (std::size_t i = 1; i < f.size(); ++i) {
        FiniteField::Elem c = 0;
        for (std::size_t k = 0; k < i % static_cast<std::size_t>(F.p()); ++k) c = F.add(c, f[i]);
        d[i - 1] = c;
    }
    trim(d);
    return d;
}

void distinct_factors(const FiniteField& F, FqPoly f, std::mt19937_64& rng, std::vector<FqPoly>& out) {
    trim(f);
    if (degree(f) < 1) return;
    f = monic(F, f);
    FqPoly d = derivative(F, f);
    if (d.empty()) {
        // f = r(x)^p; take coefficient-wise p-th roots.
        const std::uint64_t root_exp = F.size() / static_cast<std::uint64_t>(F.p());
        FqPoly r;
        for (std::size_t i = 0; i < f.size(); i += static_cast<std::size_t>(F.p())) r.push_back(F.pow(f[i], root_exp));
        distinct_factors(F, r, rng, out);
        return;
    }
    FqPoly g = gcd(F, f, d);
    split_squarefree(F, divmod(F, f, g).first, rng, out);
    distinct_factors(F, g, rng, out);
}

}  // namespace

std::vector<FqPoly> irreducible_factors(const FiniteField& F, const FqPoly& f_in, std::mt19937_64& rng) {
    std::vector<FqPoly> out;
    distinct_factors(F, f_in, rng, out);
    std::sort(out.begin(), out.end(), [](const FqPoly& a, const FqPoly& b) {
        if (a.size() != b.size()) return a.size() < b.size();
        return std::lexicographical_compare(a.rbegin(), a.rend(), b.rbegin(), b.rend());
    });
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

FqMat evaluate(const FqPoly& f, const FqMat& a) {
    const std::size_t n = a.rows();
    FqMat r(a.field(), n, n);
    for (auto it = f.rbegin(); it != f.rend(); ++it) {
        r = r * a;
        for (std::size_t i = 0; i < n; ++i) r.at(i, i) = a.field()->add(r(i, i), *it);
    }
    return r;
}

}  // namespace poly

FqPoly characteristic_polynomial(const FqMat& a) {
    if (a.rows() != a.cols()) throw TypeError("characteristic polynomial of non-square matrix");
    const auto& F = *a.field();
    const std::size_t n = a.rows();
    FqMat h = a;
    // Reduce to upper Hessenberg form by similarity.
    for (std::size_t m = 1; m + 1 < n; ++m) {
        std::size_t i = m;
        while (i < n && h(i, m - 1) == 0) ++i;
        if (i == n) continue;
        if (i != m) {
            for (std::size_t j = 0; j < n; ++j) std::swap(h.at(i, j), h.at(m, j));
            for (std::size_t j = 0; j < n; ++j) std::swap(h.at(j, i), h.at(j, m));
        }
        const auto piv_inv = F.inv(h(m, m - 1));
        for (std::size_t r = m + 1; r < n; ++r) {
            const auto u = F.mul(h(r, m - 1), piv_inv);
            if (u == 0) continue;
            for (std::size_t j = 0; j < n; ++j) h.at(r, j) = F.sub(h(r, j), F.mul(u, h(m, j)));
            for (std::size_t j = 0; j < n; ++j) h.at(j, m) = F.add(h(j, m), F.mul(u, h(j, r)));
        }
    }
    // p_m = (x - h_mm) p_{m-1} - sum_i h_{m-i,m} * prod(subdiagonal) * p_{m-i-1}, 1-indexed.
    std::vector<FqPoly> ps(n + 1);
    ps[0] = {1};
    auto H = [&](std::size_t i, std::size_t j) { return h(i - 1, j - 1); };
    for (std::size_t m = 1; m <= n; ++m) {
        FqPoly lin{F.neg(H(m, m)), 1};
        ps[m] = poly::mul(F, lin, ps[m - 1]);
        FiniteField::Elem t = 1;
        for (std::size_t i = 1; i < m; ++i) {
            t = F.mul(t, H(m - i + 1, m - i));
            const auto c = F.mul(t, H(m - i, m));
            if (c == 0) continue;
            FqPoly term = ps[m - i - 1];
            for (auto& x : term) x = F.mul(x, c);
            ps[m] = poly::sub(F, ps[m], term);
        }
    }
    return ps[n];
}

FieldEmbedding::FieldEmbedding(FieldPtr base, int d) : base_(std::move(base)) {
    if (d < 1) throw ConfigError("extension degree must be >= 1");
    if (d == 1) {
        target_ = base_;
    } else {
        const int total = base_->degree() * d;
        std::uint64_t size = 1;
        for (int i = 0; i < total; ++i) {
            size *= static_cast<std::uint64_t>(base_->p());
            if (size > kMaxFieldSize)
                throw ConfigError("no embedding available: " + base_->name() + " extended by degree " + std::to_string(d) + " is too large");
        }
        target_ = FiniteField::create(base_->p(), total);
    }
    const auto& T = *target_;
    const auto& f = base_->modulus();
    FiniteField::Elem root = 0;
    bool found = false;
    for (FiniteField::Elem a = 0; a < T.size() && !found; ++a) {
        FiniteField::Elem acc = 0;
        for (auto it = f.rbegin(); it != f.rend(); ++it) acc = T.add(T.mul(acc, a), T.from_int(*it));
        if (acc == 0) {
            root = a;
            found = true;
        }
    }
    if (!found) throw ConfigError("no embedding available for " + base_->name());
    image_.resize(base_->size());
    for (FiniteField::Elem a = 0; a < base_->size(); ++a) {
        auto c = base_->coeffs(a);
        FiniteField::Elem acc = 0;
        for (auto it = c.rbegin(); it != c.rend(); ++it) acc = T.add(T.mul(acc, root), T.from_int(*it));
        image_[a] = acc;
    }
}

std::vector<FqMat> scalar_extend(std::span<const FqMat> mats, int d) {
    if (d < 1 || d > 4) throw ConfigError("extension degree must lie in [1, 4]");
    if (mats.empty() || d == 1) return {mats.begin(), mats.end()};
    FieldEmbedding emb(mats.front().field(), d);
    std::vector<FqMat> out;
    out.reserve(mats.size());
    for (const auto& m : mats) {
        if (!m.field()->same_as(*emb.base())) throw TypeError("mixed fields in scalar_extend");
        std::vector<FiniteField::Elem> e(m.entries().size());
        for (std::size_t i = 0; i < e.size(); ++i) e[i] = emb(m.entries()[i]);
        out.emplace_back(emb.target(), m.rows(), m.cols(), std::move(e));
    }
    return out;
}

}  // namespace repfield
