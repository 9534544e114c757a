#include "repfield/modring.hpp"

#include <algorithm>
#include <limits>
#include <sstream>

#include "repfield/errors.hpp"

namespace repfield {

namespace {

constexpr std::int64_t kResidueBound = std::int64_t{1} << 31;

// Extended Euclid; returns g and x with a*x == g (mod m).
std::int64_t inverse_mod(std::int64_t a, std::int64_t m) {
    std::int64_t old_r = a, r = m, old_s = 1, s = 0;
    while (r != 0) {
        std::int64_t q = old_r / r;
        std::tie(old_r, r) = std::pair{r, old_r - q * r};
        std::tie(old_s, s) = std::pair{s, old_s - q * s};
    }
    if (old_r != 1) return 0;
    old_s %= m;
    return old_s < 0 ? old_s + m : old_s;
}

}  // namespace

bool is_prime(std::int64_t n) {
    if (n < 2) return false;
    for (std::int64_t d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

std::int64_t checked_pow(std::int64_t base, int exp) {
    std::int64_t r = 1;
    for (int i = 0; i < exp; ++i) {
        r *= base;
        if (r >= kResidueBound) throw TypeError("power " + std::to_string(base) + "^" + std::to_string(exp) + " too large");
    }
    return r;
}

ModulusRing::ModulusRing(std::int64_t p, int precision) : p_(p), precision_(precision) {
    if (!is_prime(p)) throw TypeError("modulus base " + std::to_string(p) + " is not prime");
    if (precision < 1) throw TypeError("precision must be >= 1");
    modulus_ = checked_pow(p, precision);
}

int ModulusRing::valuation(std::int64_t x) const noexcept {
    x = reduce(x);
    if (x == 0) return precision_;
    int v = 0;
    while (x % p_ == 0) {
        x /= p_;
        ++v;
    }
    return v;
}

std::int64_t ModulusRing::power(int k) const {
    if (k < 0) throw PreconditionError("negative exponent");
    if (k >= precision_) return 0;
    return checked_pow(p_, k);
}

std::int64_t ModulusRing::unit_inverse(std::int64_t u) const {
    std::int64_t inv = inverse_mod(reduce(u), modulus_);
    if (inv == 0 && modulus_ != 1) throw PreconditionError("element " + std::to_string(u) + " is not a unit");
    return inv;
}

std::string ModulusRing::name() const {
    return "Z/" + std::to_string(p_) + "^" + std::to_string(precision_);
}

ZMat::ZMat(ModulusRing ring, std::size_t rows, std::size_t cols)
    : ring_(ring), rows_(rows), cols_(cols), data_(rows * cols, 0) {}

ZMat::ZMat(ModulusRing ring, std::size_t rows, std::size_t cols, std::vector<std::int64_t> entries)
    : ring_(ring), rows_(rows), cols_(cols), data_(std::move(entries)) {
    if (data_.size() != rows * cols)
        throw TypeError("entry count " + std::to_string(data_.size()) + " != " + std::to_string(rows * cols));
    for (auto& x : data_) x = ring_.reduce(x);
}

ZMat ZMat::identity(ModulusRing ring, std::size_t n) {
    ZMat m(ring, n, n);
    for (std::size_t i = 0; i < n; ++i) m.set(i, i, 1);
    return m;
}

void ZMat::append_row(std::span<const std::int64_t> r) {
    if (r.size() != cols_) throw TypeError("row length mismatch");
    for (auto x : r) data_.push_back(ring_.reduce(x));
    ++rows_;
}

ZMat ZMat::operator*(const ZMat& o) const {
    if (!(ring_ == o.ring_)) throw TypeError("ring mismatch: " + ring_.name() + " vs " + o.ring_.name());
    if (cols_ != o.rows_) throw TypeError("dimension mismatch in product");
    ZMat out(ring_, rows_, o.cols_);
    const auto m = ring_.modulus();
    for (std::size_t i = 0; i < rows_; ++i) {
        for (std::size_t k = 0; k < cols_; ++k) {
            const auto a = data_[i * cols_ + k];
            if (a == 0) continue;
            for (std::size_t j = 0; j < o.cols_; ++j)
                out.data_[i * o.cols_ + j] = (out.data_[i * o.cols_ + j] + a * o.data_[k * o.cols_ + j]) % m;
        }
    }
    return out;
}

ZMat ZMat::operator+(const ZMat& o) const {
    if (!(ring_ == o.ring_)) throw TypeError("ring mismatch: " + ring_.name() + " vs " + o.ring_.name());
    if (rows_ != o.rows_ || cols_ != o.cols_) throw TypeError("dimension mismatch in sum");
    ZMat out = *this;
    for (std::size_t i = 0; i < data_.size(); ++i) out.data_[i] = ring_.add(data_[i], o.data_[i]);
    return out;
}

ZMat ZMat::scaled(std::int64_t s) const {
    ZMat out = *this;
    for (auto& x : out.data_) x = ring_.mul(x, ring_.reduce(s));
    return out;
}

ZMat ZMat::transposed() const {
    ZMat out(ring_, cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j) out.data_[j * rows_ + i] = data_[i * cols_ + j];
    return out;
}

std::vector<std::int64_t> ZMat::apply(std::span<const std::int64_t> v) const {
    if (v.size() != cols_) throw TypeError("vector length mismatch");
    std::vector<std::int64_t> out(rows_, 0);
    const auto m = ring_.modulus();
    for (std::size_t i = 0; i < rows_; ++i) {
        std::int64_t acc = 0;
        for (std::size_t j = 0; j < cols_; ++j) acc = (acc + data_[i * cols_ + j] * v[j]) % m;
        out[i] = acc;
    }
    return out;
}

ZMat ZMat::reduced_to(int precision) const {
    if (precision > ring_.precision())
        throw TypeError("cannot lift " + ring_.name() + " to precision " + std::to_string(precision));
    return ZMat(ring_.with_precision(precision), rows_, cols_, data_);
}

std::string ZMat::to_string() const {
    std::ostringstream os;
    os << "[";
    for (std::size_t i = 0; i < rows_; ++i) {
        os << (i ? "; " : "");
        for (std::size_t j = 0; j < cols_; ++j) os << (j ? " " : "") << data_[i * cols_ + j];
    }
    os << "]";
    return os.str();
}

ZMat vstack(const ZMat& a, const ZMat& b) {
    if (!(a.ring() == b.ring())) throw TypeError("ring mismatch: " + a.ring().name() + " vs " + b.ring().name());
    if (a.cols() != b.cols()) throw TypeError("column mismatch in vstack");
    ZMat out = a;
    for (std::size_t i = 0; i < b.rows(); ++i) out.append_row(b.row(i));
    return out;
}

// Over the chain ring Z/p^M a column has a single pivot row. After a pivot p^v is
// chosen, p^(M-v) times the pivot row has a zero in that column and joins the
// pool; this is what gives the Howell property.
ZMat howell_form(const ZMat& input) {
    const auto& R = input.ring();
    const std::size_t ncols = input.cols();
    const std::int64_t mod = R.modulus();

    std::vector<std::vector<std::int64_t>> pool;
    pool.reserve(input.rows() + ncols);
    for (std::size_t i = 0; i < input.rows(); ++i) {
        auto r = input.row(i);
        if (std::any_of(r.begin(), r.end(), [](auto x) { return x != 0; })) pool.emplace_back(r.begin(), r.end());
    }

    std::vector<std::vector<std::int64_t>> out;
    std::vector<int> pivot_val;
    std::vector<std::size_t> pivot_col;

    for (std::size_t c = 0; c < ncols && !pool.empty(); ++c) {
        std::size_t best = pool.size();
        int best_v = R.precision();
        for (std::size_t i = 0; i < pool.size(); ++i) {
            int v = R.valuation(pool[i][c]);
            if (v < best_v) {
                best_v = v;
                best = i;
            }
        }
        if (best == pool.size()) continue;

        auto piv = std::move(pool[best]);
        pool.erase(pool.begin() + static_cast<std::ptrdiff_t>(best));
        const std::int64_t pv = R.power(best_v);
        const std::int64_t unit = piv[c] / pv;
        const std::int64_t uinv = R.unit_inverse(unit);
        for (auto& x : piv) x = R.mul(x, uinv);

        for (auto& row : pool) {
            if (row[c] == 0) continue;
            const std::int64_t q = row[c] / pv;
            for (std::size_t j = c; j < ncols; ++j) row[j] = ((row[j] - q * piv[j]) % mod + mod) % mod;
        }
        if (best_v > 0) {
            std::vector<std::int64_t> ann(ncols);
            const std::int64_t s = R.power(R.precision() - best_v);
            bool nonzero = false;
            for (std::size_t j = 0; j < ncols; ++j) {
                ann[j] = R.mul(piv[j], s);
                nonzero |= ann[j] != 0;
            }
            if (nonzero) pool.push_back(std::move(ann));
        }
        std::erase_if(pool, [](const auto& r) { return std::all_of(r.begin(), r.end(), [](auto x) { return x == 0; }); });

        out.push_back(std::move(piv));
        pivot_val.push_back(best_v);
        pivot_col.push_back(c);
    }

    // Reduce entries above each pivot into [0, p^v).
    for (std::size_t k = 0; k < out.size(); ++k) {
        const std::int64_t pv = R.power(pivot_val[k]);
        const std::size_t c = pivot_col[k];
        for (std::size_t i = 0; i < k; ++i) {
            const std::int64_t q = out[i][c] / pv;
            if (q == 0) continue;
            for (std::size_t j = c; j < ncols; ++j) out[i][j] = ((out[i][j] - q * out[k][j]) % mod + mod) % mod;
        }
    }

    std::vector<std::int64_t> flat;
    flat.reserve(out.size() * ncols);
    for (const auto& r : out) flat.insert(flat.end(), r.begin(), r.end());
    return ZMat(R, out.size(), ncols, std::move(flat));
}

bool is_howell_form(const ZMat& h) { return howell_form(h) == h; }

std::vector<std::size_t> pivot_columns(const ZMat& h) {
    std::vector<std::size_t> cols;
    cols.reserve(h.rows());
    for (std::size_t i = 0; i < h.rows(); ++i) {
        auto r = h.row(i);
        auto it = std::find_if(r.begin(), r.end(), [](auto x) { return x != 0; });
        cols.push_back(static_cast<std::size_t>(it - r.begin()));
    }
    return cols;
}

int span_log_size(const ZMat& h) {
    int total = 0;
    auto cols = pivot_columns(h);
    for (std::size_t i = 0; i < h.rows(); ++i) total += h.ring().precision() - h.ring().valuation(h(i, cols[i]));
    return total;
}

std::uint64_t span_size(const ZMat& h) {
    if (!is_howell_form(h)) throw PreconditionError("span_size requires a Howell form");
    const int e = span_log_size(h);
    std::uint64_t r = 1;
    for (int i = 0; i < e; ++i) {
        if (r > std::numeric_limits<std::uint64_t>::max() / static_cast<std::uint64_t>(h.ring().p()))
            throw TypeError("span size overflows 64 bits");
        r *= static_cast<std::uint64_t>(h.ring().p());
    }
    return r;
}

bool in_span(const ZMat& h, std::span<const std::int64_t> v) {
    if (v.size() != h.cols()) throw TypeError("vector length mismatch");
    const auto& R = h.ring();
    const std::int64_t mod = R.modulus();
    std::vector<std::int64_t> w(v.size());
    for (std::size_t j = 0; j < v.size(); ++j) w[j] = R.reduce(v[j]);
    auto cols = pivot_columns(h);
    std::size_t next = 0;
    for (std::size_t c = 0; c < w.size(); ++c) {
        if (w[c] == 0) {
            if (next < cols.size() && cols[next] == c) ++next;
            continue;
        }
        if (next >= cols.size() || cols[next] != c) return false;
        const std::int64_t pv = h(next, c);
        if (w[c] % pv != 0) return false;
        const std::int64_t q = w[c] / pv;
        for (std::size_t j = c; j < w.size(); ++j) w[j] = ((w[j] - q * h(next, j)) % mod + mod) % mod;
        ++next;
    }
    return true;
}

int module_rank(const ZMat& h) {
    return span_log_size(h) - span_log_size(howell_form(h.scaled(h.ring().p())));
}

std::size_t ZMatHash::operator()(const ZMat& m) const noexcept {
    std::size_t seed = m.rows() * 1315423911u + m.cols();
    for (auto x : m.entries()) seed ^= std::hash<std::int64_t>{}(x) + 0x9e3779b97f4a7c15ULL + (seed << 6) + (seed >> 2);
    return seed;
}

}  // namespace repfield
