#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <vector>

namespace repfield {

bool is_prime(std::int64_t n);

// Integer power with overflow check against the 2^31 residue bound.
std::int64_t checked_pow(std::int64_t base, int exp);

/// The truncated valuation ring Z/p^M, i.e. O_k / pi^M O_k with pi = p.
class ModulusRing {
  public:
    ModulusRing(std::int64_t p, int precision);

    std::int64_t p() const noexcept { return p_; }
    int precision() const noexcept { return precision_; }
    std::int64_t modulus() const noexcept { return modulus_; }

    std::int64_t reduce(std::int64_t x) const noexcept {
        x %= modulus_;
        return x < 0 ? x + modulus_ : x;
    }
    std::int64_t add(std::int64_t a, std::int64_t b) const noexcept { return reduce(a + b); }
    std::int64_t sub(std::int64_t a, std::int64_t b) const noexcept { return reduce(a - b); }
    std::int64_t mul(std::int64_t a, std::int64_t b) const noexcept { return reduce(a * b); }
    std::int64_t neg(std::int64_t a) const noexcept { return reduce(-a); }

    /// p-adic valuation of a residue; the zero residue has valuation M.
    int valuation(std::int64_t x) const noexcept;
    /// p^k for 0 <= k <= M (p^M reduces to 0).
    std::int64_t power(int k) const;
    /// Inverse of a unit. Throws PreconditionError on non-units.
    std::int64_t unit_inverse(std::int64_t u) const;

    /// The same prime at a different precision.
    ModulusRing with_precision(int precision) const { return ModulusRing(p_, precision); }

    std::string name() const;

    bool operator==(const ModulusRing& o) const noexcept { return p_ == o.p_ && precision_ == o.precision_; }

  private:
    std::int64_t p_;
    int precision_;
    std::int64_t modulus_;
};

/// Dense matrix over Z/p^M with canonical residues in [0, p^M).
class ZMat {
  public:
    ZMat(ModulusRing ring, std::size_t rows, std::size_t cols);
    ZMat(ModulusRing ring, std::size_t rows, std::size_t cols, std::vector<std::int64_t> entries);

    static ZMat identity(ModulusRing ring, std::size_t n);

    const ModulusRing& ring() const noexcept { return ring_; }
    std::size_t rows() const noexcept { return rows_; }
    std::size_t cols() const noexcept { return cols_; }
    bool empty() const noexcept { return rows_ == 0; }

    std::int64_t operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }
    void set(std::size_t r, std::size_t c, std::int64_t v) { data_[r * cols_ + c] = ring_.reduce(v); }

    std::span<const std::int64_t> row(std::size_t r) const { return {data_.data() + r * cols_, cols_}; }
    const std::vector<std::int64_t>& entries() const noexcept { return data_; }

    void append_row(std::span<const std::int64_t> r);

    ZMat operator*(const ZMat& o) const;
    ZMat operator+(const ZMat& o) const;
    ZMat scaled(std::int64_t s) const;
    ZMat transposed() const;
    /// A * v for a column vector v.
    std::vector<std::int64_t> apply(std::span<const std::int64_t> v) const;

    /// Explicit reduction to a lower precision of the same prime.
    ZMat reduced_to(int precision) const;

    bool operator==(const ZMat& o) const noexcept {
        return ring_ == o.ring_ && rows_ == o.rows_ && cols_ == o.cols_ && data_ == o.data_;
    }

    std::string to_string() const;

  private:
    ModulusRing ring_;
    std::size_t rows_;
    std::size_t cols_;
    std::vector<std::int64_t> data_;
};

/// Stack the rows of b under the rows of a.
ZMat vstack(const ZMat& a, const ZMat& b);

/// Howell canonical form of the row span: pivots are powers of p, entries above a
/// pivot p^v lie in [0, p^v), rows ordered by pivot column, zero rows removed.
/// Equal row spans produce bit-identical output.
ZMat howell_form(const ZMat& rows);

/// True when `h` is already the Howell form of its own row span.
bool is_howell_form(const ZMat& h);

/// Pivot column of each row of a Howell form.
std::vector<std::size_t> pivot_columns(const ZMat& h);

/// log_p of the number of elements of the row span of a Howell form.
int span_log_size(const ZMat& h);

/// |row span| of a Howell form. Throws PreconditionError on non-Howell input
/// and TypeError when the count does not fit in 64 bits.
std::uint64_t span_size(const ZMat& h);

/// Membership test against a Howell form by residual reduction.
bool in_span(const ZMat& h, std::span<const std::int64_t> v);

/// Minimal number of generators of the row span, i.e. log_p |L / pL|.
int module_rank(const ZMat& h);

struct ZMatHash {
    std::size_t operator()(const ZMat& m) const noexcept;
};

}  // namespace repfield
