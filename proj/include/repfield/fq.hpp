#pragma once

#include <cstdint>
#include <memory>
#include <random>
#include <span>
#include <string>
#include <vector>

namespace repfield {

/// Monic polynomial irreducibility over F_p by exhaustive search for factors of
/// degree <= deg/2. Coefficients are low to high and include the leading 1.
bool is_irreducible_mod_p(std::int64_t p, std::span<const int> coeffs);

/// The lexicographically least monic irreducible polynomial of the given degree
/// over F_p, ordering by coefficients from x^(m-1) down to x^0.
std::vector<int> least_irreducible(std::int64_t p, int degree);

/// F_{p^m} as F_p[x]/(modulus). Elements are encoded as sum c_i p^i with the
/// coefficient c_i of x^i, so the prime field occupies [0, p).
class FiniteField {
  public:
    using Elem = std::uint32_t;

    static std::shared_ptr<const FiniteField> create(std::int64_t p, int degree);
    static std::shared_ptr<const FiniteField> create(std::int64_t p, std::vector<int> modulus);

    std::int64_t p() const noexcept { return p_; }
    int degree() const noexcept { return degree_; }
    std::uint32_t size() const noexcept { return q_; }
    const std::vector<int>& modulus() const noexcept { return modulus_; }

    Elem add(Elem a, Elem b) const noexcept;
    Elem sub(Elem a, Elem b) const noexcept;
    Elem neg(Elem a) const noexcept;
    Elem mul(Elem a, Elem b) const noexcept {
        if (a == 0 || b == 0) return 0;
        std::uint32_t s = log_[a] + log_[b];
        if (s >= q_ - 1) s -= q_ - 1;
        return exp_[s];
    }
    Elem inv(Elem a) const;
    Elem div(Elem a, Elem b) const { return mul(a, inv(b)); }
    Elem pow(Elem a, std::uint64_t e) const noexcept;
    Elem from_int(std::int64_t x) const noexcept;
    Elem primitive() const noexcept { return exp_[1 % (q_ - 1 == 0 ? 1 : q_ - 1)]; }

    std::vector<int> coeffs(Elem a) const;
    Elem from_coeffs(std::span<const int> c) const;

    std::string name() const;

    bool same_as(const FiniteField& o) const noexcept { return p_ == o.p_ && modulus_ == o.modulus_; }

  private:
    FiniteField(std::int64_t p, std::vector<int> modulus);
    Elem slow_mul(Elem a, Elem b) const;

    std::int64_t p_;
    int degree_;
    std::uint32_t q_;
    std::vector<int> modulus_;
    std::vector<std::uint32_t> pow_p_;
    std::vector<Elem> exp_;
    std::vector<std::uint32_t> log_;
    std::vector<Elem> add_table_;
};

using FieldPtr = std::shared_ptr<const FiniteField>;

/// Dense matrix over F_q.
class FqMat {
  public:
    using Elem = FiniteField::Elem;

    FqMat(FieldPtr field, std::size_t rows, std::size_t cols);
    FqMat(FieldPtr field, std::size_t rows, std::size_t cols, std::vector<Elem> entries);
    static FqMat identity(FieldPtr field, std::size_t n);

    const FieldPtr& field() const noexcept { return field_; }
    std::size_t rows() const noexcept { return rows_; }
    std::size_t cols() const noexcept { return cols_; }

    Elem operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }
    Elem& at(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
    std::span<const Elem> row(std::size_t r) const { return {data_.data() + r * cols_, cols_}; }
    const std::vector<Elem>& entries() const noexcept { return data_; }
    void append_row(std::span<const Elem> r);

    FqMat operator*(const FqMat& o) const;
    FqMat operator+(const FqMat& o) const;
    FqMat operator-(const FqMat& o) const;
    FqMat scaled(Elem s) const;
    FqMat transposed() const;
    std::vector<Elem> apply(std::span<const Elem> v) const;

    bool is_zero() const noexcept;
    bool operator==(const FqMat& o) const noexcept {
        return field_->same_as(*o.field_) && rows_ == o.rows_ && cols_ == o.cols_ && data_ == o.data_;
    }

    std::string to_string() const;

  private:
    FieldPtr field_;
    std::size_t rows_;
    std::size_t cols_;
    std::vector<Elem> data_;
};

/// Reduced row echelon form in place; returns pivot columns. Zero rows are dropped.
std::vector<std::size_t> rref(FqMat& m);
std::size_t rank(FqMat m);
/// Basis (as rows) of {x : m x = 0}.
FqMat nullspace(const FqMat& m);
/// Inverse of a square matrix; throws PreconditionError if singular.
FqMat inverse(const FqMat& m);

/// Polynomials over F_q, low to high, no trailing zeros.
using FqPoly = std::vector<FiniteField::Elem>;

namespace poly {
void trim(FqPoly& f);
int degree(const FqPoly& f);
FqPoly add(const FiniteField& F, const FqPoly& a, const FqPoly& b);
FqPoly sub(const FiniteField& F, const FqPoly& a, const FqPoly& b);
FqPoly mul(const FiniteField& F, const FqPoly& a, const FqPoly& b);
std::pair<FqPoly, FqPoly> divmod(const FiniteField& F, const FqPoly& a, const FqPoly& b);
FqPoly mod(const FiniteField& F, const FqPoly& a, const FqPoly& b);
FqPoly monic(const FiniteField& F, const FqPoly& a);
FqPoly gcd(const FiniteField& F, FqPoly a, FqPoly b);
FqPoly powmod(const FiniteField& F, FqPoly base, std::uint64_t e, const FqPoly& m);
/// Distinct monic irreducible factors, ordered by (degree, coefficients).
std::vector<FqPoly> irreducible_factors(const FiniteField& F, const FqPoly& f, std::mt19937_64& rng);
/// f(A) for a square matrix A.
FqMat evaluate(const FqPoly& f, const FqMat& a);
}  // namespace poly

/// Characteristic polynomial (monic) via Hessenberg reduction.
FqPoly characteristic_polynomial(const FqMat& a);

/// Canonical embedding F_q -> F_{q^d}. The target is F_p[x]/(least irreducible of
/// degree m*d); the image of the base generator is the least root of the base modulus.
class FieldEmbedding {
  public:
    FieldEmbedding(FieldPtr base, int d);

    const FieldPtr& base() const noexcept { return base_; }
    const FieldPtr& target() const noexcept { return target_; }
    FiniteField::Elem operator()(FiniteField::Elem a) const { return image_[a]; }

  private:
    FieldPtr base_;
    FieldPtr target_;
    std::vector<FiniteField::Elem> image_;
};

/// Re-interpret each matrix over F_{q^d}. d = 1 returns the input unchanged.
std::vector<FqMat> scalar_extend(std::span<const FqMat> mats, int d);

}  // namespace repfield
