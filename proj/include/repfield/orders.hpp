#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "repfield/fq.hpp"
#include "repfield/lattices.hpp"
#include "repfield/modring.hpp"

namespace repfield {

/// Row vector of the n*n entries of a square matrix, row-major.
std::vector<std::int64_t> flatten(const ZMat& m);
ZMat unflatten(const ModulusRing& ring, std::size_t n, std::span<const std::int64_t> entries);
/// Matrix unit E_ij scaled by s.
ZMat matrix_unit(const ModulusRing& ring, std::size_t n, std::size_t i, std::size_t j, std::int64_t s = 1);

/// An order in M_n(O_k) reduced mod p^M, stored as the Howell form of the span of
/// its flattened elements. Equality is span equality.
class LocalOrder {
  public:
    /// Span of `gens` without closing. Throws PreconditionError if the identity is not in the span.
    LocalOrder(ModulusRing ring, std::size_t n, std::span<const ZMat> gens);

    const ModulusRing& ring() const noexcept { return span_.ring(); }
    std::size_t n() const noexcept { return n_; }
    bool closed() const noexcept { return closed_; }

    /// Howell form of the n*n-column flattening.
    const ZMat& span() const noexcept { return span_; }
    /// The span basis as n x n matrices.
    std::vector<ZMat> generators() const;

    bool contains(const ZMat& m) const { return in_span(span_, flatten(m)); }
    /// Minimal number of module generators of the span.
    int rank() const { return module_rank(span_); }

    /// The same order seen mod p^precision (precision <= current).
    LocalOrder reduced_to(int precision) const;

    bool operator==(const LocalOrder& o) const noexcept { return n_ == o.n_ && span_ == o.span_; }

  private:
    friend LocalOrder close(const ModulusRing&, std::size_t, std::span<const ZMat>);
    LocalOrder(std::size_t n, ZMat span, bool closed) : n_(n), span_(std::move(span)), closed_(closed) {}

    std::size_t n_;
    ZMat span_;
    bool closed_ = false;
};

/// Smallest multiplicatively closed module containing `gens` (which must span the identity).
LocalOrder close(const ModulusRing& ring, std::size_t n, std::span<const ZMat> gens);
LocalOrder close(const LocalOrder& h);

/// Integral representation M_n(O_E) -> M_2n(O_k) for the unramified quadratic E/k.
/// O_E = O_k[w] with w a root of the lift of the least irreducible monic quadratic
/// mod p; w acts on O_E = O_k + O_k w by its companion matrix.
class UnramifiedEmbedding {
  public:
    UnramifiedEmbedding(std::size_t n, std::int64_t p, int precision);

    const ModulusRing& ring() const noexcept { return ring_; }
    std::size_t n() const noexcept { return n_; }
    /// Monic quadratic x^2 + c1 x + c0 as {c0, c1, 1}.
    const std::vector<int>& quadratic() const noexcept { return quadratic_; }
    const ZMat& omega() const noexcept { return omega_; }

    /// Image of (a + b w) E_ij.
    ZMat unit(std::size_t i, std::size_t j, std::int64_t a, std::int64_t b) const;
    /// Image of a matrix over O_E given entrywise as pairs (a, b) meaning a + b w, row-major.
    ZMat operator()(std::span<const std::pair<std::int64_t, std::int64_t>> entries) const;

  private:
    ModulusRing ring_;
    std::size_t n_;
    std::vector<int> quadratic_;
    ZMat omega_;
};

UnramifiedEmbedding embed_unramified(std::size_t n, std::int64_t p, int precision);

/// The order (O_k 1_E, O_E; 0, O_E) + p M_2(O_E) inside M_4(O_k).
LocalOrder build_mord(std::int64_t p, int precision);

/// Lift of a unital subalgebra of M_n(F_p) plus p M_n(O), at the given precision.
LocalOrder build_residual_preimage(std::span<const FqMat> residual_gens, std::size_t n, int precision);

/// Block upper triangular order: diagonal blocks from `components`, block (i, j)
/// for i < j equal to p^(depth + t_j - t_i) times the full rectangular module.
/// Exponents must lie in [0, precision); ResourceError otherwise.
LocalOrder build_block_triangular(std::span<const LocalOrder> components, std::span<const int> exponents,
                                  int off_diagonal_depth);

/// H0 + p^N M_n(O), closed.
LocalOrder deep_lift(const LocalOrder& h0, int depth);

/// The maximal order M_n(O) mod p^precision.
LocalOrder maximal_order(std::int64_t p, int precision, std::size_t n);

struct PrimitivityCertificate {
    int depth = 0;
    bool verified = false;
    std::optional<std::vector<std::int64_t>> failing_vector;
};

/// Checks that every v mod p^(M0+1) with a unit coordinate spins to a module
/// containing p^M0 (Z/p^(M0+1))^n. Needs precision >= M0 + 1 and p^((M0+1)n) <= cap.
PrimitivityCertificate primitivity_certificate(const LocalOrder& h, int depth, std::uint64_t cap = kDefaultEnumerationCap);

/// Dimension over Q of the algebra generated by integer matrices (plus the identity):
/// the O_k-rank of the order they generate.
int rational_algebra_dimension(std::span<const std::vector<std::int64_t>> gens, std::size_t n);

}  // namespace repfield
