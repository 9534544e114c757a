#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "repfield/fq.hpp"
#include "repfield/orders.hpp"

namespace repfield {

/// A unital subalgebra of M_n(F_q), stored as an RREF basis of its flattening.
class ResidualAlgebra {
  public:
    /// Span of `spanning`; throws PreconditionError unless it is a unital,
    /// multiplicatively closed subspace.
    ResidualAlgebra(FieldPtr field, std::size_t n, std::span<const FqMat> spanning);

    const FieldPtr& field() const noexcept { return field_; }
    std::size_t n() const noexcept { return n_; }
    std::size_t dimension() const noexcept { return basis_.size(); }
    const std::vector<FqMat>& basis() const noexcept { return basis_; }

    bool contains(const FqMat& x) const;
    /// Coordinates of x in the basis; throws PreconditionError if x is outside the span.
    std::vector<FiniteField::Elem> coordinates(const FqMat& x) const;

    /// Left multiplication by each basis element, in basis coordinates.
    std::vector<FqMat> regular_representation() const;

    /// The same algebra over F_{q^d}.
    ResidualAlgebra extended(int d) const;

  private:
    FieldPtr field_;
    std::size_t n_;
    std::vector<FqMat> basis_;
    std::vector<std::size_t> pivots_;
};

/// Closure of the F_q-span of `gens` and the identity under multiplication.
ResidualAlgebra generate_algebra(FieldPtr field, std::size_t n, std::span<const FqMat> gens);

/// Image of a closed order mod p.
ResidualAlgebra residual_algebra(const LocalOrder& h);

enum class ModuleKind { natural, regular };

struct CompositionFactor {
    std::size_t dimension = 0;
    std::vector<FqMat> action;
    std::size_t iso_class = 0;
};

struct ChopResult {
    /// Composition factors, bottom of the series first.
    std::vector<CompositionFactor> factors;
    /// Dimension of each isomorphism class, indexed by iso_class.
    std::vector<std::size_t> class_dims;
};

/// Meataxe composition series of the module on which `action` acts (on column
/// vectors), with isomorphic factors identified by intertwiner search.
ChopResult chop_module(std::span<const FqMat> action, std::uint64_t seed = 0);
ChopResult chop(const ResidualAlgebra& a, ModuleKind kind, std::uint64_t seed = 0);

/// Isomorphism of two irreducible modules given by matched generator images.
bool irreducibles_isomorphic(std::span<const FqMat> a, std::span<const FqMat> b);

/// Submodule spanned by v under `action`, as RREF rows.
FqMat spin_vector(std::span<const FqMat> action, std::span<const FiniteField::Elem> v);

struct IrreducibleProfile {
    /// Dimensions of the distinct irreducible representations, ascending.
    std::vector<int> dims;
    int t = 0;
    bool uniform = false;
};

IrreducibleProfile irreducible_profile(const ResidualAlgebra& a, int ext_degree = 1, std::uint64_t seed = 0);
IrreducibleProfile irreducible_profile(const LocalOrder& h, int ext_degree = 1, std::uint64_t seed = 0);

}  // namespace repfield
