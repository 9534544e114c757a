#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "repfield/modring.hpp"

namespace repfield {

inline constexpr std::uint64_t kDefaultEnumerationCap = 4096;

/// A lattice p^M O^n <= L <= O^n, stored as the submodule L / p^M O^n of (Z/p^M)^n.
class Submodule {
  public:
    /// Zero submodule (the lattice p^M O^n).
    Submodule(ModulusRing ring, std::size_t n);
    /// Row span of `rows`.
    explicit Submodule(const ZMat& rows);

    static Submodule full(ModulusRing ring, std::size_t n);

    const ModulusRing& ring() const noexcept { return basis_.ring(); }
    std::size_t dimension() const noexcept { return basis_.cols(); }
    const ZMat& basis() const noexcept { return basis_; }

    bool is_zero() const noexcept { return basis_.empty(); }
    bool contains(std::span<const std::int64_t> v) const { return in_span(basis_, v); }
    bool contains(const Submodule& o) const;

    int log_size() const { return span_log_size(basis_); }
    std::uint64_t size() const { return span_size(basis_); }
    /// log_p [O^n : L], between 0 and nM.
    int colength() const { return static_cast<int>(dimension()) * ring().precision() - log_size(); }

    Submodule scaled(std::int64_t s) const { return Submodule(basis_.scaled(s)); }

    bool operator==(const Submodule& o) const noexcept { return basis_ == o.basis_; }

  private:
    ZMat basis_;
};

struct SubmoduleHash {
    std::size_t operator()(const Submodule& s) const noexcept { return ZMatHash{}(s.basis()); }
};

/// A residue in Z/nZ.
struct DistanceClass {
    int n;
    int value;

    bool operator==(const DistanceClass&) const = default;
};

/// Colength of L reduced mod `modulus` (the ambient dimension when omitted).
DistanceClass colength_class(const Submodule& l, int modulus = 0);

Submodule join(const Submodule& a, const Submodule& b);
Submodule meet(const Submodule& a, const Submodule& b);

/// Least submodule containing `start` and stable under every generator (acting on columns).
Submodule spin(std::span<const ZMat> gens, const Submodule& start);
Submodule spin(std::span<const ZMat> gens, std::span<const std::int64_t> v);

bool is_invariant(std::span<const ZMat> gens, const Submodule& l);

/// Visit every submodule of (Z/p^M)^n stable under `gens`, starting with the zero
/// module. The visitor returns false to stop early. Throws ResourceError when
/// p^(Mn) exceeds `cap`.
void visit_invariant_submodules(const ModulusRing& ring, std::size_t n, std::span<const ZMat> gens, std::uint64_t cap,
                                const std::function<bool(const Submodule&)>& visit);

/// All invariant submodules, sorted by (log size, basis entries).
std::vector<Submodule> invariant_submodules(const ModulusRing& ring, std::size_t n, std::span<const ZMat> gens,
                                            std::uint64_t cap = kDefaultEnumerationCap);

/// p^(Mn), or an overflow-safe saturated value.
std::uint64_t ambient_size(const ModulusRing& ring, std::size_t n);

/// Calls f on every vector of (Z/p^M)^n in lexicographic order.
void for_each_vector(const ModulusRing& ring, std::size_t n, const std::function<void(std::span<const std::int64_t>)>& f);

}  // namespace repfield
