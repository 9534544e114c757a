#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace repfield {

/// Finite abelian group Z/d_1 x ... x Z/d_r with d_1 | d_2 | ... | d_r.
/// Elements are residue tuples; they are also numbered in mixed radix.
class AbelianGroup {
  public:
    using Element = std::vector<int>;

    /// Throws TypeError unless every d_i >= 1 and d_i | d_(i+1), or if the order exceeds 2^20.
    explicit AbelianGroup(std::vector<int> invariant_factors);

    const std::vector<int>& invariant_factors() const noexcept { return factors_; }
    std::size_t rank() const noexcept { return factors_.size(); }
    std::size_t order() const noexcept { return order_; }

    /// Reduces each coordinate; throws TypeError on a length mismatch.
    Element normalize(Element e) const;
    Element zero() const { return Element(factors_.size(), 0); }
    Element add(const Element& a, const Element& b) const;
    Element scale(std::int64_t k, const Element& a) const;

    std::size_t index(const Element& e) const;
    Element element(std::size_t index) const;

    bool operator==(const AbelianGroup&) const = default;

  private:
    std::vector<int> factors_;
    std::size_t order_ = 1;
};

/// A subgroup, listed by element indices in ascending order, with the
/// invariant factors of the quotient (the Galois group of its fixed field over K).
struct Subgroup {
    std::vector<std::size_t> elements;
    std::vector<int> quotient_invariant_factors;

    std::size_t order() const { return elements.size(); }
    bool operator==(const Subgroup& o) const { return elements == o.elements; }
};

bool is_subgroup(const AbelianGroup& g, const std::vector<std::size_t>& set);
Subgroup generated_subgroup(const AbelianGroup& g, const std::vector<std::size_t>& set);
/// {h : h + S = S}.
Subgroup translation_stabilizer(const AbelianGroup& g, const std::vector<std::size_t>& set);
/// Invariant factors of G / H for a subgroup H given by element indices.
std::vector<int> quotient_invariant_factors(const AbelianGroup& g, const std::vector<std::size_t>& subgroup);

struct ImagePayload {
    int n = 0;
    std::vector<int> classes;
};

struct PlaceDatum {
    std::string label;
    AbelianGroup::Element frobenius;
    std::optional<ImagePayload> image;
    std::optional<int> t;
};

struct GaloisScenario {
    AbelianGroup group;
    int n = 0;
    std::vector<PlaceDatum> places;

    /// Throws PreconditionError or TypeError on malformed data. An image payload
    /// must have modulus n, contain 0, and its Frobenius must satisfy n * sigma = 0.
    void validate() const;
};

/// T = { sum s_i sigma_i : s_i in classes_i }, as sorted element indices.
std::vector<std::size_t> global_image_set(const GaloisScenario& sc);
Subgroup lower_field_subgroup(const GaloisScenario& sc);
Subgroup upper_field_subgroup(const GaloisScenario& sc);
/// Subgroup generated by t_i sigma_i.
Subgroup lower_field_from_t(const GaloisScenario& sc);

struct GlobalVerdict {
    std::vector<std::size_t> image;
    Subgroup lower;
    Subgroup upper;
    bool image_is_subgroup = false;
    /// lower == upper; std::logic_error if this disagrees with image_is_subgroup.
    bool defined = false;
};

GlobalVerdict is_defined_global(const GaloisScenario& sc);

}  // namespace repfield
