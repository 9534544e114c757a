#pragma once

#include <cstdint>
#include <vector>

#include "repfield/lattices.hpp"
#include "repfield/orders.hpp"

namespace repfield {

struct SpinorImageOptions {
    int max_depth = 3;
    std::uint64_t cap = kDefaultEnumerationCap;
};

/// Distance classes mod n reached by lattices stable under an order.
struct SpinorImageSet {
    int n = 0;
    /// Sorted residues in [0, n).
    std::vector<int> classes;
    /// A primitivity certificate (or saturation) shows the set is complete.
    bool certified = false;
    /// The classes did not change between the last two windows.
    bool stabilized = false;
    /// Last window p^depth examined.
    int depth = 0;
    std::int64_t modulus = 0;
    /// Classes found at windows 1..depth.
    std::vector<std::vector<int>> history;

    bool contains(int c) const;
};

/// Sorted colengths mod `modulus` (default n) of the invariant submodules of (Z/p^window)^n.
std::vector<int> classes_at_window(const LocalOrder& h, int window, std::uint64_t cap = kDefaultEnumerationCap,
                                   int modulus = 0);

/// Spinor image of a closed order, escalating the window up to max_depth.
/// Throws ResourceError when not even window 1 fits under the cap.
SpinorImageSet spinor_image(const LocalOrder& h, const SpinorImageOptions& opts = {});

/// A subgroup of Z/n, stored by its generator g dividing n (the subgroup gZ/nZ).
struct SubgroupZn {
    int n = 1;
    int generator = 1;

    int order() const { return n / generator; }
    bool contains(int x) const { return (((x % n) + n) % n) % generator == 0; }
    std::vector<int> elements() const;
    bool operator==(const SubgroupZn&) const = default;
};

/// Normalizes a set of residues mod n (sorted, deduplicated).
std::vector<int> normalize_classes(int n, std::vector<int> classes);

bool is_group(int n, const std::vector<int>& classes);
SubgroupZn generated_subgroup(int n, const std::vector<int>& classes);
/// {g : g + S = S}.
SubgroupZn translation_stabilizer(int n, const std::vector<int>& classes);
/// {a + b}; throws TypeError when the moduli differ.
SpinorImageSet sumset(const SpinorImageSet& a, const SpinorImageSet& b);
std::vector<int> sumset(int n, const std::vector<int>& a, const std::vector<int>& b);

/// Whether the representation field is defined locally, with the three
/// equivalent criteria evaluated separately.
struct LocalDefinedReport {
    SpinorImageSet image;
    SubgroupZn generated;
    SubgroupZn stabilizer;
    bool is_group = false;
    bool stabilizer_is_generated = false;
    bool image_is_generated = false;
    /// is_group; std::logic_error is thrown if the three criteria disagree.
    bool defined = false;
};

LocalDefinedReport local_defined(const SpinorImageSet& image);
LocalDefinedReport local_defined(const LocalOrder& h, const SpinorImageOptions& opts = {});

}  // namespace repfield
