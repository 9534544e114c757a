#include "repfield/spinor.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>
#include <stdexcept>

#include "repfield/errors.hpp"

namespace repfield {

namespace {

int mod(int x, int n) { return ((x % n) + n) % n; }

void check_modulus(int n) {
    if (n <= 0) throw TypeError("modulus must be positive, got " + std::to_string(n));
}

}  // namespace

bool SpinorImageSet::contains(int c) const { return std::binary_search(classes.begin(), classes.end(), mod(c, n)); }

std::vector<int> SubgroupZn::elements() const {
    std::vector<int> out;
    for (int x = 0; x < n; x += generator) out.push_back(x);
    return out;
}

std::vector<int> normalize_classes(int n, std::vector<int> classes) {
    check_modulus(n);
    for (auto& c : classes) c = mod(c, n);
    std::sort(classes.begin(), classes.end());
    classes.erase(std::unique(classes.begin(), classes.end()), classes.end());
    return classes;
}

std::vector<int> classes_at_window(const LocalOrder& h, int window, std::uint64_t cap, int modulus) {
    if (!h.closed()) throw PreconditionError("spinor image needs a closed order");
    if (window < 1 || window > h.ring().precision())
        throw PreconditionError("window " + std::to_string(window) + " outside precision " +
                                std::to_string(h.ring().precision()));
    const int n = modulus > 0 ? modulus : static_cast<int>(h.n());
    const LocalOrder w = h.reduced_to(window);
    const auto gens = w.generators();
    std::vector<bool> seen(static_cast<std::size_t>(n), false);
    int found = 0;
    visit_invariant_submodules(w.ring(), h.n(), gens, cap, [&](const Submodule& l) {
        const int c = colength_class(l, n).value;
        if (!seen[static_cast<std::size_t>(c)]) {
            seen[static_cast<std::size_t>(c)] = true;
            ++found;
        }
        return found < n;
    });
    std::vector<int> out;
    for (int c = 0; c < n; ++c)
        if (seen[static_cast<std::size_t>(c)]) out.push_back(c);
    return out;
}

SpinorImageSet spinor_image(const LocalOrder& h, const SpinorImageOptions& opts) {
    if (opts.max_depth < 1) throw PreconditionError("max_depth must be >= 1");
    const int n = static_cast<int>(h.n());
    const int precision = h.ring().precision();
    const std::int64_t p = h.ring().p();

    SpinorImageSet out;
    out.n = n;
    std::map<int, bool> certs;
    // Certificate at M0 proves window M0 already shows every class; skipped when
    // precision or the cap does not allow it.
    auto certificate = [&](int m0) {
        if (auto it = certs.find(m0); it != certs.end()) return it->second;
        bool ok = false;
        if (m0 + 1 <= precision && ambient_size(h.ring().with_precision(m0 + 1), h.n()) <= opts.cap)
            ok = primitivity_certificate(h, m0, opts.cap).verified;
        certs[m0] = ok;
        return ok;
    };

    const int last = std::min(opts.max_depth, precision);
    for (int m = 1; m <= last; ++m) {
        if (m > 1 && ambient_size(h.ring().with_precision(m), h.n()) > opts.cap) break;
        auto cls = classes_at_window(h, m, opts.cap);
        out.history.push_back(cls);
        out.classes = std::move(cls);
        out.depth = m;
        if (static_cast<int>(out.classes.size()) == n) {
            // Every class is present: nothing can be missing.
            out.certified = true;
            out.stabilized = true;
            break;
        }
        if (certificate(m - 1) || certificate(m)) {
            out.certified = true;
            out.stabilized = true;
            break;
        }
    }
    if (!out.certified) {
        const auto& hs = out.history;
        out.stabilized = hs.size() >= 2 && hs[hs.size() - 1] == hs[hs.size() - 2];
    }
    out.modulus = checked_pow(p, out.depth);
    return out;
}

bool is_group(int n, const std::vector<int>& classes) {
    const auto s = normalize_classes(n, classes);
    if (!std::binary_search(s.begin(), s.end(), 0)) return false;
    for (int a : s)
        for (int b : s)
            if (!std::binary_search(s.begin(), s.end(), mod(a + b, n))) return false;
    return true;
}

SubgroupZn generated_subgroup(int n, const std::vector<int>& classes) {
    check_modulus(n);
    int g = n;
    for (int c : classes) g = std::gcd(g, mod(c, n));
    return {n, g};
}

SubgroupZn translation_stabilizer(int n, const std::vector<int>& classes) {
    const auto s = normalize_classes(n, classes);
    int g = n;
    for (int d = 1; d < n; ++d) {
        if (n % d != 0) continue;
        const bool stable = std::all_of(s.begin(), s.end(),
                                        [&](int x) { return std::binary_search(s.begin(), s.end(), mod(x + d, n)); });
        if (stable) {
            g = d;
            break;
        }
    }
    return {n, g};
}

std::vector<int> sumset(int n, const std::vector<int>& a, const std::vector<int>& b) {
    check_modulus(n);
    std::set<int> out;
    for (int x : a)
        for (int y : b) out.insert(mod(x + y, n));
    return {out.begin(), out.end()};
}

SpinorImageSet sumset(const SpinorImageSet& a, const SpinorImageSet& b) {
    if (a.n != b.n) throw TypeError("sumset of images mod " + std::to_string(a.n) + " and mod " + std::to_string(b.n));
    SpinorImageSet out;
    out.n = a.n;
    out.classes = sumset(a.n, a.classes, b.classes);
    out.certified = a.certified && b.certified;
    out.stabilized = a.stabilized && b.stabilized;
    out.depth = std::min(a.depth, b.depth);
    out.modulus = a.depth <= b.depth ? a.modulus : b.modulus;
    return out;
}

LocalDefinedReport local_defined(const SpinorImageSet& image) {
    LocalDefinedReport r;
    r.image = image;
    r.generated = generated_subgroup(image.n, image.classes);
    r.stabilizer = translation_stabilizer(image.n, image.classes);
    r.is_group = is_group(image.n, image.classes);
    r.stabilizer_is_generated = r.stabilizer == r.generated;
    r.image_is_generated = normalize_classes(image.n, image.classes) == r.generated.elements();
    if (r.is_group != r.stabilizer_is_generated || r.is_group != r.image_is_generated)
        throw std::logic_error("group criteria disagree");
    r.defined = r.is_group;
    return r;
}

LocalDefinedReport local_defined(const LocalOrder& h, const SpinorImageOptions& opts) {
    return local_defined(spinor_image(h, opts));
}

}  // namespace repfield
