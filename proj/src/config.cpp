#include "repfield/config.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <sstream>

#include "repfield/errors.hpp"
#include "repfield/fq.hpp"

namespace repfield {

namespace {

constexpr int kDefaultPrecision = 4;

[[noreturn]] void fail(const std::string& source, int line, const std::string& msg) {
    throw ConfigError(source + ":" + std::to_string(line) + ": " + msg);
}

class LineParser {
  public:
    LineParser(const std::string& text, std::string source, int line) : s_(text), source_(std::move(source)), line_(line) {}

    ConfigValue value() {
        skip();
        if (pos_ >= s_.size()) fail(source_, line_, "missing value");
        ConfigValue v;
        v.line = line_;
        const char c = s_[pos_];
        if (c == '[') {
            v.kind = ConfigValue::Kind::list;
            ++pos_;
            skip();
            if (peek() == ']') {
                ++pos_;
                return v;
            }
            for (;;) {
                v.items.push_back(value());
                skip();
                if (peek() == ',') {
                    ++pos_;
                    skip();
                    if (peek() == ']') {
                        ++pos_;
                        return v;
                    }
                    continue;
                }
                if (peek() == ']') {
                    ++pos_;
                    return v;
                }
                fail(source_, line_, "expected ',' or ']' in list");
            }
        }
        if (c == '"') {
            v.kind = ConfigValue::Kind::string;
            const auto end = s_.find('"', pos_ + 1);
            if (end == std::string::npos) fail(source_, line_, "unterminated string");
            v.string = s_.substr(pos_ + 1, end - pos_ - 1);
            pos_ = end + 1;
            return v;
        }
        std::size_t start = pos_;
        if (c == '-' || c == '+') ++pos_;
        while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
        const std::string tok = s_.substr(start, pos_ - start);
        if (tok.empty() || tok == "-" || tok == "+") fail(source_, line_, "expected integer, string or list");
        try {
            v.integer = std::stoll(tok);
        } catch (const std::exception&) {
            fail(source_, line_, "integer out of range: " + tok);
        }
        return v;
    }

    void finish() {
        skip();
        if (pos_ < s_.size()) fail(source_, line_, "unexpected trailing text");
    }

  private:
    char peek() const { return pos_ < s_.size() ? s_[pos_] : '\0'; }
    void skip() {
        while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    }

    const std::string& s_;
    std::string source_;
    int line_;
    std::size_t pos_ = 0;
};

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return "";
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

std::string strip_comment(const std::string& s) {
    bool in_string = false;
    for (std::size_t i = 0; i < s.size(); ++i) {
        if (s[i] == '"') in_string = !in_string;
        if (s[i] == '#' && !in_string) return s.substr(0, i);
    }
    return s;
}

int bracket_depth(const std::string& s) {
    int depth = 0;
    bool in_string = false;
    for (char c : s) {
        if (c == '"') in_string = !in_string;
        if (in_string) continue;
        if (c == '[') ++depth;
        if (c == ']') --depth;
    }
    return depth;
}

bool valid_name(const std::string& s) {
    return !s.empty() && std::all_of(s.begin(), s.end(), [](char c) {
        return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '-';
    });
}

std::vector<std::int64_t> to_ints(const ConfigValue& v, const std::string& where) {
    if (v.kind != ConfigValue::Kind::list) throw ConfigError(where + ": expected a list of integers");
    std::vector<std::int64_t> out;
    for (const auto& x : v.items) {
        if (x.kind != ConfigValue::Kind::integer) throw ConfigError(where + ": expected a list of integers");
        out.push_back(x.integer);
    }
    return out;
}

int small_int(const ConfigTable& t, const std::string& key, std::int64_t lo, std::int64_t hi) {
    const auto v = t.integer(key);
    if (v < lo || v > hi)
        throw ConfigError(t.where(key) + ": value " + std::to_string(v) + " outside [" + std::to_string(lo) + ", " +
                          std::to_string(hi) + "]");
    return static_cast<int>(v);
}

int small_int(const ConfigTable& t, const std::string& key, std::int64_t lo, std::int64_t hi, std::int64_t fallback) {
    if (!t.has(key)) return static_cast<int>(fallback);
    return small_int(t, key, lo, hi);
}

std::int64_t prime(const ConfigTable& t) {
    const auto p = t.integer("p");
    if (!is_prime(p) || p > 1000) throw ConfigError(t.where("p") + ": expected a prime below 1000, got " + std::to_string(p));
    return p;
}

std::vector<ZMat> square_matrices(const ConfigTable& t, const std::string& key, const ModulusRing& ring, std::size_t n) {
    std::vector<ZMat> out;
    for (const auto& flat : t.int_lists(key)) {
        if (flat.size() != n * n)
            throw ConfigError(t.where(key) + ": matrix has " + std::to_string(flat.size()) + " entries, expected " +
                              std::to_string(n * n));
        out.push_back(unflatten(ring, n, flat));
    }
    return out;
}

// Builders that do not reference other tables.
LocalOrder simple_order(const ConfigTable& t) {
    const std::string builder = t.has("builder") ? t.string("builder") : "generators";
    if (builder == "mord") {
        t.check_keys({"builder", "p", "precision"});
        return build_mord(prime(t), small_int(t, "precision", 1, 12, kDefaultPrecision));
    }
    if (builder == "maximal") {
        t.check_keys({"builder", "n", "p", "precision"});
        return maximal_order(prime(t), small_int(t, "precision", 1, 12, kDefaultPrecision),
                             static_cast<std::size_t>(small_int(t, "n", 1, 8)));
    }
    if (builder == "residual_preimage") {
        t.check_keys({"builder", "n", "p", "precision", "residual"});
        const auto n = static_cast<std::size_t>(small_int(t, "n", 1, 8));
        const auto p = prime(t);
        auto f = FiniteField::create(p, 1);
        std::vector<FqMat> res;
        for (const auto& flat : t.int_lists("residual")) {
            if (flat.size() != n * n) throw ConfigError(t.where("residual") + ": each matrix needs n*n entries");
            std::vector<FiniteField::Elem> e;
            for (auto x : flat) e.push_back(f->from_int(x));
            res.emplace_back(f, n, n, std::move(e));
        }
        try {
            return build_residual_preimage(res, n, small_int(t, "precision", 1, 12, kDefaultPrecision));
        } catch (const PreconditionError& e) {
            throw ConfigError(t.where("residual") + ": " + e.what());
        }
    }
    if (builder == "generators") {
        t.check_keys({"builder", "n", "p", "precision", "generators"});
        const auto n = static_cast<std::size_t>(small_int(t, "n", 1, 8));
        const ModulusRing ring(prime(t), small_int(t, "precision", 1, 12, kDefaultPrecision));
        auto gens = square_matrices(t, "generators", ring, n);
        gens.push_back(ZMat::identity(ring, n));
        return close(ring, n, gens);
    }
    throw ConfigError(t.where("builder") + ": unknown builder '" + builder + "'");
}

}  // namespace

std::string ConfigTable::where(const std::string& key) const {
    auto it = values.find(key);
    const int l = it != values.end() ? it->second.line : line;
    return name + ":" + std::to_string(l) + ": key '" + key + "'";
}

std::int64_t ConfigTable::integer(const std::string& key) const {
    auto it = values.find(key);
    if (it == values.end()) throw ConfigError(where(key) + " is missing");
    if (it->second.kind != ConfigValue::Kind::integer) throw ConfigError(where(key) + ": expected an integer");
    return it->second.integer;
}

std::int64_t ConfigTable::integer(const std::string& key, std::int64_t fallback) const {
    return has(key) ? integer(key) : fallback;
}

std::string ConfigTable::string(const std::string& key) const {
    auto it = values.find(key);
    if (it == values.end()) throw ConfigError(where(key) + " is missing");
    if (it->second.kind != ConfigValue::Kind::string) throw ConfigError(where(key) + ": expected a string");
    return it->second.string;
}

std::vector<std::int64_t> ConfigTable::int_list(const std::string& key) const {
    auto it = values.find(key);
    if (it == values.end()) throw ConfigError(where(key) + " is missing");
    return to_ints(it->second, where(key));
}

std::vector<std::vector<std::int64_t>> ConfigTable::int_lists(const std::string& key) const {
    auto it = values.find(key);
    if (it == values.end()) throw ConfigError(where(key) + " is missing");
    if (it->second.kind != ConfigValue::Kind::list) throw ConfigError(where(key) + ": expected a list of lists");
    std::vector<std::vector<std::int64_t>> out;
    for (const auto& item : it->second.items) out.push_back(to_ints(item, where(key)));
    return out;
}

void ConfigTable::check_keys(const std::vector<std::string>& allowed) const {
    for (const auto& [k, v] : values)
        if (std::find(allowed.begin(), allowed.end(), k) == allowed.end())
            throw ConfigError(where(k) + ": unknown key");
}

ConfigDocument parse_config(const std::string& text, const std::string& source) {
    ConfigDocument doc;
    doc.source = source;
    doc.root.name = source;
    ConfigTable* cur = &doc.root;
    std::istringstream in(text);
    std::string raw;
    int line = 0;
    while (std::getline(in, raw)) {
        ++line;
        const std::string s = trim(strip_comment(raw));
        if (s.empty()) continue;
        if (s.rfind("[[", 0) == 0) {
            if (s.size() < 4 || s.substr(s.size() - 2) != "]]") fail(source, line, "malformed array header");
            const std::string name = trim(s.substr(2, s.size() - 4));
            if (!valid_name(name)) fail(source, line, "invalid table name '" + name + "'");
            if (doc.tables.count(name)) fail(source, line, "'" + name + "' is already a table");
            auto& arr = doc.arrays[name];
            arr.emplace_back();
            arr.back().name = source;
            arr.back().line = line;
            cur = &arr.back();
            continue;
        }
        if (s.front() == '[') {
            if (s.back() != ']') fail(source, line, "malformed table header");
            const std::string name = trim(s.substr(1, s.size() - 2));
            if (!valid_name(name)) fail(source, line, "invalid table name '" + name + "'");
            if (doc.tables.count(name) || doc.arrays.count(name)) fail(source, line, "duplicate table '" + name + "'");
            auto& t = doc.tables[name];
            t.name = source;
            t.line = line;
            cur = &t;
            continue;
        }
        const auto eq = s.find('=');
        if (eq == std::string::npos) fail(source, line, "expected 'key = value'");
        const std::string key = trim(s.substr(0, eq));
        if (!valid_name(key)) fail(source, line, "invalid key '" + key + "'");
        if (cur->has(key)) fail(source, line, "duplicate key '" + key + "'");
        std::string rest = s.substr(eq + 1);
        const int first_line = line;
        // Lists may continue over several lines until their brackets balance.
        while (bracket_depth(rest) > 0) {
            if (!std::getline(in, raw)) fail(source, first_line, "unterminated list for key '" + key + "'");
            ++line;
            rest += " " + trim(strip_comment(raw));
        }
        LineParser lp(rest, source, first_line);
        ConfigValue v = lp.value();
        lp.finish();
        cur->values[key] = std::move(v);
    }
    return doc;
}

ConfigDocument load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot read config file '" + path + "'");
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_config(ss.str(), path);
}

LocalOrder order_from_config(const ConfigDocument& doc) {
    const auto& t = doc.root;
    const std::string builder = t.has("builder") ? t.string("builder") : "generators";
    if (builder == "block_triangular") {
        t.check_keys({"builder", "exponents", "off_diagonal_depth"});
        auto it = doc.arrays.find("component");
        if (it == doc.arrays.end() || it->second.empty())
            throw ConfigError(doc.source + ": block_triangular needs [[component]] tables");
        std::vector<LocalOrder> comps;
        for (const auto& c : it->second) comps.push_back(simple_order(c));
        std::vector<int> exps;
        if (t.has("exponents"))
            for (auto e : t.int_list("exponents")) exps.push_back(static_cast<int>(e));
        else
            exps.assign(comps.size(), 0);
        if (exps.size() != comps.size())
            throw ConfigError(t.where("exponents") + ": need one exponent per component");
        try {
            return build_block_triangular(comps, exps, small_int(t, "off_diagonal_depth", 0, 12, 0));
        } catch (const TypeError& e) {
            throw ConfigError(doc.source + ": " + e.what());
        } catch (const PreconditionError& e) {
            throw ConfigError(doc.source + ": " + e.what());
        }
    }
    if (builder == "deep_lift") {
        t.check_keys({"builder", "lift_depth"});
        auto it = doc.tables.find("base");
        if (it == doc.tables.end()) throw ConfigError(doc.source + ": deep_lift needs a [base] table");
        return deep_lift(simple_order(it->second), small_int(t, "lift_depth", 0, 12));
    }
    if (!doc.tables.empty() || !doc.arrays.empty())
        throw ConfigError(doc.source + ": builder '" + builder + "' takes no tables");
    return simple_order(t);
}

GaloisScenario scenario_from_config(const ConfigDocument& doc) {
    const auto& t = doc.root;
    t.check_keys({"group", "n"});
    std::vector<int> factors;
    for (auto d : t.int_list("group")) {
        if (d < 1 || d > (1 << 20)) throw ConfigError(t.where("group") + ": invariant factor out of range");
        factors.push_back(static_cast<int>(d));
    }
    std::optional<AbelianGroup> group;
    try {
        group.emplace(factors);
    } catch (const TypeError& e) {
        throw ConfigError(t.where("group") + ": " + e.what());
    }
    auto it = doc.arrays.find("place");
    if (it == doc.arrays.end() || it->second.empty()) throw ConfigError(doc.source + ": scenario needs [[place]] tables");
    if (!doc.tables.empty()) throw ConfigError(doc.source + ": scenario takes only [[place]] tables");

    GaloisScenario sc{*group, 0, {}};
    if (t.has("n")) sc.n = small_int(t, "n", 1, 1 << 20);
    for (const auto& pt : it->second) {
        pt.check_keys({"label", "frobenius", "classes", "modulus", "t"});
        PlaceDatum pd;
        pd.label = pt.has("label") ? pt.string("label") : "place" + std::to_string(sc.places.size() + 1);
        for (auto c : pt.int_list("frobenius")) pd.frobenius.push_back(static_cast<int>(c % (1 << 20)));
        if (pd.frobenius.size() != factors.size())
            throw ConfigError(pt.where("frobenius") + ": needs " + std::to_string(factors.size()) + " coordinates");
        if (pt.has("t")) {
            if (pt.has("classes") || pt.has("modulus")) throw ConfigError(pt.where("t") + ": give either t or classes");
            pd.t = small_int(pt, "t", 1, 1 << 20);
        } else {
            ImagePayload img;
            img.n = small_int(pt, "modulus", 1, 1 << 20);
            for (auto c : pt.int_list("classes")) img.classes.push_back(static_cast<int>(((c % img.n) + img.n) % img.n));
            std::sort(img.classes.begin(), img.classes.end());
            img.classes.erase(std::unique(img.classes.begin(), img.classes.end()), img.classes.end());
            if (sc.n == 0) sc.n = img.n;
            pd.image = std::move(img);
        }
        sc.places.push_back(std::move(pd));
    }
    if (sc.n == 0) sc.n = factors.empty() ? 1 : factors.back();
    try {
        sc.validate();
    } catch (const PreconditionError& e) {
        throw ConfigError(doc.source + ": " + e.what());
    } catch (const TypeError& e) {
        throw ConfigError(doc.source + ": " + e.what());
    }
    return sc;
}

}  // namespace repfield
