#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "repfield/classfield.hpp"
#include "repfield/orders.hpp"

namespace repfield {

/// A config value: integer, string, or (possibly nested) list.
struct ConfigValue {
    enum class Kind { integer, string, list };
    Kind kind = Kind::integer;
    std::int64_t integer = 0;
    std::string string;
    std::vector<ConfigValue> items;
    int line = 0;
};

class ConfigTable {
  public:
    std::string name;
    int line = 0;
    std::map<std::string, ConfigValue> values;

    bool has(const std::string& key) const { return values.count(key) != 0; }
    /// Each accessor throws ConfigError naming the key on a missing or mistyped value.
    std::int64_t integer(const std::string& key) const;
    std::int64_t integer(const std::string& key, std::int64_t fallback) const;
    std::string string(const std::string& key) const;
    std::vector<std::int64_t> int_list(const std::string& key) const;
    /// A list of integer lists.
    std::vector<std::vector<std::int64_t>> int_lists(const std::string& key) const;
    /// Rejects keys outside `allowed`.
    void check_keys(const std::vector<std::string>& allowed) const;

    std::string where(const std::string& key) const;
};

/// `key = value` lines, `[table]` headers and repeated `[[array]]` headers (one
/// level), `#` comments. Values are integers, "strings" and [lists].
struct ConfigDocument {
    std::string source;
    ConfigTable root;
    std::map<std::string, ConfigTable> tables;
    std::map<std::string, std::vector<ConfigTable>> arrays;
};

ConfigDocument parse_config(const std::string& text, const std::string& source = "<config>");
ConfigDocument load_config(const std::string& path);

/// Builds the (closed) order described by an order config.
LocalOrder order_from_config(const ConfigDocument& doc);
GaloisScenario scenario_from_config(const ConfigDocument& doc);

}  // namespace repfield
