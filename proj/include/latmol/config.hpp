#pragma once

#include <cstdint>
#include <map>
#include <string>

namespace latmol {

/// Flat sectioned key-value configuration. Lines are `key = value` grouped
/// under `[section]` headers; '#' starts a comment. Keys are addressed as
/// "section.key", lowercase, and carry their unit in the name (`_nm`,
/// `_khz`, `_w_m2`, ...).
struct Config {
    std::map<std::string, std::string> values;

    bool has(const std::string& key) const;
    std::string get_string(const std::string& key) const; // throws ConfigError
    std::string get_string_or(const std::string& key, const std::string& fallback) const;
    double get_double(const std::string& key) const;
    double get_double_or(const std::string& key, double fallback) const;
    int get_int(const std::string& key) const;
    int get_int_or(const std::string& key, int fallback) const;
    bool get_bool_or(const std::string& key, bool fallback) const;
    std::uint64_t get_u64_or(const std::string& key, std::uint64_t fallback) const;

    /// Keys whose values parse as numbers, e.g. for species overrides.
    std::map<std::string, double> numeric_values() const;
};

Config parse_config(std::istream& in);
Config load_config(const std::string& path); // IoError when unreadable

std::string to_lower(std::string s);

} // namespace latmol
