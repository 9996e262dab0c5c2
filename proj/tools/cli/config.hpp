#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

namespace brickwall::cli {

// Flat "section.key" -> value store.
//
// File grammar, one statement per line:
//   [section]          starts a section; names are [A-Za-z0-9_]+
//   key = value        value runs to end of line, surrounding blanks trimmed
//   # ... or ; ...     comment (whole line only)
// Keys before the first section, repeated keys, and keys outside the allowed
// set are errors.
class Config {
public:
    static Config parse(std::istream& in, const std::string& origin, const std::set<std::string>& allowed);
    static Config load(const std::string& path, const std::set<std::string>& allowed);

    void set(const std::string& key, const std::string& value) { values_[key] = value; }
    bool has(const std::string& key) const { return values_.count(key) != 0; }
    bool has_section(const std::string& section) const;

    std::optional<std::string> raw(const std::string& key) const;
    std::string get_string(const std::string& key, const std::string& fallback) const;
    double get_double(const std::string& key, double fallback) const;
    double require_double(const std::string& key) const;
    long long get_int(const std::string& key, long long fallback) const;
    std::uint64_t get_u64(const std::string& key, std::uint64_t fallback) const;
    bool get_bool(const std::string& key, bool fallback) const;
    std::vector<int> get_int_list(const std::string& key, const std::vector<int>& fallback) const;

    const std::map<std::string, std::string>& values() const { return values_; }

private:
    std::map<std::string, std::string> values_;
};

}  // namespace brickwall::cli
