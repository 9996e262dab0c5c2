#include "config.hpp"

#include <cctype>
#include <cmath>
#include <fstream>
#include <sstream>

#include "brickwall/core.hpp"

namespace brickwall::cli {

namespace {

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return "";
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

bool valid_name(const std::string& s) {
    if (s.empty()) return false;
    for (char c : s)
        if (!std::isalnum(static_cast<unsigned char>(c)) && c != '_') return false;
    return true;
}

[[noreturn]] void bad_value(const std::string& key, const std::string& value, const char* kind) {
    throw ParameterError("'" + key + "' = '" + value + "' is not " + kind);
}

}  // namespace

Config Config::parse(std::istream& in, const std::string& origin, const std::set<std::string>& allowed) {
    Config c;
    std::string section, line;
    int number = 0;
    while (std::getline(in, line)) {
        ++number;
        const std::string t = trim(line);
        const std::string where = origin + ":" + std::to_string(number) + ": ";
        if (t.empty() || t[0] == '#' || t[0] == ';') continue;
        if (t.front() == '[') {
            if (t.back() != ']') throw ParameterError(where + "unterminated section header");
            section = trim(t.substr(1, t.size() - 2));
            if (!valid_name(section)) throw ParameterError(where + "bad section name '" + section + "'");
            continue;
        }
        const auto eq = t.find('=');
        if (eq == std::string::npos) throw ParameterError(where + "expected 'key = value'");
        const std::string key = trim(t.substr(0, eq));
        const std::string value = trim(t.substr(eq + 1));
        if (!valid_name(key)) throw ParameterError(where + "bad key '" + key + "'");
        if (section.empty()) throw ParameterError(where + "key '" + key + "' outside any section");
        const std::string full = section + "." + key;
        if (!allowed.count(full)) throw ParameterError(where + "unknown key '" + full + "'");
        if (c.has(full)) throw ParameterError(where + "repeated key '" + full + "'");
        c.values_[full] = value;
    }
    return c;
}

Config Config::load(const std::string& path, const std::set<std::string>& allowed) {
    std::ifstream in(path);
    if (!in) throw ParameterError("cannot read config '" + path + "'");
    return parse(in, path, allowed);
}

bool Config::has_section(const std::string& section) const {
    const std::string prefix = section + ".";
    for (const auto& [k, v] : values_)
        if (k.compare(0, prefix.size(), prefix) == 0) return true;
    return false;
}

std::optional<std::string> Config::raw(const std::string& key) const {
    auto it = values_.find(key);
    if (it == values_.end()) return std::nullopt;
    return it->second;
}

std::string Config::get_string(const std::string& key, const std::string& fallback) const {
    return raw(key).value_or(fallback);
}

double Config::get_double(const std::string& key, double fallback) const {
    const auto v = raw(key);
    if (!v) return fallback;
    std::size_t used = 0;
    double d = 0.0;
    try {
        d = std::stod(*v, &used);
    } catch (const std::exception&) {
        bad_value(key, *v, "a number");
    }
    if (used != v->size() || !std::isfinite(d)) bad_value(key, *v, "a finite number");
    return d;
}

double Config::require_double(const std::string& key) const {
    if (!has(key)) throw ParameterError("missing required parameter '" + key + "'");
    return get_double(key, 0.0);
}

long long Config::get_int(const std::string& key, long long fallback) const {
    const auto v = raw(key);
    if (!v) return fallback;
    std::size_t used = 0;
    long long n = 0;
    try {
        n = std::stoll(*v, &used);
    } catch (const std::exception&) {
        bad_value(key, *v, "an integer");
    }
    if (used != v->size()) bad_value(key, *v, "an integer");
    return n;
}

std::uint64_t Config::get_u64(const std::string& key, std::uint64_t fallback) const {
    const auto v = raw(key);
    if (!v) return fallback;
    if (v->empty() || (*v)[0] == '-') bad_value(key, *v, "an unsigned 64-bit integer");
    std::size_t used = 0;
    std::uint64_t n = 0;
    try {
        n = std::stoull(*v, &used, 0);
    } catch (const std::exception&) {
        bad_value(key, *v, "an unsigned 64-bit integer");
    }
    if (used != v->size()) bad_value(key, *v, "an unsigned 64-bit integer");
    return n;
}

bool Config::get_bool(const std::string& key, bool fallback) const {
    const auto v = raw(key);
    if (!v) return fallback;
    if (*v == "true" || *v == "1" || *v == "yes" || *v == "on") return true;
    if (*v == "false" || *v == "0" || *v == "no" || *v == "off") return false;
    bad_value(key, *v, "a boolean");
}

std::vector<int> Config::get_int_list(const std::string& key, const std::vector<int>& fallback) const {
    const auto v = raw(key);
    if (!v) return fallback;
    std::vector<int> out;
    std::stringstream ss(*v);
    std::string item;
    while (std::getline(ss, item, ',')) {
        const std::string t = trim(item);
        std::size_t used = 0;
        int n = 0;
        try {
            n = std::stoi(t, &used);
        } catch (const std::exception&) {
            bad_value(key, *v, "a comma-separated integer list");
        }
        if (used != t.size()) bad_value(key, *v, "a comma-separated integer list");
        out.push_back(n);
    }
    if (out.empty()) bad_value(key, *v, "a comma-separated integer list");
    return out;
}

}  // namespace brickwall::cli
