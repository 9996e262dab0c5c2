#include "run_record.hpp"

#include <cstdio>
#include <fstream>

#include "brickwall/core.hpp"

namespace brickwall::cli {

std::uint64_t fnv1a64(const std::string& data) {
    std::uint64_t h = 0xcbf29ce484222325ull;
    for (unsigned char c : data) {
        h ^= c;
        h *= 0x100000001b3ull;
    }
    return h;
}

std::string num(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::string RunRecord::hash() const {
    std::string canon = subcommand + "\n";
    for (const auto& [k, v] : parameters) canon += k + "=" + v + "\n";
    char buf[20];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(fnv1a64(canon)));
    return buf;
}

nlohmann::json RunRecord::to_json() const {
    nlohmann::json j;
    j["subcommand"] = subcommand;
    j["parameters"] = parameters;
    j["tool_version"] = kToolVersion;
    j["wall_time_s"] = wall_time_s;
    j["outputs"] = outputs;
    j["status"] = status;
    if (!error.empty()) j["error"] = error;
    j["run_hash"] = hash();
    return j;
}

OutputSink::OutputSink(std::filesystem::path dir, RunRecord& record)
    : dir_(std::move(dir)), record_(record), hash_(record.hash()) {
    std::error_code ec;
    std::filesystem::create_directories(dir_, ec);
    if (ec) throw ParameterError("cannot create output directory '" + dir_.string() + "': " + ec.message());
}

std::filesystem::path OutputSink::path_for(const std::string& name) {
    const auto p = dir_ / name;
    record_.outputs.push_back(p.string());
    return p;
}

void OutputSink::csv(const std::string& name, const std::vector<std::string>& columns,
                     const std::vector<std::vector<std::string>>& rows) {
    const auto p = path_for(name);
    std::ofstream out(p);
    if (!out) throw Error("cannot write '" + p.string() + "'");
    out << "# run_hash=" << hash_ << "\n";
    for (std::size_t i = 0; i < columns.size(); ++i) out << (i ? "," : "") << columns[i];
    out << "\n";
    for (const auto& row : rows) {
        for (std::size_t i = 0; i < row.size(); ++i) out << (i ? "," : "") << row[i];
        out << "\n";
    }
}

void OutputSink::json(const std::string& name, nlohmann::json body) {
    const auto p = path_for(name);
    body["run_hash"] = hash_;
    std::ofstream out(p);
    if (!out) throw Error("cannot write '" + p.string() + "'");
    out << body.dump(2) << "\n";
}

void OutputSink::finish() {
    const auto p = dir_ / (record_.subcommand + ".run.json");
    record_.outputs.push_back(p.string());
    std::ofstream out(p);
    if (!out) throw Error("cannot write '" + p.string() + "'");
    out << record_.to_json().dump(2) << "\n";
}

}  // namespace brickwall::cli
