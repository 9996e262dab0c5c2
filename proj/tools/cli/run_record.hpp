#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <string>
#include <vector>

#include "json.hpp"

namespace brickwall::cli {

inline constexpr const char* kToolVersion = "0.1.0";

std::uint64_t fnv1a64(const std::string& data);
// 17 significant digits.
std::string num(double v);

struct RunRecord {
    std::string subcommand;
    std::map<std::string, std::string> parameters;  // fully resolved, defaults included
    double wall_time_s = 0.0;
    std::vector<std::string> outputs;
    std::string status = "ok";
    std::string error;

    // FNV-1a over the subcommand and the sorted parameters; wall time and
    // output paths do not enter.
    std::string hash() const;
    nlohmann::json to_json() const;
};

// Writes files under one directory, stamping each with the run hash and
// recording it in the run record.
class OutputSink {
public:
    OutputSink(std::filesystem::path dir, RunRecord& record);

    void csv(const std::string& name, const std::vector<std::string>& columns,
             const std::vector<std::vector<std::string>>& rows);
    void json(const std::string& name, nlohmann::json body);
    // The record itself, written last.
    void finish();

private:
    std::filesystem::path path_for(const std::string& name);

    std::filesystem::path dir_;
    RunRecord& record_;
    std::string hash_;
};

}  // namespace brickwall::cli
