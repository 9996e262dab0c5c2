#pragma once

#include <functional>
#include <map>
#include <memory>
#include <set>
#include <string>
#include <vector>

#include "config.hpp"
#include "run_record.hpp"

namespace brickwall::cli {

// One flag mapped onto a config key.
struct FlagSpec {
    std::string key;   // "section.key"
    std::string flag;  // "--name"
    std::string help;
};

// Reads parameters and records the resolved value of each one.
class Params {
public:
    Params(const Config& config, std::map<std::string, std::string>& resolved)
        : config_(config), resolved_(resolved) {}

    bool has(const std::string& key) const { return config_.has(key); }
    bool has_section(const std::string& s) const { return config_.has_section(s); }
    double real(const std::string& key, double fallback);
    double required_real(const std::string& key);
    int integer(const std::string& key, int fallback, int lo, int hi);
    std::uint64_t u64(const std::string& key, std::uint64_t fallback);
    bool flag(const std::string& key, bool fallback);
    std::string text(const std::string& key, const std::string& fallback);
    std::vector<int> int_list(const std::string& key, const std::vector<int>& fallback);

private:
    const Config& config_;
    std::map<std::string, std::string>& resolved_;
};

struct Context {
    Params& params;
    RunRecord& record;
    // Created once parameters are resolved; the run hash is fixed from then on.
    std::unique_ptr<OutputSink>& sink;
    std::string out_dir;

    OutputSink& open_sink();
};

struct CommandSpec {
    std::string name;
    std::string description;
    bool uses_gate = false;
    std::vector<FlagSpec> flags;
    std::function<void(Context&)> run;
};

const std::vector<FlagSpec>& common_flags();
const std::vector<FlagSpec>& gate_flags();
std::vector<CommandSpec> command_specs();

// Every key a subcommand accepts from a config file or flags.
std::set<std::string> allowed_keys(const CommandSpec& spec);

}  // namespace brickwall::cli
