#include <chrono>
#include <fstream>
#include <iostream>
#include <map>
#include <memory>
#include <string>

#include "CLI11.hpp"
#include "brickwall/core.hpp"
#include "brickwall/parallel.hpp"
#include "commands.hpp"

namespace {

using namespace brickwall;
using namespace brickwall::cli;

struct Invocation {
    const CommandSpec* spec = nullptr;
    CLI::App* app = nullptr;
    std::string config_path;
    std::map<std::string, std::string> flag_values;
};

void add_flags(Invocation& inv, const std::vector<FlagSpec>& flags) {
    for (const auto& f : flags) inv.app->add_option(f.flag, inv.flag_values[f.key], f.help + " [" + f.key + "]");
}

int exit_code_for(const std::exception& e) {
    if (dynamic_cast<const CapacityError*>(&e)) return 3;
    if (dynamic_cast<const ParameterError*>(&e) || dynamic_cast<const CriticalManifoldError*>(&e) ||
        dynamic_cast<const DegenerateError*>(&e) || dynamic_cast<const UnsupportedError*>(&e))
        return 2;
    return 1;
}

int execute(Invocation& inv) {
    const CommandSpec& spec = *inv.spec;
    RunRecord record;
    record.subcommand = spec.name;
    std::unique_ptr<OutputSink> sink;
    std::string out_dir = "out";
    const auto start = std::chrono::steady_clock::now();
    int code = 0;
    try {
        const auto allowed = allowed_keys(spec);
        Config config = inv.config_path.empty() ? Config{} : Config::load(inv.config_path, allowed);
        for (const auto& [key, value] : inv.flag_values)
            if (!value.empty()) config.set(key, value);
        out_dir = config.get_string("run.out_dir", out_dir);
        Params params(config, record.parameters);
        Context ctx{params, record, sink, out_dir};
        spec.run(ctx);
    } catch (const std::exception& e) {
        code = exit_code_for(e);
        record.status = "error";
        record.error = e.what();
        std::cerr << spec.name << ": " << e.what() << "\n";
        if (code == 2) std::cerr << "run '" << spec.name << " --help' for usage\n";
    }
    record.wall_time_s = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    try {
        if (!sink) sink = std::make_unique<OutputSink>(out_dir, record);
        sink->finish();
    } catch (const std::exception& e) {
        std::cerr << spec.name << ": could not write run record: " << e.what() << "\n";
        if (code == 0) code = 1;
    }
    if (code == 0) {
        // The last JSON summary doubles as the console report.
        for (auto it = record.outputs.rbegin(); it != record.outputs.rend(); ++it) {
            if (it->size() > 5 && it->compare(it->size() - 5, 5, ".json") == 0 &&
                it->find(".run.json") == std::string::npos) {
                std::ifstream in(*it);
                std::cout << in.rdbuf();
                break;
            }
        }
    }
    return code;
}

}  // namespace

int main(int argc, char** argv) {
    pin_blas_threads();
    CLI::App app{"Brickwork circuit toolkit: integrability, level statistics and dynamics of magnetization-conserving circuits"};
    app.require_subcommand(1);
    app.set_version_flag("--version", std::string(kToolVersion));

    const std::vector<CommandSpec> specs = command_specs();
    std::vector<std::unique_ptr<Invocation>> invocations;
    for (const auto& spec : specs) {
        auto inv = std::make_unique<Invocation>();
        inv->spec = &spec;
        inv->app = app.add_subcommand(spec.name, spec.description);
        inv->app->add_option("--config", inv->config_path, "key-value config file");
        add_flags(*inv, common_flags());
        if (spec.uses_gate) add_flags(*inv, gate_flags());
        add_flags(*inv, spec.flags);
        invocations.push_back(std::move(inv));
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : 2;
    }
    for (auto& inv : invocations)
        if (inv->app->parsed()) return execute(*inv);
    return 2;
}
