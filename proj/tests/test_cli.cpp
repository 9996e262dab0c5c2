#include <filesystem>
#include <fstream>
#include <sstream>

#include "brickwall/core.hpp"
#include "config.hpp"
#include "doctest.h"
#include "run_record.hpp"

using namespace brickwall;
using namespace brickwall::cli;

namespace {

const std::set<std::string> kAllowed = {"hamiltonian.tau", "hamiltonian.delta", "run.seed", "run.list", "run.flag"};

Config parse(const std::string& text) {
    std::istringstream in(text);
    return Config::parse(in, "test", kAllowed);
}

}  // namespace

TEST_CASE("config grammar") {
    const Config c = parse("# comment\n; other\n\n[hamiltonian]\n tau = 1.0471975511965976 \ndelta=1.4\n[run]\nseed = 42\n"
                           "list = 3, 4,5\nflag = true\n");
    CHECK(c.get_double("hamiltonian.tau", 0) == 1.0471975511965976);
    CHECK(c.get_double("hamiltonian.delta", 0) == 1.4);
    CHECK(c.get_u64("run.seed", 0) == 42);
    CHECK(c.get_int_list("run.list", {}) == std::vector<int>{3, 4, 5});
    CHECK(c.get_bool("run.flag", false));
    CHECK(c.get_double("missing.key", 2.5) == 2.5);
    CHECK(c.has_section("run"));
    CHECK_FALSE(c.has_section("haar"));

    CHECK_THROWS_AS(parse("tau = 1\n"), ParameterError);
    CHECK_THROWS_AS(parse("[hamiltonian]\ntau = 1\ntau = 2\n"), ParameterError);
    CHECK_THROWS_AS(parse("[hamiltonian]\nB = 1\n"), ParameterError);
    CHECK_THROWS_AS(parse("[hamiltonian\n"), ParameterError);
    CHECK_THROWS_AS(parse("[hamiltonian]\ntau 1\n"), ParameterError);
    CHECK_THROWS_AS(parse("[hamiltonian]\ntau = abc\n").require_double("hamiltonian.tau"), ParameterError);
    CHECK_THROWS_AS(parse("[hamiltonian]\ntau = 1.0x\n").get_double("hamiltonian.tau", 0), ParameterError);
    CHECK_THROWS_AS(parse("[run]\nseed = -3\n").get_u64("run.seed", 0), ParameterError);
    CHECK_THROWS_AS(parse("").require_double("hamiltonian.tau"), ParameterError);
    CHECK_THROWS_AS(Config::load("/nonexistent/config.ini", kAllowed), ParameterError);
}

TEST_CASE("run hash is deterministic and ignores timing") {
    RunRecord a;
    a.subcommand = "classify";
    a.parameters = {{"hamiltonian.tau", "1"}, {"hamiltonian.delta", "1.4"}};
    RunRecord b = a;
    b.wall_time_s = 12.0;
    b.outputs = {"x.json"};
    CHECK(a.hash() == b.hash());
    b.parameters["hamiltonian.delta"] = "1.5";
    CHECK(a.hash() != b.hash());
    CHECK(a.hash().size() == 16);
    CHECK(fnv1a64("") == 0xcbf29ce484222325ULL);
    CHECK(fnv1a64("a") == 0xaf63dc4c8601ec8cULL);
    CHECK(num(0.1) == "0.10000000000000001");
}

TEST_CASE("output sink stamps files with the run hash") {
    const auto dir = std::filesystem::temp_directory_path() / "brickwall_sink_test";
    std::filesystem::remove_all(dir);
    RunRecord r;
    r.subcommand = "demo";
    r.parameters = {{"run.seed", "0"}};
    OutputSink sink(dir, r);
    sink.csv("t.csv", {"a", "b"}, {{"1", "2"}});
    sink.json("t.json", {{"x", 1}});
    sink.finish();
    std::ifstream in(dir / "t.csv");
    std::string first, header;
    std::getline(in, first);
    std::getline(in, header);
    CHECK(first == "# run_hash=" + r.hash());
    CHECK(header == "a,b");
    std::ifstream j(dir / "t.json");
    const nlohmann::json body = nlohmann::json::parse(j);
    CHECK(body["run_hash"] == r.hash());
    CHECK(r.outputs.size() >= 2);
    std::filesystem::remove_all(dir);
}
