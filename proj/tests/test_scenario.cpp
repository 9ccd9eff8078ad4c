#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <nlohmann/json.hpp>

#include "fitzcalc/checks.hpp"
#include "fitzcalc/run.hpp"
#include "fitzcalc/scenario.hpp"

using namespace fitzcalc;
using nlohmann::json;
namespace fs = std::filesystem;

namespace {

std::string where_of(const json& doc) {
    try {
        parse_scenario(doc);
    } catch (const ScenarioError& e) {
        return e.where();
    }
    return "no error";
}

json identity() { return json::parse(R"({"operator": {"kind": "affine", "params": {"lambda": 1, "c": 0}}})"); }

fs::path scratch(const std::string& name) {
    const fs::path p = fs::temp_directory_path() / "fitzcalc_cli_test" / name;
    fs::remove_all(p);
    fs::create_directories(p);
    return p;
}

int cli(const std::string& args, const fs::path& log) {
    const std::string cmd = std::string(FITZCALC_CLI) + " " + args + " > " + log.string() + " 2>&1";
    const int rc = std::system(cmd.c_str());
    return WIFEXITED(rc) ? WEXITSTATUS(rc) : -1;
}

std::string slurp(const fs::path& p) {
    std::ifstream is(p);
    std::stringstream ss;
    ss << is.rdbuf();
    return ss.str();
}

}  // namespace

TEST_CASE("scenario defaults") {
    const Scenario s = parse_scenario(identity());
    CHECK(s.x_box == make_grid(-2, 2, 81));
    CHECK_FALSE(s.dual_box.has_value());
    CHECK(s.phi.kind == PhiChoice::Kind::Fitzpatrick);
    CHECK(s.checks.size() == check_registry().size());
    CHECK(s.tol() == doctest::Approx(0.15));
}

TEST_CASE("scenario errors point at the offending field") {
    json d = identity();
    d["bogus"] = 1;
    CHECK(where_of(d) == "/bogus");

    d = identity();
    d["x_box"] = {-1, 1, 2};
    CHECK(where_of(d) == "/x_box/2");

    d = identity();
    d["x_box"] = {1, -1, 5};
    CHECK(where_of(d) == "/x_box");

    d = identity();
    d["checks"] = {"sandwich", "nope"};
    CHECK(where_of(d) == "/checks/1");

    d = identity();
    d["checks"] = {"sandwich", "sandwich"};
    CHECK(where_of(d) == "/checks/1");

    d = identity();
    d["operator"]["kind"] = "cubic";
    CHECK(where_of(d) == "/operator/kind");

    d = json::parse(R"({"operator": {"kind": "paper_example"}, "phi": {"fenchel_young": "auto"}})");
    CHECK(where_of(d) == "/phi");
    d["phi"] = {{"conjugate_transpose_of", {{"fenchel_young", "auto"}}}};
    CHECK(where_of(d) == "/phi/conjugate_transpose_of");

    d = json::parse(R"({"operator": {"kind": "staircase", "params": {"vertices": [[0, 0], [0, 1]], "left_ray": {"direction": "up"}}}})");
    CHECK(where_of(d) == "/operator/params/left_ray/direction");

    CHECK(where_of(json::array()) == "");
}

TEST_CASE("phi choices round-trip through JSON") {
    for (const char* text : {R"("sigma")", R"({"fenchel_young": "auto"})",
                             R"({"conjugate_transpose_of": {"fenchel_young": {"quadratic": {"lambda": 2, "c": 1}}}})",
                             R"({"fenchel_young": {"pl": {"breakpoints": [0], "values": [0], "left_slope": -1, "right_slope": 1}}})"}) {
        const PhiChoice c = parse_phi(json::parse(text));
        CHECK(parse_phi(c.to_json()).to_json() == c.to_json());
    }
}

TEST_CASE("run reports and artifacts") {
    Scenario s = parse_scenario(json::parse(
        R"({"operator": {"kind": "sign"}, "x_box": [-1, 1, 21], "checks": ["sandwich", "duality"]})"));
    const fs::path out = scratch("api");
    RunOptions opts;
    opts.out_dir = out.string();
    const RunReport r = run_scenario(s, opts);
    CHECK(r.all_passed());
    CHECK(r.checks.size() == 2);
    CHECK(fs::exists(out / "report.json"));
    CHECK(fs::exists(out / "report.txt"));
    CHECK(fs::exists(out / "fitzpatrick.csv"));
    CHECK(fs::exists(out / "sigma.json"));

    opts.force_oracle = true;
    const RunReport r2 = run_scenario(s, opts);
    CHECK(r2.checks.front().name == "fitzpatrick_oracle");
}

TEST_CASE("cli exit codes and outputs") {
    const fs::path dir = scratch("cli");
    const fs::path log = dir / "log.txt";
    const std::string scen = std::string(FITZCALC_SCENARIOS) + "/identity_roundtrip.json";

    CHECK(cli("run " + scen + " --out " + (dir / "a").string(), log) == 0);
    CHECK(slurp(log).find("roundtrip") != std::string::npos);

    CHECK(cli("run " + std::string(FITZCALC_SCENARIOS) + "/sign.json -q --out " + (dir / "s").string(), log) == 1);

    std::ofstream(dir / "broken.json") << "{\"operator\": ";
    CHECK(cli("run " + (dir / "broken.json").string(), log) == 2);
    std::ofstream(dir / "unknown.json") << R"({"operator": {"kind": "affine"}, "checks": ["nope"]})";
    CHECK(cli("run " + (dir / "unknown.json").string(), log) == 2);
    CHECK(slurp(log).find("/checks/0") != std::string::npos);
    CHECK(cli("run " + (dir / "missing.json").string(), log) == 2);
    CHECK(cli("frobnicate", log) == 2);

    CHECK(cli("list-checks", log) == 0);
    const std::string listing = slurp(log);
    for (const auto& c : check_registry()) CHECK(listing.find(c.name + " — ") != std::string::npos);

    CHECK(cli("export " + scen + " --out " + (dir / "e").string() + " --grid F --grid sigma --format csv", log) == 0);
    CHECK(fs::exists(dir / "e" / "F.csv"));
    CHECK(fs::exists(dir / "e" / "sigma.csv"));
    CHECK_FALSE(fs::exists(dir / "e" / "F.json"));
    CHECK(cli("export " + scen + " --out " + (dir / "e").string() + " --grid nope", log) == 2);
}

TEST_CASE("identical scenarios give identical reports") {
    const fs::path dir = scratch("det");
    const std::string scen = std::string(FITZCALC_SCENARIOS) + "/sign_sigma.json";
    const fs::path log = dir / "log.txt";
    REQUIRE(cli("run " + scen + " --out " + (dir / "1").string(), log) == 0);
    REQUIRE(std::system(("FITZCALC_THREADS=1 " + std::string(FITZCALC_CLI) + " run " + scen + " -q --out " +
                         (dir / "2").string() + " > /dev/null")
                            .c_str()) == 0);
    json a = json::parse(slurp(dir / "1" / "report.json"));
    json b = json::parse(slurp(dir / "2" / "report.json"));
    a.erase("timing");
    b.erase("timing");
    CHECK(a.dump() == b.dump());
    REQUIRE(fs::exists(dir / "1" / "phi.csv"));
    CHECK(slurp(dir / "1" / "phi.csv") == slurp(dir / "2" / "phi.csv"));
}
