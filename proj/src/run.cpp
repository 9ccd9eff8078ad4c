#include "fitzcalc/run.hpp"

#include <chrono>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "fitzcalc/checks.hpp"
#include "fitzcalc/io.hpp"

namespace fitzcalc {

namespace {

void print_report(std::ostringstream& os, const PropertyReport& r, int depth) {
    os << std::string(static_cast<std::size_t>(2 * depth), ' ') << r.summary() << '\n';
    for (const auto& n : r.notes) os << std::string(static_cast<std::size_t>(2 * depth + 4), ' ') << "- " << n << '\n';
    for (const auto& p : r.parts) print_report(os, p, depth + 1);
}

}  // namespace

bool RunReport::all_passed() const {
    for (const auto& c : checks)
        if (c.applicable && !c.passed) return false;
    return true;
}

std::string RunReport::text() const {
    std::ostringstream os;
    os << "scenario: " << scenario.value("name", std::string("scenario")) << '\n';
    os << "dual box: " << dual_box << '\n';
    for (const auto& w : warnings) os << "warning: " << w << '\n';
    for (const auto& c : checks) print_report(os, c, 0);
    double total = 0;
    for (const auto& [stage, sec] : timings) total += sec;
    os << "time: " << total << " s\n";
    os << (all_passed() ? "ALL CHECKS PASSED" : "SOME CHECKS FAILED") << '\n';
    return os.str();
}

nlohmann::json RunReport::to_json(bool with_timing) const {
    nlohmann::json j;
    j["scenario"] = scenario;
    j["dual_box"] = dual_box;
    j["checks"] = checks;
    j["warnings"] = warnings;
    j["exported"] = exported;
    j["passed"] = all_passed();
    if (with_timing) {
        nlohmann::json t = nlohmann::json::array();
        for (const auto& [stage, sec] : timings) t.push_back({{"stage", stage}, {"seconds", sec}});
        j["timing"] = t;
    }
    return j;
}

RunReport run_scenario(const Scenario& sc, const RunOptions& opts) {
    RunContext ctx(sc);
    RunReport rep;
    rep.scenario = sc.source;
    rep.dual_box = "[" + format_double(ctx.dual().lo()) + ", " + format_double(ctx.dual().hi()) + ", " +
                   std::to_string(ctx.dual().size()) + "]";
    std::vector<std::string> names = sc.checks;
    if (opts.force_oracle && std::find(names.begin(), names.end(), "fitzpatrick_oracle") == names.end())
        names.insert(names.begin(), "fitzpatrick_oracle");
    for (const auto& n : names) {
        const auto t0 = std::chrono::steady_clock::now();
        rep.checks.push_back(run_check(n, ctx));
        ctx.timings.emplace_back("check:" + n,
                                 std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count());
    }
    rep.timings = ctx.timings;
    rep.warnings = ctx.warnings;

    const std::string dir = opts.out_dir.empty() ? sc.output_dir : opts.out_dir;
    if (!dir.empty()) {
        std::filesystem::create_directories(dir);
        for (const auto& [name, grid] : ctx.computed()) {
            for (Format f : {Format::Csv, Format::Json}) {
                const std::string file = name + (f == Format::Csv ? ".csv" : ".json");
                export_grid(*grid, f, std::filesystem::path(dir) / file);
                rep.exported.push_back(file);
            }
        }
        rep.exported.push_back("report.json");
        rep.exported.push_back("report.txt");
        std::ofstream(std::filesystem::path(dir) / "report.json") << rep.to_json().dump(2) << '\n';
        std::ofstream(std::filesystem::path(dir) / "report.txt") << rep.text();
    }
    return rep;
}

}  // namespace fitzcalc
