// fitzcalc: scenario runner for Fitzpatrick and saddle-function computations.

#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "fitzcalc/checks.hpp"
#include "fitzcalc/io.hpp"
#include "fitzcalc/kernels.hpp"
#include "fitzcalc/run.hpp"
#include "fitzcalc/scenario.hpp"

namespace {

constexpr int kOk = 0;
constexpr int kChecksFailed = 1;
constexpr int kParseError = 2;
constexpr int kInternalError = 3;

void apply_thread_cap() {
    const char* env = std::getenv("FITZCALC_THREADS");
    if (!env || !*env) return;
    char* end = nullptr;
    const long n = std::strtol(env, &end, 10);
    if (*end != '\0' || n < 0) {
        std::cerr << "warning: ignoring FITZCALC_THREADS='" << env << "'\n";
        return;
    }
    fitzcalc::kernels::set_threads(static_cast<int>(n));
}

int do_export(const fitzcalc::Scenario& sc, const std::string& out, std::vector<std::string> grids,
              const std::string& format) {
    using namespace fitzcalc;
    static const std::vector<std::string> all = {"fitzpatrick", "sigma",   "phi",  "phi_conjugate_transpose",
                                                 "F",           "F_tilde", "G_hat"};
    if (grids.empty()) grids = all;
    RunContext ctx(sc);
    std::filesystem::create_directories(out);
    for (const auto& g : grids) {
        const GridFn2* f = nullptr;
        if (g == "fitzpatrick") f = &ctx.fitz();
        else if (g == "sigma") f = &ctx.sigma();
        else if (g == "phi") f = &ctx.phi();
        else if (g == "phi_conjugate_transpose") f = &ctx.phi_ct();
        else if (g == "F") f = &ctx.pair().lower;
        else if (g == "F_tilde") f = &ctx.pair().upper;
        else if (g == "G_hat") f = &ctx.ghat();
        else {
            std::cerr << "error: unknown grid '" << g << "'\n";
            return kParseError;
        }
        for (const char* ext : {".csv", ".json"}) {
            if (format != "both" && format != std::string(ext + 1)) continue;
            const auto path = std::filesystem::path(out) / (g + ext);
            export_grid(*f, format_for(path), path);
            std::cout << path.string() << '\n';
        }
    }
    return kOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Fitzpatrick functions, representative functions and saddle bifunctions on grids"};
    app.require_subcommand(1);

    std::string scenario_path, out_dir;
    bool oracle = false, quiet = false;
    auto* run = app.add_subcommand("run", "run a scenario and its checks");
    run->add_option("scenario", scenario_path, "scenario JSON file")->required();
    run->add_flag("--oracle", oracle, "also compare F_T with its closed form");
    run->add_option("--out", out_dir, "directory for grids and reports (overrides output_dir)");
    run->add_flag("-q,--quiet", quiet, "print only the verdict line");

    std::string export_scenario, export_out, export_format = "both";
    std::vector<std::string> export_grids;
    auto* exp = app.add_subcommand("export", "compute grids of a scenario and write them as CSV/JSON");
    exp->add_option("scenario", export_scenario, "scenario JSON file")->required();
    exp->add_option("--out", export_out, "output directory")->required();
    exp->add_option("--grid", export_grids,
                    "fitzpatrick, sigma, phi, phi_conjugate_transpose, F, F_tilde or G_hat (repeatable; default all)");
    exp->add_option("--format", export_format, "csv, json or both")->check(CLI::IsMember({"csv", "json", "both"}));

    auto* list = app.add_subcommand("list-checks", "list the registered property suites");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? kOk : kParseError;
    }

    apply_thread_cap();
    try {
        if (*list) {
            for (const auto& c : fitzcalc::check_registry()) std::cout << c.name << " — " << c.anchor << '\n';
            return kOk;
        }
        if (*exp) return do_export(fitzcalc::load_scenario(export_scenario), export_out, export_grids, export_format);

        const fitzcalc::Scenario sc = fitzcalc::load_scenario(scenario_path);
        fitzcalc::RunOptions opts;
        opts.force_oracle = oracle;
        opts.out_dir = out_dir;
        const fitzcalc::RunReport rep = fitzcalc::run_scenario(sc, opts);
        if (quiet)
            std::cout << (rep.all_passed() ? "ALL CHECKS PASSED" : "SOME CHECKS FAILED") << '\n';
        else
            std::cout << rep.text();
        return rep.all_passed() ? kOk : kChecksFailed;
    } catch (const fitzcalc::ScenarioError& e) {
        std::cerr << "scenario error at " << (e.where().empty() ? "/" : e.where()) << ": " << e.what() << '\n';
        return kParseError;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << '\n';
        return kInternalError;
    }
}
