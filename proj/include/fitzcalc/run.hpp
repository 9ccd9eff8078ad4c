#pragma once

#include <string>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

#include "fitzcalc/report.hpp"
#include "fitzcalc/scenario.hpp"

namespace fitzcalc {

struct RunReport {
    nlohmann::json scenario;
    std::string dual_box;
    std::vector<PropertyReport> checks;
    std::vector<std::pair<std::string, double>> timings;
    std::vector<std::string> warnings;
    std::vector<std::string> exported;

    bool all_passed() const;
    std::string text() const;
    /// Timing fields live under "timing" only, so the rest is reproducible.
    nlohmann::json to_json(bool with_timing = true) const;
};

struct RunOptions {
    bool force_oracle = false;  // append fitzpatrick_oracle when absent
    std::string out_dir;        // overrides the scenario's output_dir when set
};

RunReport run_scenario(const Scenario& sc, const RunOptions& opts = {});

}  // namespace fitzcalc
