#pragma once

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "fitzcalc/operators.hpp"
#include "fitzcalc/report.hpp"
#include "fitzcalc/scenario.hpp"
#include "fitzcalc/transforms.hpp"

namespace fitzcalc {

struct CheckInfo {
    std::string name;
    std::string anchor;
};

const std::vector<CheckInfo>& check_registry();
const CheckInfo* find_check(std::string_view name);

/// Lazily computed grids shared by the checks of one run.
class RunContext {
public:
    explicit RunContext(const Scenario& sc);

    const Scenario& scenario() const { return sc_; }
    const Grid1& x() const { return x_; }
    const Grid1& dual() const { return s_; }
    double tol() const { return sc_.tol(); }
    double h() const { return x_.step(); }

    const GraphSet& graph();
    const GridFn2& fitz();
    const GridFn2& sigma();
    const GridFn2& phi();
    const GridFn2& phi_ct();
    const SaddlePair& pair();
    const SaddlePair& fitz_pair();
    const GridFn2& ghat();

    std::vector<std::string> warnings;
    std::vector<std::pair<std::string, double>> timings;  // stage, seconds

    /// Grids computed so far, by export name.
    std::vector<std::pair<std::string, const GridFn2*>> computed() const;

private:
    template <class Fn>
    auto timed(const std::string& stage, Fn&& fn) -> decltype(fn());

    const Scenario& sc_;
    Grid1 x_;
    Grid1 s_;
    std::optional<GraphSet> graph_;
    std::optional<GridFn2> fitz_, sigma_, phi_, phi_ct_, ghat_;
    std::optional<SaddlePair> pair_, fitz_pair_;
};

/// Runs one registered check. Throws std::invalid_argument for unknown names.
PropertyReport run_check(const std::string& name, RunContext& ctx);

}  // namespace fitzcalc
