#pragma once

#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "fitzcalc/grid.hpp"
#include "fitzcalc/operators.hpp"
#include "fitzcalc/oracle.hpp"

namespace fitzcalc {

/// Malformed scenario; `where` is a JSON pointer into the document.
class ScenarioError : public std::runtime_error {
public:
    ScenarioError(const std::string& where, const std::string& what)
        : std::runtime_error(where + ": " + what), where_(where) {}
    const std::string& where() const { return where_; }

private:
    std::string where_;
};

struct PhiChoice {
    enum class Kind { Fitzpatrick, Sigma, FenchelYoung, ConjugateTranspose };
    Kind kind = Kind::Fitzpatrick;
    std::optional<oracle::PLConvexFn> pl;       // fenchel_young with an explicit PL potential
    std::optional<oracle::QuadraticFn> quad;    // fenchel_young with an explicit quadratic potential
    std::shared_ptr<const PhiChoice> inner;     // conjugate_transpose_of

    std::string label() const;
    nlohmann::json to_json() const;
};

struct Scenario {
    std::string name;
    OperatorSpec op;
    Grid1 x_box = make_grid(-2, 2, 81);
    std::optional<Grid1> dual_box;  // nullopt: auto
    PhiChoice phi;
    std::vector<std::string> checks;
    double tol_constant = 3.0;
    std::string output_dir;
    nlohmann::json source;  // the document as read

    double tol() const { return tol_constant * x_box.step(); }
};

Scenario parse_scenario(const nlohmann::json& doc);
Scenario load_scenario(const std::string& path);

OperatorSpec parse_operator(const nlohmann::json& j, const std::string& where = "/operator");
PhiChoice parse_phi(const nlohmann::json& j, const std::string& where = "/phi");

/// phi on x_box times dual, per the choice.
GridFn2 compute_phi(const PhiChoice& choice, const OperatorSpec& op, const Grid1& x, const Grid1& dual);

}  // namespace fitzcalc
