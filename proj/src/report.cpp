#include "fitzcalc/report.hpp"

#include <sstream>

namespace fitzcalc {

std::string PropertyReport::summary() const {
    std::ostringstream os;
    os << (applicable ? (passed ? "PASS" : "FAIL") : "N/A ") << "  " << name;
    os << "  max_dev=" << max_violation << " tol=" << tol;
    if (h > 0) os << " (C_obs=" << observed_constant() << ")";
    if (at_a) os << " at (" << *at_a << ", " << *at_b << ")";
    if (violations) os << " violations=" << violations << "/" << nodes;
    return os.str();
}

void to_json(nlohmann::json& j, const PropertyReport& r) {
    j = nlohmann::json{{"name", r.name},
                       {"passed", r.passed},
                       {"applicable", r.applicable},
                       {"max_violation", r.max_violation},
                       {"tol", r.tol},
                       {"h", r.h},
                       {"observed_constant", r.observed_constant()},
                       {"violations", r.violations},
                       {"nodes", r.nodes}};
    if (r.at_a) j["location"] = {*r.at_a, *r.at_b};
    if (!r.notes.empty()) j["notes"] = r.notes;
    if (!r.parts.empty()) j["parts"] = r.parts;
}

}  // namespace fitzcalc
