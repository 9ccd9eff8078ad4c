#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

namespace fitzcalc {

/// Outcome of one property check.
struct PropertyReport {
    std::string name;
    bool passed = true;
    bool applicable = true;
    double max_violation = 0.0;  // largest finite deviation seen (0 when none)
    double tol = 0.0;
    double h = 0.0;              // grid step the tolerance refers to, 0 if unused
    std::optional<double> at_a;  // location of max violation
    std::optional<double> at_b;
    std::size_t violations = 0;  // nodes failing the check (including infinity mismatches)
    std::size_t nodes = 0;       // nodes examined
    std::vector<std::string> notes;
    std::vector<PropertyReport> parts;

    /// max_violation / h, the tolerance constant actually needed.
    double observed_constant() const { return h > 0 ? max_violation / h : 0.0; }

    /// Records a deviation at (a, b); `bad` marks it as a failure.
    void observe(double deviation, double a, double b, bool bad) {
        ++nodes;
        if (bad) {
            ++violations;
            passed = false;
        }
        if (deviation > max_violation || (!at_a && bad)) {
            if (deviation > max_violation) max_violation = deviation;
            at_a = a;
            at_b = b;
        }
    }

    /// Appends a sub-report; the parent fails if the part fails.
    PropertyReport& add(PropertyReport part) {
        if (part.applicable && !part.passed) passed = false;
        parts.push_back(std::move(part));
        return parts.back();
    }

    std::string summary() const;
};

void to_json(nlohmann::json& j, const PropertyReport& r);

}  // namespace fitzcalc
