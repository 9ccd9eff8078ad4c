#include "fitzcalc/scenario.hpp"

#include <cmath>
#include <fstream>
#include <limits>

#include "fitzcalc/checks.hpp"
#include "fitzcalc/transforms.hpp"

namespace fitzcalc {

namespace {

using nlohmann::json;
constexpr double kInf = std::numeric_limits<double>::infinity();

const json& need(const json& j, const char* key, const std::string& where) {
    if (!j.is_object()) throw ScenarioError(where, "expected an object");
    if (!j.contains(key)) throw ScenarioError(where, std::string("missing field '") + key + "'");
    return j.at(key);
}

double number(const json& j, const std::string& where) {
    if (j.is_number()) return j.get<double>();
    if (j.is_string()) {
        const auto s = j.get<std::string>();
        if (s == "inf" || s == "+inf") return kInf;
        if (s == "-inf") return -kInf;
    }
    throw ScenarioError(where, "expected a number");
}

double number_or(const json& j, const char* key, double dflt, const std::string& where) {
    if (!j.is_object() || !j.contains(key)) return dflt;
    return number(j.at(key), where + "/" + key);
}

Grid1 parse_box(const json& j, const std::string& where) {
    if (!j.is_array() || j.size() != 3) throw ScenarioError(where, "expected [lo, hi, n]");
    const double lo = number(j[0], where + "/0"), hi = number(j[1], where + "/1");
    if (!j[2].is_number_integer()) throw ScenarioError(where + "/2", "n must be an integer");
    const long long n = j[2].get<long long>();
    if (!std::isfinite(lo) || !std::isfinite(hi) || !(lo < hi)) throw ScenarioError(where, "need finite lo < hi");
    if (n < 3) throw ScenarioError(where + "/2", "n must be at least 3");
    return make_grid(lo, hi, n);
}

std::vector<oracle::Vertex> parse_points(const json& j, const std::string& where) {
    if (!j.is_array() || j.empty()) throw ScenarioError(where, "expected a non-empty list of [x, x*] pairs");
    std::vector<oracle::Vertex> out;
    for (std::size_t k = 0; k < j.size(); ++k) {
        const std::string w = where + "/" + std::to_string(k);
        if (!j[k].is_array() || j[k].size() != 2) throw ScenarioError(w, "expected [x, x*]");
        out.push_back({number(j[k][0], w + "/0"), number(j[k][1], w + "/1")});
    }
    return out;
}

oracle::EndRay parse_ray(const json& j, bool left, const std::string& where) {
    if (j.is_null()) return oracle::EndRay::Horizontal;
    const std::string d = need(j, "direction", where).is_string() ? j.at("direction").get<std::string>() : "";
    if (d == (left ? "left" : "right")) return oracle::EndRay::Horizontal;
    if (d == (left ? "down" : "up")) return oracle::EndRay::Vertical;
    throw ScenarioError(where + "/direction", std::string("expected ") + (left ? "'left' or 'down'" : "'right' or 'up'"));
}

oracle::PLConvexFn parse_pl(const json& j, const std::string& where) {
    oracle::PLConvexFn f;
    const auto& b = need(j, "breakpoints", where);
    const auto& v = need(j, "values", where);
    if (!b.is_array() || !v.is_array()) throw ScenarioError(where, "breakpoints and values must be lists");
    for (std::size_t k = 0; k < b.size(); ++k) f.breakpoints.push_back(number(b[k], where + "/breakpoints/" + std::to_string(k)));
    for (std::size_t k = 0; k < v.size(); ++k) f.values.push_back(number(v[k], where + "/values/" + std::to_string(k)));
    f.left_slope = number_or(j, "left_slope", 0.0, where);
    f.right_slope = number_or(j, "right_slope", 0.0, where);
    try {
        f.validate();
    } catch (const std::invalid_argument& e) {
        throw ScenarioError(where, e.what());
    }
    return f;
}

json slope_json(double s) {
    if (std::isinf(s)) return s > 0 ? "inf" : "-inf";
    return s;
}

}  // namespace

std::string PhiChoice::label() const {
    switch (kind) {
        case Kind::Fitzpatrick: return "fitzpatrick";
        case Kind::Sigma: return "sigma";
        case Kind::FenchelYoung: return pl ? "fenchel_young(pl)" : quad ? "fenchel_young(quadratic)" : "fenchel_young";
        case Kind::ConjugateTranspose: return "conjugate_transpose_of(" + inner->label() + ")";
    }
    return "?";
}

json PhiChoice::to_json() const {
    switch (kind) {
        case Kind::Fitzpatrick: return "fitzpatrick";
        case Kind::Sigma: return "sigma";
        case Kind::FenchelYoung:
            if (pl)
                return {{"fenchel_young",
                         {{"pl",
                           {{"breakpoints", pl->breakpoints},
                            {"values", pl->values},
                            {"left_slope", slope_json(pl->left_slope)},
                            {"right_slope", slope_json(pl->right_slope)}}}}}};
            if (quad) return {{"fenchel_young", {{"quadratic", {{"lambda", quad->lambda}, {"c", quad->c}}}}}};
            return {{"fenchel_young", "auto"}};
        case Kind::ConjugateTranspose: return {{"conjugate_transpose_of", inner->to_json()}};
    }
    return nullptr;
}

OperatorSpec parse_operator(const json& j, const std::string& where) {
    const auto& k = need(j, "kind", where);
    if (!k.is_string()) throw ScenarioError(where + "/kind", "expected a string");
    const std::string kind = k.get<std::string>();
    const json params = j.contains("params") ? j.at("params") : json::object();
    const std::string pw = where + "/params";
    try {
        if (kind == "affine")
            return OperatorSpec::affine(number_or(params, "lambda", 1.0, pw), number_or(params, "c", 0.0, pw));
        if (kind == "sign" || kind == "sign_subdifferential") return OperatorSpec::sign();
        if (kind == "paper_example")
            return OperatorSpec::paper_example(number_or(params, "a", 0.25, pw), number_or(params, "b", 0.75, pw));
        if (kind == "staircase")
            return OperatorSpec::staircase(parse_points(need(params, "vertices", pw), pw + "/vertices"),
                                           parse_ray(params.value("left_ray", json()), true, pw + "/left_ray"),
                                           parse_ray(params.value("right_ray", json()), false, pw + "/right_ray"));
        if (kind == "sampled") return OperatorSpec::sampled(parse_points(need(params, "points", pw), pw + "/points"));
    } catch (const std::invalid_argument& e) {
        throw ScenarioError(pw, e.what());
    }
    throw ScenarioError(where + "/kind", "unknown operator kind '" + kind + "'");
}

PhiChoice parse_phi(const json& j, const std::string& where) {
    PhiChoice c;
    if (j.is_string()) {
        const auto s = j.get<std::string>();
        if (s == "fitzpatrick") return c;
        if (s == "sigma") {
            c.kind = PhiChoice::Kind::Sigma;
            return c;
        }
        if (s == "fenchel_young") {
            c.kind = PhiChoice::Kind::FenchelYoung;
            return c;
        }
        throw ScenarioError(where, "unknown phi '" + s + "'");
    }
    if (j.is_object() && j.size() == 1) {
        if (j.contains("fenchel_young")) {
            c.kind = PhiChoice::Kind::FenchelYoung;
            const auto& f = j.at("fenchel_young");
            const std::string w = where + "/fenchel_young";
            if (f.is_string() && f.get<std::string>() == "auto") return c;
            if (f.is_object() && f.contains("pl")) {
                c.pl = parse_pl(f.at("pl"), w + "/pl");
                return c;
            }
            if (f.is_object() && f.contains("quadratic")) {
                const auto& q = f.at("quadratic");
                c.quad = oracle::QuadraticFn{number_or(q, "lambda", 1.0, w + "/quadratic"),
                                             number_or(q, "c", 0.0, w + "/quadratic")};
                if (!(c.quad->lambda >= 0)) throw ScenarioError(w + "/quadratic/lambda", "must be >= 0");
                return c;
            }
            throw ScenarioError(w, "expected \"auto\", {\"pl\": ...} or {\"quadratic\": ...}");
        }
        if (j.contains("conjugate_transpose_of")) {
            c.kind = PhiChoice::Kind::ConjugateTranspose;
            c.inner = std::make_shared<PhiChoice>(parse_phi(j.at("conjugate_transpose_of"), where + "/conjugate_transpose_of"));
            return c;
        }
    }
    throw ScenarioError(where, "expected \"fitzpatrick\", \"sigma\", {\"fenchel_young\": ...} or {\"conjugate_transpose_of\": ...}");
}

Scenario parse_scenario(const json& doc) {
    if (!doc.is_object()) throw ScenarioError("", "scenario must be a JSON object");
    static const std::vector<std::string> known = {"name",  "operator", "x_box",        "dual_box",
                                                   "phi",   "checks",   "tol_constant", "output_dir"};
    for (const auto& [k, v] : doc.items())
        if (std::find(known.begin(), known.end(), k) == known.end()) throw ScenarioError("/" + k, "unknown field");
    Scenario s;
    s.source = doc;
    s.name = doc.value("name", std::string("scenario"));
    s.op = parse_operator(need(doc, "operator", ""));
    if (doc.contains("x_box")) s.x_box = parse_box(doc.at("x_box"), "/x_box");
    if (doc.contains("dual_box")) {
        const auto& d = doc.at("dual_box");
        if (!(d.is_string() && d.get<std::string>() == "auto")) s.dual_box = parse_box(d, "/dual_box");
    }
    if (doc.contains("phi")) s.phi = parse_phi(doc.at("phi"));
    if (doc.contains("checks")) {
        const auto& c = doc.at("checks");
        if (!c.is_array()) throw ScenarioError("/checks", "expected a list of check names");
        for (std::size_t k = 0; k < c.size(); ++k) {
            const std::string w = "/checks/" + std::to_string(k);
            if (!c[k].is_string()) throw ScenarioError(w, "expected a string");
            const auto name = c[k].get<std::string>();
            if (!find_check(name)) throw ScenarioError(w, "unknown check '" + name + "' (see list-checks)");
            if (std::find(s.checks.begin(), s.checks.end(), name) != s.checks.end())
                throw ScenarioError(w, "check '" + name + "' listed twice");
            s.checks.push_back(name);
        }
    } else {
        for (const auto& c : check_registry()) s.checks.push_back(c.name);
    }
    if (doc.contains("tol_constant")) {
        s.tol_constant = number(doc.at("tol_constant"), "/tol_constant");
        if (!(s.tol_constant > 0) || !std::isfinite(s.tol_constant))
            throw ScenarioError("/tol_constant", "must be positive");
    }
    if (doc.contains("output_dir")) {
        if (!doc.at("output_dir").is_string()) throw ScenarioError("/output_dir", "expected a string");
        s.output_dir = doc.at("output_dir").get<std::string>();
    }
    std::string w = "/phi";
    for (const PhiChoice* c = &s.phi; c; c = c->inner.get()) {
        if (c->kind == PhiChoice::Kind::FenchelYoung && !c->pl && !c->quad &&
            !(s.op.kind == OpKind::Affine || s.op.is_staircase()))
            throw ScenarioError(w, "fenchel_young \"auto\" needs an affine, sign or staircase operator");
        w += "/conjugate_transpose_of";
    }
    return s;
}

Scenario load_scenario(const std::string& path) {
    std::ifstream is(path);
    if (!is) throw ScenarioError("", "cannot open " + path);
    json doc;
    try {
        doc = json::parse(is);
    } catch (const json::parse_error& e) {
        throw ScenarioError("", std::string("invalid JSON: ") + e.what());
    }
    return parse_scenario(doc);
}

GridFn2 compute_phi(const PhiChoice& choice, const OperatorSpec& op, const Grid1& x, const Grid1& dual) {
    switch (choice.kind) {
        case PhiChoice::Kind::Fitzpatrick: return fitzpatrick(op, x, dual);
        case PhiChoice::Kind::Sigma: return sigma(op, x, dual);
        case PhiChoice::Kind::FenchelYoung:
            if (choice.pl) return fenchel_young(*choice.pl, x, dual);
            if (choice.quad) {
                const oracle::QuadraticFn q = *choice.quad;
                return GridFn2::tabulate(x, dual, Role2::Representative, [&](double a, double s) {
                    return ExtReal(q(a) + q.box_conjugate(s, x.lo(), x.hi()));
                });
            }
            return fenchel_young(op, x, dual);
        case PhiChoice::Kind::ConjugateTranspose:
            return conjugate_transpose(compute_phi(*choice.inner, op, x, dual));
    }
    throw std::logic_error("compute_phi: bad choice");
}

}  // namespace fitzcalc
