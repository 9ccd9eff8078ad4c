// Acceptance battery: one PASS/FAIL line per criterion, details indented below.

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <filesystem>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "brute.hpp"
#include "fitzcalc/checks.hpp"
#include "fitzcalc/convex.hpp"
#include "fitzcalc/io.hpp"
#include "fitzcalc/kernels.hpp"
#include "fitzcalc/oracle.hpp"
#include "fitzcalc/run.hpp"
#include "fitzcalc/scenario.hpp"

using namespace fitzcalc;
namespace fs = std::filesystem;

namespace {

struct Verdict {
    bool pass = true;
    std::vector<std::string> lines;

    void require(bool ok, const std::string& what) {
        pass = pass && ok;
        lines.push_back(std::string(ok ? "ok   " : "FAIL ") + what);
    }
    void note(const std::string& what) { lines.push_back("     " + what); }
};

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

std::string num(double v) { return format_double(v); }

std::string summary_of(const PropertyReport& r) {
    std::ostringstream os;
    os << r.name << ": max_dev=" << num(r.max_violation) << " tol=" << num(r.tol);
    if (r.violations) os << " violations=" << r.violations << "/" << r.nodes;
    return os.str();
}

// failing leaves of a report tree, for the detail lines
void failing_leaves(const PropertyReport& r, const std::string& prefix, std::vector<std::string>& out) {
    if (!r.applicable || r.passed) return;
    if (r.parts.empty()) {
        out.push_back(prefix + summary_of(r));
        return;
    }
    for (const auto& p : r.parts) failing_leaves(p, prefix + r.name + " / ", out);
}

void require_report(Verdict& v, const PropertyReport& r, const std::string& label) {
    v.require(r.passed || !r.applicable, label + " " + summary_of(r));
    std::vector<std::string> leaves;
    failing_leaves(r, "", leaves);
    for (std::size_t k = 0; k < leaves.size() && k < 4; ++k) v.note("  " + leaves[k]);
}

OperatorSpec three_step() {
    return OperatorSpec::staircase({{-1, -1.5}, {-1, -0.5}, {0, -0.5}, {0, 0.5}, {1, 0.5}, {1, 1.5}},
                                   oracle::EndRay::Horizontal, oracle::EndRay::Horizontal);
}

struct BatteryOp {
    std::string label;
    OperatorSpec op;
};

std::vector<BatteryOp> battery() {
    return {{"identity", OperatorSpec::affine(1, 0)},
            {"affine(2,1)", OperatorSpec::affine(2, 1)},
            {"sign", OperatorSpec::sign()},
            {"staircase3", three_step()}};
}

std::vector<PhiChoice> battery_phis() {
    std::vector<PhiChoice> out;
    for (auto k : {PhiChoice::Kind::Fitzpatrick, PhiChoice::Kind::Sigma, PhiChoice::Kind::FenchelYoung}) {
        PhiChoice c;
        c.kind = k;
        out.push_back(c);
    }
    for (std::size_t i = 0; i < 3; ++i) {
        PhiChoice c;
        c.kind = PhiChoice::Kind::ConjugateTranspose;
        c.inner = std::make_shared<PhiChoice>(out[i]);
        out.push_back(c);
    }
    return out;
}

Scenario battery_scenario(const OperatorSpec& op, const PhiChoice& phi) {
    Scenario sc;
    sc.name = op.name();
    sc.op = op;
    sc.phi = phi;
    return sc;
}

// Runs `check` on every (operator, phi) pair.
Verdict over_pairs(const std::vector<std::string>& checks, bool all_phis) {
    Verdict v;
    for (const auto& b : battery()) {
        for (const auto& phi : all_phis ? battery_phis() : std::vector<PhiChoice>{battery_phis()[0]}) {
            const Scenario sc = battery_scenario(b.op, phi);
            RunContext ctx(sc);
            for (const auto& c : checks) require_report(v, run_check(c, ctx), b.label + " / " + phi.label() + " / " + c);
        }
    }
    return v;
}

// 1. affine oracle equivalence
Verdict criterion1() {
    Verdict v;
    const Grid1 X = make_grid(-2, 2, 81);
    const double h = X.step(), tol = 3 * h;
    const Grid1 graph_grid = make_grid(-6, 6, 241);
    for (double lambda : {0.5, 1.0, 2.0})
        for (double c : {0.0, 1.0}) {
            const auto t0 = std::chrono::steady_clock::now();
            const GridFn2 f = fitzpatrick(OperatorSpec::affine(lambda, c), X, X, graph_grid);
            const double dt = seconds_since(t0);
            double worst = 0;
            for (std::size_t i = 0; i < X.size(); ++i)
                for (std::size_t j = 0; j < X.size(); ++j)
                    worst = std::max(worst, std::abs(f(i, j).value() - oracle::affine_fitz_exact(lambda, c, X[i], X[j])));
            v.require(worst <= tol && dt < 1.0, "lambda=" + num(lambda) + " c=" + num(c) + " max_dev=" + num(worst) +
                                                     " (tol " + num(tol) + ") time=" + num(dt) + " s");
        }
    return v;
}

// 2. staircase oracle equivalence and growth in the +inf region
Verdict criterion2() {
    Verdict v;
    for (const auto& b : {battery()[2], battery()[3]}) {
        const Scenario sc = battery_scenario(b.op, battery_phis()[0]);
        RunContext ctx(sc);
        const PropertyReport r = run_check("fitzpatrick_oracle", ctx);
        for (const auto& p : r.parts) {
            v.require(p.passed || !p.applicable, b.label + " / " + summary_of(p));
            for (const auto& n : p.notes) v.note("  " + n);
        }
    }
    return v;
}

// 3. the counterexample: dom of F_T is (0, 1] while D(T) = (0, 1)
Verdict criterion3() {
    Verdict v;
    const OperatorSpec op = OperatorSpec::paper_example();
    const Grid1 X = make_grid(0, 1, 81), Xf = make_grid(0, 1, 161), S = make_grid(-2, 2, 321);
    const GridFn2 coarse = fitzpatrick(op, X, S), fine = fitzpatrick(op, Xf, S);

    std::size_t grows = 0;
    double worst_ratio = std::numeric_limits<double>::infinity();
    for (std::size_t j = 0; j < S.size(); ++j) {
        if (grows_under_refinement(coarse(0, j), fine(0, j)))
            ++grows;
        else if (coarse(0, j).finite() && fine(0, j).finite())
            worst_ratio = std::min(worst_ratio, fine(0, j).value() / coarse(0, j).value());
    }
    v.require(grows == S.size(), "x=0 grows under refinement for every x*: " + std::to_string(grows) + " of " +
                                     std::to_string(S.size()) +
                                     (grows < S.size() ? ", worst ratio " + num(worst_ratio) : std::string()));

    bool bounded = true;
    double worst = 0;
    const std::size_t last = X.size() - 1, last_f = Xf.size() - 1;
    for (std::size_t j = 0; j < S.size(); ++j) {
        if (S[j] < 0 || S[j] > 2) continue;
        const ExtReal a = coarse(last, j), b = fine(last_f, j);
        if (!a.finite() || !b.finite() || grows_under_refinement(a, b)) bounded = false;
        if (b.finite()) worst = std::max(worst, std::abs(b.value()));
    }
    v.require(bounded, "x=1 stays bounded for x* in [0,2]: max |F_T(1,x*)| = " + num(worst) + " at n=161");

    std::vector<std::size_t> dom;
    for (std::size_t i : proj_dom1(coarse)) {
        const auto r = coarse.row(i), rf = fine.row(2 * i);
        if (!grows_under_refinement(*std::min_element(r.begin(), r.end()), *std::min_element(rf.begin(), rf.end())))
            dom.push_back(i);
    }
    const bool pattern = !dom.empty() && dom.front() >= 1 && dom.front() <= 2 && dom.back() == last &&
                         dom.size() == last - dom.front() + 1;
    v.require(pattern, "P1 dom = (0,1] pattern: nodes " + (dom.empty() ? std::string("none")
                                                                        : num(X[dom.front()]) + ".." + num(X[dom.back()])));
    std::vector<std::size_t> interior;
    for (std::size_t k = 1; k + 1 < dom.size(); ++k) interior.push_back(dom[k]);
    require_report(v, domain_sandwich(interior, op, X, "int P1 dom = (0,1)"), "interior");
    return v;
}

// 10. convex-calculus battery
Verdict criterion10() {
    Verdict v;
    std::mt19937 rng(20240601);
    const Grid1 x = make_grid(-1, 1, 41);
    double fenchel = -1, triple = 0, chord = 0;
    for (int k = 0; k < 25; ++k) {
        const GridFn1 f = brute::random_fn(x, rng);
        const Grid1 s = default_dual_grid(f);
        const GridFn1 g = conjugate1(f, s);
        for (std::size_t i = 0; i < x.size(); ++i)
            for (std::size_t j = 0; j < s.size(); ++j)
                fenchel = std::max(fenchel, (x[i] * s[j] - (f[i] + g[j]).value()) / std::max(1.0, std::abs(x[i] * s[j])));
        const GridFn1 g3 = conjugate1(conjugate1(g, x), s);
        const GridFn1 bc = biconjugate1(f), ch = brute::chord_envelope(f);
        for (std::size_t j = 0; j < s.size(); ++j) triple = std::max(triple, brute::rel_err(g[j], g3[j]));
        for (std::size_t i = 0; i < x.size(); ++i) chord = std::max(chord, brute::rel_err(bc[i], ch[i]));
    }
    v.require(fenchel <= 1e-12, "Fenchel inequality at all node pairs: max (xs - f - f*)/max(1,|xs|) = " + num(fenchel));
    v.require(triple <= 1e-13, "triple conjugation: max rel gap " + num(triple));
    v.require(chord <= 1e-9, "biconjugate1 vs chord oracle, 25 functions n=41: max rel " + num(chord));

    std::uniform_real_distribution<double> u(-1.0, 1.0);
    const Grid1 a = make_grid(-1, 1, 21), da = make_grid(-4, 4, 21);
    double env = 0;
    for (int k = 0; k < 5; ++k) {
        GridFn2 f(a, a, Role2::Representative);
        for (std::size_t i = 0; i < a.size(); ++i)
            for (std::size_t j = 0; j < a.size(); ++j) f(i, j) = a[i] * a[i] + a[j] * a[j] + a[i] * a[j] + 0.5 * u(rng);
        const GridFn2 got = full_conjugate2(full_conjugate2(f, da, da), a, a);
        const GridFn2 want = brute::conjugate2(brute::conjugate2(f, da, da), a, a);
        for (std::size_t n = 0; n < got.values().size(); ++n) env = std::max(env, brute::rel_err(got.values()[n], want.values()[n]));
    }
    v.require(env <= 1e-9, "full_conjugate2 twice vs brute force, 21x21: max rel " + num(env));
    return v;
}

// 11. the default scenario battery on one core
Verdict criterion11() {
    Verdict v;
    kernels::set_threads(1);
    std::vector<fs::path> files;
    for (const auto& e : fs::directory_iterator(FITZCALC_SCENARIOS))
        if (e.path().extension() == ".json") files.push_back(e.path());
    std::sort(files.begin(), files.end());
    const auto t0 = std::chrono::steady_clock::now();
    for (const auto& f : files) {
        const Scenario sc = load_scenario(f.string());
        RunOptions opts;
        opts.out_dir = (fs::temp_directory_path() / "fitzcalc_acceptance" / sc.name).string();
        const auto t1 = std::chrono::steady_clock::now();
        const RunReport r = run_scenario(sc, opts);
        v.note(f.filename().string() + ": " + num(seconds_since(t1)) + " s, " +
               (r.all_passed() ? "all checks pass" : "some checks fail"));
    }
    const double total = seconds_since(t0);
    kernels::set_threads(0);
    v.require(total < 60.0, std::to_string(files.size()) + " scenarios in " + num(total) + " s on one thread");
    return v;
}

}  // namespace

int main() {
    const std::vector<std::pair<std::string, std::function<Verdict()>>> criteria = {
        {"affine oracle equivalence", criterion1},
        {"staircase oracle equivalence and +inf growth", criterion2},
        {"domain counterexample on (0,1)", criterion3},
        {"sandwich suite", [] { return over_pairs({"sandwich"}, true); }},
        {"duality suite", [] { return over_pairs({"duality"}, false); }},
        {"round-trip suite", [] { return over_pairs({"roundtrip"}, true); }},
        {"F/F~ structure suite", [] { return over_pairs({"saddle_structure"}, true); }},
        {"monotonicity suite", [] { return over_pairs({"monotonicity"}, true); }},
        {"G-hat chain", [] { return over_pairs({"ghat_chain"}, false); }},
        {"convex-calculus unit battery", criterion10},
        {"default battery under 60 s", criterion11},
    };
    int failed = 0;
    for (std::size_t k = 0; k < criteria.size(); ++k) {
        Verdict v;
        try {
            v = criteria[k].second();
        } catch (const std::exception& e) {
            v.require(false, std::string("threw: ") + e.what());
        }
        std::printf("%s criterion %zu: %s\n", v.pass ? "PASS" : "FAIL", k + 1, criteria[k].first.c_str());
        for (const auto& l : v.lines) std::printf("    %s\n", l.c_str());
        std::fflush(stdout);
        failed += v.pass ? 0 : 1;
    }
    std::printf("%d of %zu criteria failed\n", failed, criteria.size());
    return failed ? 1 : 0;
}
