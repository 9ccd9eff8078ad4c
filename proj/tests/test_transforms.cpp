#include <doctest.h>

#include "fitzcalc/convex.hpp"
#include "fitzcalc/operators.hpp"
#include "fitzcalc/transforms.hpp"

using namespace fitzcalc;

namespace {

struct Setup {
    OperatorSpec op;
    Grid1 x;
    Grid1 s;
    double tol;
};

Setup small(OperatorSpec op) {
    const Grid1 x = make_grid(-1, 1, 21);
    return {op, x, auto_dual_grid(op, x), 3 * x.step()};
}

}  // namespace

TEST_CASE("bifunction of the Fitzpatrick function round-trips") {
    for (const auto& op : {OperatorSpec::affine(1, 0), OperatorSpec::sign()}) {
        const Setup st = small(op);
        const GridFn2 phi = fitzpatrick(op, st.x, st.s);
        const SaddlePair p = saddle_pair(phi);
        CHECK(p.lower.role() == Role2::Bifunction);
        CHECK(saddle_midpoint_check(p.lower, st.tol).passed);
        CHECK(approx_eq(saddle_cl2(p.lower), p.lower, st.tol).passed);
        CHECK(approx_eq(fitz_transform(p.lower, st.s), phi, st.tol).passed);
        CHECK(approx_eq(upper_fitz_transform(p.lower, st.s), conjugate_transpose(phi), st.tol).passed);
        CHECK(approx_eq(saddle_cl1(p.lower), p.upper, st.tol).passed);
        CHECK(leq(p.lower, p.upper, st.tol).passed);
        CHECK(is_monotone_bifunction(p.lower, st.tol).passed);
        CHECK(equivalent_saddles(p.lower, p.upper, st.s, st.tol).passed);
    }
}

TEST_CASE("sandwich check accepts the midpoint and rejects shifted saddles") {
    const Setup st = small(OperatorSpec::affine(2, 1));
    const SaddlePair p = saddle_pair(fitzpatrick(st.op, st.x, st.s));
    GridFn2 mid = p.lower;
    for (std::size_t k = 0; k < mid.values().size(); ++k) {
        const ExtReal lo = p.lower.values()[k], hi = p.upper.values()[k];
        mid(k / mid.cols(), k % mid.cols()) = lo.finite() && hi.finite() ? ExtReal(0.5 * (lo.value() + hi.value())) : lo;
    }
    CHECK(sandwich_check(mid, p, st.tol).passed);

    GridFn2 up = p.upper;
    for (std::size_t i = 0; i < up.rows(); ++i)
        for (std::size_t j = 0; j < up.cols(); ++j) up(i, j) += 1.0;
    CHECK_FALSE(sandwich_check(up, p, st.tol).passed);
    CHECK_FALSE(equivalent_saddles(p.lower, up, st.s, st.tol).passed);
}

TEST_CASE("midpoint check detects a non-saddle") {
    const Grid1 g = make_grid(-1, 1, 11);
    const GridFn2 bad = GridFn2::tabulate(g, g, Role2::Bifunction, [](double x, double y) { return x * x - y * y; });
    const PropertyReport r = saddle_midpoint_check(bad, 1e-9);
    CHECK_FALSE(r.passed);
    const GridFn2 good = GridFn2::tabulate(g, g, Role2::Bifunction, [](double x, double y) { return y * y - x * x + x * y; });
    CHECK(saddle_midpoint_check(good, 1e-9).passed);
}

TEST_CASE("monotone bifunctions") {
    const Grid1 g = make_grid(-1, 1, 11);
    // F(x, y) = x(y - x) is the bifunction of the identity
    const GridFn2 f = GridFn2::tabulate(g, g, Role2::Bifunction, [](double x, double y) { return x * (y - x); });
    CHECK(is_monotone_bifunction(f, 1e-12).passed);
    const GridFn2 anti = GridFn2::tabulate(g, g, Role2::Bifunction, [](double x, double y) { return -x * (y - x); });
    CHECK_FALSE(is_monotone_bifunction(anti, 1e-12).passed);
    CHECK_THROWS_AS(is_monotone_bifunction(GridFn2(g, make_grid(0, 1, 3), Role2::Bifunction), 0), std::invalid_argument);
}

TEST_CASE("monotonicity criterion agrees with the bifunction verdict") {
    for (const auto& op : {OperatorSpec::affine(1, 0), OperatorSpec::sign()}) {
        const Setup st = small(op);
        const GridFn2 phi = fitzpatrick(op, st.x, st.s);
        CHECK(phi_monotonicity_criterion(phi, st.tol).passed);
        CHECK(monotonicity_agreement(phi, st.tol).passed);
        CHECK(monotonicity_agreement(sigma(op, st.x, st.s), st.tol).passed);
    }
}

TEST_CASE("G-hat chain") {
    const Setup st = small(OperatorSpec::sign());
    const GridFn2 gh = g_hat(st.op, st.x, st.x);
    const SaddlePair p = saddle_pair(fitzpatrick(st.op, st.x, st.s));
    const double tol = 5 * st.x.step();
    CHECK(is_monotone_bifunction(gh, tol).passed);
    CHECK(approx_eq(saddle_cl2(saddle_cl1(gh)), p.lower, tol).passed);
    CHECK(approx_eq(saddle_cl1(gh), p.upper, tol).passed);
}

TEST_CASE("domains of a saddle function") {
    const Setup st = small(OperatorSpec::affine(1, 0));
    const GridFn2 F = bifunction_from_phi(fitzpatrick(st.op, st.x, st.s));
    const SaddleDomains d = saddle_domains(F);
    CHECK(d.dom1.size() == st.x.size());
    CHECK(d.dom2.size() == st.x.size());
    CHECK(effective_domain(F).size() == st.x.size());
    GridFn2 G = F;
    for (std::size_t j = 0; j < G.cols(); ++j) G(0, j) = ExtReal::neg_inf();
    CHECK(effective_domain(G).size() == st.x.size() - 1);
}
