#include <doctest.h>

#include "fitzcalc/operators.hpp"
#include "fitzcalc/oracle.hpp"

using namespace fitzcalc;

TEST_CASE("operator values") {
    const auto sgn = OperatorSpec::sign();
    CHECK(sgn.values_at(0) == std::pair<double, double>{-1, 1});
    CHECK(sgn.values_at(-0.3) == std::pair<double, double>{-1, -1});
    const auto pe = OperatorSpec::paper_example();
    CHECK(pe.values_at(0.1)->first == doctest::Approx(-100));
    CHECK(pe.values_at(0.8)->first == doctest::Approx(5));
    CHECK_FALSE(pe.values_at(0).has_value());
    CHECK_FALSE(pe.values_at(1).has_value());
    CHECK(pe.domain_bounds() == std::pair<double, double>{0, 1});
    // the bridge is continuous and increasing
    CHECK(pe.values_at(0.25)->first == doctest::Approx(-16));
    CHECK(pe.values_at(0.75)->first == doctest::Approx(4));
    CHECK(pe.values_at(0.5)->first > -16);
    CHECK(pe.values_at(0.5)->first < 4);
    CHECK_THROWS_AS(OperatorSpec::paper_example(0.8, 0.2).validate(), std::invalid_argument);
    CHECK_THROWS_AS(OperatorSpec::affine(-1, 0).validate(), std::invalid_argument);
    CHECK_THROWS_AS(OperatorSpec::sampled({{0, 1}, {1, 0}}).validate(), std::invalid_argument);
}

TEST_CASE("graph sampling adds box-end rays inside the dual box") {
    const Grid1 x = make_grid(-1, 1, 21), s = make_grid(-2, 2, 41);
    const GraphSet g = sample_graph(OperatorSpec::affine(1, 0), x, s);
    bool has_top = false, has_bottom = false;
    for (const auto& p : g.points) {
        if (p.x == 1.0 && p.xs == 2.0) has_top = true;
        if (p.x == -1.0 && p.xs == -2.0) has_bottom = true;
    }
    CHECK(has_top);
    CHECK(has_bottom);
    const GraphSet plain = sample_graph(OperatorSpec::affine(1, 0), x, s, false);
    CHECK(plain.points.size() == 21);

    const GraphSet sg = sample_graph(OperatorSpec::sign(), x, s);
    REQUIRE(sg.node_interval[10].has_value());
    CHECK(sg.node_interval[10]->first == -1);
    CHECK(sg.node_interval[10]->second == 1);
}

TEST_CASE("grid Fitzpatrick function of the identity matches the closed form") {
    const Grid1 x = make_grid(-1, 1, 41);
    const GridFn2 f = fitzpatrick(OperatorSpec::affine(1, 0), x, x, make_grid(-3, 3, 121));
    double worst = 0;
    for (std::size_t i = 0; i < x.size(); ++i)
        for (std::size_t j = 0; j < x.size(); ++j)
            worst = std::max(worst, std::abs(f(i, j).value() - oracle::affine_fitz_exact(1, 0, x[i], x[j])));
    CHECK(worst <= 3 * x.step());
}

TEST_CASE("Fitzpatrick function sits between pi and sigma") {
    const auto op = OperatorSpec::sign();
    const Grid1 x = make_grid(-1, 1, 21);
    const Grid1 s = auto_dual_grid(op, x);
    const GridFn2 F = fitzpatrick(op, x, s);
    const GridFn2 S = sigma(op, x, s);
    const GridFn2 pi = duality_product(x, s);
    const double tol = 3 * x.step();
    CHECK(leq(pi, F, 1e-12).passed);
    CHECK(leq(F, S, 1e-12).passed);
    CHECK(is_representative(F, op, tol).passed);
    CHECK(is_representative(S, op, tol).passed);
    CHECK_FALSE(is_representative(pi, op, tol).passed);

    const GraphSet g = sample_graph(op, x, s);
    CHECK(approx_eq(sigma_via_envelope(g, x, s), S, tol).passed);
}

TEST_CASE("Fenchel-Young representatives") {
    const auto op = OperatorSpec::affine(2, 1);
    const Grid1 x = make_grid(-1, 1, 21);
    const Grid1 s = auto_dual_grid(op, x);
    const GridFn2 fy = fenchel_young(op, x, s);
    CHECK(is_representative(fy, op, 3 * x.step()).passed);
    CHECK(leq(fitzpatrick(op, x, s), fy, 1e-9).passed);
    CHECK_THROWS_AS(fenchel_young(OperatorSpec::paper_example(), x, s), std::invalid_argument);
}

TEST_CASE("closed forms exist only where expected") {
    CHECK(fitzpatrick_exact(OperatorSpec::affine(1, 0), 1, 1) == ExtReal(1.0));
    CHECK(fitzpatrick_exact(OperatorSpec::affine(0, 2), 1, 2) == ExtReal(2.0));
    CHECK(fitzpatrick_exact(OperatorSpec::affine(0, 2), 1, 3)->is_pos_inf());
    CHECK(fitzpatrick_exact(OperatorSpec::sign(), 0.5, 0.3) == ExtReal(0.5));
    CHECK_FALSE(fitzpatrick_exact(OperatorSpec::paper_example(), 0.5, 0).has_value());
}

TEST_CASE("G_T rows vanish outside the domain") {
    const Grid1 x = make_grid(0, 1, 11);
    const GridFn2 g = g_t(OperatorSpec::paper_example(), x, x);
    for (std::size_t j = 0; j < x.size(); ++j) {
        CHECK(g(0, j).is_neg_inf());
        CHECK(g(10, j).is_neg_inf());
    }
    CHECK(g(1, 1) == ExtReal(0.0));
    CHECK(g(1, 5).value() == doctest::Approx(-100 * 0.4));

    const GridFn2 gs = g_t(OperatorSpec::sign(), make_grid(-1, 1, 3), make_grid(-1, 1, 3));
    CHECK(gs(1, 0) == ExtReal(1.0));  // sup over [-1, 1] of x*(-1)
}

TEST_CASE("operator recovery from a bifunction") {
    const auto op = OperatorSpec::affine(1, 0);
    const Grid1 x = make_grid(-1, 1, 21);
    const Grid1 s = auto_dual_grid(op, x);
    const GridFn2 G = g_t(op, x, x);
    const double tol = x.step() * x.step() / 4;
    const GraphSet want = sample_graph(op, x, s);
    CHECK(graph_match(recover_AF(G, s, tol), want).passed);
}

TEST_CASE("domain helpers") {
    const auto pe = OperatorSpec::paper_example();
    const Grid1 x = make_grid(0, 1, 11);
    std::vector<std::size_t> interior;
    for (std::size_t i = 1; i < 10; ++i) interior.push_back(i);
    CHECK(domain_sandwich(interior, pe, x).passed);
    std::vector<std::size_t> all(11);
    for (std::size_t i = 0; i < 11; ++i) all[i] = i;
    CHECK(domain_sandwich(all, pe, x).passed);
    CHECK_FALSE(domain_sandwich({1, 2, 3}, pe, x).passed);

    GridFn2 phi(x, make_grid(-1, 1, 3), Role2::Representative, ExtReal(0.0));
    for (std::size_t j = 0; j < 3; ++j) phi(0, j) = ExtReal::pos_inf();
    phi(1, 0) = 2e12;
    CHECK(proj_dom1(phi).size() == 10);

    CHECK(grows_under_refinement(1.0, ExtReal::pos_inf()));
    CHECK(grows_under_refinement(1.0, 2.0));
    CHECK_FALSE(grows_under_refinement(1.0, 1.9));
    CHECK_FALSE(grows_under_refinement(-1.0, 5.0));
}

TEST_CASE("auto dual box refuses to explode") {
    CHECK_THROWS_AS(auto_dual_grid(OperatorSpec::paper_example(), make_grid(0.0125, 1, 80)), std::invalid_argument);
    const Grid1 s = auto_dual_grid(OperatorSpec::affine(1, 0), make_grid(-2, 2, 81));
    CHECK(s.step() == doctest::Approx(0.05));
    CHECK(s.lo() <= -6);
    CHECK(s.hi() >= 6);
}
