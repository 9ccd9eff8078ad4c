#include <doctest.h>

#include "brute.hpp"
#include "fitzcalc/oracle.hpp"

using namespace fitzcalc;
using namespace fitzcalc::oracle;

namespace {

StaircaseOracle sign_stairs() { return {{{0, -1}, {0, 1}}, EndRay::Horizontal, EndRay::Horizontal}; }

StaircaseOracle three_step() {
    return {{{-1, -1.5}, {-1, -0.5}, {0, -0.5}, {0, 0.5}, {1, 0.5}, {1, 1.5}}, EndRay::Horizontal, EndRay::Horizontal};
}

}  // namespace

TEST_CASE("affine Fitzpatrick closed form, frozen values") {
    CHECK(affine_fitz_exact(1, 0, 1, 1) == doctest::Approx(1.0));
    CHECK(affine_fitz_exact(2, 1, 0.5, -1) == doctest::Approx(0.625));
    CHECK(affine_fitz_exact(0.5, 1, -2, 2) == doctest::Approx(-2 + 0.0 / 2));
    // equals pi on the graph
    for (double y : {-1.5, 0.0, 0.7}) CHECK(affine_fitz_exact(2, 1, y, 2 * y + 1) == doctest::Approx(y * (2 * y + 1)));
}

TEST_CASE("sign Fitzpatrick function is |x| on the strip |x*| <= 1") {
    const auto o = sign_stairs();
    CHECK(staircase_fitz_exact(o, 0.5, 0.3) == ExtReal(0.5));
    CHECK(staircase_fitz_exact(o, -2, 1) == ExtReal(2.0));
    CHECK(staircase_fitz_exact(o, 0, -1) == ExtReal(0.0));
    CHECK(staircase_fitz_exact(o, 0, 1.2).is_pos_inf());
    CHECK(staircase_fitz_exact(o, 3, -1.01).is_pos_inf());
}

TEST_CASE("three-step staircase, frozen values") {
    const auto o = three_step();
    CHECK(staircase_fitz_exact(o, 0, 0) == ExtReal(0.0));
    CHECK(staircase_fitz_exact(o, 0.5, 1).value() == doctest::Approx(0.75));
    CHECK(staircase_fitz_exact(o, 0, 2).is_pos_inf());
    CHECK(staircase_fitz_exact(o, 0, -1.5).value() == doctest::Approx(1.0));
}

TEST_CASE("staircase oracle agrees with a dense graph sample") {
    const auto o = three_step();
    std::vector<GraphSet::Point> pts;
    const double R = 50;
    auto seg = [&](double x0, double s0, double x1, double s1) {
        for (int k = 0; k <= 200; ++k) {
            const double t = k / 200.0;
            pts.push_back({x0 + t * (x1 - x0), s0 + t * (s1 - s0)});
        }
    };
    seg(-R, -1.5, -1, -1.5);
    for (std::size_t i = 0; i + 1 < o.vertices.size(); ++i)
        seg(o.vertices[i].x, o.vertices[i].xs, o.vertices[i + 1].x, o.vertices[i + 1].xs);
    seg(1, 1.5, R, 1.5);
    const Grid1 x = make_grid(-2, 2, 21), s = make_grid(-1.5, 1.5, 13);
    const GridFn2 dense = brute::fitzpatrick(pts, x, s);
    for (std::size_t i = 0; i < x.size(); ++i)
        for (std::size_t j = 0; j < s.size(); ++j) {
            const ExtReal e = staircase_fitz_exact(o, x[i], s[j]);
            REQUIRE(e.finite());
            CHECK(dense(i, j).value() == doctest::Approx(e.value()).epsilon(1e-12));
        }
}

TEST_CASE("vertical end rays") {
    // T = normal cone of [0, 1]: vertical rays at both ends
    const StaircaseOracle o{{{0, 0}, {1, 0}}, EndRay::Vertical, EndRay::Vertical};
    CHECK(staircase_fitz_exact(o, 0.5, 2) == ExtReal(2.0));
    CHECK(staircase_fitz_exact(o, 0.5, -1) == ExtReal(0.0));
    CHECK(staircase_fitz_exact(o, 1.5, 0).is_pos_inf());
}

TEST_CASE("staircase validation") {
    CHECK_NOTHROW(three_step().validate());
    StaircaseOracle bad{{{0, 1}, {0, -1}}, EndRay::Horizontal, EndRay::Horizontal};
    CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
    StaircaseOracle diag{{{0, 0}, {1, 1}}, EndRay::Horizontal, EndRay::Horizontal};
    CHECK_THROWS_AS(diag.validate(), std::invalid_argument);
}

TEST_CASE("PL conjugate, frozen values") {
    const PLConvexFn absx{{0}, {0}, -1, 1};
    const PLConvexFn c = pl_conjugate_exact(absx);
    CHECK(c(0) == ExtReal(0.0));
    CHECK(c(1) == ExtReal(0.0));
    CHECK(c(2).is_pos_inf());
    CHECK(subdiff_representative_exact(absx, 0.5, 0.3) == ExtReal(0.5));
    CHECK(subdiff_representative_exact(absx, 0.5, 2).is_pos_inf());

    const PLConvexFn boxed = restrict_to_box(absx, -1, 2);
    CHECK(boxed(-1.5).is_pos_inf());
    const PLConvexFn bc = pl_conjugate_exact(boxed);
    CHECK(bc(3).value() == doctest::Approx(4.0));   // 3*2 - 2
    CHECK(bc(-3).value() == doctest::Approx(2.0));  // -3*-1 - 1
}

TEST_CASE("staircase potentials") {
    const PLConvexFn f = staircase_potential(sign_stairs());
    CHECK(f(-2).value() == doctest::Approx(2.0));
    CHECK(f(3).value() == doctest::Approx(3.0));
    const PLConvexFn g = staircase_potential(three_step());
    CHECK(g(-1).value() == doctest::Approx(0.0));
    CHECK(g(0).value() == doctest::Approx(-0.5));
    CHECK(g(1).value() == doctest::Approx(0.0));
    CHECK(g(2).value() == doctest::Approx(1.5));
    CHECK(g(-2).value() == doctest::Approx(1.5));
}

TEST_CASE("quadratic box conjugate") {
    const QuadraticFn q{1, 0};
    CHECK(q.box_conjugate(0.5, -1, 1) == doctest::Approx(0.125));
    CHECK(q.box_conjugate(3, -1, 1) == doctest::Approx(2.5));
    CHECK(q.box_conjugate(-3, -1, 1) == doctest::Approx(2.5));
    const QuadraticFn q2{2, 1};  // 2x^2/2 + x: interior maximizer (s - 1)/2
    CHECK(q2.box_conjugate(2, -2, 2) == doctest::Approx(0.25));
}
