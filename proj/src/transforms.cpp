#include "fitzcalc/transforms.hpp"

#include <algorithm>
#include <stdexcept>

#include "fitzcalc/convex.hpp"
#include "fitzcalc/kernels.hpp"

namespace fitzcalc {

namespace {

GridFn2 as_bifunction(GridFn2 f) {
    f.set_role(Role2::Bifunction);
    f.set_axis_roles(AxisRole::Primal, AxisRole::Primal);
    return f;
}

GridFn2 as_representative(GridFn2 f) {
    f.set_role(Role2::Representative);
    f.set_axis_roles(AxisRole::Primal, AxisRole::Dual);
    return f;
}

// a + b <= 2m + eps for a concave slice, with the infinity conventions of
// hypographs: -inf ends pass, +inf in the middle passes.
bool concave_midpoint(ExtReal a, ExtReal m, ExtReal b, double eps) {
    if (a.is_neg_inf() || b.is_neg_inf() || m.is_pos_inf()) return true;
    if (a.is_pos_inf() || b.is_pos_inf() || m.is_neg_inf()) return false;
    return a.value() + b.value() <= 2 * m.value() + eps;
}

double midpoint_excess(ExtReal a, ExtReal m, ExtReal b) {
    if (a.finite() && m.finite() && b.finite()) return std::max(0.0, a.value() + b.value() - 2 * m.value());
    return 0.0;
}

}  // namespace

GridFn2 fitz_transform(const GridFn2& f, const Grid1& dual) {
    // rows of the partial conjugate are x*, columns are F's second argument
    return as_representative(transpose2(partial_conjugate(negate(f), Axis::A, dual)));
}

GridFn2 upper_fitz_transform(const GridFn2& f, const Grid1& dual) {
    return as_representative(partial_conjugate(f, Axis::B, dual));
}

GridFn2 conjugate_transpose(const GridFn2& phi) {
    return as_representative(transpose2(full_conjugate2(phi, phi.grid_b(), phi.grid_a())));
}

GridFn2 bifunction_from_phi(const GridFn2& phi, const std::optional<Grid1>& ygrid) {
    const Grid1 Y = ygrid.value_or(phi.grid_a());
    // phi*(x*, x): rows x*, columns x
    const GridFn2 star = full_conjugate2(phi, phi.grid_b(), phi.grid_a());
    // conjugate each column phi*(., x) onto y; rows y, columns x
    return as_bifunction(transpose2(partial_conjugate(star, Axis::A, Y)));
}

GridFn2 bifunction_tilde_from_phi(const GridFn2& phi, const std::optional<Grid1>& ygrid) {
    const Grid1 X = phi.grid_a();
    GridFn2 p = phi;
    if (ygrid && !(*ygrid == X)) throw std::invalid_argument("bifunction_tilde_from_phi: y grid must be phi's x grid");
    // rows y, columns x: sup_{x*} (x x* - phi(y, x*))
    const GridFn2 c = kernels::conjugate_rows(p, X);
    return as_bifunction(transpose2(negate(c)));
}

SaddlePair saddle_pair(const GridFn2& phi) {
    return {bifunction_from_phi(phi), bifunction_tilde_from_phi(phi), phi};
}

GridFn2 g_hat(const OperatorSpec& op, const Grid1& xgrid, const Grid1& ygrid) {
    return as_bifunction(saddle_cl1(g_t(op, xgrid, ygrid)));
}

PropertyReport saddle_midpoint_check(const GridFn2& f, double eps) {
    PropertyReport rep;
    rep.name = "saddle_midpoint";
    rep.tol = eps;
    rep.h = f.grid_a().step();
    PropertyReport cav;
    cav.name = "concave in x";
    cav.tol = eps;
    cav.h = rep.h;
    for (std::size_t j = 0; j < f.cols(); ++j)
        for (std::size_t i = 1; i + 1 < f.rows(); ++i) {
            const ExtReal a = f(i - 1, j), m = f(i, j), b = f(i + 1, j);
            cav.observe(midpoint_excess(a, m, b), f.grid_a()[i], f.grid_b()[j], !concave_midpoint(a, m, b, eps));
        }
    PropertyReport vex;
    vex.name = "convex in y";
    vex.tol = eps;
    vex.h = rep.h;
    for (std::size_t i = 0; i < f.rows(); ++i)
        for (std::size_t j = 1; j + 1 < f.cols(); ++j) {
            const ExtReal a = -f(i, j - 1), m = -f(i, j), b = -f(i, j + 1);
            vex.observe(midpoint_excess(a, m, b), f.grid_a()[i], f.grid_b()[j], !concave_midpoint(a, m, b, eps));
        }
    rep.max_violation = std::max(cav.max_violation, vex.max_violation);
    rep.add(std::move(cav));
    rep.add(std::move(vex));
    return rep;
}

PropertyReport is_monotone_bifunction(const GridFn2& f, double tol) {
    if (!(f.grid_a() == f.grid_b())) throw std::invalid_argument("is_monotone_bifunction: grid must be square");
    PropertyReport rep;
    rep.name = "monotone_bifunction";
    rep.tol = tol;
    rep.h = f.grid_a().step();
    for (std::size_t i = 0; i < f.rows(); ++i)
        for (std::size_t j = i; j < f.cols(); ++j) {
            const ExtReal a = f(i, j), b = f(j, i);
            const double x = f.grid_a()[i], y = f.grid_b()[j];
            if (a.is_neg_inf() || b.is_neg_inf())
                rep.observe(0.0, x, y, false);
            else if (a.is_pos_inf() || b.is_pos_inf())
                rep.observe(0.0, x, y, true);
            else {
                const double s = a.value() + b.value();
                rep.observe(std::max(s, 0.0), x, y, s > tol);
            }
        }
    return rep;
}

PropertyReport phi_monotonicity_criterion(const GridFn2& phi, double tol) {
    return leq(phi, conjugate_transpose(phi), tol, "phi <= (phi*)^t");
}

PropertyReport monotonicity_agreement(const GridFn2& phi, double tol) {
    PropertyReport rep;
    rep.name = "monotonicity_agreement";
    rep.tol = tol;
    rep.h = phi.grid_a().step();
    PropertyReport crit = phi_monotonicity_criterion(phi, tol);
    PropertyReport mono = is_monotone_bifunction(bifunction_from_phi(phi), tol);
    const bool agree = crit.passed == mono.passed;
    rep.notes.push_back(std::string("criterion ") + (crit.passed ? "holds" : "fails") + ", bifunction " +
                        (mono.passed ? "monotone" : "not monotone"));
    crit.applicable = false;  // informational: only agreement decides
    mono.applicable = false;
    rep.parts.push_back(std::move(crit));
    rep.parts.push_back(std::move(mono));
    rep.observe(0.0, 0.0, 0.0, !agree);
    return rep;
}

PropertyReport equivalent_saddles(const GridFn2& f, const GridFn2& h, const Grid1& dual, double tol) {
    if (!f.same_grids(h)) throw std::invalid_argument("equivalent_saddles: grid mismatch");
    PropertyReport rep;
    rep.name = "equivalent_saddles";
    rep.tol = tol;
    rep.h = f.grid_a().step();

    PropertyReport closures;
    closures.name = "closures";
    closures.tol = tol;
    closures.add(approx_eq(saddle_cl1(f), saddle_cl1(h), tol, std::nullopt, "cl1 F = cl1 H"));
    closures.add(approx_eq(saddle_cl2(f), saddle_cl2(h), tol, std::nullopt, "cl2 F = cl2 H"));

    PropertyReport transforms;
    transforms.name = "transforms";
    transforms.tol = tol;
    transforms.add(approx_eq(fitz_transform(f, dual), fitz_transform(h, dual), tol, std::nullopt, "phi_F = phi_H"));
    transforms.add(
        approx_eq(upper_fitz_transform(f, dual), upper_fitz_transform(h, dual), tol, std::nullopt, "phi^F = phi^H"));

    if (closures.passed != transforms.passed) rep.notes.push_back("routes disagree");
    for (auto* p : {&closures, &transforms})
        for (const auto& q : p->parts) p->max_violation = std::max(p->max_violation, q.max_violation);
    rep.max_violation = std::max(closures.max_violation, transforms.max_violation);
    rep.add(std::move(closures));
    rep.add(std::move(transforms));
    return rep;
}

PropertyReport sandwich_check(const GridFn2& h, const SaddlePair& pair, double tol) {
    PropertyReport rep;
    rep.name = "sandwich_check";
    rep.tol = tol;
    rep.h = h.grid_a().step();
    const PropertyReport saddle = saddle_midpoint_check(h, tol);
    if (!saddle.passed) {
        rep.applicable = false;
        rep.notes.push_back("H fails the midpoint saddle check");
        return rep;
    }
    PropertyReport bounds;
    bounds.name = "F <= H <= F~";
    bounds.add(leq(pair.lower, h, tol, "F <= H"));
    bounds.add(leq(h, pair.upper, tol, "H <= F~"));

    const Grid1& dual = pair.source_phi.grid_b();
    PropertyReport transforms;
    transforms.name = "transforms of H";
    transforms.add(approx_eq(fitz_transform(h, dual), pair.source_phi, tol, std::nullopt, "phi_H = phi"));
    transforms.add(approx_eq(upper_fitz_transform(h, dual), conjugate_transpose(pair.source_phi), tol, std::nullopt,
                             "phi^H = (phi*)^t"));
    if (bounds.passed != transforms.passed) rep.notes.push_back("sandwich and transform verdicts disagree");
    for (auto* p : {&bounds, &transforms})
        for (const auto& q : p->parts) p->max_violation = std::max(p->max_violation, q.max_violation);
    rep.max_violation = std::max(bounds.max_violation, transforms.max_violation);
    rep.add(std::move(bounds));
    rep.add(std::move(transforms));
    return rep;
}

SaddleDomains saddle_domains(const GridFn2& f, double cap) {
    SaddleDomains d;
    const GridFn2 c2 = saddle_cl2(f);
    const GridFn2 c1 = saddle_cl1(f);
    for (std::size_t i = 0; i < f.rows(); ++i) {
        const auto r = c2.row(i);
        if (std::all_of(r.begin(), r.end(), [&](ExtReal v) { return v > ExtReal(-cap); })) d.dom1.push_back(i);
    }
    for (std::size_t j = 0; j < f.cols(); ++j) {
        bool ok = true;
        for (std::size_t i = 0; i < f.rows() && ok; ++i) ok = c1(i, j) < ExtReal(cap);
        if (ok) d.dom2.push_back(j);
    }
    return d;
}

std::vector<std::size_t> effective_domain(const GridFn2& f) {
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < f.rows(); ++i) {
        const auto r = f.row(i);
        if (!std::all_of(r.begin(), r.end(), [](ExtReal v) { return v.is_neg_inf(); })) out.push_back(i);
    }
    return out;
}

}  // namespace fitzcalc
