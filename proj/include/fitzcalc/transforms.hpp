#pragma once

#include <optional>
#include <vector>

#include "fitzcalc/grid.hpp"
#include "fitzcalc/operators.hpp"
#include "fitzcalc/report.hpp"

namespace fitzcalc {

/// F and F~ built from one representative function.
struct SaddlePair {
    GridFn2 lower;
    GridFn2 upper;
    GridFn2 source_phi;
};

/// phi_F(x, x*) = sup_y (x* y + F(y, x)), on F's second grid times `dual`.
GridFn2 fitz_transform(const GridFn2& f, const Grid1& dual);
/// phi^F(x, x*) = sup_y (x* y - F(x, y)), on F's first grid times `dual`.
GridFn2 upper_fitz_transform(const GridFn2& f, const Grid1& dual);

/// F(x, y) = sup_{x*} (x* y - phi*(x*, x)). y ranges over `ygrid` (default: phi's x grid).
GridFn2 bifunction_from_phi(const GridFn2& phi, const std::optional<Grid1>& ygrid = std::nullopt);
/// F~(x, y) = -sup_{x*} (x x* - phi(y, x*)).
GridFn2 bifunction_tilde_from_phi(const GridFn2& phi, const std::optional<Grid1>& ygrid = std::nullopt);
SaddlePair saddle_pair(const GridFn2& phi);

/// Concave hull in the first argument of G_T.
GridFn2 g_hat(const OperatorSpec& op, const Grid1& xgrid, const Grid1& ygrid);

/// (phi*)^t on phi's own grids.
GridFn2 conjugate_transpose(const GridFn2& phi);

/// Concavity in x and convexity in y on all adjacent node triples, slack eps.
PropertyReport saddle_midpoint_check(const GridFn2& f, double eps);

/// F(x, y) + F(y, x) <= tol at all node pairs. Needs a square grid.
PropertyReport is_monotone_bifunction(const GridFn2& f, double tol);
/// phi <= (phi*)^t + tol nodewise.
PropertyReport phi_monotonicity_criterion(const GridFn2& phi, double tol);
/// Passes when the criterion above and the monotonicity of the bifunction
/// built from phi give the same verdict.
PropertyReport monotonicity_agreement(const GridFn2& phi, double tol);

/// Route 1: cl1 F = cl1 H and cl2 F = cl2 H. Route 2: equal lower and upper
/// transforms onto `dual`. Passes when both routes pass.
PropertyReport equivalent_saddles(const GridFn2& f, const GridFn2& h, const Grid1& dual, double tol);

/// F <= H <= F~ (within tol), cross-checked against phi_H = phi and
/// phi^H = (phi*)^t. Not applicable when H fails the midpoint saddle check.
PropertyReport sandwich_check(const GridFn2& h, const SaddlePair& pair, double tol);

struct SaddleDomains {
    std::vector<std::size_t> dom1;
    std::vector<std::size_t> dom2;
};
/// dom1 = {x : cl2 F(x, .) > -cap}, dom2 = {y : cl1 F(., y) < cap}.
SaddleDomains saddle_domains(const GridFn2& f, double cap = 1e12);

/// Row indices of F that are not identically -inf.
std::vector<std::size_t> effective_domain(const GridFn2& f);

}  // namespace fitzcalc
