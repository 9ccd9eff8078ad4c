#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "fitzcalc/grid.hpp"
#include "fitzcalc/oracle.hpp"
#include "fitzcalc/report.hpp"

namespace fitzcalc {

enum class OpKind { Affine, Sign, PaperExample, Staircase, Sampled };

/// A maximal monotone operator on the real line.
struct OperatorSpec {
    OpKind kind = OpKind::Affine;
    double lambda = 1.0;  // affine slope
    double c = 0.0;       // affine offset
    double a = 0.25;      // paper_example: -1/x^2 on (0, a]
    double b = 0.75;      //                1/(1-x) on [b, 1), affine bridge between
    oracle::StaircaseOracle stairs;
    std::vector<oracle::Vertex> samples;

    static OperatorSpec affine(double lambda, double c);
    static OperatorSpec sign();
    static OperatorSpec paper_example(double a = 0.25, double b = 0.75);
    static OperatorSpec staircase(std::vector<oracle::Vertex> vertices, oracle::EndRay left, oracle::EndRay right);
    static OperatorSpec sampled(std::vector<oracle::Vertex> points);

    void validate() const;
    std::string name() const;

    /// T(x) as a closed interval [lo, hi] (ends may be infinite), or nullopt
    /// when x is outside D(T). `eps` is the matching tolerance for jump abscissae.
    std::optional<std::pair<double, double>> values_at(double x, double eps = 1e-12) const;

    /// inf and sup of D(T) (possibly infinite).
    std::pair<double, double> domain_bounds() const;

    /// Staircase view for sign / staircase operators.
    const oracle::StaircaseOracle& as_staircase() const;
    bool is_staircase() const { return kind == OpKind::Sign || kind == OpKind::Staircase; }
};

/// Finite sample of the graph of T + N_box, where N_box is the normal cone of
/// the x-grid box (vertical rays at box ends that lie in D(T)).
struct GraphSet {
    struct Point {
        double x;
        double xs;
    };
    std::vector<Point> points;
    /// Per x-node: clipped value interval, nullopt outside D(T).
    std::vector<std::optional<std::pair<double, double>>> node_interval;
    Grid1 xgrid;
    Grid1 dual_grid;
    std::size_t clipped = 0;       // finite interval ends cut at the dual box
    std::size_t out_of_range = 0;  // single values outside the dual box (kept)
    std::vector<std::string> warnings;

    GraphSet(Grid1 x, Grid1 s) : xgrid(std::move(x)), dual_grid(std::move(s)) {}
};

/// Samples gph(T + N_box): one point per x-node for single values; intervals
/// are sampled at their ends and at every dual node inside them.
GraphSet sample_graph(const OperatorSpec& op, const Grid1& xgrid, const Grid1& dual_grid, bool box_rays = true);

/// G_T(x, y) = sup_{x* in T(x)} x*(y - x); -inf on rows outside D(T).
GridFn2 g_t(const OperatorSpec& op, const Grid1& xgrid, const Grid1& ygrid);

/// Fitzpatrick function on xgrid x dual_grid from the graph sampled on
/// graph_grid (defaults to xgrid).
GridFn2 fitzpatrick(const OperatorSpec& op, const Grid1& xgrid, const Grid1& dual_grid,
                    const std::optional<Grid1>& graph_grid = std::nullopt);
GridFn2 fitzpatrick(const GraphSet& graph, const Grid1& xgrid, const Grid1& dual_grid);

/// sigma_T as the transposed conjugate of the grid Fitzpatrick function.
GridFn2 sigma(const OperatorSpec& op, const Grid1& xgrid, const Grid1& dual_grid);
/// Second route: closed convex hull of pi + indicator of the sampled graph, via
/// two full conjugations. Graph points off the grid nodes are ignored.
GridFn2 sigma_via_envelope(const GraphSet& graph, const Grid1& xgrid, const Grid1& dual_grid);

/// Duality product pi(x, x*) = x x*.
GridFn2 duality_product(const Grid1& xgrid, const Grid1& dual_grid);

/// Membership checks for H(T): phi >= pi - tol; phi = pi on the graph (within
/// tol); and nodes where phi is within `coincidence` of pi lie within one cell
/// of the graph. coincidence <= 0 selects h^2/2.
PropertyReport is_representative(const GridFn2& phi, const GraphSet& graph, double tol, double coincidence = 0.0);
PropertyReport is_representative(const GridFn2& phi, const OperatorSpec& op, double tol, double coincidence = 0.0);

/// A^F(x) = {x* : F(x, y) >= x*(y - x) for all y}, x* ranging over dual_grid.
GraphSet recover_AF(const GridFn2& f, const Grid1& dual_grid, double tol);
/// FA(x) = {x* : -F(y, x) >= x*(y - x) for all y}.
GraphSet recover_FA(const GridFn2& f, const Grid1& dual_grid, double tol);

/// Every point of `got` is within one cell of `want` and every point of `want`
/// inside the dual box is within one cell of `got`.
PropertyReport graph_match(const GraphSet& got, const GraphSet& want, std::string name = "graph_match");

/// Nodes of `dom` (indices into xgrid) contain every node strictly inside the
/// sampled co D(T) and lie within one cell of the closure of co D(T).
PropertyReport domain_sandwich(const std::vector<std::size_t>& dom, const OperatorSpec& op, const Grid1& xgrid,
                               std::string name = "domain_sandwich");

/// x-node indices where min over x* of phi is below cap.
std::vector<std::size_t> proj_dom1(const GridFn2& phi, double cap = 1e12);

/// Divergence proxy: the value at 2n-1 nodes is at least twice the value at n.
bool grows_under_refinement(ExtReal coarse, ExtReal fine);

/// Potential f with T = subdifferential of f, and the box-restricted
/// Fenchel-Young representative f(x) + (f + indicator of box)*(x*) on the grids.
GridFn2 fenchel_young(const OperatorSpec& op, const Grid1& xgrid, const Grid1& dual_grid);
GridFn2 fenchel_young(const oracle::PLConvexFn& f, const Grid1& xgrid, const Grid1& dual_grid);

/// Exact Fitzpatrick value when a closed form exists (affine with lambda > 0,
/// sign, staircase).
std::optional<ExtReal> fitzpatrick_exact(const OperatorSpec& op, double x, double xs);

/// Dual box spanning the graph values over the x box padded by the full span
/// on each side, snapped outward to multiples of the x step.
Grid1 auto_dual_grid(const OperatorSpec& op, const Grid1& xgrid);

}  // namespace fitzcalc
