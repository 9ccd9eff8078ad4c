#pragma once

// Closed-form evaluators used as ground truth for the grid engine. Nothing in
// here samples or discretizes.

#include <vector>

#include "fitzcalc/ext_real.hpp"

namespace fitzcalc::oracle {

/// Exact Fitzpatrick function of T(y) = lambda*y + c, lambda > 0:
/// c*x + (xs + lambda*x - c)^2 / (4*lambda).
double affine_fitz_exact(double lambda, double c, double x, double xs);

struct Vertex {
    double x;
    double xs;
    friend bool operator==(const Vertex&, const Vertex&) = default;
};

/// Unbounded end of a staircase graph. On the left, Horizontal means x -> -inf at
/// the first vertex's x*, Vertical means x* -> -inf at the first vertex's x.
/// On the right, Horizontal is x -> +inf and Vertical is x* -> +inf.
enum class EndRay { Horizontal, Vertical };

/// Monotone polyline of alternating horizontal and vertical segments plus two rays.
struct StaircaseOracle {
    std::vector<Vertex> vertices;
    EndRay left = EndRay::Horizontal;
    EndRay right = EndRay::Horizontal;

    /// Throws std::invalid_argument when the polyline is not a monotone staircase.
    void validate() const;
};

/// Exact Fitzpatrick function of a staircase operator. The bilinear objective
/// is affine along each axis-parallel piece, so the sup is a vertex value unless
/// a ray makes it unbounded.
ExtReal staircase_fitz_exact(const StaircaseOracle& o, double x, double xs);

/// Convex piecewise-linear function. left_slope = -inf means the domain ends at
/// the first breakpoint (f = +inf to its left); right_slope = +inf likewise.
struct PLConvexFn {
    std::vector<double> breakpoints;
    std::vector<double> values;
    double left_slope = 0.0;
    double right_slope = 0.0;

    void validate() const;
    ExtReal operator()(double x) const;
    double dom_lo() const;
    double dom_hi() const;
    /// Drops duplicate and collinear breakpoints.
    PLConvexFn normalized() const;
};

/// Exact conjugate; breakpoints of f* are the slopes of f.
PLConvexFn pl_conjugate_exact(const PLConvexFn& f);

/// f + indicator of [lo, hi], as a PL function.
PLConvexFn restrict_to_box(const PLConvexFn& f, double lo, double hi);

/// Fenchel-Young representative f(x) + f*(xs) of T = subdifferential of f.
ExtReal subdiff_representative_exact(const PLConvexFn& f, double x, double xs);

/// The PL convex function whose subdifferential is the staircase, normalized
/// so that f(first breakpoint) = 0.
PLConvexFn staircase_potential(const StaircaseOracle& o);

/// f(x) = lambda*x^2/2 + c*x, the potential of the affine operator lambda*x + c.
struct QuadraticFn {
    double lambda = 1.0;
    double c = 0.0;
    double operator()(double x) const { return 0.5 * lambda * x * x + c * x; }
    /// Conjugate of f + indicator of [lo, hi].
    double box_conjugate(double s, double lo, double hi) const;
};

}  // namespace fitzcalc::oracle
