#pragma once

// Data-parallel kernels behind the grid transforms. Each kernel has a serial
// counterpart in namespace `reference` that computes the same quantity by the
// most direct formula; tests compare the two and bench/ times them.

#include <cstddef>
#include <span>

#include "fitzcalc/grid.hpp"

namespace fitzcalc {

namespace kernels {

/// Caps the OpenMP team size; 0 restores the runtime default.
void set_threads(int n);
int max_threads();

/// Conjugates every row of f (along axis b) onto `dual` with the linear-time sweep.
GridFn2 conjugate_rows(const GridFn2& f, const Grid1& dual);

/// Convex (or concave) envelope of every row.
GridFn2 envelope_rows(const GridFn2& f, bool concave);

/// Fitzpatrick function on xgrid x sgrid from graph samples (y_k, ys_k):
/// max_k (s * y_k + ys_k * x - y_k * ys_k).
GridFn2 fitzpatrick(std::span<const double> y, std::span<const double> ys, const Grid1& xgrid, const Grid1& sgrid);

}  // namespace kernels

namespace reference {

/// Brute-force row conjugates, O(rows * n * m).
GridFn2 conjugate_rows(const GridFn2& f, const Grid1& dual);

/// Serial Fitzpatrick kernel.
GridFn2 fitzpatrick(std::span<const double> y, std::span<const double> ys, const Grid1& xgrid, const Grid1& sgrid);

}  // namespace reference

}  // namespace fitzcalc
