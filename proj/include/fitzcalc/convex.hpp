#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "fitzcalc/grid.hpp"

namespace fitzcalc {

struct EnvelopeResult {
    GridFn1 fn;
    std::vector<std::size_t> support_indices;  // nodes where the envelope touches the input
    bool improper = false;                     // input took -inf somewhere
};

/// Greatest convex minorant of the sampled points, evaluated on the grid.
/// +inf outside the hull of the finite domain; -inf on that hull when the
/// input takes -inf. One monotone-chain sweep.
EnvelopeResult convex_hull1(const GridFn1& f);

/// cv f = -co(-f).
GridFn1 concave_hull1(const GridFn1& f);

/// Exact conjugate of the box-restricted sampled function,
/// g(s) = max_i (s * x_i - f(x_i)), evaluated on `dual`.
GridFn1 conjugate1(const GridFn1& f, const Grid1& dual);

/// Closed convex hull on the grid (the discrete f**), computed as the envelope.
GridFn1 biconjugate1(const GridFn1& f);

/// Dual grid spanning the finite difference quotients of f padded by 10%,
/// with the same step as f's grid.
Grid1 default_dual_grid(const GridFn1& f);

enum class Axis { A, B };

/// Conjugates every slice along `axis` onto `dual`; the other axis is untouched.
GridFn2 partial_conjugate(const GridFn2& f, Axis axis, const Grid1& dual);

/// Bivariate conjugate G(u, v) = max_{i,j} (u a_i + v b_j - F(a_i, b_j)),
/// computed as nested partial conjugations. Output rows are indexed by
/// dual_a (paired with F's a-axis), columns by dual_b.
GridFn2 full_conjugate2(const GridFn2& f, const Grid1& dual_a, const Grid1& dual_b);

/// Convex closure of every row F(x, .).
GridFn2 saddle_cl2(const GridFn2& f);
/// Concave closure of every column F(., y).
GridFn2 saddle_cl1(const GridFn2& f);

namespace detail {

/// Lower hull vertex indices of {(x_i, y_i) : y_i finite}, x strictly increasing.
/// Nearly collinear middle points are dropped; on equal slopes the later node is kept.
std::vector<std::size_t> lower_hull(std::span<const double> x, std::span<const double> y);

/// Convex envelope of a slice on nodes x, written to out.
void envelope_slice(std::span<const double> x, std::span<const ExtReal> f, std::span<ExtReal> out,
                    std::vector<std::size_t>* support = nullptr, bool* improper = nullptr);

/// Linear-time conjugate of one slice: hull, then a merge of the hull slopes
/// with the sorted dual nodes.
void conjugate_slice(std::span<const double> x, std::span<const ExtReal> f, std::span<const double> dual,
                     std::span<ExtReal> out);

}  // namespace detail

}  // namespace fitzcalc
