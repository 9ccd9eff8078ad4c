#include "fitzcalc/convex.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "fitzcalc/kernels.hpp"

namespace fitzcalc {

namespace detail {

std::vector<std::size_t> lower_hull(std::span<const double> x, std::span<const double> y) {
    std::vector<std::size_t> hull;
    hull.reserve(x.size());
    for (std::size_t p = 0; p < x.size(); ++p) {
        while (hull.size() >= 2) {
            const std::size_t o = hull[hull.size() - 2], a = hull.back();
            const double dx1 = x[a] - x[o], dy1 = y[a] - y[o];
            const double dx2 = x[p] - x[o], dy2 = y[p] - y[o];
            const double cross = dx1 * dy2 - dy1 * dx2;
            const double scale = std::abs(dx1 * dy2) + std::abs(dy1 * dx2);
            if (cross > 1e-12 * scale) break;
            hull.pop_back();
        }
        hull.push_back(p);
    }
    return hull;
}

namespace {

struct FiniteView {
    std::vector<double> x, y;
    std::vector<std::size_t> idx;  // node index of each finite point
    bool has_neg_inf = false;
    std::size_t first_dom = 0, last_dom = 0;  // nodes with f < +inf
    bool any_dom = false;
};

FiniteView split(std::span<const double> x, std::span<const ExtReal> f) {
    FiniteView v;
    for (std::size_t i = 0; i < f.size(); ++i) {
        if (f[i].is_pos_inf()) continue;
        if (!v.any_dom) v.first_dom = i;
        v.any_dom = true;
        v.last_dom = i;
        if (f[i].is_neg_inf()) {
            v.has_neg_inf = true;
            continue;
        }
        v.x.push_back(x[i]);
        v.y.push_back(f[i].value());
        v.idx.push_back(i);
    }
    return v;
}

}  // namespace

void envelope_slice(std::span<const double> x, std::span<const ExtReal> f, std::span<ExtReal> out,
                    std::vector<std::size_t>* support, bool* improper) {
    const FiniteView v = split(x, f);
    std::fill(out.begin(), out.end(), ExtReal::pos_inf());
    if (improper) *improper = v.has_neg_inf;
    if (!v.any_dom) return;
    if (v.has_neg_inf) {
        for (std::size_t i = v.first_dom; i <= v.last_dom; ++i) out[i] = ExtReal::neg_inf();
        return;
    }
    const auto hull = lower_hull(v.x, v.y);
    for (std::size_t k = 0; k < hull.size(); ++k) {
        const std::size_t node = v.idx[hull[k]];
        out[node] = f[node];
        if (support) support->push_back(node);
        if (k + 1 == hull.size()) break;
        const std::size_t next = v.idx[hull[k + 1]];
        const double x0 = v.x[hull[k]], y0 = v.y[hull[k]];
        const double slope = (v.y[hull[k + 1]] - y0) / (v.x[hull[k + 1]] - x0);
        for (std::size_t i = node + 1; i < next; ++i) {
            double val = y0 + slope * (x[i] - x0);
            if (f[i].finite()) val = std::min(val, f[i].value());
            out[i] = val;
        }
    }
}

void conjugate_slice(std::span<const double> x, std::span<const ExtReal> f, std::span<const double> dual,
                     std::span<ExtReal> out) {
    const FiniteView v = split(x, f);
    if (v.has_neg_inf) {
        std::fill(out.begin(), out.end(), ExtReal::pos_inf());
        return;
    }
    if (v.x.empty()) {
        std::fill(out.begin(), out.end(), ExtReal::neg_inf());
        return;
    }
    const auto hull = lower_hull(v.x, v.y);
    std::size_t k = 0;
    for (std::size_t j = 0; j < dual.size(); ++j) {
        const double s = dual[j];
        auto val = [&](std::size_t q) { return s * v.x[hull[q]] - v.y[hull[q]]; };
        while (k + 1 < hull.size() && val(k + 1) >= val(k)) ++k;
        // dual nodes are ascending, but allow for a caller passing them unsorted
        while (k > 0 && val(k - 1) > val(k)) --k;
        out[j] = val(k);
    }
}

}  // namespace detail

EnvelopeResult convex_hull1(const GridFn1& f) {
    const auto x = f.grid.nodes();
    EnvelopeResult r{GridFn1(f.grid, std::vector<ExtReal>(f.size()), f.axis_role), {}, false};
    detail::envelope_slice(x, f.values, r.fn.values, &r.support_indices, &r.improper);
    return r;
}

GridFn1 concave_hull1(const GridFn1& f) { return negate(convex_hull1(negate(f)).fn); }

GridFn1 conjugate1(const GridFn1& f, const Grid1& dual) {
    const auto x = f.grid.nodes();
    const auto s = dual.nodes();
    std::vector<ExtReal> out(dual.size());
    detail::conjugate_slice(x, f.values, s, out);
    return GridFn1(dual, std::move(out), f.axis_role == AxisRole::Primal ? AxisRole::Dual : AxisRole::Primal);
}

GridFn1 biconjugate1(const GridFn1& f) { return convex_hull1(f).fn; }

Grid1 default_dual_grid(const GridFn1& f) {
    double lo = std::numeric_limits<double>::infinity(), hi = -lo;
    std::size_t prev = f.size();
    for (std::size_t i = 0; i < f.size(); ++i) {
        if (!f[i].finite()) continue;
        if (prev != f.size()) {
            const double m = (f[i].value() - f[prev].value()) / (f.grid[i] - f.grid[prev]);
            lo = std::min(lo, m);
            hi = std::max(hi, m);
        }
        prev = i;
    }
    if (!(lo <= hi)) lo = hi = 0.0;
    const double span = hi - lo;
    const double pad = span > 0 ? 0.1 * span : 0.1 * std::max(1.0, std::abs(lo));
    return snapped_grid(lo - pad, hi + pad, f.grid.step());
}

namespace {
AxisRole flip(AxisRole r) { return r == AxisRole::Primal ? AxisRole::Dual : AxisRole::Primal; }
}  // namespace

GridFn2 partial_conjugate(const GridFn2& f, Axis axis, const Grid1& dual) {
    if (axis == Axis::B) {
        GridFn2 out = kernels::conjugate_rows(f, dual);
        out.set_role(f.role());
        out.set_axis_roles(f.axis_a(), flip(f.axis_b()));
        return out;
    }
    GridFn2 t = kernels::conjugate_rows(transpose2(f), dual);
    GridFn2 out = transpose2(t);
    out.set_role(f.role());
    out.set_axis_roles(flip(f.axis_a()), f.axis_b());
    return out;
}

GridFn2 full_conjugate2(const GridFn2& f, const Grid1& dual_a, const Grid1& dual_b) {
    // H(u, t) = max_y (u y - F(y, t));  G(u, v) = max_t (v t - (-H(u, t)))
    const GridFn2 h = partial_conjugate(f, Axis::A, dual_a);
    GridFn2 g = kernels::conjugate_rows(negate(h), dual_b);
    Role2 role = f.role();
    if (role == Role2::Representative)
        role = Role2::Conjugate;
    else if (role == Role2::Conjugate)
        role = Role2::Representative;
    g.set_role(role);
    g.set_axis_roles(flip(f.axis_a()), flip(f.axis_b()));
    return g;
}

GridFn2 saddle_cl2(const GridFn2& f) {
    GridFn2 out = kernels::envelope_rows(f, false);
    out.set_role(f.role());
    out.set_axis_roles(f.axis_a(), f.axis_b());
    return out;
}

GridFn2 saddle_cl1(const GridFn2& f) {
    GridFn2 out = transpose2(kernels::envelope_rows(transpose2(f), true));
    out.set_role(f.role());
    out.set_axis_roles(f.axis_a(), f.axis_b());
    return out;
}

}  // namespace fitzcalc
