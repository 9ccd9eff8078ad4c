#include "fitzcalc/grid.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace fitzcalc {

std::string ExtReal::str() const {
    if (is_pos_inf()) return "inf";
    if (is_neg_inf()) return "-inf";
    std::ostringstream os;
    os.precision(17);
    os << v_;
    return os.str();
}

Grid1::Grid1(double lo, double hi, std::size_t n) : lo_(lo), hi_(hi), n_(n) {
    if (!std::isfinite(lo) || !std::isfinite(hi)) throw std::invalid_argument("Grid1: bounds must be finite");
    if (!(lo < hi)) throw std::invalid_argument("Grid1: need lo < hi");
    if (n < 2) throw std::invalid_argument("Grid1: need at least 2 nodes");
    h_ = (hi - lo) / static_cast<double>(n - 1);
}

Grid1 make_grid(double lo, double hi, long long n) {
    if (n < 2) throw std::invalid_argument("make_grid: n must be >= 2");
    return Grid1(lo, hi, static_cast<std::size_t>(n));
}

Grid1 snapped_grid(double lo, double hi, double h) {
    if (!(h > 0)) throw std::invalid_argument("snapped_grid: step must be positive");
    const double klo = std::floor(lo / h + 1e-9);
    const double khi = std::ceil(hi / h - 1e-9);
    const auto n = static_cast<long long>(khi - klo) + 1;
    return make_grid(klo * h, khi * h, std::max(n, 2LL));
}

std::vector<double> Grid1::nodes() const {
    std::vector<double> out(n_);
    for (std::size_t i = 0; i < n_; ++i) out[i] = (*this)[i];
    return out;
}

std::size_t Grid1::nearest(double x) const {
    const double t = std::round((x - lo_) / h_);
    if (t <= 0) return 0;
    if (t >= static_cast<double>(n_ - 1)) return n_ - 1;
    return static_cast<std::size_t>(t);
}

std::string_view to_string(AxisRole r) { return r == AxisRole::Primal ? "primal" : "dual"; }

std::string_view to_string(Role2 r) {
    switch (r) {
        case Role2::Representative: return "representative";
        case Role2::Bifunction: return "bifunction";
        case Role2::Conjugate: return "conjugate";
    }
    return "?";
}

Role2 role2_from_string(std::string_view s) {
    if (s == "representative") return Role2::Representative;
    if (s == "bifunction") return Role2::Bifunction;
    if (s == "conjugate") return Role2::Conjugate;
    throw std::invalid_argument("unknown role '" + std::string(s) + "'");
}

GridFn1::GridFn1(Grid1 g, std::vector<ExtReal> v, AxisRole role)
    : grid(std::move(g)), values(std::move(v)), axis_role(role) {
    if (values.size() != grid.size()) throw std::invalid_argument("GridFn1: value count does not match grid");
}

GridFn1 sample1(const std::function<std::optional<double>(double)>& f, const Grid1& grid, Curvature curvature,
                AxisRole role) {
    std::vector<ExtReal> v(grid.size());
    for (std::size_t i = 0; i < grid.size(); ++i) {
        const auto y = f(grid[i]);
        if (!y) {
            v[i] = curvature == Curvature::Convex ? ExtReal::pos_inf() : ExtReal::neg_inf();
            continue;
        }
        if (std::isnan(*y)) throw std::domain_error("sample1: function returned NaN at x = " + std::to_string(grid[i]));
        v[i] = ExtReal::from_double(*y);
    }
    return GridFn1(grid, std::move(v), role);
}

GridFn1 negate(const GridFn1& f) {
    std::vector<ExtReal> v(f.size());
    std::transform(f.values.begin(), f.values.end(), v.begin(), [](ExtReal x) { return -x; });
    return GridFn1(f.grid, std::move(v), f.axis_role);
}

namespace {
AxisRole default_axis_a(Role2 r) { return r == Role2::Conjugate ? AxisRole::Dual : AxisRole::Primal; }
AxisRole default_axis_b(Role2 r) {
    switch (r) {
        case Role2::Representative: return AxisRole::Dual;
        case Role2::Conjugate: return AxisRole::Primal;
        default: return AxisRole::Primal;
    }
}
}  // namespace

GridFn2::GridFn2(Grid1 a, Grid1 b, Role2 role, ExtReal fill)
    : a_(std::move(a)), b_(std::move(b)), role_(role), axis_a_(default_axis_a(role)),
      axis_b_(default_axis_b(role)), v_(a_.size() * b_.size(), fill) {}

GridFn2::GridFn2(Grid1 a, Grid1 b, Role2 role, std::vector<ExtReal> values)
    : a_(std::move(a)), b_(std::move(b)), role_(role), axis_a_(default_axis_a(role)),
      axis_b_(default_axis_b(role)), v_(std::move(values)) {
    if (v_.size() != a_.size() * b_.size()) throw std::invalid_argument("GridFn2: value count does not match grids");
}

std::vector<ExtReal> GridFn2::column(std::size_t j) const {
    std::vector<ExtReal> c(rows());
    for (std::size_t i = 0; i < rows(); ++i) c[i] = (*this)(i, j);
    return c;
}

void GridFn2::set_column(std::size_t j, std::span<const ExtReal> col) {
    for (std::size_t i = 0; i < rows(); ++i) (*this)(i, j) = col[i];
}

GridFn2 transpose2(const GridFn2& f) {
    Role2 role = f.role();
    if (role == Role2::Representative)
        role = Role2::Conjugate;
    else if (role == Role2::Conjugate)
        role = Role2::Representative;
    GridFn2 out(f.grid_b(), f.grid_a(), role);
    out.set_axis_roles(f.axis_b(), f.axis_a());
    for (std::size_t i = 0; i < f.rows(); ++i)
        for (std::size_t j = 0; j < f.cols(); ++j) out(j, i) = f(i, j);
    return out;
}

GridFn2 negate(const GridFn2& f) {
    std::vector<ExtReal> v(f.values().size());
    std::transform(f.values().begin(), f.values().end(), v.begin(), [](ExtReal x) { return -x; });
    GridFn2 out(f.grid_a(), f.grid_b(), f.role(), std::move(v));
    out.set_axis_roles(f.axis_a(), f.axis_b());
    return out;
}

PropertyReport approx_eq(const GridFn2& f, const GridFn2& g, double tol, std::optional<Region> region,
                         std::string name) {
    if (!f.same_grids(g)) throw std::invalid_argument("approx_eq: grid mismatch");
    PropertyReport r;
    r.name = std::move(name);
    r.tol = tol;
    r.h = f.grid_a().step();
    for (std::size_t i = 0; i < f.rows(); ++i) {
        const double a = f.grid_a()[i];
        for (std::size_t j = 0; j < f.cols(); ++j) {
            const double b = f.grid_b()[j];
            if (region && !region->contains(a, b)) continue;
            const ExtReal x = f(i, j), y = g(i, j);
            if (x.finite() && y.finite()) {
                const double d = std::abs(x.value() - y.value());
                r.observe(d, a, b, d > tol);
            } else {
                r.observe(0.0, a, b, x != y);
            }
        }
    }
    return r;
}

PropertyReport leq(const GridFn2& f, const GridFn2& g, double tol, std::string name) {
    if (!f.same_grids(g)) throw std::invalid_argument("leq: grid mismatch");
    PropertyReport r;
    r.name = std::move(name);
    r.tol = tol;
    r.h = f.grid_a().step();
    for (std::size_t i = 0; i < f.rows(); ++i) {
        for (std::size_t j = 0; j < f.cols(); ++j) {
            const ExtReal x = f(i, j), y = g(i, j);
            const double a = f.grid_a()[i], b = f.grid_b()[j];
            if (x.is_neg_inf() || y.is_pos_inf()) {
                r.observe(0.0, a, b, false);
            } else if (x.is_pos_inf() || y.is_neg_inf()) {
                r.observe(0.0, a, b, true);
            } else {
                const double excess = x.value() - y.value();
                r.observe(std::max(excess, 0.0), a, b, excess > tol);
            }
        }
    }
    return r;
}

}  // namespace fitzcalc
