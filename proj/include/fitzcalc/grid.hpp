#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "fitzcalc/ext_real.hpp"
#include "fitzcalc/report.hpp"

namespace fitzcalc {

/// Uniform 1D grid: nodes lo + i*h for i = 0..n-1.
class Grid1 {
public:
    Grid1(double lo, double hi, std::size_t n);

    double lo() const { return lo_; }
    double hi() const { return hi_; }
    std::size_t size() const { return n_; }
    double step() const { return h_; }

    /// Node i. The last node is returned as hi exactly.
    double operator[](std::size_t i) const { return i + 1 == n_ ? hi_ : lo_ + static_cast<double>(i) * h_; }
    std::vector<double> nodes() const;

    /// Index of the node nearest to x (clamped to the grid).
    std::size_t nearest(double x) const;
    bool contains(double x, double slack = 0.0) const { return x >= lo_ - slack && x <= hi_ + slack; }

    friend bool operator==(const Grid1&, const Grid1&) = default;

private:
    double lo_;
    double hi_;
    std::size_t n_;
    double h_;
};

/// Factory with the validation rules of the public interface.
Grid1 make_grid(double lo, double hi, long long n);

/// Grid with step h whose bounds are the multiples of h enclosing [lo, hi].
Grid1 snapped_grid(double lo, double hi, double h);

enum class AxisRole { Primal, Dual };
enum class Role2 { Representative, Bifunction, Conjugate };

std::string_view to_string(AxisRole r);
std::string_view to_string(Role2 r);
Role2 role2_from_string(std::string_view s);

/// Extended-real function sampled on a 1D grid. Represents f + indicator of the grid box.
struct GridFn1 {
    Grid1 grid;
    std::vector<ExtReal> values;
    AxisRole axis_role = AxisRole::Primal;

    GridFn1(Grid1 g, std::vector<ExtReal> v, AxisRole role = AxisRole::Primal);

    std::size_t size() const { return values.size(); }
    ExtReal operator[](std::size_t i) const { return values[i]; }
};

/// How sample1 treats points outside a function's analytic domain.
enum class Curvature { Convex, Concave };

/// Samples f at every node. f may return +-HUGE_VAL for infinities; points
/// where f reports "outside the domain" via std::nullopt become +inf for convex
/// roles and -inf for concave ones. NaN throws.
GridFn1 sample1(const std::function<std::optional<double>(double)>& f, const Grid1& grid,
                Curvature curvature = Curvature::Convex, AxisRole role = AxisRole::Primal);

GridFn1 negate(const GridFn1& f);

/// Extended-real function on a product of two uniform grids, row-major with
/// rows indexed by axis a.
class GridFn2 {
public:
    GridFn2(Grid1 a, Grid1 b, Role2 role, ExtReal fill = ExtReal(0.0));
    GridFn2(Grid1 a, Grid1 b, Role2 role, std::vector<ExtReal> values);

    const Grid1& grid_a() const { return a_; }
    const Grid1& grid_b() const { return b_; }
    std::size_t rows() const { return a_.size(); }
    std::size_t cols() const { return b_.size(); }
    Role2 role() const { return role_; }
    void set_role(Role2 r) { role_ = r; }
    AxisRole axis_a() const { return axis_a_; }
    AxisRole axis_b() const { return axis_b_; }
    void set_axis_roles(AxisRole a, AxisRole b) { axis_a_ = a; axis_b_ = b; }

    ExtReal operator()(std::size_t i, std::size_t j) const { return v_[i * b_.size() + j]; }
    ExtReal& operator()(std::size_t i, std::size_t j) { return v_[i * b_.size() + j]; }

    std::span<const ExtReal> row(std::size_t i) const { return {v_.data() + i * b_.size(), b_.size()}; }
    std::span<ExtReal> row(std::size_t i) { return {v_.data() + i * b_.size(), b_.size()}; }
    std::vector<ExtReal> column(std::size_t j) const;
    void set_column(std::size_t j, std::span<const ExtReal> col);

    const std::vector<ExtReal>& values() const { return v_; }
    bool same_grids(const GridFn2& o) const { return a_ == o.a_ && b_ == o.b_; }

    /// Fills with f(a_i, b_j).
    template <class Fn>
    static GridFn2 tabulate(const Grid1& a, const Grid1& b, Role2 role, Fn&& f) {
        GridFn2 out(a, b, role);
        for (std::size_t i = 0; i < a.size(); ++i)
            for (std::size_t j = 0; j < b.size(); ++j) out(i, j) = f(a[i], b[j]);
        return out;
    }

private:
    Grid1 a_;
    Grid1 b_;
    Role2 role_;
    AxisRole axis_a_;
    AxisRole axis_b_;
    std::vector<ExtReal> v_;
};

/// Swaps axes. Representative <-> Conjugate; bifunctions stay bifunctions.
GridFn2 transpose2(const GridFn2& f);
GridFn2 negate(const GridFn2& f);

/// Axis-aligned box in grid coordinates (inclusive).
struct Region {
    double a_lo, a_hi, b_lo, b_hi;
    bool contains(double a, double b) const { return a >= a_lo && a <= a_hi && b >= b_lo && b <= b_hi; }
};

/// Nodewise comparison. Infinities must agree exactly; finite values within tol.
PropertyReport approx_eq(const GridFn2& f, const GridFn2& g, double tol,
                         std::optional<Region> region = std::nullopt, std::string name = "approx_eq");

/// f <= g + tol nodewise, with -inf <= anything and anything <= +inf.
PropertyReport leq(const GridFn2& f, const GridFn2& g, double tol, std::string name = "leq");

}  // namespace fitzcalc
