#include "fitzcalc/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace fitzcalc::oracle {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();
}

double affine_fitz_exact(double lambda, double c, double x, double xs) {
    if (!(lambda > 0)) throw std::invalid_argument("affine_fitz_exact: lambda must be positive");
    const double t = xs + lambda * x - c;
    return c * x + t * t / (4.0 * lambda);
}

void StaircaseOracle::validate() const {
    if (vertices.empty()) throw std::invalid_argument("staircase: needs at least one vertex");
    int last_kind = -1;  // 0 horizontal, 1 vertical
    for (std::size_t k = 0; k + 1 < vertices.size(); ++k) {
        const Vertex& p = vertices[k];
        const Vertex& q = vertices[k + 1];
        int kind;
        if (p.xs == q.xs && q.x > p.x)
            kind = 0;
        else if (p.x == q.x && q.xs > p.xs)
            kind = 1;
        else
            throw std::invalid_argument("staircase: segment " + std::to_string(k) +
                                        " is not an increasing horizontal or vertical segment");
        if (kind == last_kind)
            throw std::invalid_argument("staircase: segments " + std::to_string(k - 1) + " and " +
                                        std::to_string(k) + " do not alternate");
        last_kind = kind;
    }
}

ExtReal staircase_fitz_exact(const StaircaseOracle& o, double x, double xs) {
    const Vertex& first = o.vertices.front();
    const Vertex& last = o.vertices.back();
    // objective along a ray: left horizontal (y, first.xs), y -> -inf: slope in y is xs - first.xs
    if (o.left == EndRay::Horizontal ? xs - first.xs < 0 : x - first.x < 0) return ExtReal::pos_inf();
    if (o.right == EndRay::Horizontal ? xs - last.xs > 0 : x - last.x > 0) return ExtReal::pos_inf();
    double best = -kInf;
    for (const Vertex& v : o.vertices) best = std::max(best, xs * v.x + v.xs * x - v.x * v.xs);
    return best;
}

void PLConvexFn::validate() const {
    if (breakpoints.empty() || breakpoints.size() != values.size())
        throw std::invalid_argument("PL function: need matching, non-empty breakpoints and values");
    if (std::isnan(left_slope) || std::isnan(right_slope) || left_slope == kInf || right_slope == -kInf)
        throw std::invalid_argument("PL function: bad end slopes");
    double prev = left_slope;
    for (std::size_t k = 0; k < breakpoints.size(); ++k) {
        if (!std::isfinite(breakpoints[k]) || !std::isfinite(values[k]))
            throw std::invalid_argument("PL function: breakpoints and values must be finite");
        if (k + 1 < breakpoints.size()) {
            if (!(breakpoints[k + 1] > breakpoints[k]))
                throw std::invalid_argument("PL function: breakpoints must increase");
            const double m = (values[k + 1] - values[k]) / (breakpoints[k + 1] - breakpoints[k]);
            if (m < prev - 1e-12 * (1 + std::abs(m))) throw std::invalid_argument("PL function: not convex");
            prev = m;
        }
    }
    if (right_slope < prev - 1e-12 * (1 + std::abs(prev))) throw std::invalid_argument("PL function: not convex");
}

double PLConvexFn::dom_lo() const { return left_slope == -kInf ? breakpoints.front() : -kInf; }
double PLConvexFn::dom_hi() const { return right_slope == kInf ? breakpoints.back() : kInf; }

ExtReal PLConvexFn::operator()(double x) const {
    if (x < breakpoints.front()) {
        if (left_slope == -kInf) return ExtReal::pos_inf();
        return values.front() + left_slope * (x - breakpoints.front());
    }
    if (x > breakpoints.back()) {
        if (right_slope == kInf) return ExtReal::pos_inf();
        return values.back() + right_slope * (x - breakpoints.back());
    }
    const auto it = std::upper_bound(breakpoints.begin(), breakpoints.end(), x);
    const std::size_t k = static_cast<std::size_t>(it - breakpoints.begin());
    if (k == breakpoints.size()) return values.back();
    const double t = (x - breakpoints[k - 1]) / (breakpoints[k] - breakpoints[k - 1]);
    return values[k - 1] + t * (values[k] - values[k - 1]);
}

PLConvexFn PLConvexFn::normalized() const {
    PLConvexFn out;
    out.left_slope = left_slope;
    out.right_slope = right_slope;
    for (std::size_t k = 0; k < breakpoints.size(); ++k) {
        if (!out.breakpoints.empty() && breakpoints[k] == out.breakpoints.back()) continue;
        out.breakpoints.push_back(breakpoints[k]);
        out.values.push_back(values[k]);
    }
    // drop interior points where the slope does not change
    auto slope_left = [&](std::size_t k) {
        return k == 0 ? out.left_slope
                      : (out.values[k] - out.values[k - 1]) / (out.breakpoints[k] - out.breakpoints[k - 1]);
    };
    auto slope_right = [&](std::size_t k) {
        return k + 1 == out.breakpoints.size()
                   ? out.right_slope
                   : (out.values[k + 1] - out.values[k]) / (out.breakpoints[k + 1] - out.breakpoints[k]);
    };
    for (std::size_t k = 0; k < out.breakpoints.size() && out.breakpoints.size() > 1;) {
        const double l = slope_left(k), r = slope_right(k);
        if (std::isfinite(l) && std::isfinite(r) && std::abs(r - l) <= 1e-12 * (1 + std::abs(l))) {
            out.breakpoints.erase(out.breakpoints.begin() + static_cast<std::ptrdiff_t>(k));
            out.values.erase(out.values.begin() + static_cast<std::ptrdiff_t>(k));
        } else {
            ++k;
        }
    }
    return out;
}

PLConvexFn pl_conjugate_exact(const PLConvexFn& f_in) {
    f_in.validate();
    const PLConvexFn f = f_in.normalized();
    const auto& b = f.breakpoints;
    const auto& v = f.values;
    PLConvexFn g;
    auto push = [&](double slope, std::size_t at) {
        const double val = slope * b[at] - v[at];
        if (!g.breakpoints.empty() && std::abs(slope - g.breakpoints.back()) <= 1e-12 * (1 + std::abs(slope)))
            return;
        g.breakpoints.push_back(slope);
        g.values.push_back(val);
    };
    if (std::isfinite(f.left_slope)) push(f.left_slope, 0);
    for (std::size_t k = 0; k + 1 < b.size(); ++k) push((v[k + 1] - v[k]) / (b[k + 1] - b[k]), k);
    if (std::isfinite(f.right_slope)) push(f.right_slope, b.size() - 1);
    g.left_slope = std::isfinite(f.left_slope) ? -kInf : b.front();
    g.right_slope = std::isfinite(f.right_slope) ? kInf : b.back();
    if (g.breakpoints.empty()) {
        // f is a single point of finite domain: f* is affine
        g.breakpoints = {0.0};
        g.values = {-v.front()};
    }
    return g;
}

PLConvexFn restrict_to_box(const PLConvexFn& f, double lo, double hi) {
    const double a = std::max(lo, f.dom_lo()), c = std::min(hi, f.dom_hi());
    if (!(a <= c)) throw std::invalid_argument("restrict_to_box: box misses the domain");
    PLConvexFn out;
    out.left_slope = -kInf;
    out.right_slope = kInf;
    out.breakpoints.push_back(a);
    out.values.push_back(f(a).value());
    for (std::size_t k = 0; k < f.breakpoints.size(); ++k) {
        if (f.breakpoints[k] > a && f.breakpoints[k] < c) {
            out.breakpoints.push_back(f.breakpoints[k]);
            out.values.push_back(f.values[k]);
        }
    }
    if (c > a) {
        out.breakpoints.push_back(c);
        out.values.push_back(f(c).value());
    }
    return out;
}

ExtReal subdiff_representative_exact(const PLConvexFn& f, double x, double xs) {
    const ExtReal fx = f(x);
    const ExtReal gs = pl_conjugate_exact(f)(xs);
    return fx + gs;
}

PLConvexFn staircase_potential(const StaircaseOracle& o) {
    o.validate();
    PLConvexFn f;
    // breakpoints are the distinct vertex abscissae; the slope between two of
    // them is the level of the horizontal segment joining them
    for (const Vertex& p : o.vertices)
        if (f.breakpoints.empty() || p.x != f.breakpoints.back()) f.breakpoints.push_back(p.x);
    f.values.assign(f.breakpoints.size(), 0.0);
    // level of the horizontal segment starting at breakpoint k is the x* of the
    // last vertex at that abscissa
    std::size_t vi = 0;
    for (std::size_t k = 0; k < f.breakpoints.size(); ++k) {
        double level = 0;
        while (vi < o.vertices.size() && o.vertices[vi].x == f.breakpoints[k]) level = o.vertices[vi++].xs;
        if (k + 1 < f.breakpoints.size())
            f.values[k + 1] = f.values[k] + level * (f.breakpoints[k + 1] - f.breakpoints[k]);
    }
    f.left_slope = o.left == EndRay::Horizontal ? o.vertices.front().xs : -kInf;
    f.right_slope = o.right == EndRay::Horizontal ? o.vertices.back().xs : kInf;
    return f.normalized();
}

double QuadraticFn::box_conjugate(double s, double lo, double hi) const {
    double a;
    if (lambda > 0)
        a = std::clamp((s - c) / lambda, lo, hi);
    else
        a = s - c >= 0 ? hi : lo;
    return s * a - (*this)(a);
}

}  // namespace fitzcalc::oracle
