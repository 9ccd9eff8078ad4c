// Serial reference versions of the kernels in kernels.cpp.

#include <limits>

#include "fitzcalc/kernels.hpp"

namespace fitzcalc::reference {

GridFn2 conjugate_rows(const GridFn2& f, const Grid1& dual) {
    GridFn2 out(f.grid_a(), dual, f.role());
    for (std::size_t i = 0; i < f.rows(); ++i) {
        bool neg_inf = false, any = false;
        for (std::size_t k = 0; k < f.cols(); ++k) {
            neg_inf = neg_inf || f(i, k).is_neg_inf();
            any = any || f(i, k).finite();
        }
        for (std::size_t j = 0; j < dual.size(); ++j) {
            if (neg_inf) {
                out(i, j) = ExtReal::pos_inf();
                continue;
            }
            if (!any) {
                out(i, j) = ExtReal::neg_inf();
                continue;
            }
            double best = -std::numeric_limits<double>::infinity();
            for (std::size_t k = 0; k < f.cols(); ++k) {
                if (!f(i, k).finite()) continue;
                const double v = dual[j] * f.grid_b()[k] - f(i, k).value();
                if (v > best) best = v;
            }
            out(i, j) = best;
        }
    }
    return out;
}

GridFn2 fitzpatrick(std::span<const double> y, std::span<const double> ys, const Grid1& xgrid, const Grid1& sgrid) {
    GridFn2 out(xgrid, sgrid, Role2::Representative, ExtReal::neg_inf());
    for (std::size_t i = 0; i < xgrid.size(); ++i) {
        for (std::size_t j = 0; j < sgrid.size(); ++j) {
            for (std::size_t k = 0; k < y.size(); ++k) {
                const ExtReal v = sgrid[j] * y[k] + ys[k] * (xgrid[i] - y[k]);
                if (out(i, j) < v) out(i, j) = v;
            }
        }
    }
    return out;
}

}  // namespace fitzcalc::reference
