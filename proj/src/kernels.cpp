#include "fitzcalc/kernels.hpp"

#include <algorithm>
#include <cstddef>
#include <limits>
#include <vector>

#ifdef FITZCALC_HAVE_OPENMP
#include <omp.h>
#endif

#include "fitzcalc/convex.hpp"

namespace fitzcalc::kernels {

namespace {
int g_default_threads = 0;
}

void set_threads(int n) {
#ifdef FITZCALC_HAVE_OPENMP
    if (g_default_threads == 0) g_default_threads = omp_get_max_threads();
    omp_set_num_threads(n > 0 ? n : g_default_threads);
#else
    (void)n;
    (void)g_default_threads;
#endif
}

int max_threads() {
#ifdef FITZCALC_HAVE_OPENMP
    return omp_get_max_threads();
#else
    return 1;
#endif
}

GridFn2 conjugate_rows(const GridFn2& f, const Grid1& dual) {
    GridFn2 out(f.grid_a(), dual, f.role());
    const auto x = f.grid_b().nodes();
    const auto s = dual.nodes();
    const auto rows = static_cast<std::ptrdiff_t>(f.rows());
#pragma omp parallel for schedule(static)
    for (std::ptrdiff_t i = 0; i < rows; ++i) {
        const auto r = static_cast<std::size_t>(i);
        detail::conjugate_slice(x, f.row(r), s, out.row(r));
    }
    return out;
}

GridFn2 envelope_rows(const GridFn2& f, bool concave) {
    GridFn2 out(f.grid_a(), f.grid_b(), f.role());
    const auto x = f.grid_b().nodes();
    const auto rows = static_cast<std::ptrdiff_t>(f.rows());
#pragma omp parallel for schedule(static)
    for (std::ptrdiff_t i = 0; i < rows; ++i) {
        const auto r = static_cast<std::size_t>(i);
        if (!concave) {
            detail::envelope_slice(x, f.row(r), out.row(r));
            continue;
        }
        std::vector<ExtReal> neg(f.cols());
        std::transform(f.row(r).begin(), f.row(r).end(), neg.begin(), [](ExtReal v) { return -v; });
        auto dst = out.row(r);
        detail::envelope_slice(x, neg, dst);
        std::transform(dst.begin(), dst.end(), dst.begin(), [](ExtReal v) { return -v; });
    }
    return out;
}

GridFn2 fitzpatrick(std::span<const double> y, std::span<const double> ys, const Grid1& xgrid, const Grid1& sgrid) {
    GridFn2 out(xgrid, sgrid, Role2::Representative);
    const std::size_t m = y.size();
    std::vector<double> prod(m);
    for (std::size_t k = 0; k < m; ++k) prod[k] = y[k] * ys[k];
    const auto nx = static_cast<std::ptrdiff_t>(xgrid.size());
    const std::size_t ns = sgrid.size();
    const double* py = y.data();
    const double* pys = ys.data();
    const double* pp = prod.data();
#pragma omp parallel for schedule(static)
    for (std::ptrdiff_t i = 0; i < nx; ++i) {
        const double x = xgrid[static_cast<std::size_t>(i)];
        for (std::size_t j = 0; j < ns; ++j) {
            const double s = sgrid[j];
            double best = -std::numeric_limits<double>::infinity();
#pragma omp simd reduction(max : best)
            for (std::size_t k = 0; k < m; ++k) best = std::max(best, s * py[k] + pys[k] * x - pp[k]);
            out(static_cast<std::size_t>(i), j) = m ? ExtReal(best) : ExtReal::neg_inf();
        }
    }
    return out;
}

}  // namespace fitzcalc::kernels
