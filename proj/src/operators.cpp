#include "fitzcalc/operators.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

#include "fitzcalc/convex.hpp"
#include "fitzcalc/kernels.hpp"

namespace fitzcalc {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

oracle::StaircaseOracle sign_stairs() {
    return {{{0.0, -1.0}, {0.0, 1.0}}, oracle::EndRay::Horizontal, oracle::EndRay::Horizontal};
}

std::string fmt(double v) {
    std::ostringstream os;
    os << v;
    return os.str();
}

bool on_node(const Grid1& g, double v, std::size_t& idx) {
    if (!g.contains(v, 1e-9 * g.step())) return false;
    idx = g.nearest(v);
    return std::abs(g[idx] - v) <= 1e-9 * g.step() * (1 + std::abs(v));
}

}  // namespace

OperatorSpec OperatorSpec::affine(double lambda, double c) {
    OperatorSpec op;
    op.kind = OpKind::Affine;
    op.lambda = lambda;
    op.c = c;
    op.validate();
    return op;
}

OperatorSpec OperatorSpec::sign() {
    OperatorSpec op;
    op.kind = OpKind::Sign;
    op.stairs = sign_stairs();
    return op;
}

OperatorSpec OperatorSpec::paper_example(double a, double b) {
    OperatorSpec op;
    op.kind = OpKind::PaperExample;
    op.a = a;
    op.b = b;
    op.validate();
    return op;
}

OperatorSpec OperatorSpec::staircase(std::vector<oracle::Vertex> vertices, oracle::EndRay left,
                                     oracle::EndRay right) {
    OperatorSpec op;
    op.kind = OpKind::Staircase;
    op.stairs = {std::move(vertices), left, right};
    op.validate();
    return op;
}

OperatorSpec OperatorSpec::sampled(std::vector<oracle::Vertex> points) {
    OperatorSpec op;
    op.kind = OpKind::Sampled;
    op.samples = std::move(points);
    op.validate();
    return op;
}

void OperatorSpec::validate() const {
    switch (kind) {
        case OpKind::Affine:
            if (!(lambda >= 0) || !std::isfinite(lambda) || !std::isfinite(c))
                throw std::invalid_argument("affine operator: need finite lambda >= 0 and finite c");
            break;
        case OpKind::Sign: break;
        case OpKind::PaperExample:
            if (!(0 < a && a < b && b < 1))
                throw std::invalid_argument("paper_example: need 0 < a < b < 1");
            break;
        case OpKind::Staircase: stairs.validate(); break;
        case OpKind::Sampled:
            if (samples.empty()) throw std::invalid_argument("sampled operator: no points");
            for (std::size_t i = 0; i < samples.size(); ++i) {
                if (!std::isfinite(samples[i].x) || !std::isfinite(samples[i].xs))
                    throw std::invalid_argument("sampled operator: non-finite point");
                for (std::size_t j = 0; j < i; ++j)
                    if ((samples[i].xs - samples[j].xs) * (samples[i].x - samples[j].x) < 0)
                        throw std::invalid_argument("sampled operator: points " + std::to_string(j) + " and " +
                                                    std::to_string(i) + " violate monotonicity");
            }
            break;
    }
}

std::string OperatorSpec::name() const {
    switch (kind) {
        case OpKind::Affine: return "affine(" + fmt(lambda) + "," + fmt(c) + ")";
        case OpKind::Sign: return "sign";
        case OpKind::PaperExample: return "paper_example(" + fmt(a) + "," + fmt(b) + ")";
        case OpKind::Staircase: return "staircase[" + std::to_string(stairs.vertices.size()) + "]";
        case OpKind::Sampled: return "sampled[" + std::to_string(samples.size()) + "]";
    }
    return "?";
}

std::pair<double, double> OperatorSpec::domain_bounds() const {
    switch (kind) {
        case OpKind::Affine: return {-kInf, kInf};
        case OpKind::PaperExample: return {0.0, 1.0};
        case OpKind::Sampled: {
            double lo = kInf, hi = -kInf;
            for (const auto& p : samples) {
                lo = std::min(lo, p.x);
                hi = std::max(hi, p.x);
            }
            return {lo, hi};
        }
        case OpKind::Sign:
        case OpKind::Staircase: break;
    }
    const auto& st = as_staircase();
    return {st.left == oracle::EndRay::Vertical ? st.vertices.front().x : -kInf,
            st.right == oracle::EndRay::Vertical ? st.vertices.back().x : kInf};
}

const oracle::StaircaseOracle& OperatorSpec::as_staircase() const {
    if (kind == OpKind::Sign) {
        static const oracle::StaircaseOracle s = sign_stairs();
        return s;
    }
    if (kind != OpKind::Staircase) throw std::logic_error("as_staircase: not a staircase operator");
    return stairs;
}

std::optional<std::pair<double, double>> OperatorSpec::values_at(double x, double eps) const {
    using P = std::pair<double, double>;
    switch (kind) {
        case OpKind::Affine: {
            const double v = lambda * x + c;
            return P{v, v};
        }
        case OpKind::PaperExample: {
            if (!(x > 0 && x < 1)) return std::nullopt;
            double v;
            if (x <= a)
                v = -1.0 / (x * x);
            else if (x >= b)
                v = 1.0 / (1.0 - x);
            else {
                const double ya = -1.0 / (a * a), yb = 1.0 / (1.0 - b);
                v = ya + (yb - ya) * (x - a) / (b - a);
            }
            return P{v, v};
        }
        case OpKind::Sampled: {
            double lo = kInf, hi = -kInf;
            for (const auto& p : samples)
                if (std::abs(p.x - x) <= eps) {
                    lo = std::min(lo, p.xs);
                    hi = std::max(hi, p.xs);
                }
            if (lo > hi) return std::nullopt;
            return P{lo, hi};
        }
        case OpKind::Sign:
        case OpKind::Staircase: break;
    }
    const auto& st = as_staircase();
    const auto& v = st.vertices;
    if (x < v.front().x - eps) {
        if (st.left == oracle::EndRay::Vertical) return std::nullopt;
        return P{v.front().xs, v.front().xs};
    }
    if (x > v.back().x + eps) {
        if (st.right == oracle::EndRay::Vertical) return std::nullopt;
        return P{v.back().xs, v.back().xs};
    }
    double lo = kInf, hi = -kInf;
    for (const auto& p : v)
        if (std::abs(p.x - x) <= eps) {
            lo = std::min(lo, p.xs);
            hi = std::max(hi, p.xs);
        }
    if (lo <= hi) {
        if (std::abs(v.front().x - x) <= eps && st.left == oracle::EndRay::Vertical) lo = -kInf;
        if (std::abs(v.back().x - x) <= eps && st.right == oracle::EndRay::Vertical) hi = kInf;
        return P{lo, hi};
    }
    for (std::size_t k = 0; k + 1 < v.size(); ++k)
        if (v[k].x < x && x < v[k + 1].x) return P{v[k].xs, v[k].xs};
    return std::nullopt;
}

GraphSet sample_graph(const OperatorSpec& op, const Grid1& xgrid, const Grid1& dual_grid, bool box_rays) {
    op.validate();
    GraphSet g(xgrid, dual_grid);
    g.node_interval.resize(xgrid.size());
    const double ex = 1e-9 * xgrid.step();
    const double es = 1e-9 * dual_grid.step();
    const bool rays = box_rays && op.kind != OpKind::Sampled;
    std::size_t first = xgrid.size(), last = 0;
    for (std::size_t i = 0; i < xgrid.size(); ++i)
        if (op.values_at(xgrid[i], ex)) {
            first = std::min(first, i);
            last = i;
        }
    if (first == xgrid.size())
        throw std::invalid_argument("sample_graph: D(T) does not meet the x box of " + op.name());

    for (std::size_t i = first; i <= last; ++i) {
        const double x = xgrid[i];
        auto iv = op.values_at(x, ex);
        if (!iv) continue;
        double lo = iv->first, hi = iv->second;
        // normal cone of the box at its ends
        if (rays && i == 0) lo = -kInf;
        if (rays && i + 1 == xgrid.size()) hi = kInf;
        if (lo == hi) {
            g.points.push_back({x, lo});
            g.node_interval[i] = {lo, lo};
            if (!dual_grid.contains(lo, es)) ++g.out_of_range;
            continue;
        }
        if ((std::isfinite(lo) && lo < dual_grid.lo() - es) || (std::isfinite(hi) && hi > dual_grid.hi() + es))
            ++g.clipped;
        const double lc = std::max(lo, dual_grid.lo()), hc = std::min(hi, dual_grid.hi());
        if (lc > hc) {
            const double keep = hi < dual_grid.lo() ? hi : lo;
            g.points.push_back({x, keep});
            g.node_interval[i] = {keep, keep};
            ++g.out_of_range;
            continue;
        }
        g.points.push_back({x, lc});
        for (std::size_t k = 0; k < dual_grid.size(); ++k)
            if (dual_grid[k] > lc + es && dual_grid[k] < hc - es) g.points.push_back({x, dual_grid[k]});
        if (hc > lc) g.points.push_back({x, hc});
        g.node_interval[i] = {lc, hc};
    }

    if (op.is_staircase()) {
        const auto& v = op.as_staircase().vertices;
        for (std::size_t k = 0; k + 1 < v.size(); ++k) {
            if (v[k].x != v[k + 1].x || !xgrid.contains(v[k].x)) continue;
            std::size_t idx;
            if (!on_node(xgrid, v[k].x, idx))
                g.warnings.push_back("vertical segment at x=" + fmt(v[k].x) + " lies between x-nodes");
        }
    }
    if (g.clipped) g.warnings.push_back(std::to_string(g.clipped) + " value interval(s) clipped at the dual box");
    if (g.out_of_range)
        g.warnings.push_back(std::to_string(g.out_of_range) + " graph value(s) outside the dual box");
    return g;
}

GridFn2 g_t(const OperatorSpec& op, const Grid1& xgrid, const Grid1& ygrid) {
    op.validate();
    GridFn2 out(xgrid, ygrid, Role2::Bifunction, ExtReal::neg_inf());
    const double ex = 1e-9 * xgrid.step();
    for (std::size_t i = 0; i < xgrid.size(); ++i) {
        const double x = xgrid[i];
        const auto iv = op.values_at(x, ex);
        if (!iv) continue;
        for (std::size_t j = 0; j < ygrid.size(); ++j) {
            const double d = ygrid[j] - x;
            if (std::abs(d) <= ex) {
                out(i, j) = 0.0;
                continue;
            }
            const double t = d > 0 ? iv->second : iv->first;
            out(i, j) = std::isfinite(t) ? ExtReal(t * d) : ExtReal::pos_inf();
        }
    }
    return out;
}

GridFn2 fitzpatrick(const GraphSet& graph, const Grid1& xgrid, const Grid1& dual_grid) {
    std::vector<double> y, ys;
    y.reserve(graph.points.size());
    ys.reserve(graph.points.size());
    for (const auto& p : graph.points) {
        y.push_back(p.x);
        ys.push_back(p.xs);
    }
    return kernels::fitzpatrick(y, ys, xgrid, dual_grid);
}

GridFn2 fitzpatrick(const OperatorSpec& op, const Grid1& xgrid, const Grid1& dual_grid,
                    const std::optional<Grid1>& graph_grid) {
    const GraphSet g = sample_graph(op, graph_grid.value_or(xgrid), dual_grid);
    return fitzpatrick(g, xgrid, dual_grid);
}

GridFn2 sigma(const OperatorSpec& op, const Grid1& xgrid, const Grid1& dual_grid) {
    GridFn2 out = transpose2(full_conjugate2(fitzpatrick(op, xgrid, dual_grid), dual_grid, xgrid));
    out.set_role(Role2::Representative);
    out.set_axis_roles(AxisRole::Primal, AxisRole::Dual);
    return out;
}

GridFn2 sigma_via_envelope(const GraphSet& graph, const Grid1& xgrid, const Grid1& dual_grid) {
    GridFn2 psi(xgrid, dual_grid, Role2::Representative, ExtReal::pos_inf());
    for (const auto& p : graph.points) {
        std::size_t i, j;
        if (on_node(xgrid, p.x, i) && on_node(dual_grid, p.xs, j)) psi(i, j) = xgrid[i] * dual_grid[j];
    }
    GridFn2 out = full_conjugate2(full_conjugate2(psi, dual_grid, xgrid), xgrid, dual_grid);
    out.set_role(Role2::Representative);
    out.set_axis_roles(AxisRole::Primal, AxisRole::Dual);
    return out;
}

GridFn2 duality_product(const Grid1& xgrid, const Grid1& dual_grid) {
    return GridFn2::tabulate(xgrid, dual_grid, Role2::Representative,
                             [](double x, double s) { return ExtReal(x * s); });
}

PropertyReport is_representative(const GridFn2& phi, const GraphSet& graph, double tol, double coincidence) {
    const Grid1& X = phi.grid_a();
    const Grid1& S = phi.grid_b();
    const double hx = X.step(), hs = S.step();
    if (coincidence <= 0) coincidence = 0.5 * hx * hs;

    PropertyReport rep;
    rep.name = "is_representative";
    rep.tol = tol;
    rep.h = hx;

    PropertyReport lower;
    lower.name = "phi >= pi";
    lower.tol = tol;
    lower.h = hx;
    for (std::size_t i = 0; i < X.size(); ++i)
        for (std::size_t j = 0; j < S.size(); ++j) {
            const ExtReal v = phi(i, j);
            if (v.is_pos_inf()) continue;
            if (v.is_neg_inf()) {
                lower.observe(0.0, X[i], S[j], true);
                continue;
            }
            const double d = X[i] * S[j] - v.value();
            lower.observe(std::max(d, 0.0), X[i], S[j], d > tol);
        }

    PropertyReport on_graph;
    on_graph.name = "phi = pi on graph";
    on_graph.tol = tol;
    on_graph.h = hx;
    std::size_t off_grid = 0;
    for (const auto& p : graph.points) {
        std::size_t i, j;
        if (!on_node(X, p.x, i) || !on_node(S, p.xs, j)) {
            ++off_grid;
            continue;
        }
        const ExtReal v = phi(i, j);
        if (!v.finite()) {
            on_graph.observe(0.0, X[i], S[j], true);
            continue;
        }
        const double d = std::abs(v.value() - X[i] * S[j]);
        on_graph.observe(d, X[i], S[j], d > tol);
    }
    if (off_grid) on_graph.notes.push_back(std::to_string(off_grid) + " graph point(s) off the grid skipped");

    PropertyReport contact;
    contact.name = "contact set near graph";
    contact.tol = coincidence;
    contact.h = hx;
    for (std::size_t i = 0; i < X.size(); ++i)
        for (std::size_t j = 0; j < S.size(); ++j) {
            const ExtReal v = phi(i, j);
            if (!v.finite() || std::abs(v.value() - X[i] * S[j]) > coincidence) continue;
            double best = kInf;
            for (const auto& p : graph.points)
                best = std::min(best, std::max(std::abs(p.x - X[i]) / hx, std::abs(p.xs - S[j]) / hs));
            contact.observe(best, X[i], S[j], best > 1 + 1e-9);
        }
    contact.notes.push_back("distance in cells; coincidence threshold " + fmt(coincidence));

    rep.add(std::move(lower));
    rep.add(std::move(on_graph));
    rep.add(std::move(contact));
    for (const auto& p : rep.parts) {
        rep.max_violation = std::max(rep.max_violation, p.name == "contact set near graph" ? 0.0 : p.max_violation);
        rep.violations += p.violations;
        rep.nodes += p.nodes;
    }
    return rep;
}

PropertyReport is_representative(const GridFn2& phi, const OperatorSpec& op, double tol, double coincidence) {
    return is_representative(phi, sample_graph(op, phi.grid_a(), phi.grid_b()), tol, coincidence);
}

namespace {

void finish_interval(GraphSet& g, std::size_t i, double x, const std::vector<double>& accepted) {
    if (accepted.empty()) return;
    for (double s : accepted) g.points.push_back({x, s});
    g.node_interval[i] = std::pair{accepted.front(), accepted.back()};
}

}  // namespace

GraphSet recover_AF(const GridFn2& f, const Grid1& dual_grid, double tol) {
    const Grid1& X = f.grid_a();
    const Grid1& Y = f.grid_b();
    GraphSet g(X, dual_grid);
    g.node_interval.resize(X.size());
    for (std::size_t i = 0; i < X.size(); ++i) {
        const auto row = f.row(i);
        if (std::all_of(row.begin(), row.end(), [](ExtReal v) { return v.is_neg_inf(); })) continue;
        std::vector<double> accepted;
        for (std::size_t k = 0; k < dual_grid.size(); ++k) {
            const double s = dual_grid[k];
            bool ok = true;
            for (std::size_t j = 0; j < Y.size() && ok; ++j) {
                const ExtReal v = row[j];
                if (v.is_pos_inf()) continue;
                ok = v.finite() && v.value() - s * (Y[j] - X[i]) >= -tol;
            }
            if (ok) accepted.push_back(s);
        }
        finish_interval(g, i, X[i], accepted);
    }
    return g;
}

GraphSet recover_FA(const GridFn2& f, const Grid1& dual_grid, double tol) {
    const Grid1& Y = f.grid_a();
    const Grid1& X = f.grid_b();
    GraphSet g(X, dual_grid);
    g.node_interval.resize(X.size());
    for (std::size_t j = 0; j < X.size(); ++j) {
        std::vector<double> accepted;
        for (std::size_t k = 0; k < dual_grid.size(); ++k) {
            const double s = dual_grid[k];
            bool ok = true;
            for (std::size_t i = 0; i < Y.size() && ok; ++i) {
                const ExtReal v = f(i, j);
                if (v.is_neg_inf()) continue;
                ok = v.finite() && v.value() + s * (Y[i] - X[j]) <= tol;
            }
            if (ok) accepted.push_back(s);
        }
        finish_interval(g, j, X[j], accepted);
    }
    return g;
}

PropertyReport graph_match(const GraphSet& got, const GraphSet& want, std::string name) {
    PropertyReport rep;
    rep.name = std::move(name);
    rep.tol = 1.0;
    const double hx = want.xgrid.step(), hs = want.dual_grid.step();
    rep.h = hx;
    auto dist = [&](const GraphSet::Point& p, const GraphSet& other) {
        double best = kInf;
        for (const auto& q : other.points)
            best = std::min(best, std::max(std::abs(p.x - q.x) / hx, std::abs(p.xs - q.xs) / hs));
        return best;
    };
    std::size_t missing = 0, extra = 0;
    for (const auto& p : got.points) {
        const double d = dist(p, want);
        const bool bad = d > 1 + 1e-9;
        extra += bad;
        rep.observe(std::isfinite(d) ? d : 0.0, p.x, p.xs, bad);
    }
    const double es = 1e-9 * hs;
    for (const auto& p : want.points) {
        if (!want.dual_grid.contains(p.xs, es) || !got.xgrid.contains(p.x, 1e-9 * hx)) continue;
        const double d = dist(p, got);
        const bool bad = d > 1 + 1e-9;
        missing += bad;
        rep.observe(std::isfinite(d) ? d : 0.0, p.x, p.xs, bad);
    }
    if (extra) rep.notes.push_back(std::to_string(extra) + " recovered point(s) farther than one cell from the graph");
    if (missing) rep.notes.push_back(std::to_string(missing) + " graph point(s) not recovered within one cell");
    return rep;
}

PropertyReport domain_sandwich(const std::vector<std::size_t>& dom, const OperatorSpec& op, const Grid1& xgrid,
                               std::string name) {
    PropertyReport rep;
    rep.name = std::move(name);
    rep.h = xgrid.step();
    rep.tol = 1.0;
    const double ex = 1e-9 * xgrid.step();
    std::size_t first = xgrid.size(), last = 0;
    for (std::size_t i = 0; i < xgrid.size(); ++i)
        if (op.values_at(xgrid[i], ex)) {
            first = std::min(first, i);
            last = i;
        }
    std::vector<bool> in(xgrid.size(), false);
    for (std::size_t i : dom)
        if (i < in.size()) in[i] = true;
    if (first < xgrid.size())
        for (std::size_t i = first + 1; i < last; ++i)
            if (!in[i]) {
                rep.observe(0.0, xgrid[i], 0.0, true);
                rep.notes.push_back("missing x=" + fmt(xgrid[i]));
            }
    const auto [lo, hi] = op.domain_bounds();
    for (std::size_t i : dom) {
        const double x = xgrid[i];
        const double out = std::max(lo - x, x - hi) / xgrid.step();
        rep.observe(std::max(out, 0.0), x, 0.0, out > 1 + 1e-9);
    }
    return rep;
}

std::vector<std::size_t> proj_dom1(const GridFn2& phi, double cap) {
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < phi.rows(); ++i) {
        const auto row = phi.row(i);
        const ExtReal m = *std::min_element(row.begin(), row.end());
        if (m < ExtReal(cap)) out.push_back(i);
    }
    return out;
}

bool grows_under_refinement(ExtReal coarse, ExtReal fine) {
    if (fine.is_pos_inf()) return true;
    if (!coarse.finite() || !fine.finite()) return false;
    return coarse.value() > 0 && fine.value() >= 2.0 * coarse.value();
}

GridFn2 fenchel_young(const oracle::PLConvexFn& f, const Grid1& xgrid, const Grid1& dual_grid) {
    const oracle::PLConvexFn g = oracle::pl_conjugate_exact(oracle::restrict_to_box(f, xgrid.lo(), xgrid.hi()));
    return GridFn2::tabulate(xgrid, dual_grid, Role2::Representative,
                             [&](double x, double s) { return f(x) + g(s); });
}

GridFn2 fenchel_young(const OperatorSpec& op, const Grid1& xgrid, const Grid1& dual_grid) {
    op.validate();
    if (op.kind == OpKind::Affine) {
        const oracle::QuadraticFn q{op.lambda, op.c};
        return GridFn2::tabulate(xgrid, dual_grid, Role2::Representative, [&](double x, double s) {
            return ExtReal(q(x) + q.box_conjugate(s, xgrid.lo(), xgrid.hi()));
        });
    }
    if (op.is_staircase()) return fenchel_young(oracle::staircase_potential(op.as_staircase()), xgrid, dual_grid);
    throw std::invalid_argument("fenchel_young: no closed-form potential for " + op.name());
}

std::optional<ExtReal> fitzpatrick_exact(const OperatorSpec& op, double x, double xs) {
    if (op.kind == OpKind::Affine) {
        if (op.lambda > 0) return ExtReal(oracle::affine_fitz_exact(op.lambda, op.c, x, xs));
        return xs == op.c ? ExtReal(op.c * x) : ExtReal::pos_inf();
    }
    if (op.is_staircase()) return oracle::staircase_fitz_exact(op.as_staircase(), x, xs);
    return std::nullopt;
}

Grid1 auto_dual_grid(const OperatorSpec& op, const Grid1& xgrid) {
    double lo = kInf, hi = -kInf;
    const double ex = 1e-9 * xgrid.step();
    for (std::size_t i = 0; i < xgrid.size(); ++i) {
        const auto iv = op.values_at(xgrid[i], ex);
        if (!iv) continue;
        for (double v : {iv->first, iv->second})
            if (std::isfinite(v)) {
                lo = std::min(lo, v);
                hi = std::max(hi, v);
            }
    }
    if (lo > hi) throw std::invalid_argument("auto dual box: D(T) does not meet the x box of " + op.name());
    const double span = hi - lo;
    const double pad = span > 0 ? span : 1.0;
    const double h = xgrid.step();
    if ((span + 2 * pad) / h > 20000)
        throw std::invalid_argument("auto dual box for " + op.name() + " needs more than 20000 nodes; give dual_box");
    return snapped_grid(lo - pad, hi + pad, h);
}

}  // namespace fitzcalc
