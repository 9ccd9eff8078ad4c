#include "fitzcalc/checks.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <functional>
#include <stdexcept>

#include "fitzcalc/convex.hpp"
#include "fitzcalc/io.hpp"

namespace fitzcalc {

namespace {

PropertyReport group(std::string name, double tol, double h) {
    PropertyReport r;
    r.name = std::move(name);
    r.tol = tol;
    r.h = h;
    return r;
}

void absorb(PropertyReport& parent, PropertyReport part) {
    if (part.applicable) parent.max_violation = std::max(parent.max_violation, part.max_violation);
    parent.violations += part.violations;
    parent.nodes += part.nodes;
    parent.add(std::move(part));
}

PropertyReport renamed(PropertyReport r, std::string name) {
    r.name = std::move(name);
    return r;
}

// Passes when `inner` fails; for negative controls.
PropertyReport expect_failure(PropertyReport inner, std::string name) {
    PropertyReport r;
    r.name = std::move(name);
    r.tol = inner.tol;
    r.h = inner.h;
    r.nodes = 1;
    if (inner.passed) {
        r.passed = false;
        r.violations = 1;
        r.notes.push_back("control unexpectedly passed");
    }
    inner.applicable = false;
    r.parts.push_back(std::move(inner));
    return r;
}

GridFn2 shifted(const GridFn2& f, double c) {
    GridFn2 out = f;
    for (std::size_t i = 0; i < f.rows(); ++i)
        for (std::size_t j = 0; j < f.cols(); ++j) out(i, j) = f(i, j) + ExtReal(c);
    return out;
}

GridFn2 midpoint(const GridFn2& f, const GridFn2& g) {
    GridFn2 out = f;
    for (std::size_t i = 0; i < f.rows(); ++i)
        for (std::size_t j = 0; j < f.cols(); ++j)
            if (f(i, j).finite() && g(i, j).finite()) out(i, j) = 0.5 * (f(i, j).value() + g(i, j).value());
    return out;
}

// x grid grown by whole steps to [lo - a*h, hi + b*h].
Grid1 grown(const Grid1& x, long long a, long long b) {
    const double h = x.step();
    return make_grid(x.lo() - static_cast<double>(a) * h, x.hi() + static_cast<double>(b) * h,
                     static_cast<long long>(x.size()) + a + b);
}

PropertyReport set_equal(const std::vector<std::size_t>& got, const std::vector<std::size_t>& want, const Grid1& g,
                         std::string name) {
    PropertyReport r;
    r.name = std::move(name);
    r.h = g.step();
    std::vector<bool> a(g.size()), b(g.size());
    for (auto i : got) a[i] = true;
    for (auto i : want) b[i] = true;
    for (std::size_t i = 0; i < g.size(); ++i) r.observe(0.0, g[i], 0.0, a[i] != b[i]);
    return r;
}

std::string intervals(const std::vector<std::size_t>& idx, const Grid1& g) {
    if (idx.empty()) return "{}";
    std::string out;
    std::size_t start = idx[0], prev = idx[0];
    auto flush = [&] {
        if (!out.empty()) out += " u ";
        out += "[" + format_double(g[start]) + ", " + format_double(g[prev]) + "]";
    };
    for (std::size_t k = 1; k < idx.size(); ++k) {
        if (idx[k] != prev + 1) {
            flush();
            start = idx[k];
        }
        prev = idx[k];
    }
    flush();
    return out;
}

}  // namespace

const std::vector<CheckInfo>& check_registry() {
    static const std::vector<CheckInfo> reg = {
        {"fitzpatrick_oracle", "Fitzpatrick function against its closed forms"},
        {"representative", "membership in H(T)"},
        {"sandwich", "F_T is the smallest and sigma_T the greatest representative"},
        {"duality", "F_T and sigma_T are each other's conjugate-transpose"},
        {"domain_chain", "co D(T) within P1 dom phi within its closure"},
        {"ft_identity", "F_T equals the Fitzpatrick transform of G_T"},
        {"roundtrip", "F built from phi returns phi, (phi*)^t and T"},
        {"operator_recovery", "A^F and FA recover T"},
        {"saddle_structure", "F lower closed, F~ upper closed, F <= F~"},
        {"closures", "partial closures and the domains dom1, dom2"},
        {"equivalence", "equivalent saddles share closures and transforms"},
        {"monotonicity", "F monotone iff phi <= (phi*)^t"},
        {"ghat_chain", "F and F~ as lower and upper closures of G^_T"},
        {"transform_membership", "transforms of saddles equivalent to F represent T"},
        {"upper_closure_idempotent", "cl1 cl2 H is upper closed"},
    };
    return reg;
}

const CheckInfo* find_check(std::string_view name) {
    for (const auto& c : check_registry())
        if (c.name == name) return &c;
    return nullptr;
}

RunContext::RunContext(const Scenario& sc)
    : sc_(sc), x_(sc.x_box), s_(sc.dual_box ? *sc.dual_box : auto_dual_grid(sc.op, sc.x_box)) {}

template <class Fn>
auto RunContext::timed(const std::string& stage, Fn&& fn) -> decltype(fn()) {
    const auto t0 = std::chrono::steady_clock::now();
    auto out = fn();
    timings.emplace_back(stage, std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count());
    return out;
}

const GraphSet& RunContext::graph() {
    if (!graph_) {
        graph_ = timed("graph", [&] { return sample_graph(sc_.op, x_, s_); });
        for (const auto& w : graph_->warnings) warnings.push_back("graph: " + w);
    }
    return *graph_;
}

const GridFn2& RunContext::fitz() {
    if (!fitz_) {
        const GraphSet& g = graph();
        fitz_ = timed("fitzpatrick", [&] { return fitzpatrick(g, x_, s_); });
    }
    return *fitz_;
}

const GridFn2& RunContext::sigma() {
    if (!sigma_) {
        const GridFn2& f = fitz();
        sigma_ = timed("sigma", [&] { return conjugate_transpose(f); });
    }
    return *sigma_;
}

const GridFn2& RunContext::phi() {
    if (!phi_) {
        if (sc_.phi.kind == PhiChoice::Kind::Fitzpatrick)
            phi_ = fitz();
        else if (sc_.phi.kind == PhiChoice::Kind::Sigma)
            phi_ = sigma();
        else
            phi_ = timed("phi", [&] { return compute_phi(sc_.phi, sc_.op, x_, s_); });
    }
    return *phi_;
}

const GridFn2& RunContext::phi_ct() {
    if (!phi_ct_) {
        const GridFn2& p = phi();
        phi_ct_ = timed("phi_ct", [&] { return conjugate_transpose(p); });
    }
    return *phi_ct_;
}

const SaddlePair& RunContext::pair() {
    if (!pair_) {
        const GridFn2& p = phi();
        pair_ = timed("bifunctions", [&] { return saddle_pair(p); });
    }
    return *pair_;
}

const SaddlePair& RunContext::fitz_pair() {
    if (!fitz_pair_) {
        if (sc_.phi.kind == PhiChoice::Kind::Fitzpatrick) {
            fitz_pair_ = pair();
        } else {
            const GridFn2& f = fitz();
            fitz_pair_ = timed("bifunctions_fitz", [&] { return saddle_pair(f); });
        }
    }
    return *fitz_pair_;
}

const GridFn2& RunContext::ghat() {
    if (!ghat_) ghat_ = timed("ghat", [&] { return g_hat(sc_.op, x_, x_); });
    return *ghat_;
}

std::vector<std::pair<std::string, const GridFn2*>> RunContext::computed() const {
    std::vector<std::pair<std::string, const GridFn2*>> out;
    if (fitz_) out.emplace_back("fitzpatrick", &*fitz_);
    if (sigma_) out.emplace_back("sigma", &*sigma_);
    if (phi_) out.emplace_back("phi", &*phi_);
    if (phi_ct_) out.emplace_back("phi_conjugate_transpose", &*phi_ct_);
    if (pair_) {
        out.emplace_back("F", &pair_->lower);
        out.emplace_back("F_tilde", &pair_->upper);
    }
    if (ghat_) out.emplace_back("G_hat", &*ghat_);
    return out;
}

namespace {

PropertyReport check_fitzpatrick_oracle(RunContext& ctx) {
    const OperatorSpec& op = ctx.scenario().op;
    PropertyReport rep = group("fitzpatrick_oracle", ctx.tol(), ctx.h());
    if (!fitzpatrick_exact(op, 0.0, 0.0)) {
        rep.applicable = false;
        rep.notes.push_back("no closed form for " + op.name());
        return rep;
    }
    const Grid1& X = ctx.x();
    const Grid1& S = ctx.dual();
    const double h = X.step();
    // graph over three box widths, grown further to cover every staircase vertex
    auto steps = static_cast<long long>(X.size()) - 1;
    long long a = steps, b = steps;
    if (op.is_staircase())
        for (const auto& v : op.as_staircase().vertices) {
            a = std::max(a, static_cast<long long>(std::ceil((X.lo() - v.x) / h)) + 1);
            b = std::max(b, static_cast<long long>(std::ceil((v.x - X.hi()) / h)) + 1);
        }
    const Grid1 wide = grown(X, a, b);
    const GraphSet gw = sample_graph(op, wide, S);
    const GridFn2 fw = fitzpatrick(gw, X, S);

    PropertyReport finite = group("finite region", ctx.tol(), h);
    std::vector<std::pair<std::size_t, std::size_t>> inf_nodes;
    for (std::size_t i = 0; i < X.size(); ++i)
        for (std::size_t j = 0; j < S.size(); ++j) {
            const ExtReal e = *fitzpatrick_exact(op, X[i], S[j]);
            if (!e.finite()) {
                inf_nodes.emplace_back(i, j);
                continue;
            }
            if (!fw(i, j).finite()) {
                finite.observe(0.0, X[i], S[j], true);
                continue;
            }
            const double d = std::abs(fw(i, j).value() - e.value());
            finite.observe(d, X[i], S[j], d > ctx.tol());
        }
    if (gw.clipped) finite.notes.push_back("graph clipped at the dual box: " + std::to_string(gw.clipped));
    finite.notes.push_back("graph sampled on [" + format_double(wide.lo()) + ", " + format_double(wide.hi()) + "]");
    absorb(rep, std::move(finite));

    PropertyReport growth = group("infinite region grows", 2.0, h);
    if (inf_nodes.empty()) {
        growth.applicable = false;
        growth.notes.push_back("exact value finite everywhere on the grid");
    } else {
        // value at n nodes against the box doubled at the same step (2n-1 nodes)
        const double c = 0.5 * (X.lo() + X.hi());
        const Grid1 doubled = make_grid(c - (X.hi() - X.lo()), c + (X.hi() - X.lo()), 2 * static_cast<long long>(X.size()) - 1);
        const GridFn2 coarse = fitzpatrick(sample_graph(op, X, S), X, S);
        const GridFn2 fine = fitzpatrick(sample_graph(op, doubled, S), X, S);
        for (auto [i, j] : inf_nodes) {
            const bool ok = grows_under_refinement(coarse(i, j), fine(i, j));
            double ratio = 0.0;
            if (coarse(i, j).finite() && fine(i, j).finite() && coarse(i, j).value() != 0)
                ratio = fine(i, j).value() / coarse(i, j).value();
            growth.observe(ok ? 0.0 : std::max(0.0, 2.0 - ratio), X[i], S[j], !ok);
        }
        growth.notes.push_back(std::to_string(inf_nodes.size() - growth.violations) + " of " +
                               std::to_string(inf_nodes.size()) + " +inf nodes at least double");
    }
    rep.add(std::move(growth));
    return rep;
}

PropertyReport check_representative(RunContext& ctx) {
    return renamed(is_representative(ctx.phi(), ctx.graph(), ctx.tol()), "representative");
}

PropertyReport check_sandwich(RunContext& ctx) {
    PropertyReport rep = group("sandwich", ctx.tol(), ctx.h());
    absorb(rep, renamed(is_representative(ctx.phi(), ctx.graph(), ctx.tol()), "phi in H(T)"));
    absorb(rep, renamed(is_representative(ctx.phi_ct(), ctx.graph(), ctx.tol()), "(phi*)^t in H(T)"));
    for (const auto* p : {&ctx.phi(), &ctx.phi_ct()}) {
        const std::string which = p == &ctx.phi() ? "phi" : "(phi*)^t";
        absorb(rep, leq(ctx.fitz(), *p, ctx.tol(), "F_T <= " + which));
        absorb(rep, leq(*p, ctx.sigma(), ctx.tol(), which + " <= sigma_T"));
    }
    return rep;
}

PropertyReport check_duality(RunContext& ctx) {
    PropertyReport rep = group("duality", ctx.tol(), ctx.h());
    absorb(rep, approx_eq(conjugate_transpose(ctx.fitz()), ctx.sigma(), ctx.tol(), std::nullopt, "(F_T*)^t = sigma_T"));
    absorb(rep, approx_eq(conjugate_transpose(ctx.sigma()), ctx.fitz(), ctx.tol(), std::nullopt, "(sigma_T*)^t = F_T"));
    absorb(rep, approx_eq(sigma_via_envelope(ctx.graph(), ctx.x(), ctx.dual()), ctx.sigma(), ctx.tol(), std::nullopt,
                          "sigma_T by envelope = sigma_T by conjugation"));
    return rep;
}

PropertyReport check_domain_chain(RunContext& ctx) {
    const Scenario& sc = ctx.scenario();
    const Grid1& X = ctx.x();
    PropertyReport rep = group("domain_chain", 1.0, ctx.h());
    const Grid1 fine_x = make_grid(X.lo(), X.hi(), 2 * static_cast<long long>(X.size()) - 1);
    const GridFn2 fine = compute_phi(sc.phi, sc.op, fine_x, ctx.dual());
    const GridFn2& phi = ctx.phi();
    const double cap = 1e12;
    std::vector<std::size_t> dom, diverging;
    for (std::size_t i : proj_dom1(phi, cap)) {
        const auto r = phi.row(i), rf = fine.row(2 * i);
        if (grows_under_refinement(*std::min_element(r.begin(), r.end()), *std::min_element(rf.begin(), rf.end())))
            diverging.push_back(i);
        else
            dom.push_back(i);
    }
    rep.notes.push_back("P1 dom phi = " + intervals(dom, X));
    if (!diverging.empty()) rep.notes.push_back("diverging under refinement: " + intervals(diverging, X));
    absorb(rep, domain_sandwich(dom, sc.op, X, "co D(T) <= P1 dom phi <= cl co D(T)"));
    return rep;
}

PropertyReport check_ft_identity(RunContext& ctx) {
    return approx_eq(fitz_transform(g_t(ctx.scenario().op, ctx.x(), ctx.x()), ctx.dual()), ctx.fitz(), ctx.tol(),
                     std::nullopt, "ft_identity");
}

double recovery_tol(const RunContext& ctx) { return 0.25 * ctx.h() * ctx.h(); }

PropertyReport check_roundtrip(RunContext& ctx) {
    const SaddlePair& p = ctx.pair();
    const double tol = ctx.tol();
    PropertyReport rep = group("roundtrip", tol, ctx.h());
    absorb(rep, renamed(saddle_midpoint_check(p.lower, tol), "F is a saddle function"));
    absorb(rep, approx_eq(saddle_cl2(p.lower), p.lower, tol, std::nullopt, "cl2 F = F"));
    absorb(rep, domain_sandwich(effective_domain(p.lower), ctx.scenario().op, ctx.x(), "co D(T) <= D(F) <= cl co D(T)"));
    absorb(rep, graph_match(recover_AF(p.lower, ctx.dual(), recovery_tol(ctx)), ctx.graph(), "A^F = T"));
    absorb(rep, graph_match(recover_FA(p.lower, ctx.dual(), recovery_tol(ctx)), ctx.graph(), "FA = T"));
    absorb(rep, approx_eq(fitz_transform(p.lower, ctx.dual()), ctx.phi(), tol, std::nullopt, "phi_F = phi"));
    absorb(rep, approx_eq(upper_fitz_transform(p.lower, ctx.dual()), ctx.phi_ct(), tol, std::nullopt, "phi^F = (phi*)^t"));
    return rep;
}

PropertyReport check_operator_recovery(RunContext& ctx) {
    const double rt = recovery_tol(ctx);
    PropertyReport rep = group("operator_recovery", rt, ctx.h());
    const GridFn2 g = g_t(ctx.scenario().op, ctx.x(), ctx.x());
    absorb(rep, graph_match(recover_AF(g, ctx.dual(), rt), ctx.graph(), "A^{G_T} = T"));
    absorb(rep, graph_match(recover_FA(g, ctx.dual(), rt), ctx.graph(), "FA of G_T = T"));

    const GridFn2& f = ctx.pair().lower;
    const GraphSet af = recover_AF(f, ctx.dual(), rt), fa = recover_FA(f, ctx.dual(), rt);
    PropertyReport incl = group("A^F within FA", 0.0, ctx.h());
    for (const auto& q : af.points) {
        const bool found = std::any_of(fa.points.begin(), fa.points.end(),
                                       [&](const auto& r) { return r.x == q.x && r.xs == q.xs; });
        incl.observe(0.0, q.x, q.xs, !found);
    }
    absorb(rep, std::move(incl));

    PropertyReport diag = group("F(x,x) >= 0 on D(A^F)", ctx.tol(), ctx.h());
    for (std::size_t i = 0; i < f.rows(); ++i) {
        if (!af.node_interval[i]) continue;
        const ExtReal v = f(i, i);
        const double d = v.finite() ? std::max(0.0, -v.value()) : 0.0;
        diag.observe(d, ctx.x()[i], ctx.x()[i], v.is_neg_inf() || d > ctx.tol());
    }
    absorb(rep, std::move(diag));
    return rep;
}

PropertyReport check_saddle_structure(RunContext& ctx) {
    const SaddlePair& p = ctx.pair();
    const double tol = ctx.tol();
    PropertyReport rep = group("saddle_structure", tol, ctx.h());
    absorb(rep, renamed(saddle_midpoint_check(p.upper, tol), "F~ is a saddle function"));
    absorb(rep, approx_eq(saddle_cl1(p.lower), p.upper, tol, std::nullopt, "cl1 F = F~"));
    absorb(rep, approx_eq(saddle_cl2(p.upper), p.lower, tol, std::nullopt, "cl2 F~ = F"));
    absorb(rep, leq(p.lower, p.upper, tol, "F <= F~"));
    absorb(rep, renamed(equivalent_saddles(p.lower, p.upper, ctx.dual(), tol), "F ~ F~"));
    return rep;
}

PropertyReport check_closures(RunContext& ctx) {
    const SaddlePair& p = ctx.pair();
    const double tol = ctx.tol();
    PropertyReport rep = group("closures", tol, ctx.h());
    absorb(rep, approx_eq(saddle_cl1(p.upper), p.upper, tol, std::nullopt, "cl1 F~ = F~"));
    absorb(rep, approx_eq(saddle_cl2(p.lower), p.lower, tol, std::nullopt, "cl2 F = F"));
    const SaddleDomains dl = saddle_domains(p.lower), du = saddle_domains(p.upper);
    absorb(rep, set_equal(dl.dom1, effective_domain(p.lower), ctx.x(), "dom1 F = D(F)"));
    const GridFn2 fhat = negate(transpose2(p.upper));
    absorb(rep, set_equal(du.dom2, effective_domain(fhat), ctx.x(), "dom2 F~ = D(F^)"));
    return rep;
}

PropertyReport check_equivalence(RunContext& ctx) {
    const SaddlePair& p = ctx.pair();
    const double tol = ctx.tol();
    PropertyReport rep = group("equivalence", tol, ctx.h());
    absorb(rep, renamed(equivalent_saddles(p.lower, p.upper, ctx.dual(), tol), "F ~ F~"));
    absorb(rep, expect_failure(equivalent_saddles(p.lower, shifted(p.lower, 1.0), ctx.dual(), tol), "F + 1 not ~ F"));
    absorb(rep, renamed(sandwich_check(p.lower, p, tol), "H = F between F and F~"));
    absorb(rep, renamed(sandwich_check(midpoint(p.lower, p.upper), p, tol), "H = (F + F~)/2 between F and F~"));
    absorb(rep, expect_failure(sandwich_check(shifted(p.upper, 1.0), p, tol), "H = F~ + 1 rejected"));
    return rep;
}

PropertyReport check_monotonicity(RunContext& ctx) {
    const double tol = ctx.tol();
    PropertyReport rep = group("monotonicity", tol, ctx.h());
    absorb(rep, monotonicity_agreement(ctx.phi(), tol));
    absorb(rep, renamed(is_monotone_bifunction(ctx.fitz_pair().lower, tol), "F from F_T is monotone"));
    return rep;
}

PropertyReport check_ghat_chain(RunContext& ctx) {
    const double tol = (ctx.scenario().tol_constant + 2.0) * ctx.h();
    PropertyReport rep = group("ghat_chain", tol, ctx.h());
    const GridFn2& g = ctx.ghat();
    const SaddlePair& p = ctx.fitz_pair();
    absorb(rep, renamed(is_monotone_bifunction(g, tol), "G^_T monotone"));
    absorb(rep, approx_eq(saddle_cl2(g), g, tol, std::nullopt, "cl2 G^_T = G^_T"));
    const GridFn2 c1 = saddle_cl1(g);
    absorb(rep, approx_eq(saddle_cl2(c1), p.lower, tol, std::nullopt, "cl2 cl1 G^_T = F"));
    absorb(rep, approx_eq(c1, p.upper, tol, std::nullopt, "cl1 G^_T = F~"));
    return rep;
}

PropertyReport check_transform_membership(RunContext& ctx) {
    const SaddlePair& p = ctx.pair();
    const double tol = ctx.tol();
    PropertyReport rep = group("transform_membership", tol, ctx.h());
    const GridFn2 mid = midpoint(p.lower, p.upper);
    const std::pair<const char*, const GridFn2*> hs[] = {{"F", &p.lower}, {"F~", &p.upper}, {"(F + F~)/2", &mid}};
    for (const auto& [nm, h] : hs) {
        absorb(rep, renamed(is_representative(fitz_transform(*h, ctx.dual()), ctx.graph(), tol),
                            std::string("phi_H in H(T), H = ") + nm));
        absorb(rep, renamed(is_representative(upper_fitz_transform(*h, ctx.dual()), ctx.graph(), tol),
                            std::string("phi^H in H(T), H = ") + nm));
    }
    return rep;
}

PropertyReport check_upper_closure_idempotent(RunContext& ctx) {
    const SaddlePair& p = ctx.pair();
    const double tol = ctx.tol();
    PropertyReport rep = group("upper_closure_idempotent", tol, ctx.h());
    const std::pair<const char*, const GridFn2*> hs[] = {{"F", &p.lower}, {"F~", &p.upper}, {"G^_T", &ctx.ghat()}};
    for (const auto& [nm, h] : hs) {
        const GridFn2 u = saddle_cl1(saddle_cl2(*h));
        absorb(rep, approx_eq(saddle_cl1(saddle_cl2(u)), u, tol, std::nullopt, std::string("H = ") + nm));
    }
    return rep;
}

}  // namespace

PropertyReport run_check(const std::string& name, RunContext& ctx) {
    static const std::map<std::string, std::function<PropertyReport(RunContext&)>, std::less<>> table = {
        {"fitzpatrick_oracle", check_fitzpatrick_oracle},
        {"representative", check_representative},
        {"sandwich", check_sandwich},
        {"duality", check_duality},
        {"domain_chain", check_domain_chain},
        {"ft_identity", check_ft_identity},
        {"roundtrip", check_roundtrip},
        {"operator_recovery", check_operator_recovery},
        {"saddle_structure", check_saddle_structure},
        {"closures", check_closures},
        {"equivalence", check_equivalence},
        {"monotonicity", check_monotonicity},
        {"ghat_chain", check_ghat_chain},
        {"transform_membership", check_transform_membership},
        {"upper_closure_idempotent", check_upper_closure_idempotent},
    };
    const auto it = table.find(name);
    if (it == table.end()) throw std::invalid_argument("unknown check '" + name + "'");
    PropertyReport r = it->second(ctx);
    r.name = name;
    return r;
}

}  // namespace fitzcalc
