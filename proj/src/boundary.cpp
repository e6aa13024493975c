#include "bandsim/boundary.hpp"

#include "bandsim/roots.hpp"

#include <cmath>
#include <utility>

namespace bandsim {

namespace {

// A1 = 1 - gamma + gamma*m1 > 0 and A2 = 1 - gamma + gamma*m2 < 0 whenever
// K > 0; derive_constants has already enforced that.
double a_factor(double gamma, double m) { return 1.0 - gamma + gamma * m; }

void check(bool ok, const char* msg) {
    if (!ok) throw InvariantViolation(msg);
}

} // namespace

double f_eval(double w, const DerivedConstants& c, double kappa) {
    const double m1 = c.m1, m2 = c.m2;
    return (m1 - 1.0) * m2 * (1.0 - std::pow(w, 1.0 - m2)) * (std::pow(w, m1) - kappa) -
           m1 * (m2 - 1.0) * (std::pow(w, m1) - w) * (1.0 - kappa * std::pow(w, -m2));
}

double solve_w(const ModelParams& p, const DerivedConstants& c) {
    const double m1 = c.m1, m2 = c.m2, kappa = c.kappa;
    auto fdf = [&](double w) {
        const double wm1 = std::pow(w, m1);
        const double w1m2 = std::pow(w, 1.0 - m2);
        const double wmm2 = std::pow(w, -m2);
        const double f = (m1 - 1.0) * m2 * (1.0 - w1m2) * (wm1 - kappa) -
                         m1 * (m2 - 1.0) * (wm1 - w) * (1.0 - kappa * wmm2);
        const double df =
            (m1 - 1.0) * m2 *
                (-(1.0 - m2) * wmm2 * (wm1 - kappa) + (1.0 - w1m2) * m1 * wm1 / w) -
            m1 * (m2 - 1.0) *
                ((m1 * wm1 / w - 1.0) * (1.0 - kappa * wmm2) +
                 (wm1 - w) * kappa * m2 * wmm2 / w);
        return std::pair<double, double>{f, df};
    };
    const double lo = 1e-14;
    const double hi = kappa * (1.0 - 1e-14);
    // xtol scales with the bracket: kappa can be ~1e-4 at extreme costs and an
    // absolute 1e-13 stop would leave w with ~1e-9 relative error, which the
    // coefficient cross-check downstream amplifies by several orders.
    double w = find_root(fdf, lo, hi, 1e-15 * hi, "solve_w");
    if (std::abs(f_eval(w, c, kappa)) >= 1e-11)
        throw InvariantViolation("solve_w: residual above 1e-11 at the root");
    return w;
}

FreeBoundaries compute_boundaries(const ModelParams& p, const DerivedConstants& c) {
    if (p.alpha == 0.0 && p.beta == 0.0)
        throw ConfigError("alpha = beta = 0: the band degenerates to a point, use the "
                          "frictionless policy instead");
    const double m1 = c.m1, m2 = c.m2, kappa = c.kappa;
    FreeBoundaries fb{};
    fb.w = solve_w(p, c);
    check(fb.w > 0.0 && fb.w < kappa, "boundary ratio w must lie in (0, kappa)");

    const double wm1 = std::pow(fb.w, m1);
    fb.b_alpha = (1.0 - p.delta * p.alpha) * ((m1 - 1.0) / m1) *
                 ((wm1 / kappa - 1.0) / (std::pow(fb.w, m1 - 1.0) - 1.0));
    fb.b_beta = (1.0 + p.delta * p.beta) * ((m1 - 1.0) / m1) *
                ((wm1 - kappa) / (wm1 - fb.w));
    check(fb.b_alpha > 0.0, "b_alpha must be positive");
    check(fb.b_alpha < fb.b_beta, "band must satisfy b_alpha < b_beta");
    check(std::abs(fb.b_alpha / fb.b_beta - fb.w) <= 1e-9 * fb.w,
          "b_alpha/b_beta must reproduce the boundary ratio w");

    // Coefficients from value matching and smooth pasting at the lower edge,
    // cross-checked against the derivation anchored at the upper edge.
    const double inv_delta = 1.0 / p.delta;
    fb.d1 = ((p.alpha - inv_delta) * m2 + (m2 - 1.0) * fb.b_alpha / p.r) / (m2 - m1);
    fb.d2 = ((p.alpha - inv_delta) * m1 + (m1 - 1.0) * fb.b_alpha / p.r) / (m1 - m2);
    const double d1_alt =
        (-(p.beta + inv_delta) * m2 + (m2 - 1.0) * fb.b_beta / p.r) / (m2 - m1) * wm1;
    const double d2_alt =
        (-(p.beta + inv_delta) * m1 + (m1 - 1.0) * fb.b_beta / p.r) / (m1 - m2) *
        std::pow(fb.w, m2);
    check(std::abs(fb.d1 - d1_alt) <= 1e-8 * std::abs(fb.d1),
          "d1 derivations from both edges must agree");
    check(std::abs(fb.d2 - d2_alt) <= 1e-8 * std::abs(fb.d2),
          "d2 derivations from both edges must agree");
    check(fb.d1 > 0.0 && fb.d2 < 0.0, "coefficients must satisfy d1 > 0 > d2");

    fb.b_m = fb.b_alpha * std::pow(-fb.d2 * m2 * (m2 - 1.0) / (fb.d1 * m1 * (m1 - 1.0)),
                                   1.0 / (m1 - m2));
    check(fb.b_m > fb.b_alpha && fb.b_m < fb.b_beta, "b_m must lie inside the band");

    const double a1 = a_factor(p.gamma, m1);
    const double a2 = a_factor(p.gamma, m2);
    check(a1 > 0.0 && a2 < 0.0, "A1 > 0 > A2 must hold when K > 0");
    auto xcal = [&](double z) {
        return 1.0 / p.r - (fb.d1 * m1 / (a1 * fb.b_alpha) * std::pow(z / fb.b_alpha, m1 - 1.0) +
                            fb.d2 * m2 / (a2 * fb.b_alpha) * std::pow(z / fb.b_alpha, m2 - 1.0));
    };
    fb.x_lo = xcal(fb.b_beta);
    fb.x_hi = xcal(fb.b_alpha);
    check(fb.x_lo > 0.0 && fb.x_lo < fb.x_hi,
          "wealth band must satisfy 0 < x_lo < x_hi");

    solve_b_hat(p, c, fb);
    return fb;
}

void solve_b_hat(const ModelParams& p, const DerivedConstants& c, FreeBoundaries& fb) {
    const double m1 = c.m1, m2 = c.m2;
    const double a1 = a_factor(p.gamma, m1);
    const double a2 = a_factor(p.gamma, m2);
    const double d1 = fb.d1, d2 = fb.d2, ba = fb.b_alpha;
    // G is increasing on the band; its root is where relative risk aversion
    // peaks.
    auto gdg = [&](double y) {
        const double t1 = d1 * m1 * (m1 - 1.0) * (m1 - 1.0) / (p.r * a1);
        const double t2 = -d1 * d2 * m1 * m2 * (m1 - m2) * (m1 - m2) / (a1 * a2 * ba);
        const double t3 = d2 * m2 * (m2 - 1.0) * (m2 - 1.0) / (p.r * a2);
        const double u = y / ba;
        const double g = t1 * std::pow(u, m1 - m2) + t2 * std::pow(u, m1 - 1.0) + t3;
        const double dg = (t1 * (m1 - m2) * std::pow(u, m1 - m2 - 1.0) +
                           t2 * (m1 - 1.0) * std::pow(u, m1 - 2.0)) / ba;
        return std::pair<double, double>{g, dg};
    };
    fb.b_hat = find_root(gdg, fb.b_alpha * (1.0 + 1e-12), fb.b_beta * (1.0 - 1e-12),
                         1e-13, "solve_b_hat");
    auto xcal = [&](double z) {
        return 1.0 / p.r - (d1 * m1 / (a1 * ba) * std::pow(z / ba, m1 - 1.0) +
                            d2 * m2 / (a2 * ba) * std::pow(z / ba, m2 - 1.0));
    };
    auto pi_c = [&](double z) {
        return (c.theta / p.sigma) *
               (d1 * m1 * (m1 - 1.0) / (a1 * ba) * std::pow(z / ba, m1 - 1.0) +
                d2 * m2 * (m2 - 1.0) / (a2 * ba) * std::pow(z / ba, m2 - 1.0));
    };
    fb.x_hat = xcal(fb.b_hat);
    fb.rcrra_max = ((p.mu - p.r) / (p.sigma * p.sigma)) * fb.x_hat / pi_c(fb.b_hat);
    check(fb.rcrra_max >= p.gamma - 1e-9, "peak risk aversion cannot fall below gamma");
}

SolvedModel solve_model(const ModelParams& p) {
    SolvedModel m;
    m.params = p;
    m.consts = derive_constants(p);
    m.fb = compute_boundaries(p, m.consts);
    return m;
}

} // namespace bandsim
