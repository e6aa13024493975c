#include "bandsim/policy.hpp"

#include "bandsim/roots.hpp"

#include <algorithm>
#include <cmath>
#include <utility>

namespace bandsim {

namespace {

struct BandTerms {
    double a1, a2;        // A_i = 1 - gamma + gamma*m_i
    double p1, p2;        // (z/b_alpha)^(m1-1), (z/b_alpha)^(m2-1)
};

BandTerms terms_at(double z, const SolvedModel& m) {
    BandTerms t;
    t.a1 = 1.0 - m.params.gamma + m.params.gamma * m.consts.m1;
    t.a2 = 1.0 - m.params.gamma + m.params.gamma * m.consts.m2;
    const double u = z / m.fb.b_alpha;
    t.p1 = std::pow(u, m.consts.m1 - 1.0);
    t.p2 = std::pow(u, m.consts.m2 - 1.0);
    return t;
}

double clamp_to_band(double z, const FreeBoundaries& fb) {
    return std::clamp(z, fb.b_alpha, fb.b_beta);
}

void require_in_band(double z, const FreeBoundaries& fb, const char* who) {
    const double slack = 1e-9;
    if (z < fb.b_alpha * (1.0 - slack) || z > fb.b_beta * (1.0 + slack))
        throw DomainError(std::string(who) + ": z outside [b_alpha, b_beta]");
}

double xcal_banded(double z, const SolvedModel& m) {
    const auto t = terms_at(z, m);
    const double ba = m.fb.b_alpha;
    return 1.0 / m.params.r -
           (m.fb.d1 * m.consts.m1 / (t.a1 * ba) * t.p1 +
            m.fb.d2 * m.consts.m2 / (t.a2 * ba) * t.p2);
}

double pi_c_banded(double z, const SolvedModel& m) {
    const auto t = terms_at(z, m);
    const double ba = m.fb.b_alpha;
    const double m1 = m.consts.m1, m2 = m.consts.m2;
    return (m.consts.theta / m.params.sigma) *
           (m.fb.d1 * m1 * (m1 - 1.0) / (t.a1 * ba) * t.p1 +
            m.fb.d2 * m2 * (m2 - 1.0) / (t.a2 * ba) * t.p2);
}

} // namespace

Region classify_region(double z, const FreeBoundaries& fb) {
    if (z <= fb.b_alpha) return Region::IR;
    if (z >= fb.b_beta) return Region::DR;
    return Region::NR;
}

double h_eval(double z, const SolvedModel& m) {
    if (z <= m.fb.b_alpha) return m.params.alpha;
    if (z >= m.fb.b_beta) return -m.params.beta;
    const double u = z / m.fb.b_alpha;
    return m.fb.d1 * std::pow(u, m.consts.m1) + m.fb.d2 * std::pow(u, m.consts.m2) +
           1.0 / m.params.delta - z / m.params.r;
}

double h_prime(double z, const SolvedModel& m) {
    if (z < m.fb.b_alpha || z > m.fb.b_beta) return 0.0;
    const auto t = terms_at(z, m);
    return (m.fb.d1 * m.consts.m1 * t.p1 + m.fb.d2 * m.consts.m2 * t.p2) /
               m.fb.b_alpha -
           1.0 / m.params.r;
}

double h_second(double z, const SolvedModel& m) {
    if (z < m.fb.b_alpha || z > m.fb.b_beta) return 0.0;
    const double u = z / m.fb.b_alpha;
    const double m1 = m.consts.m1, m2 = m.consts.m2;
    return (m.fb.d1 * m1 * (m1 - 1.0) * std::pow(u, m1 - 2.0) +
            m.fb.d2 * m2 * (m2 - 1.0) * std::pow(u, m2 - 2.0)) /
           (m.fb.b_alpha * m.fb.b_alpha);
}

double wealth_over_c(double z, const SolvedModel& m) {
    return xcal_banded(clamp_to_band(z, m.fb), m);
}

double pi_over_c(double z, const SolvedModel& m) {
    return pi_c_banded(clamp_to_band(z, m.fb), m);
}

double share_of_wealth(double z, const SolvedModel& m) {
    return pi_over_c(z, m) / wealth_over_c(z, m);
}

double rcrra_of_z(double z, const SolvedModel& m) {
    const double zc = clamp_to_band(z, m.fb);
    return ((m.params.mu - m.params.r) / (m.params.sigma * m.params.sigma)) *
           xcal_banded(zc, m) / pi_c_banded(zc, m);
}

double band_coordinate(double z, const SolvedModel& m) {
    return (z - m.fb.b_alpha) / (m.fb.b_beta - m.fb.b_alpha);
}

namespace {

// Interior expression with z passed explicitly: the reflected point sits on the
// boundary by construction and must not re-enter the region dispatch, or a one
// ulp rounding error in y*c^gamma recurses forever.
double j_banded(double y, double c, double z, const SolvedModel& m) {
    const auto t = terms_at(z, m);
    const double ba = m.fb.b_alpha;
    return y * c *
               (m.fb.d1 / (t.a1 * ba) * t.p1 + m.fb.d2 / (t.a2 * ba) * t.p2) +
           crra_utility(c, m.params.gamma) / m.params.delta - y * c / m.params.r;
}

} // namespace

double j_eval(double y, double c, const SolvedModel& m) {
    if (!(y > 0.0) || !(c > 0.0)) throw DomainError("j_eval: inputs must be positive");
    const double g = m.params.gamma;
    const double z = y * std::pow(c, g);
    if (z < m.fb.b_alpha) {
        const double cstar = inverse_marginal(y / m.fb.b_alpha, g);
        return j_banded(y, cstar, m.fb.b_alpha, m) +
               m.params.alpha * (crra_utility(c, g) - crra_utility(cstar, g));
    }
    if (z > m.fb.b_beta) {
        const double cstar = inverse_marginal(y / m.fb.b_beta, g);
        return j_banded(y, cstar, m.fb.b_beta, m) -
               m.params.beta * (crra_utility(c, g) - crra_utility(cstar, g));
    }
    return j_banded(y, c, z, m);
}

double j_y(double y, double c, const SolvedModel& m) {
    if (!(y > 0.0) || !(c > 0.0)) throw DomainError("j_y: inputs must be positive");
    const double g = m.params.gamma;
    const double z = y * std::pow(c, g);
    if (z < m.fb.b_alpha)
        return -inverse_marginal(y / m.fb.b_alpha, g) * m.fb.x_hi;
    if (z > m.fb.b_beta)
        return -inverse_marginal(y / m.fb.b_beta, g) * m.fb.x_lo;
    return -c * xcal_banded(z, m);
}

double wealth_map(double y, double c, const SolvedModel& m) {
    return -j_y(y, c, m);
}

double portfolio_pi(double y, double c, const SolvedModel& m) {
    if (!(y > 0.0) || !(c > 0.0))
        throw DomainError("portfolio_pi: inputs must be positive");
    const double z = y * std::pow(c, m.params.gamma);
    require_in_band(z, m.fb, "portfolio_pi");
    return c * pi_c_banded(clamp_to_band(z, m.fb), m);
}

double rcrra(double y, double c, const SolvedModel& m) {
    if (!(y > 0.0) || !(c > 0.0)) throw DomainError("rcrra: inputs must be positive");
    const double z = y * std::pow(c, m.params.gamma);
    require_in_band(z, m.fb, "rcrra");
    return rcrra_of_z(z, m);
}

InitialState solve_initial_multiplier(double x0, double c0, const SolvedModel& m) {
    if (!(x0 > 0.0) || !(c0 > 0.0))
        throw DomainError("solve_initial_multiplier: inputs must be positive");
    const double g = m.params.gamma;
    // -J_y is strictly decreasing in y, from +inf at 0+ to 0 at +inf, so the
    // root exists and doubling/halving from the Merton guess must bracket it.
    auto gap = [&](double y) { return wealth_map(y, c0, m) - x0; };
    auto dgap = [&](double y) {
        const double z = y * std::pow(c0, g);
        if (z < m.fb.b_alpha) {
            const double cstar = inverse_marginal(y / m.fb.b_alpha, g);
            return -cstar / (g * y) * m.fb.x_hi;
        }
        if (z > m.fb.b_beta) {
            const double cstar = inverse_marginal(y / m.fb.b_beta, g);
            return -cstar / (g * y) * m.fb.x_lo;
        }
        const double u = z / m.fb.b_alpha;
        const double m1 = m.consts.m1, m2 = m.consts.m2;
        const auto t = terms_at(z, m);
        const double ba = m.fb.b_alpha;
        const double xprime =
            -(m.fb.d1 * m1 * (m1 - 1.0) / (t.a1 * ba * ba) * std::pow(u, m1 - 2.0) +
              m.fb.d2 * m2 * (m2 - 1.0) / (t.a2 * ba * ba) * std::pow(u, m2 - 2.0));
        return c0 * xprime * std::pow(c0, g);
    };
    double y0 = marginal_utility(m.consts.big_k * x0, g);
    double lo = y0, hi = y0;
    double glo = gap(lo);
    int guard = 0;
    if (glo > 0.0) {
        // wealth too high at y0: increase y
        do {
            lo = hi;
            hi *= 2.0;
            if (++guard > 200)
                throw BracketFailure("solve_initial_multiplier: bracket expansion failed");
        } while (gap(hi) > 0.0);
    } else {
        do {
            hi = lo;
            lo *= 0.5;
            if (++guard > 200)
                throw BracketFailure("solve_initial_multiplier: bracket expansion failed");
        } while (gap(lo) < 0.0);
    }
    auto fdf = [&](double y) { return std::pair<double, double>{gap(y), dgap(y)}; };
    const double y_star = find_root(fdf, lo, hi, 1e-12, "solve_initial_multiplier");
    if (std::abs(wealth_map(y_star, c0, m) - x0) >= 1e-10 * x0)
        throw InvariantViolation("solve_initial_multiplier: residual above 1e-10 relative");
    InitialState st;
    st.y_star = y_star;
    const double z = y_star * std::pow(c0, g);
    if (z < m.fb.b_alpha)
        st.c_adjusted = inverse_marginal(y_star / m.fb.b_alpha, g);
    else if (z > m.fb.b_beta)
        st.c_adjusted = inverse_marginal(y_star / m.fb.b_beta, g);
    else
        st.c_adjusted = c0;
    return st;
}

double primal_value(double x0, double c0, const SolvedModel& m) {
    const InitialState st = solve_initial_multiplier(x0, c0, m);
    return j_eval(st.y_star, c0, m) + st.y_star * x0;
}

} // namespace bandsim
