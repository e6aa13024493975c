#include "bandsim/market.hpp"

#include "bandsim/policy.hpp"
#include "bandsim/rng.hpp"

#include <cmath>

namespace bandsim {

std::vector<double> MarketPath::prices() const {
    std::vector<double> s(static_cast<std::size_t>(steps) + 1);
    s[0] = 1.0;
    for (int i = 0; i < steps; ++i) s[i + 1] = s[i] * gross_returns[i];
    return s;
}

double MarketPath::total_log_return() const {
    double acc = 0.0;
    for (double g : gross_returns) acc += std::log(g);
    return acc;
}

MarketPath simulate_market(const ModelParams& p, double horizon, double dt,
                           std::uint64_t seed) {
    if (!(dt > 0.0)) throw ConfigError("dt must be positive");
    if (!(horizon > 0.0)) throw ConfigError("horizon must be positive");
    const double ratio = horizon / dt;
    const int steps = static_cast<int>(std::lround(ratio));
    if (steps < 1 || std::abs(ratio - steps) > 1e-9 * std::max(1.0, ratio))
        throw ConfigError("horizon must be a multiple of dt");

    MarketPath mp;
    mp.dt = dt;
    mp.steps = steps;
    mp.seed = seed;
    mp.shocks.resize(steps);
    mp.brownian.assign(static_cast<std::size_t>(steps) + 1, 0.0);
    mp.gross_returns.resize(steps);
    Rng rng(seed);
    const double sq = std::sqrt(dt);
    const double drift = (p.mu - 0.5 * p.sigma * p.sigma) * dt;
    for (int i = 0; i < steps; ++i) {
        const double eps = rng.normal();
        mp.shocks[i] = eps;
        mp.brownian[i + 1] = mp.brownian[i] + sq * eps;
        mp.gross_returns[i] = std::exp(drift + p.sigma * sq * eps);
    }
    return mp;
}

double evolve_shadow_price(double y, double shock, double dt, const ModelParams& p,
                           const DerivedConstants& c) {
    return y * std::exp((p.delta - p.r - 0.5 * c.theta * c.theta) * dt -
                        c.theta * std::sqrt(dt) * shock);
}

Reflection reflect_consumption(double y_next, double c, const ModelParams& p,
                               const FreeBoundaries& fb) {
    Reflection out{c, 0.0, 0.0};
    const double z = y_next * std::pow(c, p.gamma);
    if (z < fb.b_alpha) {
        out.c_next = inverse_marginal(y_next / fb.b_alpha, p.gamma);
        out.dc_up = out.c_next - c;
    } else if (z > fb.b_beta) {
        out.c_next = inverse_marginal(y_next / fb.b_beta, p.gamma);
        out.dc_dn = c - out.c_next;
    }
    return out;
}

PathRecord simulate_agent(const SolvedModel& m, const MarketPath& market, double x0,
                          double c0) {
    const std::size_t n = static_cast<std::size_t>(market.steps) + 1;
    PathRecord rec;
    rec.times.resize(n);
    rec.y.resize(n);
    rec.z.resize(n);
    rec.c.resize(n);
    rec.c_up.resize(n);
    rec.c_dn.resize(n);
    rec.x.resize(n);
    rec.pi.resize(n);
    rec.rcrra.resize(n);

    const InitialState st = solve_initial_multiplier(x0, c0, m);
    double y = st.y_star;
    double c = st.c_adjusted;
    double cum_up = std::max(c - c0, 0.0);
    double cum_dn = std::max(c0 - c, 0.0);
    if (cum_up > 0.0) ++rec.n_up;
    if (cum_dn > 0.0) ++rec.n_dn;
    // Track c^gamma alongside c; after any jump z is pinned to the edge
    // exactly, which keeps the band containment invariant free of pow drift.
    double cgamma = std::pow(c, m.params.gamma);
    double z = y * cgamma;
    const double z0 = y * std::pow(c0, m.params.gamma);
    if (z0 < m.fb.b_alpha) {
        cgamma = m.fb.b_alpha / y;
        z = m.fb.b_alpha;
    } else if (z0 > m.fb.b_beta) {
        cgamma = m.fb.b_beta / y;
        z = m.fb.b_beta;
    }

    auto record = [&](std::size_t i, double t) {
        rec.times[i] = t;
        rec.y[i] = y;
        rec.z[i] = z;
        rec.c[i] = c;
        rec.c_up[i] = cum_up;
        rec.c_dn[i] = cum_dn;
        rec.x[i] = c * wealth_over_c(z, m);
        rec.pi[i] = c * pi_over_c(z, m);
        rec.rcrra[i] = rcrra_of_z(z, m);
    };
    record(0, 0.0);

    for (int i = 0; i < market.steps; ++i) {
        y = evolve_shadow_price(y, market.shocks[i], market.dt, m.params, m.consts);
        z = y * cgamma;
        if (z < m.fb.b_alpha) {
            const double c_next = inverse_marginal(y / m.fb.b_alpha, m.params.gamma);
            cum_up += c_next - c;
            c = c_next;
            cgamma = m.fb.b_alpha / y;
            z = m.fb.b_alpha;
            ++rec.n_up;
        } else if (z > m.fb.b_beta) {
            const double c_next = inverse_marginal(y / m.fb.b_beta, m.params.gamma);
            cum_dn += c - c_next;
            c = c_next;
            cgamma = m.fb.b_beta / y;
            z = m.fb.b_beta;
            ++rec.n_dn;
        }
        record(static_cast<std::size_t>(i) + 1, (i + 1) * market.dt);
    }
    return rec;
}

MertonPath simulate_merton(const ModelParams& p, const DerivedConstants& c,
                           const MarketPath& market, double x0) {
    const double share = merton_share(p);
    const double sq = std::sqrt(market.dt);
    const double drift = (p.r + share * (p.mu - p.r) - c.big_k -
                          0.5 * share * share * p.sigma * p.sigma) *
                         market.dt;
    MertonPath mp;
    const std::size_t n = static_cast<std::size_t>(market.steps) + 1;
    mp.x.resize(n);
    mp.c.resize(n);
    mp.x[0] = x0;
    mp.c[0] = c.big_k * x0;
    for (int i = 0; i < market.steps; ++i) {
        mp.x[i + 1] =
            mp.x[i] * std::exp(drift + share * p.sigma * sq * market.shocks[i]);
        mp.c[i + 1] = c.big_k * mp.x[i + 1];
    }
    return mp;
}

} // namespace bandsim
