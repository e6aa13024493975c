#include "bandsim/market.hpp"
#include "bandsim/errors.hpp"
#include "bandsim/policy.hpp"

#include "doctest.h"

#include <cmath>
#include <vector>

using namespace bandsim;

namespace {

SolvedModel fig3_model() {
    ModelParams p;
    p.beta = 10.0;
    return solve_model(p);
}

// market path with prescribed shocks, for deterministic scenarios
MarketPath path_from_shocks(const ModelParams& p, double dt,
                            const std::vector<double>& shocks) {
    MarketPath mp;
    mp.dt = dt;
    mp.steps = static_cast<int>(shocks.size());
    mp.shocks = shocks;
    mp.brownian.assign(shocks.size() + 1, 0.0);
    mp.gross_returns.resize(shocks.size());
    const double sdt = std::sqrt(dt);
    for (std::size_t i = 0; i < shocks.size(); ++i) {
        mp.brownian[i + 1] = mp.brownian[i] + sdt * shocks[i];
        mp.gross_returns[i] = std::exp((p.mu - 0.5 * p.sigma * p.sigma) * dt +
                                       p.sigma * sdt * shocks[i]);
    }
    return mp;
}

} // namespace

TEST_CASE("market paths have consistent shape and arithmetic") {
    ModelParams p;
    const MarketPath mp = simulate_market(p, 2.0, 0.5, 9);
    CHECK(mp.steps == 4);
    CHECK(mp.shocks.size() == 4);
    CHECK(mp.brownian.size() == 5);
    CHECK(mp.brownian[0] == 0.0);
    CHECK(mp.gross_returns.size() == 4);

    const std::vector<double> s = mp.prices();
    CHECK(s.size() == 5);
    CHECK(s[0] == 1.0);
    for (int i = 0; i < 4; ++i) {
        CHECK(mp.gross_returns[i] ==
              doctest::Approx(std::exp((p.mu - 0.5 * p.sigma * p.sigma) * 0.5 +
                                       p.sigma * std::sqrt(0.5) * mp.shocks[i]))
                  .epsilon(1e-14));
        CHECK(mp.brownian[i + 1] - mp.brownian[i] ==
              doctest::Approx(std::sqrt(0.5) * mp.shocks[i]).epsilon(1e-14));
        CHECK(s[i + 1] == doctest::Approx(s[i] * mp.gross_returns[i]).epsilon(1e-14));
    }
    CHECK(mp.total_log_return() == doctest::Approx(std::log(s.back())).epsilon(1e-12));

    const MarketPath again = simulate_market(p, 2.0, 0.5, 9);
    CHECK(again.shocks == mp.shocks);
    const MarketPath other = simulate_market(p, 2.0, 0.5, 10);
    CHECK(other.shocks != mp.shocks);
}

TEST_CASE("market grid validation") {
    ModelParams p;
    CHECK_THROWS_AS(simulate_market(p, 1.0, 0.3, 1), ConfigError);
    CHECK_THROWS_AS(simulate_market(p, 1.0, 0.0, 1), ConfigError);
    CHECK_THROWS_AS(simulate_market(p, 0.0, 0.5, 1), ConfigError);
    CHECK_NOTHROW(simulate_market(p, 79.0, 1.0 / 24.0, 1));
}

TEST_CASE("shadow price evolves by the exact lognormal step") {
    ModelParams p;
    const DerivedConstants c = derive_constants(p);
    const double dt = 1.0 / 24.0;
    const double drift = p.delta - p.r - 0.5 * c.theta * c.theta;
    CHECK(evolve_shadow_price(1.0, 0.0, dt, p, c) ==
          doctest::Approx(std::exp(drift * dt)).epsilon(1e-14));
    CHECK(evolve_shadow_price(2.0, 1.5, dt, p, c) ==
          doctest::Approx(2.0 * std::exp(drift * dt -
                                         c.theta * std::sqrt(dt) * 1.5))
              .epsilon(1e-14));
}

TEST_CASE("reflection pins the dual ratio on the violated edge") {
    const SolvedModel m = fig3_model();
    const ModelParams& p = m.params;
    const double g = p.gamma;

    // inside: untouched
    {
        const double y = 1.0, c = 1.0; // z = 1 in (b_alpha, b_beta)
        const Reflection r = reflect_consumption(y, c, p, m.fb);
        CHECK(r.c_next == c);
        CHECK(r.dc_up == 0.0);
        CHECK(r.dc_dn == 0.0);
    }
    // above b_beta: consumption cut
    {
        const double c = 1.0;
        const double y = 1.2 * m.fb.b_beta;
        const Reflection r = reflect_consumption(y, c, p, m.fb);
        CHECK(r.c_next < c);
        CHECK(r.dc_dn == doctest::Approx(c - r.c_next).epsilon(1e-14));
        CHECK(r.dc_up == 0.0);
        CHECK(y * std::pow(r.c_next, g) == doctest::Approx(m.fb.b_beta).epsilon(1e-12));
    }
    // below b_alpha: consumption raised
    {
        const double c = 1.0;
        const double y = 0.5 * m.fb.b_alpha;
        const Reflection r = reflect_consumption(y, c, p, m.fb);
        CHECK(r.c_next > c);
        CHECK(r.dc_up == doctest::Approx(r.c_next - c).epsilon(1e-14));
        CHECK(r.dc_dn == 0.0);
        CHECK(y * std::pow(r.c_next, g) == doctest::Approx(m.fb.b_alpha).epsilon(1e-12));
    }
}

TEST_CASE("agent paths respect the band and the regulator decomposition") {
    const SolvedModel m = fig3_model();
    const MarketPath mp = simulate_market(m.params, 5.0, 1.0 / 24.0, 7);
    const PathRecord rec = simulate_agent(m, mp, 50.0, 1.0);

    const std::size_t n = rec.times.size();
    CHECK(n == static_cast<std::size_t>(mp.steps + 1));
    CHECK(rec.x[0] == doctest::Approx(50.0).epsilon(1e-9));
    CHECK(rec.c[0] == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(rec.c_up[0] == 0.0);
    CHECK(rec.c_dn[0] == 0.0);

    for (std::size_t i = 0; i < n; ++i) {
        CHECK(rec.z[i] >= m.fb.b_alpha * (1.0 - 1e-12));
        CHECK(rec.z[i] <= m.fb.b_beta * (1.0 + 1e-12));
        CHECK(rec.c[i] == doctest::Approx(rec.c[0] + rec.c_up[i] - rec.c_dn[i])
                              .epsilon(1e-12));
        const double xc = rec.x[i] / rec.c[i];
        CHECK(xc >= m.fb.x_lo * (1.0 - 1e-9));
        CHECK(xc <= m.fb.x_hi * (1.0 + 1e-9));
        CHECK(rec.rcrra[i] >= m.params.gamma - 1e-9);
        CHECK(rec.rcrra[i] <= m.fb.rcrra_max + 1e-9);
        if (i) {
            CHECK(rec.c_up[i] >= rec.c_up[i - 1]);
            CHECK(rec.c_dn[i] >= rec.c_dn[i - 1]);
        }
    }
    CHECK(rec.n_up + rec.n_dn > 0); // 5 years of reflections

    const PathRecord again = simulate_agent(m, mp, 50.0, 1.0);
    CHECK(again.c == rec.c);
    CHECK(again.x == rec.x);
}

TEST_CASE("an initial jump is booked at t=0") {
    const SolvedModel m = fig3_model();
    const MarketPath mp = simulate_market(m.params, 1.0, 1.0 / 24.0, 3);
    const PathRecord rec = simulate_agent(m, mp, 70.0, 1.0); // above x_hi
    CHECK(rec.x[0] == doctest::Approx(70.0).epsilon(1e-9));
    CHECK(rec.c[0] > 1.0);
    CHECK(rec.c_up[0] == doctest::Approx(rec.c[0] - 1.0).epsilon(1e-12));
    CHECK(rec.z[0] == doctest::Approx(m.fb.b_alpha).epsilon(1e-12));
    CHECK(rec.n_up >= 1);
    // decomposition holds against the pre-jump consumption
    const std::size_t last = rec.times.size() - 1;
    CHECK(rec.c[last] ==
          doctest::Approx(1.0 + rec.c_up[last] - rec.c_dn[last]).epsilon(1e-12));
}

TEST_CASE("with zero shocks consumption only ratchets up") {
    const SolvedModel m = fig3_model();
    // drift of y is delta - r - theta^2/2 < 0 here, so z drifts to b_alpha
    const MarketPath mp =
        path_from_shocks(m.params, 1.0 / 12.0, std::vector<double>(600, 0.0));
    const PathRecord rec = simulate_agent(m, mp, 50.0, 1.0);
    CHECK(rec.n_dn == 0);
    CHECK(rec.n_up > 0);
    for (std::size_t i = 1; i < rec.c.size(); ++i) CHECK(rec.c[i] >= rec.c[i - 1]);
}

TEST_CASE("dual wealth matches an Euler budget integration") {
    const SolvedModel m = fig3_model();
    const ModelParams& p = m.params;
    const double dt = 1.0 / 240.0;
    const MarketPath mp = simulate_market(p, 10.0, dt, 11);
    const PathRecord rec = simulate_agent(m, mp, 50.0, 1.0);

    double x = rec.x[0];
    const double sdt = std::sqrt(dt);
    for (int i = 0; i < mp.steps; ++i) {
        const double pi = rec.pi[i];
        const double c = rec.c[i];
        x += (p.r * x + pi * (p.mu - p.r) - c) * dt + pi * p.sigma * sdt * mp.shocks[i];
    }
    CHECK(x == doctest::Approx(rec.x.back()).epsilon(0.01));
}

TEST_CASE("merton benchmark consumes K times wealth") {
    ModelParams p;
    const DerivedConstants c = derive_constants(p);
    const MarketPath mp = simulate_market(p, 3.0, 1.0 / 24.0, 5);
    const MertonPath mer = simulate_merton(p, c, mp, 40.0);
    CHECK(mer.x.size() == static_cast<std::size_t>(mp.steps + 1));
    CHECK(mer.x[0] == doctest::Approx(40.0).epsilon(1e-12));
    for (std::size_t i = 0; i < mer.x.size(); ++i) {
        CHECK(mer.x[i] > 0.0);
        CHECK(mer.c[i] == doctest::Approx(c.big_k * mer.x[i]).epsilon(1e-12));
    }
}
