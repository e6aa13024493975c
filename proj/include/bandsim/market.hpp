#pragma once

#include "bandsim/boundary.hpp"

#include <cstdint>
#include <vector>

namespace bandsim {

/// One simulated risky-asset path on a regular grid.
struct MarketPath {
    double dt = 0.0;
    int steps = 0;
    std::uint64_t seed = 0;
    std::vector<double> shocks;         ///< steps standard normal draws
    std::vector<double> brownian;       ///< steps+1 cumulative B_t, brownian[0] = 0
    std::vector<double> gross_returns;  ///< per-step S_{t+dt}/S_t

    /// Price path S with S_0 = 1, steps+1 points.
    std::vector<double> prices() const;

    /// log S_T - log S_0.
    double total_log_return() const;
};

/// GBM market on [0, horizon]. horizon must be a positive multiple of dt or
/// ConfigError is thrown.
MarketPath simulate_market(const ModelParams& p, double horizon, double dt,
                           std::uint64_t seed);

/// Exact lognormal step of the shadow-price process,
/// y * exp((delta - r - theta^2/2) dt - theta sqrt(dt) shock).
double evolve_shadow_price(double y, double shock, double dt, const ModelParams& p,
                           const DerivedConstants& c);

/// Result of projecting the dual ratio back into the band.
struct Reflection {
    double c_next;
    double dc_up;  ///< increase applied, 0 unless z fell below b_alpha
    double dc_dn;  ///< decrease applied, 0 unless z rose above b_beta
};

/// Discrete analogue of the consumption regulators: if z = y_next*c^gamma left
/// the band, consumption resets so that z sits exactly on the violated edge.
Reflection reflect_consumption(double y_next, double c, const ModelParams& p,
                               const FreeBoundaries& fb);

/// Full trajectory of one agent. c_up/c_dn are the cumulative regulators, so
/// c[t] = c[0] + c_up[t] - c_dn[t] with both nondecreasing from 0; an initial
/// jump (x0/c0 outside the wealth band) is booked at t = 0.
struct PathRecord {
    std::vector<double> times;
    std::vector<double> y;
    std::vector<double> z;
    std::vector<double> c;
    std::vector<double> c_up;
    std::vector<double> c_dn;
    std::vector<double> x;
    std::vector<double> pi;
    std::vector<double> rcrra;
    int n_up = 0;
    int n_dn = 0;
};

/// Simulates one agent against a shared market path. Wealth comes from the
/// closed-form dual map at every step, never from integrating the budget
/// equation.
PathRecord simulate_agent(const SolvedModel& m, const MarketPath& market, double x0,
                          double c0);

/// Frictionless Merton benchmark on the same market path: constant risky
/// share, consumption K*X, wealth evolved in closed form.
struct MertonPath {
    std::vector<double> x;
    std::vector<double> c;
};

MertonPath simulate_merton(const ModelParams& p, const DerivedConstants& c,
                           const MarketPath& market, double x0);

} // namespace bandsim
