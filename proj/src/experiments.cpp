#include "bandsim/experiments.hpp"

#include "bandsim/policy.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace bandsim {

namespace {

struct LognormalSpec {
    double mu_ln = 0.0;
    double sigma_ln = 0.0;
    bool degenerate = false;  // zero variance
    double value = 0.0;
};

LognormalSpec lognormal_for(double m, double v, const char* what) {
    if (!(m > 0.0)) throw ConfigError(std::string(what) + ": mean must be positive");
    if (v < 0.0) throw ConfigError(std::string(what) + ": variance must be nonnegative");
    LognormalSpec s;
    if (v == 0.0) {
        s.degenerate = true;
        s.value = m;
        return s;
    }
    s.sigma_ln = std::sqrt(std::log1p(v / (m * m)));
    s.mu_ln = std::log(m) - 0.5 * s.sigma_ln * s.sigma_ln;
    return s;
}

// Mass of the alpha distribution violating delta*alpha < 1.
double rejection_mass(const LognormalSpec& s, double cap) {
    if (s.degenerate) return s.value >= cap ? 1.0 : 0.0;
    const double zscore = (std::log(cap) - s.mu_ln) / s.sigma_ln;
    return 0.5 * std::erfc(zscore / std::sqrt(2.0));
}

struct PathStats {
    double log_return;
    double realized_vol;  // annualized
};

PathStats path_stats(const MarketPath& mp) {
    std::vector<double> lr(mp.gross_returns.size());
    for (std::size_t i = 0; i < lr.size(); ++i) lr[i] = std::log(mp.gross_returns[i]);
    PathStats st;
    st.log_return = 0.0;
    for (double v : lr) st.log_return += v;
    st.realized_vol = stdev(lr, 1) / std::sqrt(mp.dt);
    return st;
}

// Consumption-only variant of simulate_agent for the moment study, where
// wealth and portfolio paths are never read.
std::vector<double> simulate_consumption(const SolvedModel& m, const MarketPath& market,
                                         double x0, double c0) {
    std::vector<double> path(static_cast<std::size_t>(market.steps) + 1);
    const InitialState st = solve_initial_multiplier(x0, c0, m);
    double y = st.y_star;
    double c = st.c_adjusted;
    double cgamma = std::pow(c, m.params.gamma);
    if (y * std::pow(c0, m.params.gamma) < m.fb.b_alpha)
        cgamma = m.fb.b_alpha / y;
    else if (y * std::pow(c0, m.params.gamma) > m.fb.b_beta)
        cgamma = m.fb.b_beta / y;
    path[0] = c;
    const double drift =
        (m.params.delta - m.params.r - 0.5 * m.consts.theta * m.consts.theta) *
        market.dt;
    const double diff = -m.consts.theta * std::sqrt(market.dt);
    for (int i = 0; i < market.steps; ++i) {
        y *= std::exp(drift + diff * market.shocks[i]);
        const double z = y * cgamma;
        if (z < m.fb.b_alpha) {
            c = inverse_marginal(y / m.fb.b_alpha, m.params.gamma);
            cgamma = m.fb.b_alpha / y;
        } else if (z > m.fb.b_beta) {
            c = inverse_marginal(y / m.fb.b_beta, m.params.gamma);
            cgamma = m.fb.b_beta / y;
        }
        path[static_cast<std::size_t>(i) + 1] = c;
    }
    return path;
}

int grid_steps(double horizon, double dt) {
    if (!(dt > 0.0)) throw ConfigError("dt must be positive");
    if (!(horizon > 0.0)) throw ConfigError("horizon must be positive");
    const double ratio = horizon / dt;
    const int steps = static_cast<int>(std::lround(ratio));
    if (steps < 1 || std::abs(ratio - steps) > 1e-9 * std::max(1.0, ratio))
        throw ConfigError("horizon must be a multiple of dt");
    return steps;
}

} // namespace

std::vector<AgentSpec> sample_population(const ModelParams& base,
                                         const PopulationConfig& cfg, Rng& rng) {
    if (cfg.n_agents < 1) throw ConfigError("n_agents must be positive");
    if (!(cfg.c0 > 0.0)) throw ConfigError("c0 must be positive");
    const LognormalSpec sa = lognormal_for(cfg.m_alpha, cfg.v_alpha, "alpha");
    const LognormalSpec sb = lognormal_for(cfg.m_beta, cfg.v_beta, "beta");
    const double cap = 1.0 / base.delta;
    if (rejection_mass(sa, cap) > 0.5)
        throw ConfigError("alpha: over half the distribution violates delta*alpha < 1");

    std::vector<AgentSpec> agents;
    agents.reserve(static_cast<std::size_t>(cfg.n_agents));
    for (int i = 0; i < cfg.n_agents; ++i) {
        AgentSpec a;
        int guard = 0;
        do {
            a.alpha = sa.degenerate ? sa.value
                                    : std::exp(sa.mu_ln + sa.sigma_ln * rng.normal());
            if (++guard > 10000)
                throw ConfigError("alpha: rejection loop exceeded its guard");
        } while (base.delta * a.alpha >= 1.0);
        a.beta = sb.degenerate ? sb.value
                               : std::exp(sb.mu_ln + sb.sigma_ln * rng.normal());
        ModelParams p = base;
        p.alpha = a.alpha;
        p.beta = a.beta;
        a.model = solve_model(p);
        a.x0 = cfg.c0 * rng.uniform(a.model.fb.x_lo, a.model.fb.x_hi);
        agents.push_back(a);
    }
    return agents;
}

const char* scenario_name(Scenario s) {
    switch (s) {
        case Scenario::Bull: return "bull";
        case Scenario::Intermediate: return "intermediate";
        case Scenario::Bear: return "bear";
        case Scenario::HighVol: return "highvol";
    }
    return "unknown";
}

Scenario parse_scenario(const std::string& name) {
    if (name == "bull") return Scenario::Bull;
    if (name == "intermediate") return Scenario::Intermediate;
    if (name == "bear") return Scenario::Bear;
    if (name == "highvol") return Scenario::HighVol;
    throw ConfigError("scenario: expected bull|intermediate|bear|highvol, got " + name);
}

Scenario classify_scenario(const MarketPath& mp, const ModelParams& p) {
    const PathStats st = path_stats(mp);
    if (st.realized_vol > 1.25 * p.sigma) return Scenario::HighVol;
    const double band = 0.5 * p.sigma * std::sqrt(mp.dt * mp.steps);
    if (st.log_return >= band) return Scenario::Bull;
    if (st.log_return <= -band) return Scenario::Bear;
    return Scenario::Intermediate;
}

RegressionReport run_regression(const ModelParams& base, const RegressionOptions& opt,
                                std::uint64_t master_seed) {
    if (opt.horizon_years < 1 || opt.diff_k < 1 || opt.diff_k > opt.horizon_years)
        throw ConfigError("regression horizon must satisfy T >= k >= 1");
    if (opt.scenario_count < 1 || opt.scenario_pool < opt.scenario_count)
        throw ConfigError("scenario_pool must be at least scenario_count");

    Rng pop_rng = Rng::stream(master_seed, "population", 0);
    const std::vector<AgentSpec> agents = sample_population(base, opt.population, pop_rng);

    const double horizon = static_cast<double>(opt.horizon_years);
    const double dt = 1.0 / 12.0;

    // Scan substreams for scenario matches, then keep the most extreme ones:
    // exemplar paths (Bull strongly up, Bear strongly down, Intermediate flat,
    // HighVol wild) rather than marginal threshold cases.
    struct Candidate {
        int index;
        std::uint64_t seed;
        PathStats stats;
    };
    std::vector<Candidate> pool;
    for (int i = 0;
         i < opt.candidate_cap && static_cast<int>(pool.size()) < opt.scenario_pool;
         ++i) {
        const std::uint64_t seed = Rng::substream_seed(master_seed, "market", i);
        const MarketPath mp = simulate_market(base, horizon, dt, seed);
        if (classify_scenario(mp, base) != opt.scenario) continue;
        pool.push_back({i, seed, path_stats(mp)});
    }
    if (pool.empty())
        throw ConfigError("no market path matched the requested scenario within the candidate cap");

    auto more_extreme = [&](const Candidate& a, const Candidate& b) {
        switch (opt.scenario) {
            case Scenario::Bull: return a.stats.log_return > b.stats.log_return;
            case Scenario::Bear: return a.stats.log_return < b.stats.log_return;
            case Scenario::HighVol: return a.stats.realized_vol > b.stats.realized_vol;
            case Scenario::Intermediate:
                return std::abs(a.stats.log_return) < std::abs(b.stats.log_return);
        }
        return false;
    };
    std::stable_sort(pool.begin(), pool.end(), more_extreme);
    const std::size_t keep =
        std::min<std::size_t>(pool.size(), static_cast<std::size_t>(opt.scenario_count));

    RegressionReport rep;
    rep.scenario = opt.scenario;
    rep.n_agents = static_cast<int>(agents.size());
    rep.has_intercept = opt.intercept;

    std::vector<double> xs, ys;
    for (std::size_t s = 0; s < keep; ++s) {
        const Candidate& cand = pool[s];
        rep.paths.push_back(
            {cand.seed, cand.index, cand.stats.log_return, cand.stats.realized_vol});
        const MarketPath mp = simulate_market(base, horizon, dt, cand.seed);
        for (const AgentSpec& a : agents) {
            const PathRecord pr = simulate_agent(a.model, mp, a.x0, opt.population.c0);
            for (int j = 1; j <= opt.horizon_years - opt.diff_k + 1; ++j) {
                const std::size_t i0 = static_cast<std::size_t>(12 * (j - 1));
                const std::size_t i1 =
                    static_cast<std::size_t>(12 * (j + opt.diff_k - 1));
                ys.push_back(std::log(pr.pi[i1] / pr.x[i1]) -
                             std::log(pr.pi[i0] / pr.x[i0]));
                xs.push_back(std::log(pr.x[i1]) - std::log(pr.x[i0]));
            }
        }
    }

    const OlsFit fit = ols(ys, xs, opt.intercept);
    rep.rho_hat = fit.slope;
    rep.se = fit.slope_se;
    rep.t_stat = fit.t_stat;
    rep.p_value = fit.p_value;
    rep.intercept = fit.intercept;
    rep.intercept_se = fit.intercept_se;
    rep.n_obs = fit.n;
    return rep;
}

MomentReport run_moments(const ModelParams& base, const MomentsOptions& opt,
                         std::uint64_t master_seed) {
    if (opt.n_agents < 1) throw ConfigError("n_agents must be positive");
    if (opt.reps < 1) throw ConfigError("reps must be positive");
    const int steps = grid_steps(opt.horizon, opt.dt);
    if (steps % 2 != 0)
        throw ConfigError("moments grid needs an even number of steps for aggregation");
    const int months = steps / 2;
    if (months < 4) throw ConfigError("moments horizon too short");
    const double agg = 2.0 * opt.dt;     // aggregated period, one month at dt = 1/24
    const double ann = 1.0 / agg;        // periods per year
    int months_per_year = 0;
    if (opt.annual_ac1) {
        months_per_year = static_cast<int>(std::lround(ann));
        if (std::abs(ann - months_per_year) > 1e-9 || months % months_per_year != 0)
            throw ConfigError("annual AC1 needs a grid that tiles whole years");
    }

    const SolvedModel model = solve_model(base);
    const double imrs_disc = std::exp(-base.delta * agg);

    MomentReport report;
    report.n_reps = opt.reps;
    report.per_rep.reserve(static_cast<std::size_t>(opt.reps));

    std::vector<double> ca(static_cast<std::size_t>(steps));
    for (int r = 0; r < opt.reps; ++r) {
        const MarketPath market = simulate_market(
            base, opt.horizon, opt.dt, Rng::substream_seed(master_seed, "mom-mkt", r));
        Rng x0_rng = Rng::stream(master_seed, "mom-x0", r);

        std::fill(ca.begin(), ca.end(), 0.0);
        const double weight = 1.0 / static_cast<double>(opt.n_agents);
        for (int a = 0; a < opt.n_agents; ++a) {
            const double x0 = x0_rng.uniform(model.fb.x_lo, model.fb.x_hi);
            if (opt.merton) {
                const MertonPath mp =
                    simulate_merton(base, model.consts, market, x0);
                for (int t = 0; t < steps; ++t) ca[t] += weight * mp.c[t + 1];
            } else {
                const std::vector<double> c =
                    simulate_consumption(model, market, x0, 1.0);
                for (int t = 0; t < steps; ++t) ca[t] += weight * c[t + 1];
            }
        }

        // Temporal aggregation: sum each pair of half-month observations.
        std::vector<double> cam(static_cast<std::size_t>(months));
        for (int i = 0; i < months; ++i) cam[i] = ca[2 * i] + ca[2 * i + 1];

        const int n = months - 1;
        std::vector<double> cg(n), imrs(n);
        for (int i = 0; i < n; ++i) {
            const double ratio = cam[i + 1] / cam[i];
            cg[i] = ratio - 1.0;
            imrs[i] = imrs_disc * std::pow(ratio, -base.gamma);
        }

        // Monthly risky returns aligned with the growth series.
        const std::vector<double> prices = market.prices();
        std::vector<double> sm(static_cast<std::size_t>(months) + 1);
        for (int j = 0; j <= months; ++j) sm[j] = prices[2 * j];
        std::vector<double> ret(n);
        if (opt.literal_return_ratio) {
            for (int i = 0; i < n; ++i) {
                const double r0 = sm[i + 1] / sm[i] - 1.0;
                const double r1 = sm[i + 2] / sm[i + 1] - 1.0;
                ret[i] = r1 / r0;
            }
        } else {
            for (int i = 0; i < n; ++i) ret[i] = sm[i + 2] / sm[i + 1];
        }

        RepMoments rm;
        rm.mean_cg = ann * mean(cg);
        rm.sd_cg = std::sqrt(ann) * stdev(cg, 1);
        rm.sd_imrs = std::sqrt(ann) * stdev(imrs, 1);
        rm.ep = ann * (-covariance(imrs, ret, 1) / mean(imrs));
        double ac1 = std::numeric_limits<double>::quiet_NaN();
        std::vector<double> lhs, rhs;
        if (opt.annual_ac1) {
            const int years = months / months_per_year;
            std::vector<double> annual(static_cast<std::size_t>(years), 0.0);
            for (int yidx = 0; yidx < years; ++yidx)
                for (int j = 0; j < months_per_year; ++j)
                    annual[yidx] += cam[yidx * months_per_year + j];
            std::vector<double> acg(static_cast<std::size_t>(years) - 1);
            for (int i = 0; i + 1 < years; ++i) acg[i] = annual[i + 1] / annual[i] - 1.0;
            lhs.assign(acg.begin() + 1, acg.end());
            rhs.assign(acg.begin(), acg.end() - 1);
        } else {
            lhs.assign(cg.begin() + 1, cg.end());
            rhs.assign(cg.begin(), cg.end() - 1);
        }
        if (stdev(lhs, 1) > 1e-15 && stdev(rhs, 1) > 1e-15) {
            ac1 = correlation(lhs, rhs);
        } else {
            report.degenerate = true;
        }
        rm.ac1 = ac1;
        report.per_rep.push_back(rm);
    }

    auto collect = [&](double RepMoments::*field) {
        std::vector<double> v(report.per_rep.size());
        for (std::size_t i = 0; i < v.size(); ++i) v[i] = report.per_rep[i].*field;
        return v;
    };
    auto summarize = [&](double RepMoments::*field, double& avg_out, double& se_out) {
        const std::vector<double> v = collect(field);
        avg_out = mean(v);
        se_out = v.size() > 1 ? stdev(v, 1) / std::sqrt(static_cast<double>(v.size()))
                              : 0.0;
    };
    summarize(&RepMoments::mean_cg, report.avg.mean_cg, report.se.mean_cg);
    summarize(&RepMoments::sd_cg, report.avg.sd_cg, report.se.sd_cg);
    summarize(&RepMoments::ep, report.avg.ep, report.se.ep);
    summarize(&RepMoments::sd_imrs, report.avg.sd_imrs, report.se.sd_imrs);
    summarize(&RepMoments::ac1, report.avg.ac1, report.se.ac1);
    return report;
}

} // namespace bandsim
