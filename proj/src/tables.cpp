#include "bandsim/tables.hpp"

#include "bandsim/boundary.hpp"
#include "bandsim/experiments.hpp"
#include "bandsim/io.hpp"
#include "bandsim/roots.hpp"

#include <cmath>
#include <map>
#include <utility>

namespace bandsim {

namespace {

ModelParams share_table_params() {
    ModelParams p;
    p.delta = 0.02;
    p.r = 0.015;
    p.mu = 0.085;
    p.sigma = 0.25;
    return p;
}

double max_rcrra_for(ModelParams p) { return solve_model(p).fb.rcrra_max; }

} // namespace

TableResult table_risky_share() {
    TableResult t;
    t.id = "risky-share";
    t.header = {"alpha",       "beta",        "gamma",      "min_share_pct",
                "max_share_pct", "ref_min_pct", "ref_max_pct", "min_dev_pp",
                "max_dev_pp"};
    const double gammas[] = {0.9, 1.5, 3.5, 6.0, 10.0};
    struct Row {
        double alpha, beta;
        double ref_min[5];
        double ref_max[5];
    };
    const Row rows[] = {
        {0.0, 0.0, {124, 75, 32, 19, 11}, {124, 75, 32, 19, 11}},
        {5.0, 10.0, {100, 55, 24, 11, 9}, {124, 75, 32, 19, 11}},
        {25.0, 100.0, {48, 27, 14, 9, 6}, {124, 75, 32, 19, 11}},
        {49.0, 100.0, {15, 9, 6, 4, 2}, {124, 75, 32, 19, 11}},
    };
    for (const Row& row : rows) {
        for (int g = 0; g < 5; ++g) {
            ModelParams p = share_table_params();
            p.gamma = gammas[g];
            p.alpha = row.alpha;
            p.beta = row.beta;
            const double mert = 100.0 * merton_share(p);
            double lo = mert;
            if (row.alpha != 0.0 || row.beta != 0.0) {
                const SolvedModel m = solve_model(p);
                lo = 100.0 * (p.mu - p.r) / (p.sigma * p.sigma * m.fb.rcrra_max);
            }
            t.rows.push_back({fmt12(row.alpha), fmt12(row.beta), fmt12(gammas[g]),
                              fmt12(lo), fmt12(mert), fmt12(row.ref_min[g]),
                              fmt12(row.ref_max[g]), fmt12(lo - row.ref_min[g]),
                              fmt12(mert - row.ref_max[g])});
        }
    }
    return t;
}

TableResult table_max_rcrra() {
    TableResult t;
    t.id = "max-rcrra";
    t.header = {"alpha", "beta", "sigma", "max_rcrra", "reference", "rel_dev"};
    const double sigmas[] = {0.25, 0.3, 0.35, 0.4};
    struct Row {
        double alpha, beta;
        double ref[4];
    };
    const Row rows[] = {
        {5.0, 10.0, {1.116, 1.164, 1.208, 1.249}},
        {5.0, 100.0, {1.782, 1.974, 2.164, 2.358}},
        {29.0, 100.0, {2.502, 2.866, 3.250, 3.668}},
        {49.0, 100.0, {7.459, 9.607, 12.40, 16.07}},
        {49.0, 1000.0, {13.18, 18.48, 26.20, 37.46}},
    };
    for (const Row& row : rows) {
        for (int s = 0; s < 4; ++s) {
            ModelParams p = share_table_params();
            p.gamma = 0.9;
            p.sigma = sigmas[s];
            p.alpha = row.alpha;
            p.beta = row.beta;
            const double got = max_rcrra_for(p);
            t.rows.push_back({fmt12(row.alpha), fmt12(row.beta), fmt12(sigmas[s]),
                              fmt12(got), fmt12(row.ref[s]),
                              fmt12(got / row.ref[s] - 1.0)});
        }
    }
    return t;
}

TableResult table_calibration(bool invert, double target) {
    TableResult t;
    t.id = "calibration";
    const double gammas[] = {0.9, 1.05, 1.15, 1.3, 1.5};
    const double alphas[] = {40.0, 45.0, 49.0};
    const double betas[3][5] = {
        {10000, 6000, 4500, 3200, 2200},
        {5000, 3000, 2200, 1500, 1100},
        {1000, 500, 400, 260, 180},
    };
    if (invert) {
        t.header = {"gamma", "alpha", "target", "beta_star", "ref_beta"};
        for (int a = 0; a < 3; ++a) {
            for (int g = 0; g < 5; ++g) {
                ModelParams p = share_table_params();
                p.gamma = gammas[g];
                p.alpha = alphas[a];
                auto gap = [&](double beta) {
                    ModelParams q = p;
                    q.beta = beta;
                    return std::pair<double, double>{max_rcrra_for(q) - target, 0.0};
                };
                double hi = 100.0;
                while (gap(hi).first < 0.0) {
                    hi *= 4.0;
                    if (hi > 1e9)
                        throw BracketFailure("calibration: target RCRRA unreachable");
                }
                const double beta_star =
                    find_root(gap, 1e-6, hi, 1e-9, "calibration");
                t.rows.push_back({fmt12(gammas[g]), fmt12(alphas[a]), fmt12(target),
                                  fmt12(beta_star), fmt12(betas[a][g])});
            }
        }
        return t;
    }
    t.header = {"gamma", "alpha", "beta", "max_rcrra", "target", "rel_dev"};
    for (int a = 0; a < 3; ++a) {
        for (int g = 0; g < 5; ++g) {
            ModelParams p = share_table_params();
            p.gamma = gammas[g];
            p.alpha = alphas[a];
            p.beta = betas[a][g];
            const double got = max_rcrra_for(p);
            t.rows.push_back({fmt12(gammas[g]), fmt12(alphas[a]), fmt12(betas[a][g]),
                              fmt12(got), fmt12(target),
                              fmt12(got / target - 1.0)});
        }
    }
    return t;
}

TableResult table_regression(int n_agents, std::uint64_t seed) {
    TableResult t;
    t.id = "regression";
    t.header = {"m_alpha", "v_alpha", "m_beta",  "v_beta", "scenario",
                "rho_hat", "p_value", "ref_rho", "ref_p",  "sign_match"};
    struct Row {
        double ma, va, mb, vb;
        double ref_rho[4];
        const char* ref_p[4];
    };
    const Row rows[] = {
        {5, 25, 50, 400, {0.1369, 0.0208, -0.0757, -0.0679},
         {"<0.01", "0.22", "<0.01", "<0.01"}},
        {10, 25, 100, 400, {0.0999, 0.0829, -0.0746, -0.0699},
         {"<0.01", "<0.01", "<0.01", "<0.01"}},
        {10, 25, 150, 2500, {0.1107, 0.1261, -0.0478, -0.0271},
         {"<0.01", "<0.01", "0.01", "0.26"}},
        {15, 100, 150, 2500, {0.1118, 0.1229, -0.0387, -0.0341},
         {"<0.01", "<0.01", "0.04", "0.17"}},
        {15, 100, 200, 2500, {0.0961, 0.1710, -0.0164, -0.0379},
         {"<0.01", "<0.01", "0.43", "0.14"}},
    };
    const Scenario scenarios[] = {Scenario::Bull, Scenario::Intermediate,
                                  Scenario::Bear, Scenario::HighVol};
    ModelParams base = share_table_params();
    base.gamma = 1.5;
    for (const Row& row : rows) {
        for (int s = 0; s < 4; ++s) {
            RegressionOptions opt;
            opt.population.n_agents = n_agents;
            opt.population.m_alpha = row.ma;
            opt.population.v_alpha = row.va;
            opt.population.m_beta = row.mb;
            opt.population.v_beta = row.vb;
            opt.scenario = scenarios[s];
            const RegressionReport rr = run_regression(base, opt, seed);
            const bool sign_match = rr.rho_hat * row.ref_rho[s] > 0.0;
            t.rows.push_back({fmt12(row.ma), fmt12(row.va), fmt12(row.mb),
                              fmt12(row.vb), scenario_name(scenarios[s]),
                              fmt12(rr.rho_hat), fmt12(rr.p_value),
                              fmt12(row.ref_rho[s]), row.ref_p[s],
                              sign_match ? "yes" : "no"});
        }
    }
    t.notes.push_back({"n_agents", fmt12(n_agents)});
    t.notes.push_back({"note", "reference coefficients depend on unpublished "
                               "scenario paths; compare sign and significance"});
    return t;
}

TableResult table_moments(int reps, int n_agents, std::uint64_t seed) {
    TableResult t;
    t.id = "moments";
    t.header = {"source", "delta",    "gamma",   "alpha",      "beta",
                "mean_cg", "sd_cg",   "ep",      "sd_imrs",    "ac1",
                "ref_mean_cg", "ref_sd_cg", "ref_ep", "ref_sd_imrs", "ref_ac1"};
    struct Row {
        const char* source;
        double delta, gamma, alpha, beta;
        bool merton;
        bool computed;
        double ref[5];
        bool has_ep;
    };
    const Row rows[] = {
        {"data", 0, 0, 0, 0, false, false, {0.0192, 0.0212, 0, 0, 0.4600}, false},
        {"model", 0.015, 3.5, 5, 10, false, true,
         {0.0181, 0.0236, 0.0052, 0.0775, 0.4900}, true},
        {"merton", 0.015, 3.5, 5, 10, true, true,
         {0.0200, 0.0858, 0.0526, 0.2996, 0.1677}, true},
        {"sweep", 0.015, 3.5, 5, 10, false, true,
         {0.0181, 0.0236, 0.0052, 0.0775, 0.4900}, true},
        {"sweep", 0.015, 3.5, 5, 15, false, true,
         {0.0182, 0.0232, 0.0050, 0.0758, 0.4888}, true},
        {"sweep", 0.015, 3.5, 5, 20, false, true,
         {0.0183, 0.0229, 0.0049, 0.0747, 0.4881}, true},
        {"sweep", 0.015, 3.5, 0, 20, false, true,
         {0.0182, 0.0233, 0.0050, 0.0762, 0.4889}, true},
        {"sweep", 0.015, 3.5, 5, 20, false, true,
         {0.0183, 0.0229, 0.0049, 0.0747, 0.4881}, true},
        {"sweep", 0.015, 3.5, 10, 20, false, true,
         {0.0184, 0.0226, 0.0048, 0.0736, 0.4869}, true},
        {"sweep", 0.015, 3.5, 30, 100, false, true,
         {0.0191, 0.0217, 0.0044, 0.0699, 0.4825}, true},
        {"sweep", 0.015, 3.5, 50, 100, false, true,
         {0.0192, 0.0215, 0.0044, 0.0693, 0.4808}, true},
        {"sweep", 0.015, 3.5, 50, 1000, false, true,
         {0.0192, 0.0215, 0.0044, 0.0691, 0.4802}, true},
        {"sweep", 0.010, 3.5, 5, 10, false, true,
         {0.0194, 0.0242, 0.0054, 0.0791, 0.4888}, true},
        {"sweep", 0.015, 3.5, 5, 10, false, true,
         {0.0181, 0.0236, 0.0052, 0.0775, 0.4900}, true},
        {"sweep", 0.050, 3.5, 5, 10, false, true,
         {0.0093, 0.0204, 0.0039, 0.0683, 0.4953}, true},
        {"sweep", 0.015, 0.9, 5, 10, false, true,
         {0.0738, 0.0963, 0.0052, 0.0775, 0.4889}, true},
        {"sweep", 0.015, 1.5, 5, 10, false, true,
         {0.0431, 0.0563, 0.0052, 0.0775, 0.4898}, true},
        {"sweep", 0.015, 3.5, 5, 10, false, true,
         {0.0181, 0.0236, 0.0052, 0.0775, 0.4900}, true},
        {"sweep", 0.015, 10, 5, 10, false, true,
         {0.0063, 0.0082, 0.0052, 0.0775, 0.4900}, true},
    };

    std::map<std::tuple<double, double, double, double, bool>, MomentReport> cache;
    for (const Row& row : rows) {
        std::vector<std::string> cells;
        cells.push_back(row.source);
        if (row.computed) {
            cells.push_back(fmt12(row.delta));
            cells.push_back(fmt12(row.gamma));
            cells.push_back(fmt12(row.alpha));
            cells.push_back(fmt12(row.beta));
            const auto key =
                std::make_tuple(row.delta, row.gamma, row.alpha, row.beta, row.merton);
            auto it = cache.find(key);
            if (it == cache.end()) {
                ModelParams p;
                p.r = 0.0086;
                p.mu = 0.0784;
                p.sigma = 0.2016;
                p.delta = row.delta;
                p.gamma = row.gamma;
                p.alpha = row.alpha;
                p.beta = row.beta;
                MomentsOptions opt;
                opt.n_agents = n_agents;
                opt.reps = reps;
                opt.merton = row.merton;
                it = cache.emplace(key, run_moments(p, opt, seed)).first;
            }
            const RepMoments& avg = it->second.avg;
            cells.push_back(fmt12(avg.mean_cg));
            cells.push_back(fmt12(avg.sd_cg));
            cells.push_back(fmt12(avg.ep));
            cells.push_back(fmt12(avg.sd_imrs));
            cells.push_back(fmt12(avg.ac1));
        } else {
            for (int i = 0; i < 9; ++i) cells.push_back("");
        }
        cells.push_back(fmt12(row.ref[0]));
        cells.push_back(fmt12(row.ref[1]));
        cells.push_back(row.has_ep ? fmt12(row.ref[2]) : "");
        cells.push_back(row.has_ep ? fmt12(row.ref[3]) : "");
        cells.push_back(fmt12(row.ref[4]));
        t.rows.push_back(std::move(cells));
    }
    t.notes.push_back({"reps", fmt12(reps)});
    t.notes.push_back({"n_agents", fmt12(n_agents)});
    if (reps < 100) t.notes.push_back({"low-rep", "true"});
    return t;
}

} // namespace bandsim
