#include "bandsim/boundary.hpp"
#include "bandsim/experiments.hpp"
#include "bandsim/io.hpp"
#include "bandsim/market.hpp"
#include "bandsim/policy.hpp"
#include "bandsim/tables.hpp"

#include "CLI11.hpp"

#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

namespace {

using bandsim::CommonConfig;

// Common flags shared by every subcommand; a config file (when given) must be
// a complete parameter set, then explicit flags override it.
struct CommonCli {
    std::string config_path;
    bandsim::ModelParams fp;
    std::uint64_t fseed = bandsim::kDefaultSeed;
    double fdt = 1.0 / 24.0;
    int freps = 100;
    std::string fformat = "csv";
    std::string fout;

    CLI::Option* o_r = nullptr;
    CLI::Option* o_mu = nullptr;
    CLI::Option* o_sigma = nullptr;
    CLI::Option* o_delta = nullptr;
    CLI::Option* o_gamma = nullptr;
    CLI::Option* o_alpha = nullptr;
    CLI::Option* o_beta = nullptr;
    CLI::Option* o_seed = nullptr;
    CLI::Option* o_dt = nullptr;
    CLI::Option* o_reps = nullptr;
    CLI::Option* o_format = nullptr;
    CLI::Option* o_out = nullptr;

    void add(CLI::App* cmd) {
        cmd->add_option("--config", config_path, "JSON config file");
        o_r = cmd->add_option("--r", fp.r, "risk-free rate");
        o_mu = cmd->add_option("--mu", fp.mu, "risky drift");
        o_sigma = cmd->add_option("--sigma", fp.sigma, "risky volatility");
        o_delta = cmd->add_option("--delta", fp.delta, "discount rate");
        o_gamma = cmd->add_option("--gamma", fp.gamma, "risk aversion");
        o_alpha = cmd->add_option("--alpha", fp.alpha, "upward adjustment cost");
        o_beta = cmd->add_option("--beta", fp.beta, "downward adjustment cost");
        o_seed = cmd->add_option("--seed", fseed, "RNG seed");
        o_dt = cmd->add_option("--dt", fdt, "step size in years");
        o_reps = cmd->add_option("--reps", freps, "Monte Carlo replications");
        o_format = cmd->add_option("--format", fformat, "csv or json")
                       ->check(CLI::IsMember({"csv", "json"}));
        o_out = cmd->add_option("--out", fout, "output directory");
    }

    CommonConfig resolve() const {
        CommonConfig cfg;
        if (!config_path.empty())
            cfg = bandsim::parse_config_file(config_path, cfg);
        if (o_r->count()) cfg.params.r = fp.r;
        if (o_mu->count()) cfg.params.mu = fp.mu;
        if (o_sigma->count()) cfg.params.sigma = fp.sigma;
        if (o_delta->count()) cfg.params.delta = fp.delta;
        if (o_gamma->count()) cfg.params.gamma = fp.gamma;
        if (o_alpha->count()) cfg.params.alpha = fp.alpha;
        if (o_beta->count()) cfg.params.beta = fp.beta;
        if (o_seed->count()) cfg.seed = fseed;
        if (o_dt->count()) cfg.dt = fdt;
        if (o_reps->count()) cfg.reps = freps;
        if (o_format->count()) cfg.format = fformat;
        if (o_out->count()) cfg.out = fout;
        return cfg;
    }
};

std::string fmt12(double v) { return bandsim::fmt12(v); }

using Rows = std::vector<std::vector<std::string>>;
using Summary = std::vector<std::pair<std::string, std::string>>;

std::string render_csv(const std::vector<std::string>& header, const Rows& rows,
                       const Summary& summary) {
    std::string text = bandsim::csv_row(header);
    text += '\n';
    for (const auto& r : rows) {
        text += bandsim::csv_row(r);
        text += '\n';
    }
    for (const auto& [k, v] : summary) {
        std::vector<std::string> padded = {"summary:" + k, v};
        while (padded.size() < header.size()) padded.emplace_back("");
        text += bandsim::csv_row(padded);
        text += '\n';
    }
    return text;
}

nlohmann::json summary_json(const Summary& summary) {
    nlohmann::json j = nlohmann::json::object();
    for (const auto& [k, v] : summary) j[k] = v;
    return j;
}

nlohmann::json table_json(const std::vector<std::string>& header, const Rows& rows) {
    nlohmann::json arr = nlohmann::json::array();
    for (const auto& r : rows) {
        nlohmann::json obj = nlohmann::json::object();
        for (std::size_t i = 0; i < header.size() && i < r.size(); ++i)
            obj[header[i]] = r[i];
        arr.push_back(obj);
    }
    return arr;
}

// Writes the main output (stdout, or <out>/<sub>.csv|.json) and, when an
// output directory is used, a <sub>.report.json with the resolved config.
void deliver(const CommonConfig& cfg, const std::string& sub,
             const nlohmann::json& cfg_echo, const std::vector<std::string>& header,
             const Rows& rows, const Summary& summary,
             const nlohmann::json& extra = nlohmann::json()) {
    nlohmann::json payload;
    payload["subcommand"] = sub;
    payload["config"] = cfg_echo;
    payload["columns"] = header;
    payload["rows"] = table_json(header, rows);
    payload["summary"] = summary_json(summary);
    if (!extra.is_null())
        for (auto it = extra.begin(); it != extra.end(); ++it)
            payload[it.key()] = it.value();

    const std::string text = cfg.format == "csv"
                                 ? render_csv(header, rows, summary)
                                 : payload.dump(2) + "\n";
    if (cfg.out.empty()) {
        std::cout << text;
        return;
    }
    std::filesystem::create_directories(cfg.out);
    const std::string ext = cfg.format == "csv" ? ".csv" : ".json";
    {
        std::ofstream f(std::filesystem::path(cfg.out) / (sub + ext));
        if (!f) throw bandsim::ConfigError("out: cannot write to " + cfg.out);
        f << text;
    }
    nlohmann::json report;
    report["subcommand"] = sub;
    report["config"] = cfg_echo;
    report["summary"] = summary_json(summary);
    if (!extra.is_null())
        for (auto it = extra.begin(); it != extra.end(); ++it)
            report[it.key()] = it.value();
    std::ofstream rf(std::filesystem::path(cfg.out) / (sub + ".report.json"));
    rf << report.dump(2) << "\n";
}

nlohmann::json echo_config(const CommonConfig& cfg, const std::string& sub) {
    nlohmann::json j = bandsim::config_to_json(cfg);
    j["subcommand"] = sub;
    std::cerr << "config: " << j.dump() << "\n";
    return j;
}

bool merton_case(const bandsim::ModelParams& p) {
    return p.alpha == 0.0 && p.beta == 0.0;
}

int run_solve(const CommonConfig& cfg, int grid_n) {
    const auto cfg_echo = echo_config(cfg, "solve");
    const auto consts = bandsim::derive_constants(cfg.params);
    Rows rows;
    auto kv = [&](const char* k, double v) {
        rows.push_back({k, fmt12(v)});
    };
    kv("theta", consts.theta);
    kv("kappa", consts.kappa);
    kv("K", consts.big_k);
    kv("m1", consts.m1);
    kv("m2", consts.m2);
    kv("merton_share", bandsim::merton_share(cfg.params));

    nlohmann::json extra;
    if (!merton_case(cfg.params)) {
        const bandsim::SolvedModel m = bandsim::solve_model(cfg.params);
        kv("w", m.fb.w);
        kv("b_alpha", m.fb.b_alpha);
        kv("b_beta", m.fb.b_beta);
        kv("d1", m.fb.d1);
        kv("d2", m.fb.d2);
        kv("b_m", m.fb.b_m);
        kv("x_lo", m.fb.x_lo);
        kv("x_hi", m.fb.x_hi);
        kv("b_hat", m.fb.b_hat);
        kv("x_hat", m.fb.x_hat);
        kv("rcrra_max", m.fb.rcrra_max);
        if (grid_n > 1) {
            Rows grid;
            const std::vector<std::string> gh = {"z",        "H",         "H_prime",
                                                 "X_over_c", "pi_over_X", "rcrra"};
            for (int i = 0; i < grid_n; ++i) {
                const double s = static_cast<double>(i) / (grid_n - 1);
                const double z = m.fb.b_alpha + s * (m.fb.b_beta - m.fb.b_alpha);
                grid.push_back({fmt12(z), fmt12(bandsim::h_eval(z, m)),
                                fmt12(bandsim::h_prime(z, m)),
                                fmt12(bandsim::wealth_over_c(z, m)),
                                fmt12(bandsim::share_of_wealth(z, m)),
                                fmt12(bandsim::rcrra_of_z(z, m))});
            }
            extra = nlohmann::json::object();
            extra["grid_columns"] = gh;
            extra["grid"] = table_json(gh, grid);
            if (cfg.format == "csv") {
                const std::string gtext = render_csv(gh, grid, {});
                if (cfg.out.empty()) {
                    deliver(cfg, "solve", cfg_echo, {"key", "value"}, rows, {}, extra);
                    std::cout << "\n" << gtext;
                    return 0;
                }
                std::filesystem::create_directories(cfg.out);
                std::ofstream gf(std::filesystem::path(cfg.out) / "solve_grid.csv");
                gf << gtext;
            }
        }
    }
    deliver(cfg, "solve", cfg_echo, {"key", "value"}, rows, {}, extra);
    return 0;
}

int run_policy(const CommonConfig& cfg, int grid_n) {
    const auto cfg_echo = echo_config(cfg, "policy");
    if (merton_case(cfg.params))
        throw bandsim::ConfigError(
            "policy needs alpha + beta > 0; the frictionless case has a constant share");
    const bandsim::SolvedModel m = bandsim::solve_model(cfg.params);
    if (grid_n < 2) throw bandsim::ConfigError("grid: need at least 2 points");
    Rows rows;
    for (int i = 0; i < grid_n; ++i) {
        const double s = static_cast<double>(i) / (grid_n - 1);
        const double z = m.fb.b_alpha + s * (m.fb.b_beta - m.fb.b_alpha);
        rows.push_back({fmt12(s), fmt12(z), fmt12(bandsim::wealth_over_c(z, m)),
                        fmt12(bandsim::pi_over_c(z, m)),
                        fmt12(bandsim::share_of_wealth(z, m)),
                        fmt12(bandsim::rcrra_of_z(z, m))});
    }
    Summary summary = {{"x_lo", fmt12(m.fb.x_lo)},
                       {"x_hi", fmt12(m.fb.x_hi)},
                       {"rcrra_max", fmt12(m.fb.rcrra_max)}};
    deliver(cfg, "policy", cfg_echo,
            {"s", "z", "X_over_c", "pi_over_c", "pi_over_X", "rcrra"}, rows, summary);
    return 0;
}

int run_simulate(const CommonConfig& cfg, double x0, double c0, double horizon) {
    const auto cfg_echo = echo_config(cfg, "simulate");
    const bandsim::MarketPath market =
        bandsim::simulate_market(cfg.params, horizon, cfg.dt, cfg.seed);

    bandsim::PathRecord rec;
    if (merton_case(cfg.params)) {
        const auto consts = bandsim::derive_constants(cfg.params);
        const bandsim::MertonPath mp =
            bandsim::simulate_merton(cfg.params, consts, market, x0);
        const double share = bandsim::merton_share(cfg.params);
        const std::size_t n = mp.x.size();
        rec.times.resize(n);
        rec.y.resize(n);
        rec.z.assign(n, 1.0);
        rec.c = mp.c;
        rec.c_up.assign(n, 0.0);
        rec.c_dn.assign(n, 0.0);
        rec.x = mp.x;
        rec.pi.resize(n);
        rec.rcrra.assign(n, cfg.params.gamma);
        double up = 0.0, dn = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            rec.times[i] = static_cast<double>(i) * cfg.dt;
            rec.y[i] = bandsim::marginal_utility(mp.c[i], cfg.params.gamma);
            rec.pi[i] = share * mp.x[i];
            if (i) {
                const double dc = mp.c[i] - mp.c[i - 1];
                (dc >= 0.0 ? up : dn) += std::abs(dc);
                if (dc > 0.0) ++rec.n_up;
                if (dc < 0.0) ++rec.n_dn;
            }
            rec.c_up[i] = up;
            rec.c_dn[i] = dn;
        }
    } else {
        const bandsim::SolvedModel m = bandsim::solve_model(cfg.params);
        rec = bandsim::simulate_agent(m, market, x0, c0);
    }

    Rows rows;
    rows.reserve(rec.times.size());
    double rc_min = rec.rcrra[0], rc_max = rec.rcrra[0];
    for (std::size_t i = 0; i < rec.times.size(); ++i) {
        rc_min = std::min(rc_min, rec.rcrra[i]);
        rc_max = std::max(rc_max, rec.rcrra[i]);
        rows.push_back({fmt12(rec.times[i]), fmt12(rec.y[i]), fmt12(rec.z[i]),
                        fmt12(rec.c[i]), fmt12(rec.c_up[i]), fmt12(rec.c_dn[i]),
                        fmt12(rec.x[i]), fmt12(rec.pi[i]),
                        fmt12(rec.pi[i] / rec.x[i]), fmt12(rec.rcrra[i])});
    }
    Summary summary = {{"n_up", fmt12(rec.n_up)},
                       {"n_dn", fmt12(rec.n_dn)},
                       {"min_rcrra", fmt12(rc_min)},
                       {"max_rcrra", fmt12(rc_max)}};
    deliver(cfg, "simulate", cfg_echo,
            {"t", "y", "z", "c", "c_up", "c_dn", "x", "pi", "share", "rcrra"}, rows,
            summary);
    return 0;
}

int run_moments(const CommonConfig& cfg, int n_agents, double horizon, bool merton,
                bool literal, bool annual) {
    const auto cfg_echo = echo_config(cfg, "moments");
    bandsim::MomentsOptions opt;
    opt.n_agents = n_agents;
    opt.reps = cfg.reps;
    opt.horizon = horizon;
    opt.dt = cfg.dt;
    opt.merton = merton || merton_case(cfg.params);
    opt.literal_return_ratio = literal;
    opt.annual_ac1 = annual;
    const bandsim::MomentReport rep =
        bandsim::run_moments(cfg.params, opt, cfg.seed);

    Rows rows;
    for (std::size_t i = 0; i < rep.per_rep.size(); ++i) {
        const auto& rm = rep.per_rep[i];
        rows.push_back({fmt12(static_cast<double>(i)), fmt12(rm.mean_cg),
                        fmt12(rm.sd_cg), fmt12(rm.ep), fmt12(rm.sd_imrs),
                        fmt12(rm.ac1)});
    }
    Summary summary = {
        {"mean_cg", fmt12(rep.avg.mean_cg)},   {"se_mean_cg", fmt12(rep.se.mean_cg)},
        {"sd_cg", fmt12(rep.avg.sd_cg)},       {"se_sd_cg", fmt12(rep.se.sd_cg)},
        {"ep", fmt12(rep.avg.ep)},             {"se_ep", fmt12(rep.se.ep)},
        {"sd_imrs", fmt12(rep.avg.sd_imrs)},   {"se_sd_imrs", fmt12(rep.se.sd_imrs)},
        {"ac1", fmt12(rep.avg.ac1)},           {"se_ac1", fmt12(rep.se.ac1)},
        {"n_reps", fmt12(rep.n_reps)},
        {"degenerate", rep.degenerate ? "true" : "false"},
    };
    deliver(cfg, "moments", cfg_echo,
            {"rep", "mean_cg", "sd_cg", "ep", "sd_imrs", "ac1"}, rows, summary);
    return 0;
}

int run_regress(const CommonConfig& cfg, const bandsim::RegressionOptions& opt) {
    const auto cfg_echo = echo_config(cfg, "regress");
    const bandsim::RegressionReport rep =
        bandsim::run_regression(cfg.params, opt, cfg.seed);

    Rows rows;
    for (const auto& p : rep.paths)
        rows.push_back({fmt12(p.index), fmt12(static_cast<double>(p.seed)),
                        fmt12(p.log_return), fmt12(p.realized_vol)});
    Summary summary = {
        {"scenario", bandsim::scenario_name(rep.scenario)},
        {"rho_hat", fmt12(rep.rho_hat)},
        {"se", fmt12(rep.se)},
        {"t_stat", fmt12(rep.t_stat)},
        {"p_value", fmt12(rep.p_value)},
        {"n_obs", fmt12(static_cast<double>(rep.n_obs))},
        {"n_agents", fmt12(rep.n_agents)},
        {"n_paths", fmt12(static_cast<double>(rep.paths.size()))},
    };
    if (rep.has_intercept) {
        summary.push_back({"intercept", fmt12(rep.intercept)});
        summary.push_back({"intercept_se", fmt12(rep.intercept_se)});
    }
    deliver(cfg, "regress", cfg_echo,
            {"path_index", "path_seed", "log_return", "realized_vol"}, rows, summary);
    return 0;
}

int run_tables(const CommonConfig& cfg, const std::string& id, int n_agents,
               bool invert, double target) {
    const auto cfg_echo = echo_config(cfg, "tables");
    bandsim::TableResult t;
    if (id == "risky-share") {
        t = bandsim::table_risky_share();
    } else if (id == "max-rcrra") {
        t = bandsim::table_max_rcrra();
    } else if (id == "calibration") {
        t = bandsim::table_calibration(invert, target);
    } else if (id == "regression") {
        t = bandsim::table_regression(n_agents > 0 ? n_agents : 300, cfg.seed);
    } else if (id == "moments") {
        t = bandsim::table_moments(cfg.reps, n_agents > 0 ? n_agents : 100, cfg.seed);
    } else {
        throw bandsim::ConfigError(
            "table: expected risky-share|max-rcrra|calibration|regression|moments");
    }
    deliver(cfg, "tables", cfg_echo, t.header, t.rows, t.notes);
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"closed-form (s,S) consumption bands: solver, simulator, and "
                 "table reproduction"};
    app.require_subcommand(1);

    CommonCli c_solve, c_policy, c_sim, c_mom, c_reg, c_tab;

    auto* solve_cmd = app.add_subcommand("solve", "derived constants and boundaries");
    c_solve.add(solve_cmd);
    int solve_grid = 0;
    solve_cmd->add_option("--grid", solve_grid, "append a band grid with N points");

    auto* policy_cmd = app.add_subcommand("policy", "band policy curves");
    c_policy.add(policy_cmd);
    int policy_grid = 201;
    policy_cmd->add_option("--grid", policy_grid, "grid points across the band");

    auto* sim_cmd = app.add_subcommand("simulate", "one agent on one market path");
    c_sim.add(sim_cmd);
    double sim_x0 = 50.0, sim_c0 = 1.0, sim_horizon = 80.0;
    sim_cmd->add_option("--x0", sim_x0, "initial wealth");
    sim_cmd->add_option("--c0", sim_c0, "initial consumption");
    sim_cmd->add_option("--horizon", sim_horizon, "years to simulate");

    auto* mom_cmd = app.add_subcommand("moments", "aggregate consumption moments");
    c_mom.add(mom_cmd);
    int mom_agents = 100;
    double mom_horizon = 79.0;
    bool mom_merton = false, mom_literal = false, mom_annual = false;
    mom_cmd->add_option("--n-agents", mom_agents, "agents per replication");
    mom_cmd->add_option("--horizon", mom_horizon, "years per replication");
    mom_cmd->add_flag("--merton", mom_merton, "frictionless benchmark population");
    mom_cmd->add_flag("--literal-return-ratio", mom_literal,
                      "use the ratio of net returns in EP");
    mom_cmd->add_flag("--annual-ac1", mom_annual, "AC1 on annual aggregates");

    auto* reg_cmd = app.add_subcommand("regress", "share-on-wealth panel regression");
    c_reg.add(reg_cmd);
    bandsim::RegressionOptions reg_opt;
    std::string reg_scenario = "bull";
    reg_cmd->add_option("--n-agents", reg_opt.population.n_agents, "population size");
    reg_cmd->add_option("--m-alpha", reg_opt.population.m_alpha, "mean of alpha");
    reg_cmd->add_option("--v-alpha", reg_opt.population.v_alpha, "variance of alpha");
    reg_cmd->add_option("--m-beta", reg_opt.population.m_beta, "mean of beta");
    reg_cmd->add_option("--v-beta", reg_opt.population.v_beta, "variance of beta");
    reg_cmd->add_option("--c0", reg_opt.population.c0, "common initial consumption");
    reg_cmd->add_option("--t-years", reg_opt.horizon_years, "panel horizon T");
    reg_cmd->add_option("--k", reg_opt.diff_k, "difference horizon k");
    reg_cmd->add_option("--scenario", reg_scenario,
                        "bull|intermediate|bear|highvol");
    reg_cmd->add_option("--scenario-pool", reg_opt.scenario_pool,
                        "matches ranked before selection");
    reg_cmd->add_option("--scenario-count", reg_opt.scenario_count,
                        "paths pooled into the panel");
    reg_cmd->add_option("--candidate-cap", reg_opt.candidate_cap,
                        "substreams scanned before giving up");
    reg_cmd->add_flag("--intercept", reg_opt.intercept, "fit with an intercept");

    auto* tab_cmd = app.add_subcommand("tables", "reproduce reference tables");
    c_tab.add(tab_cmd);
    std::string table_id;
    int tab_agents = 0;
    bool tab_invert = false;
    double tab_target = 13.0;
    tab_cmd->add_option("table", table_id,
                        "risky-share|max-rcrra|calibration|regression|moments")
        ->required();
    tab_cmd->add_option("--n-agents", tab_agents, "population size override");
    tab_cmd->add_flag("--invert", tab_invert, "calibration: solve beta for target");
    tab_cmd->add_option("--target", tab_target, "calibration target peak RCRRA");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_name() == "CallForHelp" || e.get_name() == "CallForAllHelp" ||
            e.get_name() == "CallForVersion")
            return app.exit(e);
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }

    try {
        if (solve_cmd->parsed()) return run_solve(c_solve.resolve(), solve_grid);
        if (policy_cmd->parsed()) return run_policy(c_policy.resolve(), policy_grid);
        if (sim_cmd->parsed())
            return run_simulate(c_sim.resolve(), sim_x0, sim_c0, sim_horizon);
        if (mom_cmd->parsed())
            return run_moments(c_mom.resolve(), mom_agents, mom_horizon, mom_merton,
                               mom_literal, mom_annual);
        if (reg_cmd->parsed()) {
            reg_opt.scenario = bandsim::parse_scenario(reg_scenario);
            return run_regress(c_reg.resolve(), reg_opt);
        }
        if (tab_cmd->parsed())
            return run_tables(c_tab.resolve(), table_id, tab_agents, tab_invert,
                              tab_target);
        std::cerr << "error: no subcommand\n";
        return 2;
    } catch (const bandsim::ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const bandsim::AssumptionViolation& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const bandsim::Error& e) {
        std::cerr << "numeric error: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "numeric error: " << e.what() << "\n";
        return 3;
    }
}
