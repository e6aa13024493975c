#pragma once

#include "bandsim/market.hpp"
#include "bandsim/rng.hpp"
#include "bandsim/stats.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace bandsim {

/// Heterogeneous population: lognormal (alpha_i, beta_i) with given mean and
/// variance, common c0, per-agent initial wealth uniform on the agent's own
/// wealth band.
struct PopulationConfig {
    int n_agents = 1500;
    double m_alpha = 10.0;
    double v_alpha = 25.0;   ///< variance of alpha_i; 0 collapses to m_alpha
    double m_beta = 100.0;
    double v_beta = 400.0;
    double c0 = 1.0;
};

/// One sampled agent and its solved model.
struct AgentSpec {
    double alpha;
    double beta;
    double x0;
    SolvedModel model;
};

/// Draws the population. Draws with delta*alpha_i >= 1 are rejected and
/// redrawn; if the distribution puts more than half its mass there, throws
/// ConfigError up front.
std::vector<AgentSpec> sample_population(const ModelParams& base,
                                         const PopulationConfig& cfg, Rng& rng);

/// Market-path regimes used by the regression study.
enum class Scenario { Bull, Intermediate, Bear, HighVol };

const char* scenario_name(Scenario s);

/// Parses "bull" | "intermediate" | "bear" | "highvol"; throws ConfigError.
Scenario parse_scenario(const std::string& name);

/// Labels a path from its total log return R and annualized realized vol V:
/// HighVol if V > 1.25 sigma, Bull/Bear if R is at least 0.5 sigma sqrt(T)
/// above/below zero at moderate vol, Intermediate otherwise.
Scenario classify_scenario(const MarketPath& mp, const ModelParams& p);

/// Risky-share-on-wealth regression study (pooled panel, monthly grid).
struct RegressionOptions {
    PopulationConfig population;
    int horizon_years = 5;    ///< T
    int diff_k = 2;           ///< k
    Scenario scenario = Scenario::Bull;
    int scenario_pool = 256;    ///< classified matches ranked before selection
    int scenario_count = 1;     ///< most extreme paths kept for the panel
    int candidate_cap = 100000; ///< substreams scanned before giving up
    bool intercept = false;
};

/// A market path selected for the panel.
struct SelectedPath {
    std::uint64_t seed;
    int index;            ///< candidate substream index
    double log_return;
    double realized_vol;  ///< annualized
};

struct RegressionReport {
    double rho_hat = 0.0;
    double se = 0.0;
    double t_stat = 0.0;
    double p_value = 1.0;
    double intercept = 0.0;
    double intercept_se = 0.0;
    bool has_intercept = false;
    Scenario scenario = Scenario::Bull;
    std::size_t n_obs = 0;
    int n_agents = 0;
    std::vector<SelectedPath> paths;
};

/// Samples the population, scans market substreams for paths matching the
/// scenario, keeps the most extreme scenario_count of the first scenario_pool
/// matches (deepest bear, strongest bull, flattest intermediate, wildest
/// high-vol), simulates every agent on each and pools the panel regression.
/// Throws ConfigError when no matching path exists within candidate_cap.
RegressionReport run_regression(const ModelParams& base, const RegressionOptions& opt,
                                std::uint64_t master_seed);

/// Aggregate-consumption moment study on the half-month grid.
struct MomentsOptions {
    int n_agents = 100;
    int reps = 1000;
    double horizon = 79.0;
    double dt = 1.0 / 24.0;
    bool literal_return_ratio = false;  ///< use the ratio of net returns in EP
    bool annual_ac1 = false;            ///< AC1 on the annually aggregated series
    bool merton = false;                ///< frictionless benchmark population
};

/// Moments of one replication; also the shape of the cross-replication
/// averages and standard errors.
struct RepMoments {
    double mean_cg = 0.0;  ///< annualized mean consumption growth
    double sd_cg = 0.0;    ///< annualized std of consumption growth
    double ep = 0.0;       ///< annualized theoretical equity premium
    double sd_imrs = 0.0;  ///< annualized std of the IMRS
    double ac1 = 0.0;      ///< lag-1 autocorrelation of monthly growth
};

struct MomentReport {
    RepMoments avg;
    RepMoments se;
    int n_reps = 0;
    bool degenerate = false;  ///< some replication had (near) constant growth
    std::vector<RepMoments> per_rep;
};

/// Runs the replication loop: per rep one shared market path, N agents with
/// uniform initial wealth, cross-sectional averaging, temporal aggregation to
/// monthly sums, then growth/IMRS/EP/AC1.
MomentReport run_moments(const ModelParams& base, const MomentsOptions& opt,
                         std::uint64_t master_seed);

} // namespace bandsim
