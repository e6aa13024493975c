#include "bandsim/experiments.hpp"
#include "bandsim/io.hpp"
#include "bandsim/market.hpp"
#include "bandsim/policy.hpp"
#include "bandsim/stats.hpp"

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

namespace py = pybind11;
using namespace bandsim;

PYBIND11_MODULE(_core, m) {
    m.doc() = "closed-form (s,S) consumption bands: solver, simulator, experiments";

    py::register_exception<Error>(m, "Error", PyExc_RuntimeError);
    py::register_exception<AssumptionViolation>(m, "AssumptionViolation");
    py::register_exception<DomainError>(m, "DomainError");
    py::register_exception<BracketFailure>(m, "BracketFailure");
    py::register_exception<InvariantViolation>(m, "InvariantViolation");
    py::register_exception<ConfigError>(m, "ConfigError");
    py::register_exception<DegenerateRegression>(m, "DegenerateRegression");

    py::class_<ModelParams>(m, "ModelParams")
        .def(py::init<>())
        .def_readwrite("r", &ModelParams::r)
        .def_readwrite("mu", &ModelParams::mu)
        .def_readwrite("sigma", &ModelParams::sigma)
        .def_readwrite("delta", &ModelParams::delta)
        .def_readwrite("gamma", &ModelParams::gamma)
        .def_readwrite("alpha", &ModelParams::alpha)
        .def_readwrite("beta", &ModelParams::beta);

    py::class_<DerivedConstants>(m, "DerivedConstants")
        .def_readonly("theta", &DerivedConstants::theta)
        .def_readonly("kappa", &DerivedConstants::kappa)
        .def_readonly("big_k", &DerivedConstants::big_k)
        .def_readonly("m1", &DerivedConstants::m1)
        .def_readonly("m2", &DerivedConstants::m2);

    py::class_<FreeBoundaries>(m, "FreeBoundaries")
        .def_readonly("w", &FreeBoundaries::w)
        .def_readonly("b_alpha", &FreeBoundaries::b_alpha)
        .def_readonly("b_beta", &FreeBoundaries::b_beta)
        .def_readonly("d1", &FreeBoundaries::d1)
        .def_readonly("d2", &FreeBoundaries::d2)
        .def_readonly("b_m", &FreeBoundaries::b_m)
        .def_readonly("x_lo", &FreeBoundaries::x_lo)
        .def_readonly("x_hi", &FreeBoundaries::x_hi)
        .def_readonly("b_hat", &FreeBoundaries::b_hat)
        .def_readonly("x_hat", &FreeBoundaries::x_hat)
        .def_readonly("rcrra_max", &FreeBoundaries::rcrra_max);

    py::class_<SolvedModel>(m, "SolvedModel")
        .def_readonly("params", &SolvedModel::params)
        .def_readonly("consts", &SolvedModel::consts)
        .def_readonly("fb", &SolvedModel::fb);

    m.def("derive_constants", &derive_constants, py::arg("params"));
    m.def("merton_share", &merton_share, py::arg("params"));
    m.def("solve_model", &solve_model, py::arg("params"));

    m.def("h_eval", &h_eval, py::arg("z"), py::arg("model"));
    m.def("wealth_over_c", &wealth_over_c, py::arg("z"), py::arg("model"));
    m.def("pi_over_c", &pi_over_c, py::arg("z"), py::arg("model"));
    m.def("share_of_wealth", &share_of_wealth, py::arg("z"), py::arg("model"));
    m.def("rcrra_of_z", &rcrra_of_z, py::arg("z"), py::arg("model"));
    m.def("band_coordinate", &band_coordinate, py::arg("z"), py::arg("model"));
    m.def("j_eval", &j_eval, py::arg("y"), py::arg("c"), py::arg("model"));
    m.def("j_y", &j_y, py::arg("y"), py::arg("c"), py::arg("model"));
    m.def("wealth_map", &wealth_map, py::arg("y"), py::arg("c"), py::arg("model"));
    m.def("portfolio_pi", &portfolio_pi, py::arg("y"), py::arg("c"), py::arg("model"));
    m.def("rcrra", &rcrra, py::arg("y"), py::arg("c"), py::arg("model"));
    m.def("primal_value", &primal_value, py::arg("x0"), py::arg("c0"), py::arg("model"));
    m.def(
        "solve_initial_multiplier",
        [](double x0, double c0, const SolvedModel& model) {
            const InitialState st = solve_initial_multiplier(x0, c0, model);
            return py::make_tuple(st.y_star, st.c_adjusted);
        },
        py::arg("x0"), py::arg("c0"), py::arg("model"),
        "Returns (y_star, c_adjusted).");

    py::class_<MarketPath>(m, "MarketPath")
        .def_readonly("dt", &MarketPath::dt)
        .def_readonly("steps", &MarketPath::steps)
        .def_readonly("seed", &MarketPath::seed)
        .def_readonly("shocks", &MarketPath::shocks)
        .def_readonly("brownian", &MarketPath::brownian)
        .def_readonly("gross_returns", &MarketPath::gross_returns)
        .def("prices", &MarketPath::prices)
        .def("total_log_return", &MarketPath::total_log_return);

    m.def("simulate_market", &simulate_market, py::arg("params"), py::arg("horizon"),
          py::arg("dt"), py::arg("seed"));

    py::class_<PathRecord>(m, "PathRecord")
        .def_readonly("times", &PathRecord::times)
        .def_readonly("y", &PathRecord::y)
        .def_readonly("z", &PathRecord::z)
        .def_readonly("c", &PathRecord::c)
        .def_readonly("c_up", &PathRecord::c_up)
        .def_readonly("c_dn", &PathRecord::c_dn)
        .def_readonly("x", &PathRecord::x)
        .def_readonly("pi", &PathRecord::pi)
        .def_readonly("rcrra", &PathRecord::rcrra)
        .def_readonly("n_up", &PathRecord::n_up)
        .def_readonly("n_dn", &PathRecord::n_dn);

    m.def("simulate_agent", &simulate_agent, py::arg("model"), py::arg("market"),
          py::arg("x0"), py::arg("c0"));

    py::class_<MertonPath>(m, "MertonPath")
        .def_readonly("x", &MertonPath::x)
        .def_readonly("c", &MertonPath::c);

    m.def("simulate_merton", &simulate_merton, py::arg("params"), py::arg("consts"),
          py::arg("market"), py::arg("x0"));

    py::enum_<Scenario>(m, "Scenario")
        .value("Bull", Scenario::Bull)
        .value("Intermediate", Scenario::Intermediate)
        .value("Bear", Scenario::Bear)
        .value("HighVol", Scenario::HighVol);

    m.def("classify_scenario", &classify_scenario, py::arg("market"), py::arg("params"));

    py::class_<PopulationConfig>(m, "PopulationConfig")
        .def(py::init<>())
        .def_readwrite("n_agents", &PopulationConfig::n_agents)
        .def_readwrite("m_alpha", &PopulationConfig::m_alpha)
        .def_readwrite("v_alpha", &PopulationConfig::v_alpha)
        .def_readwrite("m_beta", &PopulationConfig::m_beta)
        .def_readwrite("v_beta", &PopulationConfig::v_beta)
        .def_readwrite("c0", &PopulationConfig::c0);

    py::class_<RegressionOptions>(m, "RegressionOptions")
        .def(py::init<>())
        .def_readwrite("population", &RegressionOptions::population)
        .def_readwrite("horizon_years", &RegressionOptions::horizon_years)
        .def_readwrite("diff_k", &RegressionOptions::diff_k)
        .def_readwrite("scenario", &RegressionOptions::scenario)
        .def_readwrite("scenario_pool", &RegressionOptions::scenario_pool)
        .def_readwrite("scenario_count", &RegressionOptions::scenario_count)
        .def_readwrite("candidate_cap", &RegressionOptions::candidate_cap)
        .def_readwrite("intercept", &RegressionOptions::intercept);

    py::class_<SelectedPath>(m, "SelectedPath")
        .def_readonly("seed", &SelectedPath::seed)
        .def_readonly("index", &SelectedPath::index)
        .def_readonly("log_return", &SelectedPath::log_return)
        .def_readonly("realized_vol", &SelectedPath::realized_vol);

    py::class_<RegressionReport>(m, "RegressionReport")
        .def_readonly("rho_hat", &RegressionReport::rho_hat)
        .def_readonly("se", &RegressionReport::se)
        .def_readonly("t_stat", &RegressionReport::t_stat)
        .def_readonly("p_value", &RegressionReport::p_value)
        .def_readonly("intercept", &RegressionReport::intercept)
        .def_readonly("intercept_se", &RegressionReport::intercept_se)
        .def_readonly("has_intercept", &RegressionReport::has_intercept)
        .def_readonly("scenario", &RegressionReport::scenario)
        .def_readonly("n_obs", &RegressionReport::n_obs)
        .def_readonly("n_agents", &RegressionReport::n_agents)
        .def_readonly("paths", &RegressionReport::paths);

    m.def("run_regression", &run_regression, py::arg("params"), py::arg("options"),
          py::arg("master_seed"));

    py::class_<MomentsOptions>(m, "MomentsOptions")
        .def(py::init<>())
        .def_readwrite("n_agents", &MomentsOptions::n_agents)
        .def_readwrite("reps", &MomentsOptions::reps)
        .def_readwrite("horizon", &MomentsOptions::horizon)
        .def_readwrite("dt", &MomentsOptions::dt)
        .def_readwrite("literal_return_ratio", &MomentsOptions::literal_return_ratio)
        .def_readwrite("annual_ac1", &MomentsOptions::annual_ac1)
        .def_readwrite("merton", &MomentsOptions::merton);

    py::class_<RepMoments>(m, "RepMoments")
        .def_readonly("mean_cg", &RepMoments::mean_cg)
        .def_readonly("sd_cg", &RepMoments::sd_cg)
        .def_readonly("ep", &RepMoments::ep)
        .def_readonly("sd_imrs", &RepMoments::sd_imrs)
        .def_readonly("ac1", &RepMoments::ac1);

    py::class_<MomentReport>(m, "MomentReport")
        .def_readonly("avg", &MomentReport::avg)
        .def_readonly("se", &MomentReport::se)
        .def_readonly("n_reps", &MomentReport::n_reps)
        .def_readonly("degenerate", &MomentReport::degenerate)
        .def_readonly("per_rep", &MomentReport::per_rep);

    m.def("run_moments", &run_moments, py::arg("params"), py::arg("options"),
          py::arg("master_seed"));

    py::class_<OlsFit>(m, "OlsFit")
        .def_readonly("slope", &OlsFit::slope)
        .def_readonly("slope_se", &OlsFit::slope_se)
        .def_readonly("t_stat", &OlsFit::t_stat)
        .def_readonly("p_value", &OlsFit::p_value)
        .def_readonly("intercept", &OlsFit::intercept)
        .def_readonly("intercept_se", &OlsFit::intercept_se)
        .def_readonly("n", &OlsFit::n)
        .def_readonly("dof", &OlsFit::dof);

    m.def("ols", &ols, py::arg("y"), py::arg("x"), py::arg("intercept") = false);

    m.attr("DEFAULT_SEED") = py::int_(kDefaultSeed);
}
