import math

import pytest

import bandsim


def default_params(**kw):
    p = bandsim.ModelParams()
    for k, v in kw.items():
        setattr(p, k, v)
    return p


def test_solve_reference_case():
    m = bandsim.solve_model(default_params())
    assert m.consts.m1 > 1.0 > 0.0 > m.consts.m2
    assert m.fb.b_alpha == pytest.approx(0.302395482336, rel=1e-10)
    assert m.fb.b_beta == pytest.approx(9.78024939687, rel=1e-10)
    assert m.fb.x_lo == pytest.approx(23.9329788307, rel=1e-10)
    assert m.fb.x_hi == pytest.approx(72.8248157372, rel=1e-10)
    assert m.fb.rcrra_max == pytest.approx(4.17120992965, rel=1e-10)


def test_policy_evaluators():
    m = bandsim.solve_model(default_params(beta=10.0))
    assert bandsim.h_eval(m.fb.b_alpha, m) == pytest.approx(m.params.alpha, abs=1e-9)
    assert bandsim.h_eval(m.fb.b_beta, m) == pytest.approx(-m.params.beta, abs=1e-9)
    assert bandsim.wealth_over_c(m.fb.b_alpha, m) == pytest.approx(m.fb.x_hi, rel=1e-12)
    y_star, c_adj = bandsim.solve_initial_multiplier(50.0, 1.0, m)
    assert y_star == pytest.approx(0.573146785148, rel=1e-9)
    assert c_adj == pytest.approx(1.0)
    with pytest.raises(bandsim.DomainError):
        bandsim.rcrra(m.fb.b_beta * 2.0, 1.0, m)


def test_simulation_determinism():
    m = bandsim.solve_model(default_params(beta=10.0))
    mkt = bandsim.simulate_market(m.params, 2.0, 1.0 / 24.0, 7)
    a = bandsim.simulate_agent(m, mkt, 50.0, 1.0)
    b = bandsim.simulate_agent(m, mkt, 50.0, 1.0)
    assert a.c == b.c
    assert len(a.x) == mkt.steps + 1
    assert a.x[0] == pytest.approx(50.0)
    for t in range(len(a.c)):
        assert a.c[t] == pytest.approx(a.c[0] + a.c_up[t] - a.c_dn[t], rel=1e-12)
        assert m.fb.x_lo - 1e-9 <= a.x[t] / a.c[t] <= m.fb.x_hi + 1e-9


def test_ols_reference():
    x = [1.0, 2.0, 3.0, 4.0, 5.0]
    y = [2.1, 3.9, 6.2, 7.8, 10.1]
    fit = bandsim.ols(y, x, intercept=False)
    assert fit.slope == pytest.approx(2.00363636364, rel=1e-10)
    assert fit.p_value == pytest.approx(9.17689374234e-08, rel=1e-6)


def test_moments_shape():
    p = default_params(delta=0.015, r=0.0086, mu=0.0784, sigma=0.2016,
                       gamma=3.5, alpha=5.0, beta=10.0)
    opt = bandsim.MomentsOptions()
    opt.n_agents = 5
    opt.reps = 2
    opt.horizon = 5.0
    rep = bandsim.run_moments(p, opt, bandsim.DEFAULT_SEED)
    assert rep.n_reps == 2
    assert len(rep.per_rep) == 2
    assert math.isfinite(rep.avg.mean_cg)
    assert rep.avg.sd_cg > 0.0
