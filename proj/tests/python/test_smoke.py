import math

import numpy as np
import pytest

import hartree_model as hm


def test_linear_limit():
    state = hm.solve(1.0, 1e-6)
    assert state.converged
    assert state.status == "converged"
    assert abs(state.mu - 0.25) < 1e-3


def test_state_arrays_and_observables():
    state = hm.solve(1.0, 0.9)
    assert state.r.shape == state.psi.shape == state.rho.shape
    assert np.all(state.psi >= 0)
    assert np.allclose(state.rho, state.psi**2)
    obs = state.observables()
    assert abs(2 * obs["K"] - obs["A"] + obs["R"]) < 1e-4 * (obs["K"] + obs["A"] + obs["R"])
    assert obs["E"] < 0


def test_invalid_input_raises():
    with pytest.raises(ValueError):
        hm.solve(1.0, -3.0)


def test_config_roundtrip(tmp_path):
    cfg = hm.SolverConfig()
    cfg.n_points = 2000
    state = hm.solve(2.0, 1.5, cfg)
    path = tmp_path / "state.csv"
    state.save(str(path))
    back = hm.load_state(str(path))
    assert back.mu == state.mu
    assert back.observables()["K"] == pytest.approx(state.observables()["K"], rel=1e-10)


def test_verify_report_schema():
    report = hm.verify(hm.solve(1.0, 0.8))
    assert report["checks"]
    keys = {"name", "eq", "lhs", "rhs", "slack", "tol", "pass", "applicable"}
    for check in report["checks"]:
        assert keys <= set(check)
        if check["applicable"]:
            assert check["pass"]


def test_beta_ratio_of_exponential():
    r = hm.grid_nodes(4000, 1e-6, 80.0)
    assert hm.beta_ratio(np.exp(-2 * r), 1e-6, 80.0) == pytest.approx(7 / 8, rel=1e-6)


def test_minimize_beta_small():
    est = hm.minimize_beta("exp", restarts=2)
    assert est["family"] == "exp"
    assert est["beta_upper"] == pytest.approx(0.875, abs=2e-6)
    assert "exppoly" in hm.family_ids()


def test_critical_charge():
    n_c, state = hm.critical_charge(1.0)
    assert 1.19 <= n_c <= 1.23
    assert state.mu >= 0
    assert math.isfinite(state.observables()["E"])
