import math

import numpy as np
import pytest

import tfapprox as ta


@pytest.fixture(scope="module")
def grid():
    return ta.Grid(1, 16.0, 1.0 / 64)


def test_grid_and_sampling(grid):
    assert grid.points_per_axis == 2048
    f = ta.sample("gaussian(1)", grid)
    assert f.values.shape == (2048,)
    assert f.values[1024] == pytest.approx(1.0)
    assert grid.axis[1024] == 0.0
    assert f.source == "gaussian(1)"


def test_norms(grid):
    f = ta.sample("gaussian(1)", grid)
    assert ta.weighted_lp_norm(f, 1, 0) == pytest.approx(1.0, rel=1e-10)
    assert ta.weighted_lp_norm(f, 1, 2) == pytest.approx(1 + 1 / (2 * math.pi), rel=1e-10)
    assert ta.norm(f, "shubin(0)") == pytest.approx(2 ** -0.25, rel=1e-6)


def test_fourier_of_gaussian(grid):
    f = ta.sample("gaussian(1)", grid)
    F = ta.fourier(f)
    xi = F.grid.axis
    assert np.max(np.abs(F.values - np.exp(-np.pi * xi**2))) < 1e-9


def test_array_round_trip(grid):
    f = ta.sample("hat(2)", grid)
    g = ta.GridFunction(grid, f.values * 2)
    assert g.source is None
    assert ta.weighted_lp_norm(g - f, 1) == pytest.approx(ta.weighted_lp_norm(f, 1))


def test_approximate(grid):
    f = ta.sample("hat(2)", grid)
    eps = 0.05 * ta.norm(f, "lp(1,1)")
    h, report = ta.approximate(f, "gaussian(1)", eps, "lp(1,1)")
    assert report["success"]
    assert report["e_total"] <= eps
    assert (report["rho"], report["delta"], report["node_count"]) == (0.25, 0.125, 33)
    assert len(h.atoms) == 33
    assert ta.norm(f - h.evaluate(grid), "lp(1,1)") == pytest.approx(report["e_total"], rel=1e-12)


def test_errors(grid):
    f = ta.sample("hat(2)", grid)
    with pytest.raises(ta.WindowZeroMean):
        ta.approximate(f, "sine(1)", 0.1, "lp(1,1)")
    with pytest.raises(ta.BudgetInfeasible) as info:
        ta.approximate(f, "gaussian(1)", 1e-12, "lp(1,1)")
    assert info.value.report["failed_stage"] == "rho"
    with pytest.raises(ta.InvalidArgument):
        ta.sample("gauss(1)", grid)
    with pytest.raises(ta.Error):
        ta.Grid(1, 1.0, 0.3)


def test_weights_and_selftest():
    assert ta.c1_constant(1) == pytest.approx(math.sqrt(2))
    violations, _ = ta.check_submultiplicative(2, constant=2.0)
    assert violations == 0
    results = ta.selftest()
    assert all(passed for _, passed, _ in results)
    assert results == ta.selftest()
