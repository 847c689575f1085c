import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from telegrapher.analytic import solve_node_phasors
from telegrapher.diagnostics import (
    ErrorMonitor,
    TraceRecorder,
    analytic_decay_bound,
    convergence_orders,
    log_slope,
    lyapunov,
    max_error,
    network_total_variation,
    physical_energy,
    state_error,
    total_variation,
)
from telegrapher.network import decay_rate
from telegrapher.runs import sampled_state, simulate
from telegrapher.solver import EdgeGrid, SchemeConfig


def test_lyapunov_examples():
    assert lyapunov([EdgeGrid(0.5, np.ones(4), np.zeros(4))]) == 1.0
    g = EdgeGrid(0.25, np.array([1.0, -1.0]), np.array([2.0, 0.0]))
    assert lyapunov([g, g]) == pytest.approx(2 * 0.5 * 0.25 * 6)


def test_total_variation_examples():
    g = EdgeGrid(1.0, np.array([0.0, 1.0, 0.0]), np.array([3.0, 3.0, -1.0]))
    assert total_variation(g) == 6.0
    assert network_total_variation([g, g]) == 12.0
    assert total_variation(EdgeGrid(1.0, np.ones(5), np.ones(5))) == 0.0


def test_energy_matches_lyapunov_scaled(line_net):
    # with xi = (i +/- v sqrt(C/L))/2: C v^2 + L i^2 = 2L (xi+^2 + xi-^2)
    rng = np.random.default_rng(0)
    g = EdgeGrid(0.1, rng.normal(size=10), rng.normal(size=10))
    L = line_net.edges[0].params.L
    assert physical_energy(line_net, [g]) == pytest.approx(2 * L * lyapunov([g]), rel=1e-13)


def test_error_of_sampled_reference_is_zero(spoke_net):
    sol = solve_node_phasors(spoke_net)
    grids = sampled_state(sol, 2**-4, 0.7)
    assert state_error(grids, sol, 0.7) == 0.0
    assert max_error([(0.7, grids)], sol) == 0.0
    grids[2].xi_minus[3] += 1e-9
    assert state_error(grids, sol, 0.7) == pytest.approx(1e-9, rel=1e-6)
    assert max_error([], sol) == 0.0


def test_monitors_ignore_initial_level(spoke_net):
    sol = solve_node_phasors(spoke_net)
    grids = sampled_state(sol, 2**-3)
    grids[0].xi_plus[0] += 1.0
    mon, rec = ErrorMonitor(sol), TraceRecorder(spoke_net, sol)
    for f in (mon, rec):
        f(0.0, grids)
    assert mon.value == 0.0 and rec.max_error == 0.0
    assert rec.trace.max_err == [pytest.approx(1.0)]


@given(st.floats(0.5, 4), st.floats(1e-3, 10), st.integers(2, 6))
def test_planted_orders_recovered(p, c0, n):
    dxs = [2.0**-k for k in range(1, n + 1)]
    orders = convergence_orders([(h, c0 * h**p) for h in dxs])
    assert len(orders) == n - 1
    assert all(abs(o - p) < 1e-9 for o in orders)


def test_order_example():
    assert convergence_orders([(0.1, 1e-2), (0.05, 2.5e-3)]) == [pytest.approx(2.0)]


@pytest.mark.parametrize(
    "bad", [[(0.1, 1.0)], [(0.1, 1.0), (0.05, 0.0)], [(0.1, 1.0), (0.1, 0.5)]]
)
def test_order_degenerate_input(bad):
    with pytest.raises(ValueError):
        convergence_orders(bad)


def test_decay_rates(line_net, spoke_net):
    assert decay_rate(line_net) == pytest.approx(2 / 3)
    assert decay_rate(spoke_net) == pytest.approx(1 / 9)
    assert analytic_decay_bound(spoke_net, 2.0, 0.0) == 2.0
    assert analytic_decay_bound(spoke_net, 1.0, 9.0) == pytest.approx(math.exp(-2.0))


def test_log_slope():
    t = np.linspace(0, 3, 7)
    assert log_slope(t, 5 * np.exp(-0.4 * t)) == pytest.approx(-0.4)


def test_homogeneous_trace_is_monotone(spoke_net):
    cfg = SchemeConfig(dx_target=2**-5, t_end=2.0)
    res = simulate(spoke_net, cfg, init="analytic", homogeneous=True)
    lyap = np.array(res.trace.lyapunov)
    assert np.all(np.diff(lyap) <= 1e-14 * lyap[0])
    assert lyap[-1] < lyap[0]
    assert np.all(np.isfinite(res.trace.energy))
