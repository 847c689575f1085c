"""Run orchestration shared by the CLI, the scripts and the acceptance tests."""
from __future__ import annotations

import math
from dataclasses import dataclass, field

from .analytic import PhasorSolution, reference_characteristic, solve_node_phasors
from .diagnostics import (
    ConvergenceLevel,
    ConvergenceStudy,
    DiagnosticsTrace,
    ErrorMonitor,
    TraceRecorder,
    convergence_orders,
)
from .network import Network
from .solver import EdgeGrid, Limiter, SchemeConfig, SplitScheme, run, zero_grids


def sampled_state(reference: PhasorSolution, dx_target: float, t: float = 0.0) -> list[EdgeGrid]:
    """Grids holding the reference solution sampled at cell centres."""
    grids = zero_grids(reference.network, dx_target)
    for k, g in enumerate(grids):
        g.xi_plus[:], g.xi_minus[:] = reference_characteristic(reference, k, g.centers(), t)
    return grids


def initial_state(network: Network, dx_target: float, init: str = "zero") -> list[EdgeGrid]:
    if init == "zero":
        return zero_grids(network, dx_target)
    if init == "analytic":
        return sampled_state(solve_node_phasors(network), dx_target)
    raise ValueError(f"unknown initial condition {init!r}")


@dataclass
class SimulationResult:
    final: list[EdgeGrid]
    trace: DiagnosticsTrace
    snapshots: dict[float, list[EdgeGrid]] = field(default_factory=dict)
    max_error: float | None = None


def simulate(
    network: Network,
    config: SchemeConfig,
    init: str = "zero",
    homogeneous: bool = False,
    snapshots=(),
    track_error: bool = False,
) -> SimulationResult:
    """Run the split scheme, recording diagnostics at every time level.

    With ``homogeneous`` the boundary data are zero while an analytic
    initial state is still taken from the forced network.
    """
    grids = initial_state(network, config.dx_target, init)
    driven = network.homogeneous() if homogeneous else network
    reference = solve_node_phasors(driven) if track_error else None
    recorder = TraceRecorder(driven, reference)
    wanted = sorted(set(float(s) for s in snapshots if 0 <= s <= config.t_end))
    shots: dict[float, list[EdgeGrid]] = {}

    def on_step(t, state):
        recorder(t, state)
        for s in wanted:
            if math.isclose(t, s, rel_tol=0, abs_tol=1e-12):
                shots[s] = [g.copy() for g in state]

    final = run(SplitScheme(driven, config), grids, config.t_end, on_step, stops=wanted)
    return SimulationResult(final, recorder.trace, shots, recorder.max_error if reference is not None else None)


def level_error(network: Network, reference: PhasorSolution, level: int, limiter, cfl: float, t_end: float):
    """(largest actual dx, maximal error) of an analytically initialised run at dx_target = 2^-level."""
    config = SchemeConfig(cfl=cfl, limiter=Limiter(limiter), dx_target=2.0**-level, t_end=t_end)
    monitor = ErrorMonitor(reference)
    grids = sampled_state(reference, config.dx_target)
    run(SplitScheme(network, config), grids, t_end, monitor)
    return max(g.dx for g in grids), monitor.value


def convergence_study(network: Network, levels, limiter="none", cfl: float = 0.8, t_end: float | None = None) -> ConvergenceStudy:
    """Errors at dx = 2^-i for i in ``levels`` plus log-ratio order estimates.

    ``t_end`` defaults to one period of the boundary data.
    """
    t_end = 2 * math.pi / network.omega if t_end is None else t_end
    reference = solve_node_phasors(network)
    levels = list(levels)
    measured = [level_error(network, reference, i, limiter, cfl, t_end) for i in levels]
    dxs = [h for h, _ in measured]
    errors = [err for _, err in measured]
    # levels clamped to the minimum cell count share a dx and get no estimate
    orders: list[float | None] = [None]
    orders += [convergence_orders([p, q])[0] if p[0] != q[0] else None for p, q in zip(measured, measured[1:])]
    rows = [ConvergenceLevel(i, h, err, c) for i, h, err, c in zip(levels, dxs, errors, orders)]
    return ConvergenceStudy(Limiter(limiter).value, rows)
