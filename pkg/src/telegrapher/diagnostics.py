"""Lyapunov function, total variation, errors and convergence orders."""
from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .analytic import PhasorSolution, from_characteristic, reference_characteristic
from .network import Network, decay_rate
from .solver import EdgeGrid


def lyapunov(grids: list[EdgeGrid]) -> float:
    """1/2 sum over edges and cells of (xi+^2 + xi-^2) dx."""
    return float(sum(0.5 * g.dx * (np.dot(g.xi_plus, g.xi_plus) + np.dot(g.xi_minus, g.xi_minus)) for g in grids))


def physical_energy(network: Network, grids: list[EdgeGrid]) -> float:
    """1/2 sum over edges of the integral of C v^2 + L i^2 (midpoint rule)."""
    total = 0.0
    for e, g in zip(network.edges, grids):
        v, i = from_characteristic(g.xi_plus, g.xi_minus, e.params)
        total += 0.5 * g.dx * (e.params.C * np.dot(v, v) + e.params.L * np.dot(i, i))
    return float(total)


def total_variation(grid: EdgeGrid) -> float:
    return float(np.abs(np.diff(grid.xi_plus)).sum() + np.abs(np.diff(grid.xi_minus)).sum())


def network_total_variation(grids: list[EdgeGrid]) -> float:
    return float(sum(total_variation(g) for g in grids))


def state_error(grids: list[EdgeGrid], reference: PhasorSolution, t: float) -> float:
    """max over edges, cells and both families of |xi - zeta| at time t."""
    worst = 0.0
    for k, g in enumerate(grids):
        zp, zm = reference_characteristic(reference, k, g.centers(), t)
        worst = max(worst, float(np.abs(g.xi_plus - zp).max()), float(np.abs(g.xi_minus - zm).max()))
    return worst


def max_error(history, reference: PhasorSolution) -> float:
    """Maximal error over a sequence of (t, grids) pairs."""
    return max((state_error(grids, reference, t) for t, grids in history), default=0.0)


@dataclass
class DiagnosticsTrace:
    times: list[float] = field(default_factory=list)
    lyapunov: list[float] = field(default_factory=list)
    tv: list[float] = field(default_factory=list)
    energy: list[float] = field(default_factory=list)
    max_err: list[float] | None = None


class TraceRecorder:
    """``on_step`` callback filling a :class:`DiagnosticsTrace`.

    With a reference solution the error is sampled at every full step
    after t = 0 (the running maximum is ``max_error``).
    """

    def __init__(self, network: Network, reference: PhasorSolution | None = None):
        self.network = network
        self.reference = reference
        self.trace = DiagnosticsTrace(max_err=[] if reference is not None else None)
        self.max_error = 0.0

    def __call__(self, t: float, grids: list[EdgeGrid]) -> None:
        tr = self.trace
        tr.times.append(t)
        tr.lyapunov.append(lyapunov(grids))
        tr.tv.append(network_total_variation(grids))
        tr.energy.append(physical_energy(self.network, grids))
        if self.reference is not None:
            err = state_error(grids, self.reference, t)
            tr.max_err.append(err)
            if t > 0:
                self.max_error = max(self.max_error, err)


class ErrorMonitor:
    """Running maximum of the error over full steps (t > 0)."""

    def __init__(self, reference: PhasorSolution):
        self.reference = reference
        self.value = 0.0

    def __call__(self, t: float, grids: list[EdgeGrid]) -> None:
        if t > 0:
            self.value = max(self.value, state_error(grids, self.reference, t))


def convergence_orders(errors) -> list[float]:
    """Log-ratio order estimates from (dx_i, err_i) pairs, one per consecutive pair."""
    errors = list(errors)
    if len(errors) < 2:
        raise ValueError("need at least two levels")
    if any(not err > 0 for _, err in errors):
        raise ValueError("errors must be positive")
    if any(h0 == h1 for (h0, _), (h1, _) in zip(errors[:-1], errors[1:])):
        raise ValueError("consecutive step sizes must differ")
    return [
        math.log(e0 / e1) / math.log(h0 / h1)
        for (h0, e0), (h1, e1) in zip(errors[:-1], errors[1:])
    ]


@dataclass(frozen=True)
class ConvergenceLevel:
    level: int
    dx: float
    error: float
    order: float | None


@dataclass
class ConvergenceStudy:
    limiter: str
    levels: list[ConvergenceLevel]

    @property
    def orders(self) -> list[float]:
        return [lv.order for lv in self.levels if lv.order is not None]


def analytic_decay_bound(network: Network, v0: float, t):
    return v0 * np.exp(-2.0 * decay_rate(network) * np.asarray(t))


def log_slope(times, values) -> float:
    """Least-squares slope of log(values) against times."""
    slope, _ = np.polyfit(np.asarray(times, float), np.log(np.asarray(values, float)), 1)
    return float(slope)
