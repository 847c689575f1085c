"""Strang-split finite-volume scheme in characteristic variables.

Each step is ODE(dt/2) o PDE(dt) o ODE(dt/2): the ODE part is the exact
linear decay, the PDE part a flux-limited Lax-Wendroff transport with
xi+ moving right and xi- moving left.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from enum import Enum
from typing import Callable

import numpy as np

from .coupling import GhostCells, assemble_ghosts, coupling_plan
from .network import DerivedLineConstants, Network, derived_constants

CFL_SLACK = 1e-12


class CFLError(ArithmeticError):
    pass


class Limiter(str, Enum):
    MINMOD = "minmod"
    NONE = "none"


@dataclass
class EdgeGrid:
    """Cell averages of (xi+, xi-) at centres x_k = (k + 1/2) dx."""

    dx: float
    xi_plus: np.ndarray
    xi_minus: np.ndarray

    @property
    def n_cells(self) -> int:
        return self.xi_plus.size

    @property
    def length(self) -> float:
        return self.dx * self.n_cells

    def centers(self) -> np.ndarray:
        return (np.arange(self.n_cells) + 0.5) * self.dx

    def copy(self) -> "EdgeGrid":
        return EdgeGrid(self.dx, self.xi_plus.copy(), self.xi_minus.copy())


def cells_for(length: float, dx_target: float) -> int:
    return max(4, int(round(length / dx_target)))


def zero_grids(network: Network, dx_target: float) -> list[EdgeGrid]:
    grids = []
    for e in network.edges:
        n = cells_for(e.params.length, dx_target)
        grids.append(EdgeGrid(e.params.length / n, np.zeros(n), np.zeros(n)))
    return grids


@dataclass(frozen=True)
class OdeStepMatrix:
    """exp(-[[a, b], [b, a]] dt) = [[r, s], [s, r]]."""

    r: float
    s: float
    dt: float

    @property
    def eigenvalues(self) -> tuple[float, float]:
        return self.r + self.s, self.r - self.s

    def as_array(self) -> np.ndarray:
        return np.array([[self.r, self.s], [self.s, self.r]])


def build_ode_matrix(a: float, b: float, dt: float) -> OdeStepMatrix:
    decay = math.exp(-a * dt)
    return OdeStepMatrix(decay * math.cosh(b * dt), -decay * math.sinh(b * dt), dt)


def source_coefficients(consts: DerivedLineConstants) -> tuple[float, float]:
    """Entries (diagonal, off-diagonal) of the decay matrix acting on (xi+, xi-).

    Substituting xi+- = (i +- sqrt(C/L) v)/2 into the line equations gives
    decay rates R/L (current) and G/C (voltage), i.e. a/2 and b/2.
    """
    return 0.5 * consts.a, 0.5 * consts.b


def ode_step(grid: EdgeGrid, M: OdeStepMatrix) -> EdgeGrid:
    p, m = grid.xi_plus, grid.xi_minus
    return EdgeGrid(grid.dx, M.r * p + M.s * m, M.s * p + M.r * m)


def minmod_phi(theta):
    return np.clip(theta, 0.0, 1.0)


def _limited(diff: np.ndarray, upwind: np.ndarray, limiter: Limiter) -> np.ndarray:
    """phi(upwind/diff) * diff, with zero where diff == 0."""
    if limiter is Limiter.NONE:
        return diff
    out = np.zeros_like(diff)
    nz = diff != 0.0
    with np.errstate(over="ignore"):  # huge ratios clip to 1 anyway
        out[nz] = minmod_phi(upwind[nz] / diff[nz]) * diff[nz]
    return out


def advect_right(u: np.ndarray, lo: np.ndarray, hi: np.ndarray, nu: float, limiter: Limiter) -> np.ndarray:
    """One limited Lax-Wendroff step of u_t + lam u_x = 0; nu = lam dt/dx."""
    w = np.concatenate([lo, u, hi[:1]])  # cells -2 .. n
    d = np.diff(w)  # d[k] = w[k+1]-w[k], interface k - 3/2 in cell indices
    # interfaces j-1/2 for j = -1..n  ->  d[0..n+1]; upwind neighbour is d[k-1]
    lim = _limited(d[1:], d[:-1], limiter)  # interfaces j-1/2 for j = 0..n
    n = u.size
    upwind = u - nu * (u - w[1 : n + 1])
    return upwind - 0.5 * nu * (1.0 - nu) * (lim[1:] - lim[:-1])


def advect_left(u: np.ndarray, lo: np.ndarray, hi: np.ndarray, nu: float, limiter: Limiter) -> np.ndarray:
    """Mirror of :func:`advect_right` for a left-moving wave."""
    return advect_right(u[::-1], hi[::-1], lo[::-1], nu, limiter)[::-1]


def pde_step(grid: EdgeGrid, ghosts: GhostCells, lam: float, dt: float, limiter: Limiter = Limiter.MINMOD) -> EdgeGrid:
    nu = lam * dt / grid.dx
    if nu > 1.0 + CFL_SLACK:
        raise CFLError(f"CFL number {nu:.6g} exceeds 1")
    plus = advect_right(grid.xi_plus, ghosts.lo_plus, ghosts.hi_plus, nu, limiter)
    minus = advect_left(grid.xi_minus, ghosts.lo_minus, ghosts.hi_minus, nu, limiter)
    return EdgeGrid(grid.dx, plus, minus)


@dataclass
class SchemeConfig:
    cfl: float = 0.8
    limiter: Limiter = Limiter.MINMOD
    dx_target: float = 2.0**-9
    t_end: float = 1.0

    def __post_init__(self):
        self.limiter = Limiter(self.limiter)
        if not 0 < self.cfl <= 1:
            raise ValueError("cfl must lie in (0, 1]")
        if not self.dx_target > 0:
            raise ValueError("dx_target must be positive")
        if not self.t_end >= 0:
            raise ValueError("t_end must be non-negative")


@dataclass
class SplitScheme:
    """A network prepared for time stepping."""

    network: Network
    config: SchemeConfig
    consts: list[DerivedLineConstants] = field(init=False)
    plan: list = field(init=False)

    def __post_init__(self):
        self.consts = [derived_constants(e.params) for e in self.network.edges]
        self.plan = coupling_plan(self.network)

    def time_step(self, grids: list[EdgeGrid]) -> float:
        """Global dt = cfl * min_e dx_e / lam_e."""
        return self.config.cfl * min(g.dx / k.lam for g, k in zip(grids, self.consts))

    def ode_matrices(self, dt: float) -> list[OdeStepMatrix]:
        return [build_ode_matrix(*source_coefficients(k), dt) for k in self.consts]

    def ghosts(self, grids: list[EdgeGrid], t: float, half: list[OdeStepMatrix]) -> list[GhostCells]:
        """Coupling ghosts at time level ``t``, advanced by the same ODE half-step as the interior."""
        return [ode_ghosts(g, M) for g, M in zip(assemble_ghosts(self.network, self.plan, grids, t), half)]

    def step(self, grids: list[EdgeGrid], t: float, dt: float) -> list[EdgeGrid]:
        half = self.ode_matrices(0.5 * dt)
        ghosts = self.ghosts(grids, t, half)
        out = []
        for g, gh, k, M in zip(grids, ghosts, self.consts, half):
            g = pde_step(ode_step(g, M), gh, k.lam, dt, self.config.limiter)
            out.append(ode_step(g, M))
        return out


def ode_ghosts(g: GhostCells, M: OdeStepMatrix) -> GhostCells:
    return GhostCells(
        M.r * g.lo_plus + M.s * g.lo_minus,
        M.s * g.lo_plus + M.r * g.lo_minus,
        M.r * g.hi_plus + M.s * g.hi_minus,
        M.s * g.hi_plus + M.r * g.hi_minus,
    )


def strang_step(grids: list[EdgeGrid], scheme: SplitScheme, t: float, dt: float) -> list[EdgeGrid]:
    return scheme.step(grids, t, dt)


def time_levels(t_end: float, dt: float, stops=()) -> np.ndarray:
    """0, dt, 2dt, ... up to ``t_end``; steps crossing a stop time are shortened to land on it."""
    if t_end <= 0:
        return np.zeros(1)
    marks = sorted({float(s) for s in stops if 0 < s < t_end} | {float(t_end)})
    times = [0.0]
    for mark in marks:
        n = max(1, math.ceil((mark - times[-1]) / dt - 1e-9))
        start = times[-1]
        times.extend(start + k * dt for k in range(1, n))
        times.append(mark)
    return np.array(times)


def run(
    scheme: SplitScheme,
    grids: list[EdgeGrid],
    t_end: float | None = None,
    on_step: Callable[[float, list[EdgeGrid]], None] | None = None,
    stops=(),
) -> list[EdgeGrid]:
    """Advance ``grids`` from t=0 to ``t_end``; ``on_step`` sees every time level incl. t=0."""
    t_end = scheme.config.t_end if t_end is None else t_end
    times = time_levels(t_end, scheme.time_step(grids), stops)
    if on_step:
        on_step(0.0, grids)
    for t0, t1 in zip(times[:-1], times[1:]):
        grids = scheme.step(grids, float(t0), float(t1 - t0))
        if on_step:
            on_step(float(t1), grids)
    return grids
