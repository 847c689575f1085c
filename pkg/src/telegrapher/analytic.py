"""Exact time-periodic solution of the network per Fourier mode.

Every line carries V(x), I(x) solving the mode-m phasor ODEs
V' = -(R + jmwL) I,  I' = -(G + jmwC) V; nodal voltages come from the
admittance system I = Y V with generator voltages eliminated.
"""
from __future__ import annotations

import cmath
import warnings
from dataclasses import dataclass

import numpy as np
import scipy.linalg

from .network import LineParams, Network


class SingularAdmittanceError(ArithmeticError):
    pass


@dataclass(frozen=True)
class ModeLineConstants:
    Y0: complex  # characteristic admittance
    gamma: complex  # propagation constant
    m: int


def mode_constants(params: LineParams, m: int, omega: float) -> ModeLineConstants:
    z = complex(params.R, m * omega * params.L)
    y = complex(params.G, m * omega * params.C)
    # product of the two principal roots, not the root of the product
    return ModeLineConstants(Y0=cmath.sqrt(y) / cmath.sqrt(z), gamma=cmath.sqrt(z) * cmath.sqrt(y), m=m)


def line_profile(consts: ModeLineConstants, V0: complex, Vl: complex, length: float, x):
    """Complex voltage and current along a line with end voltages V0 (x=0) and Vl (x=length)."""
    x = np.asarray(x, dtype=float)
    g = consts.gamma
    sh = np.sinh(g * length)
    V = (Vl * np.sinh(g * x) + V0 * np.sinh(g * (length - x))) / sh
    I = -(consts.Y0 / sh) * (Vl * np.cosh(g * x) - V0 * np.cosh(g * (length - x)))
    return V, I


def assemble_admittance(network: Network, m: int) -> np.ndarray:
    n = len(network.nodes)
    Y = np.zeros((n, n), dtype=complex)
    seen = set()
    for e in network.edges:
        pair = frozenset((e.start, e.end))
        if pair in seen:
            raise ValueError(f"parallel edges between {e.start!r} and {e.end!r} are not supported")
        seen.add(pair)
        k = mode_constants(e.params, m, network.omega)
        gl = k.gamma * e.params.length
        i, j = network.index(e.start), network.index(e.end)
        Y[i, i] += k.Y0 / cmath.tanh(gl)
        Y[j, j] += k.Y0 / cmath.tanh(gl)
        Y[i, j] = Y[j, i] = -k.Y0 / cmath.sinh(gl)
    return Y


@dataclass(frozen=True)
class PhasorSolution:
    network: Network
    m: int
    node_voltages: np.ndarray
    admittance: np.ndarray
    residual: float  # relative residual of the nodal system

    def boundary_phasors(self, k: int) -> tuple[complex, complex]:
        e = self.network.edges[k]
        V = self.node_voltages
        return complex(V[self.network.index(e.start)]), complex(V[self.network.index(e.end)])

    def profile(self, k: int, x):
        e = self.network.edges[k]
        V0, Vl = self.boundary_phasors(k)
        return line_profile(mode_constants(e.params, self.m, self.network.omega), V0, Vl, e.params.length, x)

    def net_currents(self) -> np.ndarray:
        return self.admittance @ self.node_voltages


def solve_node_phasors(network: Network, m: int = 1) -> PhasorSolution:
    """Nodal voltages from generator voltages and load net currents."""
    Y = assemble_admittance(network, m)
    gen = np.array([n.is_generator for n in network.nodes])
    prescribed = np.array([n.phasor for n in network.nodes], dtype=complex)
    V = np.where(gen, prescribed, 0)
    loads = np.flatnonzero(~gen)
    if loads.size:
        shifted = (prescribed - Y @ V)[loads]
        Yr = Y[np.ix_(loads, loads)]
        with warnings.catch_warnings():
            warnings.simplefilter("ignore", scipy.linalg.LinAlgWarning)
            lu, piv = scipy.linalg.lu_factor(Yr)
        if not np.abs(np.diag(lu)).min() > 1e-12 * np.abs(Yr).max():
            raise SingularAdmittanceError("reduced admittance matrix is singular")
        V[loads] = scipy.linalg.lu_solve((lu, piv), shifted)
    residual = 0.0
    if loads.size:
        I = (Y @ V)[loads]
        target = prescribed[loads]
        residual = float(np.abs(I - target).max() / max(np.abs(target).max(), np.abs(Y).max() * np.abs(V).max(), 1e-300))
    return PhasorSolution(network, m, V, Y, residual)


def to_characteristic(v, i, params: LineParams):
    """(xi_plus, xi_minus) = (i +/- sqrt(C/L) v) / 2."""
    w = np.sqrt(params.C / params.L) * np.asarray(v)
    i = np.asarray(i)
    return 0.5 * (i + w), 0.5 * (i - w)


def from_characteristic(xi_plus, xi_minus, params: LineParams):
    xi_plus, xi_minus = np.asarray(xi_plus), np.asarray(xi_minus)
    return np.sqrt(params.L / params.C) * (xi_plus - xi_minus), xi_plus + xi_minus


def evaluate_time_domain(sol: PhasorSolution, k: int, x, t: float):
    """Real voltage and current on edge ``k`` at positions ``x`` and time ``t``."""
    V, I = sol.profile(k, x)
    rot = cmath.exp(1j * sol.m * sol.network.omega * t)
    return np.real(V * rot), np.real(I * rot)


def reference_characteristic(sol: PhasorSolution, k: int, x, t: float):
    v, i = evaluate_time_domain(sol, k, x, t)
    return to_characteristic(v, i, sol.network.edges[k].params)


@dataclass(frozen=True)
class PowerQuantities:
    S: np.ndarray

    @property
    def P(self) -> np.ndarray:
        return self.S.real

    @property
    def Q(self) -> np.ndarray:
        return self.S.imag


def apparent_power(sol: PhasorSolution, Y: np.ndarray | None = None) -> PowerQuantities:
    """S = diag(V) conj(Y) conj(V)."""
    Y = sol.admittance if Y is None else Y
    V = sol.node_voltages
    return PowerQuantities(V * (np.conj(Y) @ np.conj(V)))


def powerflow_sums(V: np.ndarray, Y: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """P and Q from the trigonometric powerflow equations with polar voltages."""
    G, B = Y.real, Y.imag
    mag, ang = np.abs(V), np.angle(V)
    d = ang[:, None] - ang[None, :]
    mm = mag[:, None] * mag[None, :]
    P = (mm * (G * np.cos(d) + B * np.sin(d))).sum(axis=1)
    Q = (mm * (G * np.sin(d) - B * np.cos(d))).sum(axis=1)
    return P, Q
