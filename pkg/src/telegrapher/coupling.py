"""Ghost cells at network nodes.

Every incident line is viewed from the node ("node frame"): the incoming
family travels away from the node, the outgoing one arrives at it, and the
current counts as flowing out of the node into the line. A line that ends
at the node is mirrored x -> l - x into this frame, which maps
(xi+, xi-) to (-xi-, -xi+).

The coupling relation is imposed on the values at the node position
itself; ghost cells are then filled by linear extrapolation through that
node value and the nearest interior cell.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .network import Network, derived_constants, orientation_sign


@dataclass(frozen=True)
class CouplingMatrices:
    M: np.ndarray
    S: np.ndarray
    U: np.ndarray
    Minv: np.ndarray


def build_coupling_matrices(c) -> CouplingMatrices:
    c = np.asarray(c, dtype=float)
    n = c.size
    if n < 1 or np.any(c <= 0):
        raise ValueError("need at least one positive characteristic ratio")
    M = np.zeros((n, n))
    M[0, :] = 1.0
    for k in range(1, n):
        M[k, k - 1] = c[k - 1]
        M[k, k] = -c[k]
    S = np.eye(n)
    S[0, 0] = -1.0
    Minv = np.linalg.inv(M)
    return CouplingMatrices(M=M, S=S, U=Minv @ S @ M, Minv=Minv)


def coupling_determinant(c) -> float:
    """Closed form of det(M)."""
    c = np.asarray(c, dtype=float)
    return -((-1) ** c.size) * float(np.prod(c)) * float(np.sum(1.0 / c))


def load_ghost(mats: CouplingMatrices, outgoing, i_n: float) -> np.ndarray:
    """Incoming node values for a load drawing net current ``i_n`` out of the node.

    ``outgoing`` holds the outgoing characteristic of each incident line at
    the node, in node frame.
    """
    return mats.U @ np.asarray(outgoing, dtype=float) + mats.Minv[:, 0] * i_n


def generator_ghost(c, outgoing, v_n: float) -> np.ndarray:
    return np.asarray(outgoing, dtype=float) + v_n / np.asarray(c, dtype=float)


def extrapolate_to_node(u1, u2):
    """Value at the node from the two nearest cell centres (at dx/2 and 3dx/2)."""
    return 1.5 * np.asarray(u1) - 0.5 * np.asarray(u2)


def second_ghost(boundary, u1):
    """Linear extrapolation through ``boundary`` and ``u1`` one spacing beyond ``boundary``."""
    return 2.0 * np.asarray(boundary) - np.asarray(u1)


@dataclass(frozen=True)
class EdgeEnd:
    edge: int
    at_start: bool

    @property
    def sign(self) -> int:
        """orientation sign of the edge at this node."""
        return -1 if self.at_start else 1


def orient_edge_end(network: Network, edge: int, node_id: str) -> EdgeEnd:
    return EdgeEnd(edge, orientation_sign(network.edges[edge], node_id) < 0)


def node_frame(end: EdgeEnd, xi_plus: np.ndarray, xi_minus: np.ndarray, depth: int = 2):
    """(incoming, outgoing) cell values nearest the node first."""
    if end.at_start:
        return xi_plus[:depth], xi_minus[:depth]
    return -xi_minus[::-1][:depth], -xi_plus[::-1][:depth]


@dataclass
class GhostCells:
    """Two ghost values per family and side.

    ``lo_*`` are ordered outward-to-inward ([-3dx/2, -dx/2]); ``hi_*``
    inward-to-outward ([l + dx/2, l + 3dx/2]), so they concatenate
    directly around the interior cells.
    """

    lo_plus: np.ndarray
    lo_minus: np.ndarray
    hi_plus: np.ndarray
    hi_minus: np.ndarray

    @classmethod
    def constant(cls, plus: float, minus: float) -> "GhostCells":
        return cls(np.full(2, plus), np.full(2, minus), np.full(2, plus), np.full(2, minus))


@dataclass(frozen=True)
class NodeCoupling:
    node: int
    ends: tuple[EdgeEnd, ...]
    c: np.ndarray
    mats: CouplingMatrices | None  # loads only


def coupling_plan(network: Network) -> list[NodeCoupling]:
    plan = []
    for k, node in enumerate(network.nodes):
        ends = tuple(orient_edge_end(network, e, node.id) for e in network.incident(node.id))
        c = np.array([derived_constants(network.edges[end.edge].params).c for end in ends])
        mats = None if node.is_generator else build_coupling_matrices(c)
        plan.append(NodeCoupling(k, ends, c, mats))
    return plan


def boundary_signal(phasor: complex, omega: float, t: float) -> float:
    return (phasor * complex(math.cos(omega * t), math.sin(omega * t))).real


def node_values(nc: NodeCoupling, network: Network, grids, t: float):
    """Incoming and outgoing node values (node frame) on every incident line."""
    near = [node_frame(end, grids[end.edge].xi_plus, grids[end.edge].xi_minus) for end in nc.ends]
    out = np.array([extrapolate_to_node(o[0], o[1]) for _, o in near])
    node = network.nodes[nc.node]
    signal = boundary_signal(node.phasor, network.omega, t)
    if node.is_generator:
        inc = generator_ghost(nc.c, out, signal)
    else:
        inc = load_ghost(nc.mats, out, signal)
    return near, inc, out


def assemble_ghosts(network: Network, plan: list[NodeCoupling], grids, t: float) -> list[GhostCells]:
    """Ghost cells for all edges from frozen interior states at time ``t``."""
    ghosts = [GhostCells(*(np.zeros(2) for _ in range(4))) for _ in network.edges]
    for nc in plan:
        near, inc, out = node_values(nc, network, grids, t)
        for j, end in enumerate(nc.ends):
            (in_cells, out_cells) = near[j]
            gi = _ghosts(inc[j], in_cells[0])
            go = _ghosts(out[j], out_cells[0])
            g = ghosts[end.edge]
            if end.at_start:
                g.lo_plus = gi[::-1].copy()
                g.lo_minus = go[::-1].copy()
            else:
                g.hi_minus = -gi
                g.hi_plus = -go
    return ghosts


def _ghosts(node_value: float, u1: float) -> np.ndarray:
    """[ghost at -dx/2, ghost at -3dx/2] on the line through (0, node_value), (dx/2, u1)."""
    return np.array([2.0 * node_value - u1, 4.0 * node_value - 3.0 * u1])
