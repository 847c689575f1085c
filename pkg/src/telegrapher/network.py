"""Power-network graph, line parameters and derived per-line constants."""
from __future__ import annotations

import math
from collections import Counter
from dataclasses import dataclass, field, replace
from enum import Enum


class NodeKind(str, Enum):
    GENERATOR = "generator"
    LOAD = "load"


@dataclass(frozen=True)
class LineParams:
    """Per-length line constants plus the line length.

    R, L, G, C are per unit length; ``length`` is in the same length unit.
    """

    R: float
    L: float
    G: float
    C: float
    length: float

    def violations(self) -> list[str]:
        bad = [name for name in ("R", "L", "G", "C", "length") if not getattr(self, name) > 0]
        return [f"non-positive parameter {name}" for name in bad]


@dataclass(frozen=True)
class DerivedLineConstants:
    lam: float  # wave speed 1/sqrt(LC)
    c: float  # sqrt(L/C)
    a: float  # R/L + G/C
    b: float  # R/L - G/C


def derived_constants(params: LineParams) -> DerivedLineConstants:
    L, C = params.L, params.C
    return DerivedLineConstants(
        lam=1.0 / math.sqrt(L * C),
        c=math.sqrt(L / C),
        a=params.R / L + params.G / C,
        b=params.R / L - params.G / C,
    )


@dataclass(frozen=True)
class Node:
    """A generator (prescribed voltage phasor) or a load (prescribed net current phasor).

    For a load the phasor is the net current flowing out of the node into its lines.
    """

    id: str
    kind: NodeKind
    phasor: complex

    @property
    def is_generator(self) -> bool:
        return self.kind is NodeKind.GENERATOR


@dataclass(frozen=True)
class Edge:
    start: str
    end: str
    params: LineParams

    def flipped(self) -> "Edge":
        return Edge(self.end, self.start, self.params)


def orientation_sign(edge: Edge, node_id: str) -> int:
    """+1 if ``node_id`` is the end of ``edge``, -1 if it is the start."""
    if node_id == edge.end:
        return 1
    if node_id == edge.start:
        return -1
    raise ValueError(f"node {node_id!r} is not incident to edge {edge.start}->{edge.end}")


@dataclass(frozen=True)
class Network:
    nodes: tuple[Node, ...]
    edges: tuple[Edge, ...]
    omega: float
    _index: dict = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "nodes", tuple(self.nodes))
        object.__setattr__(self, "edges", tuple(self.edges))
        object.__setattr__(self, "_index", {n.id: k for k, n in enumerate(self.nodes)})

    def index(self, node_id: str) -> int:
        return self._index[node_id]

    def node(self, node_id: str) -> Node:
        return self.nodes[self._index[node_id]]

    def incident(self, node_id: str) -> list[int]:
        """Indices of edges touching ``node_id``, in edge order."""
        return [k for k, e in enumerate(self.edges) if node_id in (e.start, e.end)]

    def homogeneous(self) -> "Network":
        """Same graph with all boundary phasors set to zero."""
        return replace(self, nodes=tuple(replace(n, phasor=0j) for n in self.nodes))

    def with_edge_flipped(self, k: int) -> "Network":
        edges = list(self.edges)
        edges[k] = edges[k].flipped()
        return replace(self, edges=tuple(edges))


@dataclass
class ValidationReport:
    violations: list[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.violations

    def __bool__(self) -> bool:
        return self.ok


def validate(network: Network) -> ValidationReport:
    report = ValidationReport()
    v = report.violations
    if not network.omega > 0:
        v.append("non-positive omega")
    ids = [n.id for n in network.nodes]
    for node_id, count in Counter(ids).items():
        if count > 1:
            v.append(f"duplicate node id {node_id!r}")
    known = set(ids)
    for k, e in enumerate(network.edges):
        for problem in e.params.violations():
            v.append(f"edge {k} ({e.start}->{e.end}): {problem}")
        if e.start == e.end:
            v.append(f"edge {k}: self-loop at {e.start!r}")
        for end in (e.start, e.end):
            if end not in known:
                v.append(f"edge {k}: dangling edge, unknown node {end!r}")
    touched = {x for e in network.edges for x in (e.start, e.end)}
    for node_id in ids:
        if node_id not in touched:
            v.append(f"node {node_id!r} has no incident edge")
    if ids and not _connected(ids, network.edges):
        v.append("disconnected graph")
    return report


def _connected(ids: list[str], edges) -> bool:
    adj: dict[str, set[str]] = {i: set() for i in ids}
    for e in edges:
        if e.start in adj and e.end in adj:
            adj[e.start].add(e.end)
            adj[e.end].add(e.start)
    seen = {ids[0]}
    stack = [ids[0]]
    while stack:
        for nb in adj[stack.pop()]:
            if nb not in seen:
                seen.add(nb)
                stack.append(nb)
    return len(seen) == len(adj)


def decay_rate(network: Network) -> float:
    """min over edges of min(R/L, G/C)."""
    return min(min(e.params.R / e.params.L, e.params.G / e.params.C) for e in network.edges)
