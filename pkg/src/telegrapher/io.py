"""Network/run config files (YAML) and CSV export."""
from __future__ import annotations

import csv
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np
import yaml

from .analytic import PhasorSolution, PowerQuantities, from_characteristic
from .diagnostics import ConvergenceStudy, DiagnosticsTrace
from .network import Edge, LineParams, Network, Node, NodeKind, validate
from .solver import EdgeGrid, SchemeConfig


class ConfigError(ValueError):
    pass


def fmt(x: float) -> str:
    return f"{float(x):.16e}"


def _number(value, where: str) -> float:
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        raise ConfigError(f"{where}: expected a number, got {value!r}")
    return float(value)


def _require(mapping, key: str, where: str):
    if not isinstance(mapping, dict):
        raise ConfigError(f"{where}: expected a mapping")
    if key not in mapping:
        raise ConfigError(f"{where}: missing field {key!r}")
    return mapping[key]


def network_from_dict(doc) -> Network:
    omega = _number(_require(doc, "omega", "network"), "omega")
    nodes = []
    for k, item in enumerate(_require(doc, "nodes", "network") or []):
        where = f"nodes[{k}]"
        kind = _require(item, "type", where)
        try:
            kind = NodeKind(kind)
        except ValueError:
            raise ConfigError(f"{where}.type: unknown node type {kind!r} (expected generator or load)") from None
        ph = _require(item, "phasor", where)
        phasor = complex(_number(_require(ph, "re", f"{where}.phasor"), f"{where}.phasor.re"),
                         _number(_require(ph, "im", f"{where}.phasor"), f"{where}.phasor.im"))
        nodes.append(Node(str(_require(item, "id", where)), kind, phasor))
    edges = []
    for k, item in enumerate(_require(doc, "edges", "network") or []):
        where = f"edges[{k}]"
        params = LineParams(*(_number(_require(item, f, where), f"{where}.{f}") for f in ("R", "L", "G", "C", "length")))
        edges.append(Edge(str(_require(item, "from", where)), str(_require(item, "to", where)), params))
    return Network(tuple(nodes), tuple(edges), omega)


def network_to_dict(network: Network) -> dict:
    return {
        "omega": network.omega,
        "nodes": [
            {"id": n.id, "type": n.kind.value, "phasor": {"re": n.phasor.real, "im": n.phasor.imag}}
            for n in network.nodes
        ],
        "edges": [
            {"from": e.start, "to": e.end, "R": e.params.R, "L": e.params.L, "G": e.params.G,
             "C": e.params.C, "length": e.params.length}
            for e in network.edges
        ],
    }


def _read_yaml(path) -> dict:
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise ConfigError(f"{path}: {exc.strerror}") from None
    try:
        doc = yaml.safe_load(text)
    except yaml.YAMLError as exc:
        raise ConfigError(f"{path}: {exc}") from None
    if not isinstance(doc, dict):
        raise ConfigError(f"{path}: top level must be a mapping")
    return doc


def checked(network: Network, source="network") -> Network:
    report = validate(network)
    if not report.ok:
        raise ConfigError(f"{source}: invalid network: " + "; ".join(report.violations))
    return network


def load_network(path) -> Network:
    doc = _read_yaml(path)
    try:
        return checked(network_from_dict(doc), path)
    except ConfigError as exc:
        raise ConfigError(f"{path}: {exc}") from None


def write_network(network: Network, path) -> None:
    Path(path).write_text(yaml.safe_dump(network_to_dict(network), sort_keys=False))


@dataclass
class RunConfig:
    network: Network
    scheme: SchemeConfig = field(default_factory=SchemeConfig)
    init: str = "zero"
    homogeneous: bool = False
    outputs: dict = field(default_factory=lambda: {"fields": True, "lyapunov": True, "tv": True, "error": False})
    snapshots: list[float] = field(default_factory=list)
    levels: list[int] = field(default_factory=lambda: list(range(1, 10)))


def load_run_config(path) -> RunConfig:
    """A run file (``network`` plus options) or a bare network file."""
    doc = _read_yaml(path)
    if "omega" in doc:
        return RunConfig(checked(network_from_dict(doc), path))
    net = _require(doc, "network", str(path))
    try:
        if isinstance(net, str):
            network = load_network(Path(path).parent / net)
        else:
            network = checked(network_from_dict(net), path)
        scheme = dict(doc.get("scheme") or {})
        unknown = set(scheme) - {"limiter", "cfl", "dx_target", "t_end"}
        if unknown:
            raise ConfigError(f"scheme: unknown fields {sorted(unknown)}")
        try:
            scheme_cfg = SchemeConfig(**scheme)
        except (TypeError, ValueError) as exc:
            raise ConfigError(f"scheme: {exc}") from None
        cfg = RunConfig(network, scheme_cfg)
        cfg.init = str(doc.get("init", cfg.init))
        if cfg.init not in ("zero", "analytic"):
            raise ConfigError(f"init: expected zero or analytic, got {cfg.init!r}")
        cfg.homogeneous = bool(doc.get("homogeneous", False))
        cfg.outputs.update(doc.get("outputs") or {})
        cfg.snapshots = [_number(s, "snapshots") for s in doc.get("snapshots") or []]
        if "levels" in doc:
            cfg.levels = parse_levels(doc["levels"])
    except ConfigError as exc:
        raise ConfigError(f"{path}: {exc}") from None
    return cfg


def parse_levels(value) -> list[int]:
    """'i..j', 'i', or a list of ints."""
    if isinstance(value, list):
        return [int(x) for x in value]
    text = str(value)
    try:
        if ".." in text:
            lo, hi = text.split("..")
            levels = list(range(int(lo), int(hi) + 1))
        else:
            levels = [int(text)]
    except ValueError:
        raise ConfigError(f"levels: cannot parse {value!r}") from None
    if not levels:
        raise ConfigError(f"levels: empty range {value!r}")
    return levels


def _write(path, header, rows) -> None:
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(header)
        w.writerows(rows)


def field_rows(network: Network, grids: list[EdgeGrid]):
    for k, (e, g) in enumerate(zip(network.edges, grids)):
        v, i = from_characteristic(g.xi_plus, g.xi_minus, e.params)
        for x, p, m, vv, ii in zip(g.centers(), g.xi_plus, g.xi_minus, v, i):
            yield [k, fmt(x), fmt(p), fmt(m), fmt(vv), fmt(ii)]


def write_fields(path, network: Network, grids: list[EdgeGrid]) -> None:
    _write(path, ["edge", "x", "xi_plus", "xi_minus", "v", "i"], field_rows(network, grids))


def fields_name(t: float) -> str:
    return f"fields_{t:.6f}.csv"


def write_trace(path, trace: DiagnosticsTrace, outputs: dict | None = None) -> None:
    outputs = outputs or {}
    cols = [("time", trace.times)]
    if outputs.get("lyapunov", True):
        cols += [("lyapunov", trace.lyapunov), ("energy", trace.energy)]
    if outputs.get("tv", True):
        cols.append(("tv", trace.tv))
    if trace.max_err is not None:
        cols.append(("error", trace.max_err))
    _write(path, [c for c, _ in cols], ([fmt(v) for v in row] for row in zip(*(vals for _, vals in cols))))


def write_convergence(path, studies: list[ConvergenceStudy]) -> None:
    rows = []
    for st in studies:
        for lv in st.levels:
            rows.append([st.limiter, lv.level, fmt(lv.dx), fmt(lv.error), "" if lv.order is None else fmt(lv.order)])
    _write(path, ["limiter", "level", "dx", "max_error", "order"], rows)


def power_rows(sol: PhasorSolution, power: PowerQuantities):
    for n, V, S in zip(sol.network.nodes, sol.node_voltages, power.S):
        yield [n.id, n.kind.value, fmt(V.real), fmt(V.imag), fmt(S.real), fmt(S.imag), fmt(S.real), fmt(S.imag)]


def write_power(path, sol: PhasorSolution, power: PowerQuantities) -> None:
    _write(path, ["node", "kind", "V_re", "V_im", "S_re", "S_im", "P", "Q"], power_rows(sol, power))


def read_csv(path) -> tuple[list[str], np.ndarray]:
    """Header and float matrix of a numeric CSV written by this module."""
    with open(path) as fh:
        rows = list(csv.reader(fh))
    return rows[0], np.array([[float(x) if x else np.nan for x in r] for r in rows[1:]])
