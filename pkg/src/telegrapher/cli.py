"""Command line entry point: simulate, converge, power, validate.

Exit status: 0 success, 1 config/validation error, 2 numerical error.
"""
from __future__ import annotations

import argparse
import logging
import sys
from dataclasses import replace
from pathlib import Path

from .analytic import SingularAdmittanceError, apparent_power, solve_node_phasors
from .io import (
    ConfigError,
    RunConfig,
    _read_yaml,
    fields_name,
    load_run_config,
    network_from_dict,
    parse_levels,
    write_convergence,
    write_fields,
    write_power,
    write_trace,
)
from .network import validate
from .runs import convergence_study, simulate
from .solver import CFLError, Limiter

log = logging.getLogger("telegrapher")


def _config(args) -> RunConfig:
    cfg = load_run_config(args.config)
    overrides = {}
    if getattr(args, "limiter", None):
        overrides["limiter"] = Limiter(args.limiter)
    if getattr(args, "cfl", None) is not None:
        overrides["cfl"] = args.cfl
    if getattr(args, "dx", None) is not None:
        overrides["dx_target"] = args.dx
    if getattr(args, "t_end", None) is not None:
        overrides["t_end"] = args.t_end
    try:
        cfg.scheme = replace(cfg.scheme, **overrides)
    except ValueError as exc:
        raise ConfigError(str(exc)) from None
    if getattr(args, "init", None):
        cfg.init = args.init
    if getattr(args, "homogeneous", False):
        cfg.homogeneous = True
    if getattr(args, "levels", None):
        cfg.levels = parse_levels(args.levels)
    return cfg


def _out(args) -> Path:
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    return out


def cmd_simulate(args) -> int:
    cfg = _config(args)
    out = _out(args)
    snaps = cfg.snapshots or [cfg.scheme.t_end]
    res = simulate(cfg.network, cfg.scheme, cfg.init, cfg.homogeneous, snaps, bool(cfg.outputs.get("error")))
    if cfg.outputs.get("fields", True):
        for t, grids in sorted(res.snapshots.items()):
            write_fields(out / fields_name(t), cfg.network, grids)
    if cfg.outputs.get("lyapunov", True) or cfg.outputs.get("tv", True) or cfg.outputs.get("error"):
        write_trace(out / "trace.csv", res.trace, cfg.outputs)
    if res.max_error is not None:
        print(f"max error {res.max_error:.6e}")
    print(f"{len(res.trace.times) - 1} steps to t = {res.trace.times[-1]:g}; output in {out}")
    return 0


def cmd_converge(args) -> int:
    cfg = _config(args)
    out = _out(args)
    limiters = [Limiter(args.limiter)] if args.limiter else list(Limiter)
    t_end = args.t_end  # default: one period
    studies = []
    for lim in limiters:
        st = convergence_study(cfg.network, cfg.levels, lim, cfg.scheme.cfl, t_end)
        studies.append(st)
        for lv in st.levels:
            order = "" if lv.order is None else f"{lv.order:.3f}"
            print(f"{lim.value:7s} i={lv.level:2d} dx={lv.dx:.3e} err={lv.error:.6e} {order}")
    write_convergence(out / "convergence.csv", studies)
    return 0


def cmd_power(args) -> int:
    cfg = _config(args)
    out = _out(args)
    sol = solve_node_phasors(cfg.network)
    power = apparent_power(sol)
    write_power(out / "power.csv", sol, power)
    for n, V, S in zip(cfg.network.nodes, sol.node_voltages, power.S):
        print(f"{n.id:8s} V={V:.6g} P={S.real:.6g} Q={S.imag:.6g}")
    return 0


def cmd_validate(args) -> int:
    doc = _read_yaml(args.config)
    if "omega" not in doc and isinstance(doc.get("network"), str):
        path = Path(args.config).parent / doc["network"]
        doc = _read_yaml(path)
    elif "omega" not in doc:
        doc = doc.get("network")
    report = validate(network_from_dict(doc))
    if report.ok:
        print("ok")
        return 0
    for v in report.violations:
        print(v)
    return 1


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="telegrapher", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp, scheme=True):
        sp.add_argument("--config", required=True, help="network or run file (YAML)")
        if scheme:
            sp.add_argument("--limiter", choices=[x.value for x in Limiter])
            sp.add_argument("--cfl", type=float)
            sp.add_argument("--dx", type=float, help="target spatial step")
            sp.add_argument("--t-end", type=float, dest="t_end")
        sp.add_argument("--out", default=".", help="output directory")

    sp = sub.add_parser("simulate", help="run the split scheme and write fields/trace CSVs")
    common(sp)
    sp.add_argument("--init", choices=["zero", "analytic"])
    sp.add_argument("--homogeneous", action="store_true", help="zero boundary data")
    sp.set_defaults(func=cmd_simulate)

    sp = sub.add_parser("converge", help="error and order estimates at dx = 2^-i")
    common(sp)
    sp.add_argument("--levels", help="i..j (default 1..9)")
    sp.set_defaults(func=cmd_converge)

    sp = sub.add_parser("power", help="nodal phasors and P, Q")
    common(sp, scheme=False)
    sp.set_defaults(func=cmd_power)

    sp = sub.add_parser("validate", help="check a network file")
    common(sp, scheme=False)
    sp.set_defaults(func=cmd_validate)
    return p


def main(argv=None) -> int:
    logging.basicConfig(level=logging.WARNING, format="%(levelname)s %(message)s")
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except ConfigError as exc:
        log.error("%s", exc)
        return 1
    except (CFLError, SingularAdmittanceError) as exc:
        log.error("%s", exc)
        return 2
    except ValueError as exc:  # parallel edges in the admittance path
        log.error("%s", exc)
        return 1


if __name__ == "__main__":
    sys.exit(main())
