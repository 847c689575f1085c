import csv
import filecmp

import numpy as np
import pytest

from telegrapher import cli
from telegrapher.io import (
    ConfigError,
    fields_name,
    load_network,
    load_run_config,
    parse_levels,
    read_csv,
    write_network,
)
from telegrapher.network import Edge, LineParams, Network, Node, NodeKind
from telegrapher.solver import CFLError

from .conftest import CONFIGS


def read_csv_named(path):
    with open(path) as fh:
        rows = list(csv.reader(fh))
    return rows[0], rows[1:]


def test_load_single_line():
    net = load_network(CONFIGS / "single_line.yaml")
    assert (len(net.nodes), len(net.edges), net.omega) == (2, 1, 4.0)


def test_load_three_spoke():
    net = load_network(CONFIGS / "three_spoke.yaml")
    assert (len(net.nodes), len(net.edges)) == (4, 3)
    n1 = net.node("N1")
    assert n1.kind is NodeKind.LOAD and n1.phasor == 10 + 3j
    assert [n.id for n in net.nodes] == ["N1", "N2", "N3", "N4"]


def test_unknown_node_type_names_field(tmp_path):
    text = (CONFIGS / "single_line.yaml").read_text().replace("type: load", "type: battery")
    p = tmp_path / "bad.yaml"
    p.write_text(text)
    with pytest.raises(ConfigError, match=r"nodes\[1\]\.type"):
        load_network(p)


@pytest.mark.parametrize(
    "old,new,match",
    [("R: 4.0", "R: -4.0", "non-positive parameter R"), ("length: 1.0", "length: x", r"edges\[0\]\.length"),
     ("omega: 4.0", "omega: [", "bad.yaml")],
)
def test_config_errors(tmp_path, old, new, match):
    p = tmp_path / "bad.yaml"
    p.write_text((CONFIGS / "single_line.yaml").read_text().replace(old, new))
    with pytest.raises(ConfigError, match=match):
        load_network(p)


def test_round_trip(tmp_path, spoke_net):
    odd = Network(
        spoke_net.nodes + (Node("x", NodeKind.LOAD, 0.1 - 1e-17j),),
        spoke_net.edges + (Edge("x", "N1", LineParams(1 / 3, 0.7, 1e-9, 2.5, 0.1)),),
        spoke_net.omega,
    )
    for net in (spoke_net, odd):
        write_network(net, tmp_path / "n.yaml")
        assert load_network(tmp_path / "n.yaml") == net


def test_run_config():
    cfg = load_run_config(CONFIGS / "single_line_run.yaml")
    assert cfg.init == "analytic" and cfg.snapshots == [0.5, 1.0]
    assert cfg.scheme.dx_target == 2**-9 and cfg.scheme.limiter.value == "minmod"
    assert load_run_config(CONFIGS / "three_spoke_decay.yaml").homogeneous


def test_parse_levels():
    assert parse_levels("1..4") == [1, 2, 3, 4]
    assert parse_levels("7") == [7]
    assert parse_levels([2, 3]) == [2, 3]
    for bad in ("a..b", "5..2"):
        with pytest.raises(ConfigError):
            parse_levels(bad)


def _simulate(out, *extra):
    return cli.main(["simulate", "--config", str(CONFIGS / "three_spoke.yaml"), "--dx", "0.125",
                     "--t-end", "0.25", "--out", str(out), *extra])


def test_simulate_writes_fields_and_trace(tmp_path):
    assert _simulate(tmp_path, "--init", "analytic") == 0
    header, data = read_csv(tmp_path / fields_name(0.25))
    assert header == ["edge", "x", "xi_plus", "xi_minus", "v", "i"]
    assert set(data[:, 0]) == {0.0, 1.0, 2.0}
    # v, i columns agree with the characteristic columns on edge 0 (c = sqrt 6)
    e0 = data[data[:, 0] == 0]
    np.testing.assert_allclose(e0[:, 4], np.sqrt(6) * (e0[:, 2] - e0[:, 3]), rtol=1e-14)
    np.testing.assert_allclose(e0[:, 5], e0[:, 2] + e0[:, 3], rtol=1e-14, atol=1e-15)
    header, trace = read_csv(tmp_path / "trace.csv")
    assert header[:4] == ["time", "lyapunov", "energy", "tv"]
    assert trace[0, 0] == 0.0 and trace[-1, 0] == 0.25


def test_zero_horizon_writes_initial_snapshot_only(tmp_path):
    assert cli.main(["simulate", "--config", str(CONFIGS / "single_line.yaml"), "--t-end", "0",
                     "--dx", "0.25", "--out", str(tmp_path)]) == 0
    assert sorted(p.name for p in tmp_path.glob("fields_*.csv")) == [fields_name(0.0)]
    _, trace = read_csv(tmp_path / "trace.csv")
    assert trace.shape[0] == 1


def test_outputs_are_bitwise_deterministic(tmp_path):
    a, b = tmp_path / "a", tmp_path / "b"
    assert _simulate(a) == 0 and _simulate(b) == 0
    names = sorted(p.name for p in a.iterdir())
    match, mismatch, errors = filecmp.cmpfiles(a, b, names, shallow=False)
    assert match == names and not mismatch and not errors


def test_full_precision_numbers(tmp_path):
    _simulate(tmp_path)
    line = (tmp_path / "trace.csv").read_text().splitlines()[-1]
    assert all("e" in field and len(field.split("e")[0].lstrip("-")) == 18 for field in line.split(","))


def test_power_csv(tmp_path):
    assert cli.main(["power", "--config", str(CONFIGS / "three_spoke.yaml"), "--out", str(tmp_path)]) == 0
    header, data = read_csv_named(tmp_path / "power.csv")
    assert header == ["node", "kind", "V_re", "V_im", "S_re", "S_im", "P", "Q"]
    rows = {r[0]: r for r in data}
    assert len(rows) == 4
    V = complex(float(rows["N1"][2]), float(rows["N1"][3]))
    S = complex(float(rows["N1"][4]), float(rows["N1"][5]))
    assert abs((S / V).conjugate() - (10 + 3j)) < 1e-12
    assert complex(float(rows["N2"][2]), float(rows["N2"][3])) == 4 + 4j


def test_power_single_line(tmp_path):
    assert cli.main(["power", "--config", str(CONFIGS / "single_line.yaml"), "--out", str(tmp_path)]) == 0
    _, data = read_csv_named(tmp_path / "power.csv")
    assert [r[0] for r in data] == ["start", "end"]
    assert (float(data[0][2]), float(data[0][3])) == (5.0, 3.0)


def test_converge_single_level(tmp_path, capsys):
    assert cli.main(["converge", "--config", str(CONFIGS / "single_line.yaml"), "--levels", "3",
                     "--limiter", "none", "--out", str(tmp_path)]) == 0
    header, data = read_csv_named(tmp_path / "convergence.csv")
    assert header == ["limiter", "level", "dx", "max_error", "order"]
    assert len(data) == 1 and data[0][4] == "" and float(data[0][3]) > 0


def test_converge_both_limiters(tmp_path):
    assert cli.main(["converge", "--config", str(CONFIGS / "single_line.yaml"), "--levels", "3..4",
                     "--out", str(tmp_path)]) == 0
    _, data = read_csv_named(tmp_path / "convergence.csv")
    assert [r[0] for r in data] == ["minmod", "minmod", "none", "none"]
    assert data[1][4] != ""


def test_validate_subcommand(tmp_path, capsys):
    assert cli.main(["validate", "--config", str(CONFIGS / "three_spoke.yaml")]) == 0
    assert cli.main(["validate", "--config", str(CONFIGS / "single_line_run.yaml")]) == 0
    p = tmp_path / "bad.yaml"
    p.write_text((CONFIGS / "single_line.yaml").read_text().replace("G: 2.0", "G: 0.0"))
    assert cli.main(["validate", "--config", str(p)]) == 1
    assert "non-positive parameter G" in capsys.readouterr().out


def test_exit_codes(tmp_path, monkeypatch):
    assert cli.main(["simulate", "--config", str(tmp_path / "missing.yaml"), "--out", str(tmp_path)]) == 1
    assert _simulate(tmp_path, "--cfl", "1.5") == 1

    def boom(*a, **k):
        raise CFLError("CFL number 1.2 exceeds 1")

    monkeypatch.setattr(cli, "simulate", boom)
    assert _simulate(tmp_path) == 2


def test_singular_admittance_exit_code(tmp_path, monkeypatch):
    from telegrapher.analytic import SingularAdmittanceError

    def boom(*a, **k):
        raise SingularAdmittanceError("reduced admittance matrix is singular")

    monkeypatch.setattr(cli, "solve_node_phasors", boom)
    assert cli.main(["power", "--config", str(CONFIGS / "three_spoke.yaml"), "--out", str(tmp_path)]) == 2
