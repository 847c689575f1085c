from pathlib import Path

import pytest

from telegrapher.network import Edge, LineParams, Network, Node, NodeKind

CONFIGS = Path(__file__).resolve().parent.parent / "configs"


def single_line() -> Network:
    return Network(
        (Node("start", NodeKind.GENERATOR, 5 + 3j), Node("end", NodeKind.LOAD, 2 + 5j)),
        (Edge("start", "end", LineParams(4.0, 6.0, 2.0, 1.0, 1.0)),),
        4.0,
    )


def three_spoke() -> Network:
    return Network(
        (
            Node("N1", NodeKind.LOAD, 10 + 3j),
            Node("N2", NodeKind.GENERATOR, 4 + 4j),
            Node("N3", NodeKind.GENERATOR, 2 + 5j),
            Node("N4", NodeKind.GENERATOR, 3 + 6j),
        ),
        (
            Edge("N1", "N2", LineParams(2.0, 6.0, 2.0, 1.0, 2.0)),
            Edge("N1", "N3", LineParams(3.0, 6.0, 1.0, 1.0, 2.0)),
            Edge("N1", "N4", LineParams(1.0, 9.0, 2.0, 1.0, 2.0)),
        ),
        4.0,
    )


# 380 kV aerial line, per km
AERIAL = LineParams(R=0.028e-3, L=0.8e-3, G=15e-9, C=14e-9, length=100.0)


@pytest.fixture
def line_net():
    return single_line()


@pytest.fixture
def spoke_net():
    return three_spoke()
