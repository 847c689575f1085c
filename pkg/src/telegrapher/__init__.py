"""Telegrapher's equations on power networks: split finite-volume scheme and exact periodic reference."""
from .analytic import (
    PhasorSolution,
    SingularAdmittanceError,
    apparent_power,
    assemble_admittance,
    evaluate_time_domain,
    line_profile,
    mode_constants,
    solve_node_phasors,
    to_characteristic,
)
from .network import Edge, LineParams, Network, Node, NodeKind, derived_constants, orientation_sign, validate
from .solver import CFLError, EdgeGrid, Limiter, SchemeConfig, SplitScheme, strang_step

__all__ = [
    "CFLError", "Edge", "EdgeGrid", "LineParams", "Limiter", "Network", "Node", "NodeKind",
    "PhasorSolution", "SchemeConfig", "SingularAdmittanceError", "SplitScheme", "apparent_power",
    "assemble_admittance", "derived_constants", "evaluate_time_domain", "line_profile",
    "mode_constants", "orientation_sign", "solve_node_phasors", "strang_step",
    "to_characteristic", "validate",
]
