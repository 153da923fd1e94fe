"""Exact growth computations for Coxeter groups and their quotients."""

__version__ = "0.1.0"

from coxgrowth.diagram import (  # noqa: E402
    Diagram, DiagramClass, classify, connected_components, find_affine_subdiagram,
    load_diagram, null_root, parse_diagram, shortest_path,
)
from coxgrowth.growth import (  # noqa: E402
    GrowthTable, enumerate_ball, growth_rate_lower_bound, quotient_growth_parabolic,
)
from coxgrowth.embed import (  # noqa: E402
    construct_w3_embedding, construct_w3_in_group, verify_mainprop,
    verify_quotient_exponential,
)

__all__ = [
    "Diagram", "DiagramClass", "classify", "connected_components", "find_affine_subdiagram",
    "load_diagram", "null_root", "parse_diagram", "shortest_path",
    "GrowthTable", "enumerate_ball", "growth_rate_lower_bound", "quotient_growth_parabolic",
    "construct_w3_embedding", "construct_w3_in_group", "verify_mainprop",
    "verify_quotient_exponential", "__version__",
]
