"""Swap-based search for packings of two bounded-degree graphs."""

from .graph import Graph, GraphError, VertexSet, composed_neighborhood, find_even_short_cycle, has_link, neighborhood
from .model import Labelling, PackingInstance, PurpleReport, condition_profile, is_packing, purple_report
from .solver import SolveOutcome, StuckCertificate, solve, solve_multistart
from .swaps import SwapCycle, apply_swap, find_claim32_3swap, find_reducing_2swap, is_safe_swap

__all__ = [
    "Graph",
    "GraphError",
    "Labelling",
    "PackingInstance",
    "PurpleReport",
    "SolveOutcome",
    "StuckCertificate",
    "SwapCycle",
    "VertexSet",
    "apply_swap",
    "composed_neighborhood",
    "condition_profile",
    "find_claim32_3swap",
    "find_even_short_cycle",
    "find_reducing_2swap",
    "has_link",
    "is_packing",
    "is_safe_swap",
    "neighborhood",
    "purple_report",
    "solve",
    "solve_multistart",
]
