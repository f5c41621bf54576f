"""Pfaffian orientations, near-bipartite graphs and their forbidden subgraphs."""

from .characterize import (
    SearchBounds,
    Witness,
    check_main_theorem,
    find_witness,
    is_even_subdivision,
    is_reducible_to_even_subdivision,
    verify_witness,
)
from .errors import BudgetExceeded, FormatError, GraphError, InternalCheckError
from .fixtures import builtin
from .graph import Graph, Orientation, bipartition, contract, subdivide_edge, suppress_degree2
from .matching import alternating_circuits, central_circuits, enumerate_one_factors, is_one_extendible
from .nearbip import find_near_bipartite_pairs, reference_orientation
from .pfaffian import find_pfaffian_orientation, is_pfaffian, is_pfaffian_orientation, sign_table

__all__ = [
    "BudgetExceeded",
    "FormatError",
    "Graph",
    "GraphError",
    "InternalCheckError",
    "Orientation",
    "SearchBounds",
    "Witness",
    "alternating_circuits",
    "bipartition",
    "builtin",
    "central_circuits",
    "check_main_theorem",
    "contract",
    "enumerate_one_factors",
    "find_near_bipartite_pairs",
    "find_pfaffian_orientation",
    "find_witness",
    "is_even_subdivision",
    "is_one_extendible",
    "is_pfaffian",
    "is_pfaffian_orientation",
    "is_reducible_to_even_subdivision",
    "reference_orientation",
    "sign_table",
    "subdivide_edge",
    "suppress_degree2",
    "verify_witness",
]
