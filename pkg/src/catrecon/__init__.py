"""Reconstruction of caterpillars from their small induced subgraphs."""

from .caterpillar import Caterpillar, InvalidSpine, enumerate_caterpillars, from_spine, t_ab
from .patterns import DeckOracle, baton, count_induced, triton

__all__ = [
    "Caterpillar",
    "DeckOracle",
    "InvalidSpine",
    "baton",
    "count_induced",
    "enumerate_caterpillars",
    "from_spine",
    "t_ab",
    "triton",
]
