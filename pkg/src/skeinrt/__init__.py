"""Exact computations for the Reshetikhin-Turaev SO(3) skein modules at even level p.

Cyclotomic arithmetic, recoupling coefficients, the genericity scanner,
genus-one representation analysis, twist-class certificates and the mod 2
homology group algebra checks.
"""
from __future__ import annotations

__version__ = "0.1.0"

from .cyclotomic import CycloElement, CyclotomicField, LevelContext, ModularEmbedding, ctx_new
from .graphs import TrivalentGraph, fly_eyes, parse_graph, tetrahedron_graph, theta_graph
from .qnum import exact_constants
from .recoupling import table

__all__ = [
    "__version__", "CycloElement", "CyclotomicField", "LevelContext", "ModularEmbedding", "ctx_new",
    "TrivalentGraph", "fly_eyes", "parse_graph", "tetrahedron_graph", "theta_graph",
    "exact_constants", "table",
]
