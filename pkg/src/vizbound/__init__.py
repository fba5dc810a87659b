"""Domination in Cartesian products: exact invariants, bound checks, proof labelings."""

from vizbound.graph import Graph, ProductGraph, cartesian_product, emit_graph6, make_family, parse_graph6
from vizbound.kernels import BACKEND

__version__ = "0.1.0"
