"""Cells, private/shared neighbour classes, chambers and fibre views.

Basis indices are 0-based positions in the sorted gamma-set; a shared class
is keyed by the frozenset of basis positions its members see.
"""

from __future__ import annotations

from dataclasses import dataclass

from vizbound.domination import ContractError, domination_number, is_dominating
from vizbound.graph import Graph, ProductGraph, bits, mask_of


@dataclass(frozen=True)
class CellDecomposition:
    graph: Graph
    basis: tuple[int, ...]
    private: tuple[int, ...]  # P_i as masks
    shared: dict[frozenset[int], int]  # P_S as masks, only nonempty S

    @property
    def k(self) -> int:
        return len(self.basis)

    @property
    def cells(self) -> tuple[int, ...]:
        return tuple(p | (1 << v) for v, p in zip(self.basis, self.private))

    def basis_index(self, v: int) -> int | None:
        try:
            return self.basis.index(v)
        except ValueError:
            return None

    def basis_neighbors(self, v: int) -> frozenset[int]:
        """Positions i with v in N(v_i) (open)."""
        return frozenset(i for i, b in enumerate(self.basis) if self.graph.has_edge(v, b))

    def closed_basis_neighbors(self, v: int) -> frozenset[int]:
        """Positions i with v in N[v_i]."""
        return frozenset(i for i, b in enumerate(self.basis) if b == v or self.graph.has_edge(v, b))

    def class_of(self, v: int) -> tuple[str, frozenset[int]]:
        """``("cell", {i})`` for v in Q_i, ``("shared", S)`` for v in P_S."""
        i = self.basis_index(v)
        if i is not None:
            return "cell", frozenset((i,))
        s = self.basis_neighbors(v)
        if len(s) == 1:
            return "cell", s
        return "shared", s

    def class_name(self, v: int) -> str:
        kind, s = self.class_of(v)
        idx = ",".join(str(i) for i in sorted(s))
        return f"Q{idx}" if kind == "cell" else f"P{{{idx}}}"

    def to_json(self) -> dict:
        return {
            "basis": list(self.basis),
            "cells": [sorted(bits(q)) for q in self.cells],
            "private": [sorted(bits(p)) for p in self.private],
            "shared": [
                {"indices": sorted(s), "vertices": sorted(bits(m))}
                for s, m in sorted(self.shared.items(), key=lambda kv: sorted(kv[0]))
            ],
        }


def decompose(g: Graph, basis, gamma: int | None = None) -> CellDecomposition:
    basis = tuple(sorted(bits(basis) if isinstance(basis, int) else basis))
    bmask = mask_of(basis)
    if not is_dominating(g, bmask):
        raise ContractError("basis does not dominate the graph")
    if gamma is None:
        gamma = domination_number(g)
    if len(basis) != gamma:
        raise ContractError(f"basis has {len(basis)} vertices but gamma = {gamma}")
    private = [0] * len(basis)
    shared: dict[frozenset[int], int] = {}
    pos = {b: i for i, b in enumerate(basis)}
    for v in range(g.n):
        if v in pos:
            continue
        s = frozenset(pos[b] for b in bits(g.adj[v] & bmask))
        if len(s) == 1:
            (i,) = s
            private[i] |= 1 << v
        else:
            shared[s] = shared.get(s, 0) | (1 << v)
    return CellDecomposition(g, basis, tuple(private), shared)


def chamber(dec: CellDecomposition, index_set) -> int:
    """Q_I together with every shared class P_S, S ⊆ I."""
    idx = frozenset(index_set)
    out = 0
    for i in idx:
        out |= dec.cells[i]
    for s, m in dec.shared.items():
        if s <= idx:
            out |= m
    return out


@dataclass(frozen=True)
class FiberView:
    h: int
    d_h: int  # G-vertex mask of D ∩ G^h
    undominated: frozenset[int]  # I^h

    @property
    def ell(self) -> int:
        return len(self.undominated)

    def dominated_indices(self, k: int) -> frozenset[int]:
        return frozenset(range(k)) - self.undominated


def vertical_support(prod: ProductGraph, d: int, h: int) -> int:
    """G-vertices g with ({g} × N_H[h]) ∩ D nonempty."""
    out = prod.fiber_of(d, h)
    for hu in bits(prod.h.adj[h]):
        out |= prod.fiber_of(d, hu)
    return out


def vertically_undominated_vertices(prod: ProductGraph, d: int, h: int) -> int:
    return prod.g.all_mask & ~vertical_support(prod, d, h)


def fiber_views(prod: ProductGraph, dec: CellDecomposition, d: int) -> dict[int, FiberView]:
    if not is_dominating(prod.base, d):
        raise ContractError("D does not dominate the product")
    views = {}
    for h in range(prod.h_size):
        support = vertical_support(prod, d, h)
        und = frozenset(i for i, q in enumerate(dec.cells) if not q & support)
        views[h] = FiberView(h, prod.fiber_of(d, h), und)
    return views
