"""Exact domination invariants: gamma, gamma-sets, allegiance, [1,k]-sets and power."""

from __future__ import annotations

import itertools
import time
from dataclasses import dataclass
from typing import Iterator

from vizbound import kernels
from vizbound.graph import Graph, bits, mask_of, max_degree, popcount
from vizbound.kernels import SearchTimeout


class ContractError(ValueError):
    """A precondition of an operation was violated by its input."""


def _as_mask(s) -> int:
    return s if isinstance(s, int) else mask_of(s)


def is_dominating(g: Graph, s) -> bool:
    s = _as_mask(s)
    if s & ~g.all_mask:
        raise ContractError("set contains vertices outside the graph")
    return g.closed_neighborhood(s) == g.all_mask


def min_dominating_set(g: Graph, budget: float | None = None) -> int:
    """A minimum dominating set of ``g`` as a bitmask.

    ``budget`` is in seconds; when exceeded, :class:`SearchTimeout` carries the
    best bounds found. Disconnected graphs are solved per component.
    """
    deadline = None if budget is None else time.monotonic() + budget
    comps = g.components()
    if len(comps) <= 1:
        return kernels.min_dominating_set(g.closed_rows(), g.n, deadline)[1]
    out = 0
    for comp in comps:
        verts = list(bits(comp))
        sub = g.induced(comp)
        _, m = kernels.min_dominating_set(sub.closed_rows(), sub.n, deadline)
        out |= mask_of(verts[i] for i in bits(m))
    return out


def domination_number(g: Graph, budget: float | None = None) -> int:
    return popcount(min_dominating_set(g, budget))


def enumerate_gamma_sets(g: Graph, gamma: int | None = None) -> Iterator[int]:
    """Every minimum dominating set, in lexicographic order of sorted member lists."""
    if gamma is None:
        gamma = domination_number(g)
    yield from kernels.dominating_sets_of_size(g.closed_rows(), g.n, gamma)


def allegiance(g: Graph, d) -> int:
    """max over all v of |D ∩ N[v]|."""
    d = _as_mask(d)
    if not is_dominating(g, d):
        raise ContractError("allegiance is defined for dominating sets only")
    return max(popcount(d & g.closed(v)) for v in range(g.n))


def _require_connected(g: Graph, what: str):
    if not g.is_connected():
        raise ContractError(f"{what} requires a connected graph")


def power_witness(g: Graph, gamma: int | None = None) -> tuple[int, int, int]:
    """``(power, witness_mask, num_gamma_sets_scanned)``.

    The witness is the lexicographically first gamma-set of least allegiance.
    The scan stops early once allegiance 1 is seen, so the count is then partial.
    """
    _require_connected(g, "power")
    closed = g.closed_rows()
    best, witness, seen = g.n + 1, 0, 0
    for d in enumerate_gamma_sets(g, gamma):
        seen += 1
        a = max(popcount(d & c) for c in closed)
        if a < best:
            best, witness = a, d
            if a == 1:
                break
    return best, witness, seen


def power_closed(g: Graph) -> int:
    return power_witness(g)[0]


def is_1k_set(g: Graph, s, k: int) -> bool:
    if k < 1:
        raise ValueError(f"k must be >= 1, got {k}")
    s = _as_mask(s)
    for v in range(g.n):
        if s >> v & 1:
            continue
        c = popcount(g.adj[v] & s)
        if not 1 <= c <= k:
            return False
    return True


def gamma_1k(g: Graph, k: int) -> int:
    """Least size of a [1,k]-set, by exhaustive search over increasing sizes."""
    if k < 1:
        raise ValueError(f"k must be >= 1, got {k}")
    # a [1,k]-set dominates, so gamma is a lower bound
    for size in range(domination_number(g), g.n + 1):
        for combo in itertools.combinations(range(g.n), size):
            if is_1k_set(g, mask_of(combo), k):
                return size
    return g.n


def power_open(g: Graph, gamma: int | None = None) -> int:
    """Least k with gamma_[1,k](g) == gamma(g)."""
    _require_connected(g, "power")
    if gamma is None:
        gamma = domination_number(g)
    for k in range(1, g.n + 1):
        if gamma_1k(g, k) == gamma:
            return k
    raise AssertionError("gamma_1k(g, n) must equal gamma(g)")


@dataclass(frozen=True)
class PowerReport:
    gamma: int
    num_gamma_sets: int
    witness_set: tuple[int, ...]
    allegiance_of_witness: int
    power_closed: int
    power_open: int
    max_degree: int

    @property
    def agree(self) -> bool:
        return self.power_closed == self.power_open


def power_report(g: Graph) -> PowerReport:
    gamma = domination_number(g)
    pc, witness, _ = power_witness(g, gamma)
    total = len(list(enumerate_gamma_sets(g, gamma)))
    return PowerReport(
        gamma=gamma,
        num_gamma_sets=total,
        witness_set=tuple(bits(witness)),
        allegiance_of_witness=pc,
        power_closed=pc,
        power_open=power_open(g, gamma),
        max_degree=max_degree(g),
    )


__all__ = [
    "ContractError",
    "PowerReport",
    "SearchTimeout",
    "allegiance",
    "domination_number",
    "enumerate_gamma_sets",
    "gamma_1k",
    "is_1k_set",
    "is_dominating",
    "min_dominating_set",
    "power_closed",
    "power_open",
    "power_report",
    "power_witness",
]
