"""Brute-force reference computations over plain Python sets.

Deliberately shares no code with the package: graphs are edge lists, vertex
sets are ``set``/``frozenset``.
"""

import itertools


def adjacency(n, edges):
    nb = {v: set() for v in range(n)}
    for u, v in edges:
        nb[u].add(v)
        nb[v].add(u)
    return nb


def dominates(n, edges, s):
    nb = adjacency(n, edges)
    covered = set(s)
    for v in s:
        covered |= nb[v]
    return covered == set(range(n))


def gamma(n, edges):
    for k in range(n + 1):
        for s in itertools.combinations(range(n), k):
            if dominates(n, edges, s):
                return k
    return n


def gamma_sets(n, edges):
    k = gamma(n, edges)
    return [s for s in itertools.combinations(range(n), k) if dominates(n, edges, s)]


def allegiance(n, edges, s):
    nb = adjacency(n, edges)
    s = set(s)
    return max(len(s & (nb[v] | {v})) for v in range(n))


def power_closed(n, edges):
    return min(allegiance(n, edges, s) for s in gamma_sets(n, edges))


def is_1k(n, edges, s, k):
    nb = adjacency(n, edges)
    s = set(s)
    return all(1 <= len(nb[v] & s) <= k for v in range(n) if v not in s)


def gamma_1k(n, edges, k):
    for size in range(n + 1):
        for s in itertools.combinations(range(n), size):
            if is_1k(n, edges, s, k):
                return size
    return n


def power_open(n, edges):
    g = gamma(n, edges)
    return next(k for k in range(1, n + 1) if gamma_1k(n, edges, k) == g)


def product_edges(gn, gedges, hn, hedges):
    """Cartesian product with vertex (g, h) at index h * gn + g."""
    out = []
    for h in range(hn):
        for a, b in gedges:
            out.append((h * gn + a, h * gn + b))
    for g in range(gn):
        for a, b in hedges:
            out.append((a * gn + g, b * gn + g))
    return out


def gamma_milp(n, edges):
    """Domination number by integer programming (scipy HiGHS)."""
    import numpy as np
    from scipy.optimize import Bounds, LinearConstraint, milp

    a = np.eye(n)
    for u, v in edges:
        a[u, v] = a[v, u] = 1
    res = milp(
        c=np.ones(n),
        constraints=LinearConstraint(a, lb=np.ones(n), ub=np.inf),
        integrality=np.ones(n),
        bounds=Bounds(0, 1),
    )
    assert res.success
    return int(round(res.fun))


def min_cover_extension(nb, target, base, pool):
    """Smallest subset E of pool with target ⊆ N[base ∪ E]."""
    def closed(vs):
        out = set(vs)
        for v in vs:
            out |= nb[v]
        return out

    need = set(target) - closed(base)
    for size in range(len(pool) + 1):
        for e in itertools.combinations(sorted(pool), size):
            if need <= closed(e):
                return set(e)
    return None
