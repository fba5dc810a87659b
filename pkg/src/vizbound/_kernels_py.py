"""Pure-Python domination kernels; the reference twin of ``_kernels.pyx``.

All functions take ``closed``: a list of closed-neighbourhood bitmasks.
"""

import time

BACKEND = "python"
CHECK_EVERY = 2048


class SearchTimeout(Exception):
    """Raised when the deadline passes; carries the bounds known so far."""

    def __init__(self, lower, upper, best_mask):
        super().__init__(f"search budget exhausted with {lower} <= gamma <= {upper}")
        self.lower = lower
        self.upper = upper
        self.best_mask = best_mask


def _popcount(x):
    return bin(x).count("1")


def is_dominating(closed, n, mask):
    full = (1 << n) - 1
    dom = 0
    v = 0
    m = mask
    while m:
        if m & 1:
            dom |= closed[v]
        m >>= 1
        v += 1
    return dom & full == full


def greedy_dominating_set(closed, n):
    full = (1 << n) - 1
    dom = chosen = 0
    while dom != full:
        und = full & ~dom
        best_w, best_c = -1, -1
        for w in range(n):
            c = _popcount(closed[w] & und)
            if c > best_c:
                best_w, best_c = w, c
        chosen |= 1 << best_w
        dom |= closed[best_w]
    return chosen


def min_dominating_set(closed, n, deadline=None):
    """Exact minimum dominating set by branch and bound.

    Branches on the closed neighbourhood of an undominated vertex with the
    fewest dominators; prunes with ceil(|undominated| / best single coverage).
    Returns ``(size, mask)``.
    """
    full = (1 << n) - 1
    if n == 0:
        return 0, 0
    seed = greedy_dominating_set(closed, n)
    best = [_popcount(seed), seed]
    sizes = [_popcount(c) for c in closed]
    nodes = [0]
    lower = [-(-n // max(sizes))]

    def rec(dom, chosen, cnt):
        nodes[0] += 1
        if deadline is not None and nodes[0] % CHECK_EVERY == 0 and time.monotonic() > deadline:
            raise SearchTimeout(lower[0], best[0], best[1])
        if dom == full:
            if cnt < best[0]:
                best[0], best[1] = cnt, chosen
            return
        if cnt + 1 >= best[0]:
            return
        und = full & ~dom
        nund = _popcount(und)
        maxcov = 0
        for w in range(n):
            c = _popcount(closed[w] & und)
            if c > maxcov:
                maxcov = c
        if cnt + -(-nund // maxcov) >= best[0]:
            return
        u, usize = -1, n + 1
        x, v = und, 0
        while x:
            if x & 1 and sizes[v] < usize:
                u, usize = v, sizes[v]
            x >>= 1
            v += 1
        cands = []
        x, w = closed[u], 0
        while x:
            if x & 1:
                cands.append((-_popcount(closed[w] & und), w))
            x >>= 1
            w += 1
        cands.sort()
        for _, w in cands:
            rec(dom | closed[w], chosen | (1 << w), cnt + 1)

    rec(0, 0, 0)
    return best[0], best[1]


def dominating_sets_of_size(closed, n, k):
    """All dominating sets with exactly ``k`` members, lexicographic in sorted member order."""
    full = (1 << n) - 1
    # dead_after[v]: vertices none of whose dominators exceed v
    top = [c.bit_length() - 1 for c in closed]
    dead_after = [0] * n
    for v in range(n):
        m = 0
        for u in range(n):
            if top[u] <= v:
                m |= 1 << u
        dead_after[v] = m
    out = []

    def rec(start, dom, chosen, left):
        if left == 0:
            if dom == full:
                out.append(chosen)
            return
        for v in range(start, n - left + 1):
            nd = dom | closed[v]
            if (full & ~nd) & dead_after[v]:
                continue
            rec(v + 1, nd, chosen | (1 << v), left - 1)

    if 0 <= k <= n:
        rec(0, 0, 0, k)
    return out
