# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled domination kernels for graphs on at most 64 vertices.

Same contract as ``_kernels_py``; the dispatcher in ``kernels`` routes larger
graphs to the Python twin.
"""

import time

from libc.stdint cimport uint64_t

from vizbound._kernels_py import SearchTimeout

BACKEND = "cython"
MAX_N = 64

cdef extern from *:
    int __builtin_popcountll(unsigned long long) nogil
    int __builtin_ctzll(unsigned long long) nogil
    int __builtin_clzll(unsigned long long) nogil


cdef inline int popc(uint64_t x) nogil:
    return __builtin_popcountll(x)


cdef struct BB:
    int n
    uint64_t full
    uint64_t closed[64]
    int sizes[64]
    int best
    uint64_t best_mask
    long nodes
    double deadline
    bint has_deadline
    bint timed_out


cdef inline uint64_t full_mask(int n):
    if n == 64:
        return <uint64_t>0xFFFFFFFFFFFFFFFF
    return ((<uint64_t>1) << n) - 1


cdef int _load(BB* st, list closed, int n) except -1:
    cdef int v
    if n > MAX_N:
        raise ValueError(f"compiled kernel supports n <= {MAX_N}")
    st.n = n
    st.full = full_mask(n)
    for v in range(n):
        st.closed[v] = <uint64_t>closed[v]
        st.sizes[v] = popc(st.closed[v])
    return 0


def is_dominating(list closed, int n, mask):
    cdef uint64_t m = <uint64_t>mask
    cdef uint64_t dom = 0
    cdef int v
    while m:
        v = __builtin_ctzll(m)
        dom |= <uint64_t>closed[v]
        m &= m - 1
    return (dom & full_mask(n)) == full_mask(n)


cdef uint64_t _greedy(BB* st) nogil:
    cdef uint64_t dom = 0, chosen = 0, und
    cdef int w, c, bw, bc
    while dom != st.full:
        und = st.full & ~dom
        bw = -1
        bc = -1
        for w in range(st.n):
            c = popc(st.closed[w] & und)
            if c > bc:
                bw = w
                bc = c
        chosen |= (<uint64_t>1) << bw
        dom |= st.closed[bw]
    return chosen


def greedy_dominating_set(list closed, int n):
    cdef BB st
    _load(&st, closed, n)
    return int(_greedy(&st))


cdef int _rec(BB* st, uint64_t dom, uint64_t chosen, int cnt) except -1:
    cdef uint64_t und, x
    cdef int nund, maxcov, w, c, u, usize, v, ncand, i, j
    cdef int cw[64]
    cdef int cc[64]
    st.nodes += 1
    if st.has_deadline and (st.nodes & 2047) == 0 and time.monotonic() > st.deadline:
        st.timed_out = True
        return 0
    if st.timed_out:
        return 0
    if dom == st.full:
        if cnt < st.best:
            st.best = cnt
            st.best_mask = chosen
        return 0
    if cnt + 1 >= st.best:
        return 0
    und = st.full & ~dom
    nund = popc(und)
    maxcov = 0
    for w in range(st.n):
        c = popc(st.closed[w] & und)
        if c > maxcov:
            maxcov = c
    if cnt + (nund + maxcov - 1) // maxcov >= st.best:
        return 0
    u = -1
    usize = st.n + 1
    x = und
    while x:
        v = __builtin_ctzll(x)
        if st.sizes[v] < usize:
            u = v
            usize = st.sizes[v]
        x &= x - 1
    # candidates by decreasing new coverage, ties by vertex id (insertion sort)
    ncand = 0
    x = st.closed[u]
    while x:
        w = __builtin_ctzll(x)
        c = popc(st.closed[w] & und)
        i = ncand
        while i > 0 and cc[i - 1] < c:
            cc[i] = cc[i - 1]
            cw[i] = cw[i - 1]
            i -= 1
        cc[i] = c
        cw[i] = w
        ncand += 1
        x &= x - 1
    for j in range(ncand):
        _rec(st, dom | st.closed[cw[j]], chosen | ((<uint64_t>1) << cw[j]), cnt + 1)
        if st.timed_out:
            return 0
    return 0


def min_dominating_set(list closed, int n, deadline=None):
    cdef BB st
    cdef int v, top
    if n == 0:
        return 0, 0
    _load(&st, closed, n)
    st.best_mask = _greedy(&st)
    st.best = popc(st.best_mask)
    st.nodes = 0
    st.has_deadline = deadline is not None
    st.deadline = 0.0 if deadline is None else <double>deadline
    st.timed_out = False
    _rec(&st, 0, 0, 0)
    if st.timed_out:
        top = 0
        for v in range(n):
            if st.sizes[v] > top:
                top = st.sizes[v]
        raise SearchTimeout((n + top - 1) // top, st.best, int(st.best_mask))
    return st.best, int(st.best_mask)


cdef struct EN:
    int n
    uint64_t full
    uint64_t closed[64]
    uint64_t dead_after[64]


cdef int _enum(EN* st, int start, uint64_t dom, uint64_t chosen, int left, list out) except -1:
    cdef int v
    cdef uint64_t nd
    if left == 0:
        if dom == st.full:
            out.append(int(chosen))
        return 0
    for v in range(start, st.n - left + 1):
        nd = dom | st.closed[v]
        if (st.full & ~nd) & st.dead_after[v]:
            continue
        _enum(st, v + 1, nd, chosen | ((<uint64_t>1) << v), left - 1, out)
    return 0


def dominating_sets_of_size(list closed, int n, int k):
    cdef EN st
    cdef int v, u
    cdef int top[64]
    cdef list out = []
    if n > MAX_N:
        raise ValueError(f"compiled kernel supports n <= {MAX_N}")
    st.n = n
    st.full = full_mask(n)
    for v in range(n):
        st.closed[v] = <uint64_t>closed[v]
        top[v] = 63 - __builtin_clzll(st.closed[v])
    for v in range(n):
        st.dead_after[v] = 0
        for u in range(n):
            if top[u] <= v:
                st.dead_after[v] |= (<uint64_t>1) << u
    if 0 <= k <= n:
        _enum(&st, 0, 0, 0, k, out)
    return out
