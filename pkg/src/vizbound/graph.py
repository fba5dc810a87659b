"""Simple undirected graphs on bitset adjacency, graph6 I/O, families and products.

Vertex sets are plain Python ints used as bitmasks: bit ``v`` set means vertex
``v`` is a member.
"""

from __future__ import annotations

import itertools
import re
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path
from typing import Iterable, Iterator

MAX_ORDER = 128
GRAPH6_MAX_ORDER = 62


class GraphError(ValueError):
    pass


class Graph6Error(GraphError):
    def __init__(self, msg: str, offset: int):
        super().__init__(f"{msg} (byte offset {offset})")
        self.offset = offset


def popcount(x: int) -> int:
    return bin(x).count("1")


def bits(x: int) -> Iterator[int]:
    """Yield the set bit positions of ``x`` in increasing order."""
    while x:
        low = x & -x
        yield low.bit_length() - 1
        x ^= low


def mask_of(vertices: Iterable[int]) -> int:
    m = 0
    for v in vertices:
        m |= 1 << v
    return m


@dataclass(frozen=True)
class Graph:
    """Immutable simple graph. ``adj[v]`` is the open-neighbourhood mask of ``v``."""

    n: int
    adj: tuple[int, ...]
    name: str = field(default="", compare=False)

    def __post_init__(self):
        if not 0 <= self.n <= MAX_ORDER:
            raise GraphError(f"order {self.n} outside supported range 0..{MAX_ORDER}")
        if len(self.adj) != self.n:
            raise GraphError("adjacency length does not match order")
        full = (1 << self.n) - 1
        for v, row in enumerate(self.adj):
            if row & ~full:
                raise GraphError(f"vertex {v} has neighbour outside 0..{self.n - 1}")
            if row >> v & 1:
                raise GraphError(f"self-loop at vertex {v}")
            for u in bits(row):
                if not self.adj[u] >> v & 1:
                    raise GraphError(f"asymmetric adjacency between {v} and {u}")

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[tuple[int, int]], name: str = "") -> "Graph":
        rows = [0] * n
        for u, v in edges:
            if u == v:
                raise GraphError(f"self-loop at vertex {u}")
            if not (0 <= u < n and 0 <= v < n):
                raise GraphError(f"edge ({u},{v}) outside 0..{n - 1}")
            rows[u] |= 1 << v
            rows[v] |= 1 << u
        return cls(n, tuple(rows), name)

    @property
    def all_mask(self) -> int:
        return (1 << self.n) - 1

    def closed(self, v: int) -> int:
        return self.adj[v] | (1 << v)

    def closed_rows(self) -> list[int]:
        return [row | (1 << v) for v, row in enumerate(self.adj)]

    def neighbors(self, v: int) -> list[int]:
        return list(bits(self.adj[v]))

    def degree(self, v: int) -> int:
        return popcount(self.adj[v])

    def degrees(self) -> list[int]:
        return [popcount(row) for row in self.adj]

    def has_edge(self, u: int, v: int) -> bool:
        return bool(self.adj[u] >> v & 1)

    def edges(self) -> list[tuple[int, int]]:
        return [(u, v) for u in range(self.n) for v in bits(self.adj[u] >> (u + 1) << (u + 1))]

    @property
    def num_edges(self) -> int:
        return sum(self.degrees()) // 2

    def closed_neighborhood(self, s: int) -> int:
        """N[S] for a vertex mask ``s``."""
        out = s
        for v in bits(s):
            out |= self.adj[v]
        return out

    def components(self) -> list[int]:
        seen = 0
        comps = []
        for v in range(self.n):
            if seen >> v & 1:
                continue
            comp = frontier = 1 << v
            while frontier:
                nxt = 0
                for u in bits(frontier):
                    nxt |= self.adj[u]
                frontier = nxt & ~comp
                comp |= frontier
            seen |= comp
            comps.append(comp)
        return comps

    def is_connected(self) -> bool:
        return self.n > 0 and len(self.components()) == 1

    def induced(self, s: int) -> "Graph":
        """Subgraph induced by mask ``s``, relabelled 0..|s|-1 in increasing order."""
        verts = list(bits(s))
        pos = {v: i for i, v in enumerate(verts)}
        return Graph.from_edges(
            len(verts), [(pos[u], pos[v]) for u, v in self.edges() if u in pos and v in pos]
        )

    def __repr__(self):
        label = self.name or (emit_graph6(self) if self.n <= GRAPH6_MAX_ORDER else "?")
        return f"Graph({label!r}, n={self.n}, m={self.num_edges})"


def max_degree(g: Graph) -> int:
    return max(g.degrees(), default=0)


# -- graph6 -------------------------------------------------------------------


def parse_graph6(text: str | bytes) -> Graph:
    """Decode a short-form graph6 string (order at most 62)."""
    if isinstance(text, bytes):
        text = text.decode("ascii")
    offset = 0
    if text.startswith(">>graph6<<"):
        offset = len(">>graph6<<")
    data = text[offset:].rstrip("\n")
    if not data:
        raise Graph6Error("empty graph6 string", offset)
    head = ord(data[0])
    if head == 126:
        raise Graph6Error("long-form graph6 (order > 62) is not supported", offset)
    if not 63 <= head <= 125:
        raise Graph6Error(f"bad header byte {data[0]!r}", offset)
    n = head - 63
    nbits = n * (n - 1) // 2
    nbytes = (nbits + 5) // 6
    body = data[1:]
    if len(body) < nbytes:
        raise Graph6Error(f"truncated bit vector: need {nbytes} bytes, got {len(body)}", offset + 1 + len(body))
    if len(body) > nbytes:
        raise Graph6Error("trailing garbage after graph6 data", offset + 1 + nbytes)
    vals = []
    for i, ch in enumerate(body):
        c = ord(ch) - 63
        if not 0 <= c <= 63:
            raise Graph6Error(f"bad data byte {ch!r}", offset + 1 + i)
        vals.append(c)
    edges = []
    k = 0
    for j in range(1, n):
        for i in range(j):
            if vals[k // 6] >> (5 - k % 6) & 1:
                edges.append((i, j))
            k += 1
    pad = nbytes * 6 - nbits
    if pad and vals and vals[-1] & ((1 << pad) - 1):
        raise Graph6Error("nonzero padding bits", offset + nbytes)
    return Graph.from_edges(n, edges)


def emit_graph6(g: Graph) -> str:
    if g.n > GRAPH6_MAX_ORDER:
        raise GraphError(f"graph6 short form supports order <= {GRAPH6_MAX_ORDER}, got {g.n}")
    out = [chr(g.n + 63)]
    acc = nacc = 0
    for j in range(1, g.n):
        for i in range(j):
            acc = acc << 1 | (g.adj[i] >> j & 1)
            nacc += 1
            if nacc == 6:
                out.append(chr(acc + 63))
                acc = nacc = 0
    if nacc:
        out.append(chr((acc << (6 - nacc)) + 63))
    return "".join(out)


def read_graph6_file(path: str | Path) -> list[Graph]:
    graphs = []
    with open(path, encoding="ascii") as fh:
        for line in fh:
            line = line.strip()
            if not line or line == ">>graph6<<":
                continue
            g = parse_graph6(line)
            graphs.append(Graph(g.n, g.adj, line.removeprefix(">>graph6<<")))
    return graphs


def load_corpus(n: int) -> list[Graph]:
    """All connected graphs on ``n`` vertices (1 <= n <= 8), up to isomorphism."""
    path = Path(__file__).parent / "data" / f"connected{n}.g6"
    if not path.exists():
        raise FileNotFoundError(f"no bundled corpus for n={n}")
    return read_graph6_file(path)


def load_corpus_upto(n: int) -> list[Graph]:
    return [g for k in range(1, n + 1) for g in load_corpus(k)]


# -- families -----------------------------------------------------------------

FAMILIES = ("path", "cycle", "complete", "star", "random_gnp")


def make_family(kind: str, n: int, p: Fraction | float | None = None, seed: int | None = None) -> Graph:
    """Build a named family member.

    ``random_gnp`` visits pairs ``(i, j)``, ``i < j``, in lexicographic order and
    keeps the edge when the next double from ``numpy.random.PCG64(seed)`` is
    below ``p``. The same ``(n, p, seed)`` always gives the same graph.
    """
    if n < 1:
        raise GraphError(f"{kind} needs n >= 1, got {n}")
    if kind == "path":
        return Graph.from_edges(n, [(i, i + 1) for i in range(n - 1)], f"P{n}")
    if kind == "cycle":
        if n < 3:
            raise GraphError(f"cycle needs n >= 3, got {n}")
        return Graph.from_edges(n, [(i, (i + 1) % n) for i in range(n)], f"C{n}")
    if kind == "complete":
        return Graph.from_edges(n, itertools.combinations(range(n), 2), f"K{n}")
    if kind == "star":
        return Graph.from_edges(n, [(0, i) for i in range(1, n)], f"K1,{n - 1}")
    if kind == "random_gnp":
        import numpy as np

        if p is None:
            raise GraphError("random_gnp needs p")
        p = Fraction(p)
        if not 0 <= p <= 1:
            raise GraphError(f"p must lie in [0, 1], got {p}")
        rng = np.random.Generator(np.random.PCG64(0 if seed is None else seed))
        edges = [e for e in itertools.combinations(range(n), 2) if rng.random() < p]
        return Graph.from_edges(n, edges, f"G({n},{p},{seed})")
    raise GraphError(f"unknown family {kind!r}")


_NAMED = re.compile(r"^([PCKS])(\d+)$")


def named_graph(spec: str) -> Graph:
    """Resolve short names such as ``K2``, ``P4``, ``C5``, ``S4`` (star on 4 vertices), else graph6."""
    m = _NAMED.match(spec)
    if m:
        kind = {"P": "path", "C": "cycle", "K": "complete", "S": "star"}[m.group(1)]
        g = make_family(kind, int(m.group(2)))
        return Graph(g.n, g.adj, spec)
    g = parse_graph6(spec)
    return Graph(g.n, g.adj, spec)


# -- Cartesian product --------------------------------------------------------


@dataclass(frozen=True)
class ProductGraph:
    """G□H with vertex ``(g, h)`` stored at index ``h * g_size + g`` (fibres are contiguous)."""

    base: Graph
    g: Graph
    h: Graph

    @property
    def g_size(self) -> int:
        return self.g.n

    @property
    def h_size(self) -> int:
        return self.h.n

    def index(self, g: int, h: int) -> int:
        return h * self.g.n + g

    def coord(self, v: int) -> tuple[int, int]:
        h, g = divmod(v, self.g.n)
        return g, h

    def fiber_mask(self, h: int) -> int:
        return self.g.all_mask << (h * self.g.n)

    def fiber_of(self, d: int, h: int) -> int:
        """G-vertex mask of ``d`` restricted to the fibre G^h."""
        return (d >> (h * self.g.n)) & self.g.all_mask

    def lift(self, gmask: int, h: int) -> int:
        return gmask << (h * self.g.n)


def cartesian_product(g: Graph, h: Graph, cap: int = MAX_ORDER) -> ProductGraph:
    if g.n < 1 or h.n < 1:
        raise GraphError("product factors must be nonempty")
    if g.n * h.n > cap:
        raise GraphError(f"product order {g.n * h.n} exceeds cap {cap}")
    gn = g.n
    rows = []
    for hv in range(h.n):
        for gv in range(gn):
            row = g.adj[gv] << (hv * gn)
            for hu in bits(h.adj[hv]):
                row |= 1 << (hu * gn + gv)
            rows.append(row)
    name = f"{g.name or '?'}x{h.name or '?'}"
    return ProductGraph(Graph(gn * h.n, tuple(rows), name), g, h)


# -- induced-subgraph recognition ---------------------------------------------


def _induced_degree_pattern(g: Graph, quad: tuple[int, int, int, int]) -> tuple[int, list[int]]:
    m = mask_of(quad)
    degs = sorted(popcount(g.adj[v] & m) for v in quad)
    return sum(degs) // 2, degs


def is_claw_free(g: Graph) -> bool:
    """No induced K_{1,3}: no vertex has three pairwise non-adjacent neighbours."""
    for v in range(g.n):
        nb = g.neighbors(v)
        for a, b, c in itertools.combinations(nb, 3):
            if not (g.has_edge(a, b) or g.has_edge(a, c) or g.has_edge(b, c)):
                return False
    return True


def is_p4_free(g: Graph) -> bool:
    # a 4-vertex induced subgraph is P_4 iff it has 3 edges and degrees (1,1,2,2)
    for quad in itertools.combinations(range(g.n), 4):
        m, degs = _induced_degree_pattern(g, quad)
        if m == 3 and degs == [1, 1, 2, 2]:
            return False
    return True
