"""Regenerate src/vizbound/data/connected{n}.g6 with nauty (via pynauty).

Every connected graph on n vertices has a non-cut vertex, so extending each
connected (n-1)-vertex graph by one vertex with a nonempty neighbourhood
reaches every class; nauty canonical labels remove duplicates.

    pip install pynauty
    python tools/gen_corpus.py 8
"""

import sys
from pathlib import Path

import pynauty

sys.path.insert(0, str(Path(__file__).resolve().parents[1] / "src"))
from vizbound.graph import Graph, emit_graph6  # noqa: E402

EXPECTED = {1: 1, 2: 1, 3: 2, 4: 6, 5: 21, 6: 112, 7: 853, 8: 11117}  # OEIS A001349
OUT = Path(__file__).resolve().parents[1] / "src" / "vizbound" / "data"


def canonical(n, edges):
    adj = {v: [] for v in range(n)}
    for u, v in edges:
        adj[u].append(v)
    pg = pynauty.Graph(n, adjacency_dict=adj)
    lab = pynauty.canon_label(pg)
    inv = {old: new for new, old in enumerate(lab)}
    return Graph.from_edges(n, [(inv[u], inv[v]) for u, v in edges])


def extend(graphs, n):
    seen = {}
    for g in graphs:
        base = g.edges()
        for nb in range(1, 1 << (n - 1)):
            edges = base + [(u, n - 1) for u in range(n - 1) if nb >> u & 1]
            c = canonical(n, edges)
            seen.setdefault(emit_graph6(c), c)
    return [seen[k] for k in sorted(seen)]


def main(top):
    level = [Graph(1, (0,))]
    for n in range(1, top + 1):
        if n > 1:
            level = extend(level, n)
        assert len(level) == EXPECTED[n], (n, len(level))
        (OUT / f"connected{n}.g6").write_text("".join(emit_graph6(g) + "\n" for g in level))
        print(n, len(level))


if __name__ == "__main__":
    main(int(sys.argv[1]) if len(sys.argv) > 1 else 8)
