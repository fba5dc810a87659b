"""The three-stage labeling of a minimum dominating set D of G□H.

Each vertex of D carries a label: a nonempty set of basis positions of a
gamma-set of G. Labels only ever shrink. A carrier that is itself a basis
vertex ``v_i^h`` always keeps ``i`` (the dominion rule).
"""

from __future__ import annotations

import itertools
import random
from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction

from vizbound.domination import ContractError, domination_number, is_dominating
from vizbound.graph import ProductGraph, bits, emit_graph6, popcount
from vizbound.structure import CellDecomposition, FiberView, chamber

TRACE_SCHEMA = 1
STAGES = ("labeling1", "labeling2", "labeling3")


class NonTermination(RuntimeError):
    pass


# -- tie-breaking policies ------------------------------------------------------


class DeterministicPolicy:
    """Smallest eligible element; the lexicographically first label goes first."""

    name = "deterministic"

    def order(self, a: "Entry", b: "Entry") -> tuple["Entry", "Entry"]:
        if (sorted(a.label), a.key) <= (sorted(b.label), b.key):
            return a, b
        return b, a

    def choose(self, options: list):
        return options[0]


class RandomPolicy(DeterministicPolicy):
    """Uniform choice among every eligible option, from a seeded generator."""

    name = "seeded-random"

    def __init__(self, seed: int = 0):
        self.rng = random.Random(seed)

    def order(self, a, b):
        return (a, b) if self.rng.random() < 0.5 else (b, a)

    def choose(self, options):
        return options[self.rng.randrange(len(options))]


def make_policy(name: str, seed: int = 0):
    if name == "deterministic":
        return DeterministicPolicy()
    if name in ("seeded-random", "random"):
        return RandomPolicy(seed)
    raise ValueError(f"unknown alteration policy {name!r}")


# -- data -----------------------------------------------------------------------


@dataclass
class Entry:
    g: int
    h: int
    cls: str
    kind: str  # "cell" or "shared"
    allowed: frozenset[int]  # the faithful superset for this carrier
    protected: int | None  # basis position when the carrier is a basis vertex
    label: set[int]
    stages: list[frozenset[int]] = field(default_factory=list)

    @property
    def key(self) -> tuple[int, int]:
        return self.h, self.g


@dataclass
class Labeling:
    prod: ProductGraph
    dec: CellDecomposition
    fibers: dict[int, FiberView]
    d: int
    rows: dict[int, list[Entry]]
    conflicts: list[dict] = field(default_factory=list)
    passes: int = 0

    @property
    def k(self) -> int:
        return self.dec.k

    def entries(self):
        for h in sorted(self.rows):
            yield from self.rows[h]

    def snapshot(self):
        for e in self.entries():
            e.stages.append(frozenset(e.label))

    def labels(self) -> dict[tuple[int, int], frozenset[int]]:
        return {(e.g, e.h): frozenset(e.label) for e in self.entries()}


# -- Labeling 1 -----------------------------------------------------------------


def labeling1(prod: ProductGraph, dec: CellDecomposition, fibers: dict[int, FiberView], d: int) -> Labeling:
    rows: dict[int, list[Entry]] = {}
    for h in range(prod.h_size):
        und = fibers[h].undominated
        row = []
        for g in bits(fibers[h].d_h):
            kind, s = dec.class_of(g)
            if kind == "cell":
                allowed = dec.closed_basis_neighbors(g)
                label = set(allowed)
            else:
                allowed = s
                r = s & und
                # S entirely inside the dominated indices: keep all of S, Labeling 3 trims it
                label = set(r) if r else set(s)
            row.append(Entry(g, h, dec.class_name(g), kind, allowed, dec.basis_index(g), label))
        rows[h] = row
    lab = Labeling(prod, dec, fibers, d, rows)
    lab.snapshot()
    return lab


# -- Labeling 2 -----------------------------------------------------------------


def _removable(e: Entry, x: int) -> bool:
    return x != e.protected and len(e.label) > 1


def _conflict(lab: Labeling, rule: str, a: Entry, b: Entry, seen: set):
    key = (rule, a.key, b.key, tuple(sorted(a.label)), tuple(sorted(b.label)))
    if key in seen:
        return
    seen.add(key)
    lab.conflicts.append(
        {
            "rule": rule,
            "carriers": [[a.g, a.h], [b.g, b.h]],
            "labels": [sorted(a.label), sorted(b.label)],
            "protected": [a.protected, b.protected],
        }
    )


def resolve_pair(lab: Labeling, a: Entry, b: Entry, policy, seen: set | None = None) -> bool:
    """Apply the alteration rules to one pair of labels. Returns True if either changed."""
    if seen is None:
        seen = set()
    changed = False
    while len(a.label & b.label) > 1:
        first, second = policy.order(a, b)
        common = sorted(first.label & second.label)
        options = [
            (x, y)
            for x in common
            if _removable(first, x)
            for y in common
            if y != x and _removable(second, y)
        ]
        if not options:
            _conflict(lab, "shared>1", first, second, seen)
            return changed
        x, y = policy.choose(options)
        first.label.discard(x)
        second.label.discard(y)
        changed = True
    common = a.label & b.label
    if not common:
        return changed
    (x,) = common
    if len(a.label) == 1 and len(b.label) == 1:
        return changed
    if len(a.label) == 1 or len(b.label) == 1:
        big = b if len(a.label) == 1 else a
        if _removable(big, x):
            big.label.discard(x)
            return True
        _conflict(lab, "singleton", a, b, seen)
        return changed
    first, second = policy.order(a, b)
    for e in (first, second):
        if _removable(e, x):
            e.label.discard(x)
            return True
    _conflict(lab, "shared=1", first, second, seen)
    return changed


def internal_alteration(lab: Labeling, h: int, policy=None, seen: set | None = None) -> bool:
    """Alter row ``h`` until every pair of its labels is two singletons or disjoint."""
    policy = policy or DeterministicPolicy()
    seen = set() if seen is None else seen
    row = lab.rows[h]
    any_change = False
    while True:
        changed = False
        for a, b in itertools.combinations(row, 2):
            changed |= resolve_pair(lab, a, b, policy, seen)
        any_change |= changed
        if not changed:
            return any_change


def external_alteration(lab: Labeling, h: int, policy=None, seen: set | None = None) -> bool:
    """One sweep of row ``h`` against each H-neighbour row in ascending order."""
    policy = policy or DeterministicPolicy()
    seen = set() if seen is None else seen
    changed = False
    for hn in bits(lab.prod.h.adj[h]):
        for a in lab.rows[h]:
            for b in lab.rows[hn]:
                changed |= resolve_pair(lab, a, b, policy, seen)
    return changed


def _settle_conflicts(lab: Labeling):
    """Mark each logged conflict resolved iff its carriers end up singleton-or-disjoint."""
    by_key = {e.key: e for e in lab.entries()}
    for c in lab.conflicts:
        a, b = (by_key[(h, g)] for g, h in c["carriers"])
        c["resolved"] = not (a.label & b.label) or (len(a.label) == 1 and len(b.label) == 1)


def unresolved_conflicts(lab: Labeling) -> int:
    return sum(not c.get("resolved", False) for c in lab.conflicts)


def labeling2(lab: Labeling, policy=None, max_passes: int | None = None) -> Labeling:
    policy = policy or DeterministicPolicy()
    n_d = sum(len(r) for r in lab.rows.values())
    limit = max_passes or max(n_d * max(lab.k, 1), 64)
    seen: set = set()
    for p in range(1, limit + 1):
        changed = False
        for h in sorted(lab.rows):
            changed |= internal_alteration(lab, h, policy, seen)
        for h in sorted(lab.rows):
            changed |= external_alteration(lab, h, policy, seen)
        if not changed:
            lab.passes = p
            _settle_conflicts(lab)
            lab.snapshot()
            return lab
    raise NonTermination(f"labeling 2 did not reach a fixpoint within {limit} passes")


# -- Labeling 3 -----------------------------------------------------------------


def labeling3(lab: Labeling, policy=None) -> Labeling:
    policy = policy or DeterministicPolicy()
    for h, row in lab.rows.items():
        dominated = lab.fibers[h].dominated_indices(lab.k)
        for e in row:
            if e.kind == "shared" and e.allowed <= dominated and len(e.label) > 1:
                e.label = {policy.choose(sorted(e.label))}
    lab.snapshot()
    return lab


# -- invariants -----------------------------------------------------------------


def check_faithful(lab: Labeling) -> bool:
    return all(e.label <= e.allowed for e in lab.entries())


def check_dominion(lab: Labeling) -> bool:
    return all(e.protected is None or e.protected in e.label for e in lab.entries())


def check_nonempty(lab: Labeling) -> bool:
    return all(e.label for e in lab.entries())


def check_monotone(lab: Labeling) -> bool:
    return all(all(b <= a for a, b in zip(e.stages, e.stages[1:])) for e in lab.entries())


def disjointness_violations(lab: Labeling, stage: int | None = None) -> list[tuple]:
    """Pairs in the same or H-adjacent rows that share an element without both being singletons."""

    def lab_of(e):
        return e.label if stage is None else e.stages[stage]

    bad = []
    adj = lab.prod.h.adj
    for h in sorted(lab.rows):
        for a, b in itertools.combinations(lab.rows[h], 2):
            s, t = lab_of(a), lab_of(b)
            if s & t and not (len(s) == 1 and len(t) == 1):
                bad.append((a.key, b.key))
        for hn in bits(adj[h] >> (h + 1) << (h + 1)):
            for a in lab.rows[h]:
                for b in lab.rows[hn]:
                    s, t = lab_of(a), lab_of(b)
                    if s & t and not (len(s) == 1 and len(t) == 1):
                        bad.append((a.key, b.key))
    return bad


def max_label_size(lab: Labeling) -> int:
    return max((len(e.label) for e in lab.entries()), default=0)


# -- fibre analysis and claims --------------------------------------------------


@dataclass(frozen=True)
class MultiLabelAnalysis:
    h: int
    s1: tuple[int, ...]  # G-vertices of D^h with |label| > 1
    m: tuple[int, ...]
    j1: frozenset[int]
    chamber: int
    d1: int
    e: tuple[int, ...] | None  # None when the chamber is not dominated by D^h
    claim1: bool

    @property
    def s(self) -> int:
        return len(self.s1)

    @property
    def required(self) -> int:
        return sum(mi - 1 for mi in self.m)


def verify_claim1(lab: Labeling, h: int) -> bool:
    """Every vertex of chamber(J_1^h) has a closed G-neighbour in D^h."""
    g = lab.prod.g
    j1 = frozenset().union(*(e.label for e in lab.rows[h] if len(e.label) > 1))
    ch = chamber(lab.dec, j1)
    return ch & ~g.closed_neighborhood(lab.fibers[h].d_h) == 0


def _min_extension(g, target: int, base: int, pool: list[int]) -> tuple[int, ...]:
    need = target & ~g.closed_neighborhood(base)
    for size in range(len(pool) + 1):
        for combo in itertools.combinations(pool, size):
            cov = 0
            for u in combo:
                cov |= g.closed(u)
            if need & ~cov == 0:
                return combo
    raise AssertionError("pool cannot cover target")


def analyze_fiber(lab: Labeling, h: int) -> MultiLabelAnalysis:
    g = lab.prod.g
    multi = [e for e in lab.rows[h] if len(e.label) > 1]
    j1 = frozenset().union(*(e.label for e in multi))
    ch = chamber(lab.dec, j1)
    d_h = lab.fibers[h].d_h
    inside = d_h & ch
    d1 = d_h & ~ch
    claim1 = ch & ~g.closed_neighborhood(d_h) == 0
    e = _min_extension(g, ch, inside, list(bits(d1))) if claim1 else None
    return MultiLabelAnalysis(
        h=h,
        s1=tuple(x.g for x in multi),
        m=tuple(len(x.label) for x in multi),
        j1=j1,
        chamber=ch,
        d1=d1,
        e=e,
        claim1=claim1,
    )


def verify_claim2(analysis: MultiLabelAnalysis) -> bool:
    if analysis.e is None:
        return False
    return len(analysis.e) >= analysis.required


def verify_projection(lab: Labeling, i: int) -> bool:
    if not 0 <= i < lab.k:
        raise ValueError(f"basis index {i} outside 0..{lab.k - 1}")
    hs = 0
    for h, row in lab.rows.items():
        if any(i in e.label for e in row):
            hs |= 1 << h
    return lab.prod.h.closed_neighborhood(hs) == lab.prod.h.all_mask


# -- histogram ------------------------------------------------------------------


@dataclass(frozen=True)
class LabelHistogram:
    size_counts: dict[int, int]  # |F_i|
    index_counts: tuple[int, ...]  # |D_i| per basis position
    total: int  # |D|

    @property
    def t(self) -> dict[int, Fraction]:
        return {i: Fraction(c, self.total) for i, c in sorted(self.size_counts.items())}

    @property
    def weighted(self) -> int:
        return sum(i * c for i, c in self.size_counts.items())


def histogram(lab: Labeling) -> LabelHistogram:
    sizes = Counter(len(e.label) for e in lab.entries())
    idx = [0] * lab.k
    for e in lab.entries():
        for i in e.label:
            idx[i] += 1
    total = sum(sizes.values())
    return LabelHistogram(dict(sorted(sizes.items())), tuple(idx), total)


def verify_eq3(hist: LabelHistogram, gamma_g: int, gamma_h: int, power: int) -> dict[str, bool]:
    f1 = hist.size_counts.get(1, 0)
    overflow = sum((i - 1) * c for i, c in hist.size_counts.items() if i >= 2)
    return {
        "a": gamma_g * gamma_h <= sum(hist.index_counts),
        "b": sum(hist.index_counts) == hist.weighted,
        "c": max(hist.size_counts, default=0) <= power,
        "d": f1 >= overflow,
    }


# -- whole pipeline -------------------------------------------------------------


@dataclass
class LabelingResult:
    labeling: Labeling
    analyses: dict[int, MultiLabelAnalysis]
    hist: LabelHistogram
    checks: dict[str, bool]
    disjoint_violations: list[tuple]

    @property
    def all_hold(self) -> bool:
        return all(self.checks.values())


def run_labeling(
    prod: ProductGraph,
    dec: CellDecomposition,
    fibers: dict[int, FiberView],
    d: int,
    gamma_h: int,
    power: int,
    policy=None,
    gamma_product: int | None = None,
) -> LabelingResult:
    """Labelings 1-3 plus every certificate check on one instance.

    ``d`` must be a minimum dominating set of the product.
    """
    if not (prod.g.is_connected() and prod.h.is_connected()):
        raise ContractError("the labeling pipeline requires connected factors")
    if not is_dominating(prod.base, d):
        raise ContractError("D does not dominate the product")
    if gamma_product is None:
        gamma_product = domination_number(prod.base)
    if popcount(d) != gamma_product:
        raise ContractError(f"|D| = {popcount(d)} but gamma(G□H) = {gamma_product}; D must be minimum")
    policy = policy or DeterministicPolicy()
    lab = labeling1(prod, dec, fibers, d)
    labeling2(lab, policy)
    disjoint_bad = disjointness_violations(lab, stage=1)
    labeling3(lab, policy)
    analyses = {h: analyze_fiber(lab, h) for h in sorted(lab.rows)}
    hist = histogram(lab)
    eq3 = verify_eq3(hist, dec.k, gamma_h, power)
    checks = {
        "faithful": check_faithful(lab),
        "dominion": check_dominion(lab),
        "nonempty": check_nonempty(lab),
        "monotone": check_monotone(lab),
        "disjoint": not disjoint_bad,
        "max_label_le_power": max_label_size(lab) <= power,
        "claim1": all(a.claim1 for a in analyses.values()),
        "claim2": all(verify_claim2(a) for a in analyses.values()),
        "projection": all(verify_projection(lab, i) for i in range(lab.k)),
        **{f"eq3_{key}": val for key, val in eq3.items()},
    }
    return LabelingResult(lab, analyses, hist, checks, disjoint_bad)


def trace_json(result: LabelingResult) -> dict:
    lab = result.labeling
    rows = {}
    for h in sorted(lab.rows):
        rows[str(h)] = [
            {
                "g_vertex": e.g,
                "cell_or_class": e.cls,
                "stage_labels": [sorted(s) for s in e.stages],
            }
            for e in lab.rows[h]
        ]
    return {
        "schema": TRACE_SCHEMA,
        "g": emit_graph6(lab.prod.g),
        "h": emit_graph6(lab.prod.h),
        "d": [list(lab.prod.coord(v)) for v in bits(lab.d)],
        "decomposition": lab.dec.to_json(),
        "fibers": [
            {"h": f.h, "d_h": sorted(bits(f.d_h)), "undominated": sorted(f.undominated)}
            for f in (lab.fibers[h] for h in sorted(lab.fibers))
        ],
        "stages": list(STAGES),
        "rows": rows,
        "labeling2_passes": lab.passes,
        "conflicts": lab.conflicts,
        "analysis": [
            {
                "h": a.h,
                "S1": list(a.s1),
                "m": list(a.m),
                "J1": sorted(a.j1),
                "chamber": sorted(bits(a.chamber)),
                "D1": sorted(bits(a.d1)),
                "E": None if a.e is None else list(a.e),
                "claim1": a.claim1,
                "claim2": verify_claim2(a),
            }
            for a in result.analyses.values()
        ],
        "histogram": {
            "F": {str(k): v for k, v in result.hist.size_counts.items()},
            "D_i": list(result.hist.index_counts),
            "t": {str(k): str(v) for k, v in result.hist.t.items()},
        },
        "checks": result.checks,
    }
