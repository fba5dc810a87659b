"""Per-instance pipeline, sweep driver and report writers."""

from __future__ import annotations

import csv
import hashlib
import io
import json
import logging
import math
import os
import time
from collections import Counter
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field, fields
from fractions import Fraction
from functools import lru_cache
from pathlib import Path

from vizbound.bounds import bounds
from vizbound.domination import (
    SearchTimeout,
    domination_number,
    min_dominating_set,
    power_open,
    power_witness,
)
from vizbound.graph import (
    MAX_ORDER,
    Graph,
    GraphError,
    cartesian_product,
    emit_graph6,
    load_corpus,
    make_family,
    max_degree,
    named_graph,
    popcount,
    read_graph6_file,
)
from vizbound.labeling import make_policy, run_labeling, trace_json, unresolved_conflicts
from vizbound.structure import decompose, fiber_views

log = logging.getLogger(__name__)

SCHEMA = 1
DEFAULT_H_LIST = "K2,P3,P4,C4,C5"

LABELING_CHECKS = (
    "faithful",
    "dominion",
    "nonempty",
    "monotone",
    "disjoint",
    "max_label_le_power",
    "claim1",
    "claim2",
    "projection",
    "eq3_a",
    "eq3_b",
    "eq3_c",
    "eq3_d",
)
BOUND_NAMES = ("vizing", "suen_tarr", "pi", "gamma", "delta")


class ConfigError(ValueError):
    pass


@dataclass
class SweepConfig:
    """Sweep settings; see README for the file format."""

    source: str = "corpus:1-6"
    h_list: str = DEFAULT_H_LIST
    max_product_order: int = 36
    budget_ms: int = 60_000
    seed: int = 0
    policy: str = "deterministic"
    out_csv: str = "sweep.csv"
    out_json: str = "sweep.json"
    trace_dir: str = ""
    workers: int = 1
    record_timing: bool = False

    def __post_init__(self):
        if self.max_product_order > MAX_ORDER:
            raise ConfigError(f"max_product_order {self.max_product_order} exceeds global cap {MAX_ORDER}")
        if self.budget_ms <= 0:
            raise ConfigError("budget_ms must be positive")
        if self.workers < 1:
            raise ConfigError("workers must be >= 1")
        make_policy(self.policy)

    @classmethod
    def from_text(cls, text: str, base_dir: Path | None = None, env: dict | None = None) -> "SweepConfig":
        types = {f.name: f.type for f in fields(cls)}
        values: dict = {}
        for lineno, raw in enumerate(text.splitlines(), start=1):
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            if "=" not in line:
                raise ConfigError(f"line {lineno}: expected key = value")
            key, val = (s.strip() for s in line.split("=", 1))
            key = key.replace("-", "_")
            if key not in types:
                raise ConfigError(f"line {lineno}: unknown key {key!r}")
            values[key] = val
        env = os.environ if env is None else env
        if env.get("VIZBOUND_BUDGET_MS"):
            values["budget_ms"] = env["VIZBOUND_BUDGET_MS"]
        if env.get("VIZBOUND_WORKERS"):
            values["workers"] = env["VIZBOUND_WORKERS"]
        out = {}
        for key, val in values.items():
            kind = types[key]
            if kind in ("int", int):
                out[key] = int(val)
            elif kind in ("bool", bool):
                out[key] = val.lower() in ("1", "true", "yes", "on")
            else:
                out[key] = val
        if base_dir is not None:
            for key in ("out_csv", "out_json", "trace_dir"):
                out.setdefault(key, getattr(cls, key))
                if out[key] and not Path(out[key]).is_absolute():
                    out[key] = str(base_dir / out[key])
        return cls(**out)

    @classmethod
    def from_file(cls, path: str | Path) -> "SweepConfig":
        path = Path(path)
        try:
            text = path.read_text()
        except OSError as exc:
            raise ConfigError(f"cannot read config {path}: {exc}") from exc
        return cls.from_text(text, base_dir=path.parent)


# -- graph sources ------------------------------------------------------------------


def resolve_source(spec: str) -> list[Graph]:
    """Expand a comma-separated source list.

    ``corpus:A-B`` bundled connected graphs of orders A..B; ``family:kind:n[:p:seed]``;
    ``file:path`` (or a bare path ending in ``.g6``); anything else is a graph name/graph6.
    """
    graphs: list[Graph] = []
    for item in (s.strip() for s in spec.split(",")):
        if not item:
            continue
        if item.startswith("corpus:"):
            lo, _, hi = item[len("corpus:"):].partition("-")
            for n in range(int(lo), int(hi or lo) + 1):
                graphs.extend(load_corpus(n))
        elif item.startswith("family:"):
            parts = item.split(":")[1:]
            kind, n = parts[0], int(parts[1])
            p = Fraction(parts[2]) if len(parts) > 2 else None
            seed = int(parts[3]) if len(parts) > 3 else None
            graphs.append(make_family(kind, n, p, seed))
        elif item.startswith("file:") or item.endswith(".g6"):
            path = item.removeprefix("file:")
            try:
                graphs.extend(read_graph6_file(path))
            except OSError as exc:
                raise ConfigError(f"cannot read corpus {path}: {exc}") from exc
        else:
            graphs.append(named_graph(item))
    return graphs


def graph_id(g: Graph) -> str:
    return g.name or emit_graph6(g)


# -- one instance -------------------------------------------------------------------


@dataclass
class InstanceRecord:
    g_id: str
    h_id: str
    g_graph6: str
    h_graph6: str
    status: str = "ok"
    note: str = ""
    gamma_g: int | None = None
    gamma_h: int | None = None
    pi_closed: int | None = None
    pi_open: int | None = None
    delta_g: int | None = None
    gamma_product: int | None = None
    rhs: dict[str, Fraction] = field(default_factory=dict)
    holds: dict[str, bool] = field(default_factory=dict)
    pi_improves: bool | None = None
    tightness: int | None = None
    max_label_size: int | None = None
    checks: dict[str, bool] = field(default_factory=dict)
    conflicts: int | None = None
    unresolved_conflicts: int | None = None
    wall_ms: float | None = None
    trace: dict | None = None

    @property
    def falsified(self) -> bool:
        if self.status != "ok":
            return False
        return not (self.holds.get("pi", True) and self.holds.get("gamma", True) and all(self.checks.values()))

    def row(self, timing: bool = False) -> list:
        def fmt(v):
            if v is None:
                return ""
            if isinstance(v, bool):
                return "1" if v else "0"
            return str(v)

        vals = [self.g_id, self.h_id, self.g_graph6, self.h_graph6, self.status, self.note]
        vals += [self.gamma_g, self.gamma_h, self.pi_closed, self.pi_open, self.delta_g, self.gamma_product]
        vals += [self.rhs.get(b) for b in BOUND_NAMES]
        vals += [self.holds.get(b) for b in BOUND_NAMES]
        vals += [self.pi_improves, self.tightness, self.max_label_size]
        vals += [self.checks.get(c) for c in LABELING_CHECKS]
        vals += [self.conflicts, self.unresolved_conflicts]
        vals += [self.falsified if self.status == "ok" else None]
        if timing:
            vals.append(None if self.wall_ms is None else f"{self.wall_ms:.1f}")
        return [fmt(v) for v in vals]


CSV_COLUMNS = (
    ["g_id", "h_id", "g_graph6", "h_graph6", "status", "note"]
    + ["gamma_g", "gamma_h", "pi_closed", "pi_open", "delta_g", "gamma_product"]
    + [f"{b}_rhs" for b in BOUND_NAMES]
    + [f"{b}_holds" for b in BOUND_NAMES]
    + ["pi_improves", "tightness", "max_label_size"]
    + list(LABELING_CHECKS)
    + ["conflicts", "unresolved_conflicts", "falsified"]
)


@lru_cache(maxsize=512)
def _factor_data(g: Graph):
    gamma = domination_number(g)
    pc, witness, _ = power_witness(g, gamma)
    return gamma, pc, witness, power_open(g, gamma), max_degree(g)


def instance_seed(seed: int, g_id: str, h_id: str) -> int:
    digest = hashlib.sha256(f"{seed}:{g_id}:{h_id}".encode()).digest()
    return int.from_bytes(digest[:8], "big")


def run_instance(
    g: Graph,
    h: Graph,
    cfg: SweepConfig | None = None,
    d: int | None = None,
    keep_trace: bool = False,
) -> InstanceRecord:
    """Run the full pipeline on ``(G, H)``; ``d`` overrides the solver's minimum dominating set."""
    cfg = cfg or SweepConfig()
    rec = InstanceRecord(graph_id(g), graph_id(h), emit_graph6(g), emit_graph6(h))
    start = time.perf_counter()
    if g.n * h.n > cfg.max_product_order:
        rec.status, rec.note = "skip", f"product order {g.n * h.n} > {cfg.max_product_order}"
        return rec
    if not (g.is_connected() and h.is_connected()):
        rec.status, rec.note = "skip", "disconnected factor"
        return rec
    budget = cfg.budget_ms / 1000
    try:
        gamma_g, pc, witness, po, delta = _factor_data(g)
        gamma_h = domination_number(h)
        prod = cartesian_product(g, h, cap=cfg.max_product_order)
        if d is None:
            d = min_dominating_set(prod.base, budget=budget)
            gamma_prod = popcount(d)
        else:
            gamma_prod = domination_number(prod.base, budget=budget)
    except SearchTimeout as exc:
        rec.status, rec.note = "timeout", str(exc)
        return rec
    rec.gamma_g, rec.gamma_h, rec.pi_closed, rec.pi_open, rec.delta_g = gamma_g, gamma_h, pc, po, delta
    rec.gamma_product = gamma_prod
    report = bounds(gamma_g, gamma_h, pc, delta).with_product(gamma_prod)
    rec.rhs, rec.holds = report.rhs(), report.holds
    rec.pi_improves, rec.tightness = report.pi_improves, report.tightness()

    dec = decompose(g, witness, gamma_g)
    fibers = fiber_views(prod, dec, d)
    policy = make_policy(cfg.policy, instance_seed(cfg.seed, rec.g_id, rec.h_id))
    result = run_labeling(prod, dec, fibers, d, gamma_h, pc, policy, gamma_product=gamma_prod)
    rec.checks = dict(result.checks)
    rec.max_label_size = max((len(e.label) for e in result.labeling.entries()), default=0)
    rec.conflicts = len(result.labeling.conflicts)
    rec.unresolved_conflicts = unresolved_conflicts(result.labeling)
    rec.wall_ms = (time.perf_counter() - start) * 1000
    if keep_trace or rec.falsified:
        rec.trace = trace_json(result)
    if rec.falsified:
        log.warning("claim check failed on G=%s H=%s: %s", rec.g_graph6, rec.h_graph6,
                    [k for k, v in rec.checks.items() if not v])
    return rec


# -- sweep --------------------------------------------------------------------------


def _run_pair(args):
    g, h, cfg = args
    return run_instance(g, h, cfg)


def iter_records(cfg: SweepConfig):
    gs = resolve_source(cfg.source)
    hs = resolve_source(cfg.h_list) if cfg.h_list.strip() else []
    tasks = [(g, h, cfg) for g in gs for h in hs]
    if cfg.workers == 1 or len(tasks) < 2:
        yield from map(_run_pair, tasks)
        return
    with ProcessPoolExecutor(max_workers=cfg.workers) as pool:
        yield from pool.map(_run_pair, tasks, chunksize=8)


def csv_text(records: list[InstanceRecord], timing: bool = False) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\r\n")  # RFC 4180
    w.writerow(CSV_COLUMNS + (["wall_ms"] if timing else []))
    for r in records:
        w.writerow(r.row(timing))
    return buf.getvalue()


def summarize(records: list[InstanceRecord], cfg: SweepConfig) -> dict:
    ok = [r for r in records if r.status == "ok"]
    disagree = sorted({r.g_graph6 for r in ok if r.pi_closed != r.pi_open})
    failed_checks = Counter(k for r in ok for k, v in r.checks.items() if not v)
    tight = Counter(r.tightness for r in ok)
    return {
        "schema": SCHEMA,
        "config": {
            "source": cfg.source,
            "h_list": cfg.h_list,
            "max_product_order": cfg.max_product_order,
            "seed": cfg.seed,
            "policy": cfg.policy,
        },
        "instances": len(records),
        "ok": len(ok),
        "timeout": sum(r.status == "timeout" for r in records),
        "skip": sum(r.status == "skip" for r in records),
        "falsified": sum(r.falsified for r in records),
        "bound_holds": {b: sum(r.holds[b] for r in ok) for b in BOUND_NAMES},
        "bound_fails": {b: sum(not r.holds[b] for r in ok) for b in BOUND_NAMES},
        "failed_checks": dict(sorted(failed_checks.items())),
        "max_label_size": max((r.max_label_size for r in ok), default=0),
        "max_pi_minus_delta": max((r.pi_closed - r.delta_g for r in ok), default=None),
        "conflicts": sum(r.conflicts for r in ok),
        "unresolved_conflicts": sum(r.unresolved_conflicts for r in ok),
        "power_disagreements": disagree,
        "tightness_histogram": {str(k): v for k, v in sorted(tight.items())},
        "falsified_instances": [[r.g_graph6, r.h_graph6] for r in records if r.falsified],
    }


def sweep(cfg: SweepConfig) -> tuple[list[InstanceRecord], dict]:
    """Run every (G, H) pair, write the CSV and JSON reports and return them."""
    records = []
    trace_dir = Path(cfg.trace_dir) if cfg.trace_dir else None
    for i, rec in enumerate(iter_records(cfg)):
        records.append(rec)
        if rec.trace is not None and trace_dir is not None:
            trace_dir.mkdir(parents=True, exist_ok=True)
            (trace_dir / f"trace_{i:05d}.json").write_text(json.dumps(rec.trace, indent=1) + "\n")
    summary = summarize(records, cfg)
    if cfg.out_csv:
        Path(cfg.out_csv).write_text(csv_text(records, cfg.record_timing), newline="")
    if cfg.out_json:
        Path(cfg.out_json).write_text(json.dumps(summary, indent=2) + "\n")
    return records, summary
