"""Command-line entry point.

Exit status: 0 when every check holds, 2 when a claim check failed, 1 on
operational errors.
"""

from __future__ import annotations

import argparse
import json
import logging
import sys
from pathlib import Path

from vizbound.bounds import prop1_max, prop1_oracle
from vizbound.domination import (
    SearchTimeout,
    enumerate_gamma_sets,
    min_dominating_set,
    power_report,
)
from vizbound.graph import GraphError, bits, cartesian_product, mask_of, named_graph, popcount
from vizbound.harness import (
    CSV_COLUMNS,
    ConfigError,
    SweepConfig,
    csv_text,
    run_instance,
    sweep,
)
from vizbound.kernels import BACKEND

EXIT_OK, EXIT_ERROR, EXIT_FALSIFIED = 0, 1, 2


def _budget(args) -> float | None:
    return None if args.budget_ms is None else args.budget_ms / 1000


def _emit(args, payload: dict, text: str):
    if args.format == "json":
        print(json.dumps(payload, indent=2, default=str))
    elif args.format == "csv":
        keys = list(payload)
        print(",".join(keys))
        print(",".join(str(payload[k]) for k in keys))
    else:
        print(text)


def _parse_d(spec: str | None, g, h) -> int | None:
    """Product vertices as ``g:h`` pairs, e.g. ``0:0,2:0,1:2``."""
    if not spec:
        return None
    out = []
    for item in spec.split(","):
        a, _, b = item.partition(":")
        out.append(int(b) * g.n + int(a))
    return mask_of(out)


def cmd_gamma(args):
    g = named_graph(args.g6)
    d = min_dominating_set(g, _budget(args))
    _emit(args, {"gamma": popcount(d), "witness": list(bits(d))}, f"gamma = {popcount(d)}  witness {sorted(bits(d))}")
    return EXIT_OK


def cmd_gamma_sets(args):
    g = named_graph(args.g6)
    sets = [list(bits(s)) for s in enumerate_gamma_sets(g)]
    text = "\n".join(" ".join(map(str, s)) for s in sets)
    _emit(args, {"gamma": len(sets[0]) if sets else 0, "count": len(sets), "sets": sets}, text)
    return EXIT_OK


def cmd_power(args):
    g = named_graph(args.g6)
    rep = power_report(g)
    payload = {
        "gamma": rep.gamma,
        "num_gamma_sets": rep.num_gamma_sets,
        "power_closed": rep.power_closed,
        "power_open": rep.power_open,
        "agree": rep.agree,
        "witness": list(rep.witness_set),
        "max_degree": rep.max_degree,
    }
    text = (
        f"gamma       {rep.gamma}  ({rep.num_gamma_sets} gamma-sets)\n"
        f"pi_closed   {rep.power_closed}  witness {list(rep.witness_set)}\n"
        f"pi_open     {rep.power_open}\n"
        f"max degree  {rep.max_degree}"
        + ("" if rep.agree else "\nnote: the two power definitions disagree on this graph")
    )
    _emit(args, payload, text)
    return EXIT_OK


def cmd_product_gamma(args):
    g, h = named_graph(args.g6), named_graph(args.h6)
    prod = cartesian_product(g, h)
    d = min_dominating_set(prod.base, _budget(args))
    pairs = [list(prod.coord(v)) for v in bits(d)]
    _emit(args, {"gamma_product": popcount(d), "witness": pairs}, f"gamma(G□H) = {popcount(d)}  witness {pairs}")
    return EXIT_OK


def _config_from_args(args) -> SweepConfig:
    kw = {"policy": args.policy, "seed": args.seed}
    if args.budget_ms is not None:
        kw["budget_ms"] = args.budget_ms
    if getattr(args, "max_order", None):
        kw["max_product_order"] = args.max_order
    return SweepConfig(**kw)


def cmd_verify(args):
    g, h = named_graph(args.g6), named_graph(args.h6)
    cfg = _config_from_args(args)
    rec = run_instance(g, h, cfg, d=_parse_d(args.d, g, h))
    if rec.status != "ok":
        print(f"{rec.status}: {rec.note}", file=sys.stderr)
        return EXIT_ERROR
    if args.format == "csv":
        sys.stdout.write(csv_text([rec]))
    elif args.format == "json":
        print(json.dumps(dict(zip(CSV_COLUMNS, rec.row())), indent=2))
    else:
        lines = [
            f"G = {rec.g_graph6}  H = {rec.h_graph6}",
            f"gamma(G) = {rec.gamma_g}  gamma(H) = {rec.gamma_h}  pi = {rec.pi_closed} (open {rec.pi_open})"
            f"  Delta(G) = {rec.delta_g}",
            f"gamma(G□H) = {rec.gamma_product}",
            "",
            f"{'bound':<12}{'rhs':>10}  holds",
        ]
        for name, val in rec.rhs.items():
            lines.append(f"{name:<12}{str(val):>10}  {'yes' if rec.holds[name] else 'NO'}")
        lines.append("")
        lines.append(f"{'check':<20}result")
        for name, ok in rec.checks.items():
            lines.append(f"{name:<20}{'pass' if ok else 'FAIL'}")
        lines.append(f"{'conflicts':<20}{rec.conflicts} ({rec.unresolved_conflicts} unresolved)")
        print("\n".join(lines))
    return EXIT_FALSIFIED if rec.falsified else EXIT_OK


def cmd_trace(args):
    g, h = named_graph(args.g6), named_graph(args.h6)
    rec = run_instance(g, h, _config_from_args(args), d=_parse_d(args.d, g, h), keep_trace=True)
    if rec.status != "ok":
        print(f"{rec.status}: {rec.note}", file=sys.stderr)
        return EXIT_ERROR
    Path(args.out).write_text(json.dumps(rec.trace, indent=1) + "\n")
    print(f"trace written to {args.out}")
    return EXIT_FALSIFIED if rec.falsified else EXIT_OK


def cmd_sweep(args):
    cfg = SweepConfig.from_file(args.config)
    records, summary = sweep(cfg)
    if args.format == "json":
        print(json.dumps(summary, indent=2))
    elif args.format == "csv":
        sys.stdout.write(csv_text(records, cfg.record_timing))
    else:
        print(
            f"{summary['instances']} instances: {summary['ok']} ok, {summary['timeout']} timeout, "
            f"{summary['skip']} skipped, {summary['falsified']} falsified"
        )
        print(f"reports: {cfg.out_csv}  {cfg.out_json}")
    return EXIT_FALSIFIED if summary["falsified"] else EXIT_OK


def cmd_prop1(args):
    value, witness = prop1_max(args.n)
    payload = {"n": args.n, "max": str(value), "witness": [str(x) for x in witness]}
    if args.n <= 8:
        oracle, opt = prop1_oracle(args.n)
        payload["oracle"] = str(oracle)
        payload["agree"] = oracle == value
    text = f"max f = {value}  at t = ({', '.join(map(str, witness))})"
    if "oracle" in payload:
        text += f"\noracle (vertex enumeration) = {payload['oracle']}  agree: {payload['agree']}"
    _emit(args, payload, text)
    return EXIT_OK if payload.get("agree", True) else EXIT_FALSIFIED


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--budget-ms", type=int, default=None, help="time budget per exact search")
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--policy", default="deterministic", choices=["deterministic", "seeded-random"])
    common.add_argument("--format", default="text", choices=["text", "json", "csv"])
    common.add_argument("-v", "--verbose", action="store_true")

    p = argparse.ArgumentParser(prog="vizbound", description=__doc__.splitlines()[0])
    p.add_argument("--version", action="version", version=f"%(prog)s 0.1.0 ({BACKEND} kernel)")
    sub = p.add_subparsers(dest="command", required=True)

    for name, fn, helptext in (
        ("gamma", cmd_gamma, "domination number and a minimum dominating set"),
        ("gamma-sets", cmd_gamma_sets, "every minimum dominating set"),
        ("power", cmd_power, "gamma, both power definitions and a witness"),
    ):
        sp = sub.add_parser(name, parents=[common], help=helptext)
        sp.add_argument("g6", help="graph6 string or a name like P4, C5, K2, S4")
        sp.set_defaults(func=fn)

    sp = sub.add_parser("product-gamma", parents=[common], help="domination number of G□H")
    sp.add_argument("g6")
    sp.add_argument("h6")
    sp.set_defaults(func=cmd_product_gamma)

    for name, fn in (("verify", cmd_verify), ("trace", cmd_trace)):
        sp = sub.add_parser(name, parents=[common], help=f"{name} the labeling pipeline on G□H")
        sp.add_argument("g6")
        sp.add_argument("h6")
        sp.add_argument("--d", help="use this minimum dominating set, as g:h pairs, e.g. 0:0,2:0")
        sp.add_argument("--max-order", type=int, default=None)
        if name == "trace":
            sp.add_argument("--out", required=True)
        sp.set_defaults(func=fn)

    sp = sub.add_parser("sweep", parents=[common], help="run a configured sweep")
    sp.add_argument("--config", required=True)
    sp.set_defaults(func=cmd_sweep)

    sp = sub.add_parser("prop1", parents=[common], help="weighted-simplex maximum and its oracle")
    sp.add_argument("--n", type=int, required=True)
    sp.set_defaults(func=cmd_prop1)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, format="%(levelname)s %(message)s")
    try:
        return args.func(args)
    except (GraphError, ConfigError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_ERROR
    except SearchTimeout as exc:
        print(f"timeout: {exc}", file=sys.stderr)
        return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())
