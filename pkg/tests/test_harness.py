import csv
import io
import json
from pathlib import Path

import pytest

import oracles
from vizbound.graph import make_family, named_graph, parse_graph6
from vizbound.harness import (
    CSV_COLUMNS,
    ConfigError,
    SweepConfig,
    csv_text,
    resolve_source,
    run_instance,
    sweep,
)

GOLDEN = Path(__file__).parent / "golden" / "mini_sweep.csv"
MINI = "source = corpus:1-4\nh_list = K2,P3\nout_csv = mini.csv\nout_json = mini.json\n"


def test_config_parsing(tmp_path):
    cfg = SweepConfig.from_text(
        "# comment\nsource = family:cycle:5, P4\nh_list = K2\nbudget_ms = 500\nrecord_timing = yes\n"
        "out_csv = a.csv\n",
        base_dir=tmp_path,
        env={},
    )
    assert cfg.budget_ms == 500 and cfg.record_timing and cfg.out_csv == str(tmp_path / "a.csv")
    assert [g.name for g in resolve_source(cfg.source)] == ["C5", "P4"]


def test_config_env_overrides():
    cfg = SweepConfig.from_text("budget_ms = 500\n", env={"VIZBOUND_BUDGET_MS": "42", "VIZBOUND_WORKERS": "3"})
    assert cfg.budget_ms == 42 and cfg.workers == 3


@pytest.mark.parametrize(
    "text",
    ["nonsense\n", "colour = red\n", "budget_ms = 0\n", "max_product_order = 500\n", "policy = greedy\n"],
)
def test_config_errors(text):
    with pytest.raises(ConfigError if "policy" not in text else ValueError):
        SweepConfig.from_text(text, env={})


def test_unreadable_corpus():
    with pytest.raises(ConfigError, match="nowhere.g6"):
        resolve_source("file:/nowhere.g6")


def test_run_instance_k1_k1():
    k1 = make_family("complete", 1)
    rec = run_instance(k1, k1)
    assert rec.status == "ok"
    assert (rec.gamma_g, rec.gamma_h, rec.gamma_product, rec.pi_closed) == (1, 1, 1, 1)
    assert all(rec.holds[b] for b in ("vizing", "suen_tarr", "pi", "gamma"))
    assert rec.rhs["pi"] == rec.gamma_product == 1
    assert not rec.falsified


def test_run_instance_cube():
    rec = run_instance(make_family("cycle", 4), make_family("complete", 2))
    assert (rec.gamma_g, rec.gamma_h, rec.gamma_product, rec.pi_closed) == (2, 1, 2, 2)
    assert rec.holds["pi"] and rec.tightness == 0
    assert all(rec.checks.values())


def test_run_instance_p4_square():
    p4 = make_family("path", 4)
    rec = run_instance(p4, p4)
    assert rec.pi_closed == 1 and rec.rhs["pi"] == 4
    assert rec.gamma_product == oracles.gamma(16, oracles.product_edges(4, p4.edges(), 4, p4.edges()))
    assert rec.gamma_product >= 4


def test_run_instance_skip_and_timeout():
    big = make_family("path", 8)
    rec = run_instance(big, make_family("cycle", 5), SweepConfig(max_product_order=36))
    assert rec.status == "skip" and rec.row()[CSV_COLUMNS.index("falsified")] == ""
    c = make_family("cycle", 10)
    rec = run_instance(c, c, SweepConfig(max_product_order=100, budget_ms=1))
    assert rec.status in ("timeout", "ok")


def test_falsified_instance_gets_trace():
    rec = run_instance(parse_graph6("Cr"), named_graph("C4"), d=sum(1 << v for v in (0, 2, 9, 11)))
    assert rec.falsified and rec.trace is not None
    assert rec.unresolved_conflicts == 2


def test_empty_h_list(tmp_path):
    cfg = SweepConfig(source="P4", h_list="", out_csv=str(tmp_path / "o.csv"), out_json=str(tmp_path / "o.json"))
    records, summary = sweep(cfg)
    assert records == [] and summary["instances"] == 0
    assert (tmp_path / "o.csv").read_bytes() == (",".join(CSV_COLUMNS) + "\r\n").encode()


def _mini(tmp_path, extra=""):
    cfgfile = tmp_path / "mini.cfg"
    cfgfile.write_text(MINI + extra)
    cfg = SweepConfig.from_file(cfgfile)
    return sweep(cfg), tmp_path / "mini.csv", tmp_path / "mini.json"


def test_golden_mini_sweep(tmp_path):
    (records, summary), out_csv, out_json = _mini(tmp_path)
    assert len(records) == 20
    text = out_csv.read_bytes()
    assert text == GOLDEN.read_bytes()
    rows = list(csv.DictReader(io.StringIO(text.decode())))
    for r in rows:
        g, h = parse_graph6(r["g_graph6"]), parse_graph6(r["h_graph6"])
        expected = oracles.gamma(g.n * h.n, oracles.product_edges(g.n, g.edges(), h.n, h.edges()))
        assert int(r["gamma_product"]) == expected
        assert r["falsified"] == "0"
    assert json.loads(out_json.read_text())["falsified"] == 0


def test_sweep_deterministic(tmp_path):
    a = tmp_path / "a"
    b = tmp_path / "b"
    a.mkdir()
    b.mkdir()
    _, csv_a, json_a = _mini(a, "policy = seeded-random\nseed = 11\n")
    _, csv_b, json_b = _mini(b, "policy = seeded-random\nseed = 11\nworkers = 2\n")
    assert csv_a.read_bytes() == csv_b.read_bytes()
    assert json_a.read_bytes() == json_b.read_bytes()


def test_csv_timing_column():
    rec = run_instance(make_family("path", 2), make_family("path", 2))
    lines = csv_text([rec], timing=True).splitlines()
    assert lines[0].endswith(",wall_ms") and len(lines[1].split(",")) == len(CSV_COLUMNS) + 1
