import pytest
from hypothesis import given, settings

from vizbound import _kernels_py, kernels
from vizbound.graph import cartesian_product, load_corpus, make_family, popcount

from test_graph import graphs

compiled = pytest.mark.skipif(kernels._compiled is None, reason="compiled kernel not built")


def both_backends():
    yield "python"
    if kernels._compiled is not None:
        yield None


@compiled
def test_compiled_backend_selected():
    assert kernels.BACKEND == "cython"
    assert kernels.backend_for(40) is kernels._compiled
    assert kernels.backend_for(65) is _kernels_py


@compiled
@given(graphs(12))
@settings(max_examples=150)
def test_backends_agree(g):
    rows = g.closed_rows()
    py = _kernels_py.min_dominating_set(rows, g.n)
    cy = kernels._compiled.min_dominating_set(rows, g.n)
    assert py == cy
    assert _kernels_py.dominating_sets_of_size(rows, g.n, py[0]) == kernels._compiled.dominating_sets_of_size(
        rows, g.n, py[0]
    )
    assert _kernels_py.greedy_dominating_set(rows, g.n) == kernels._compiled.greedy_dominating_set(rows, g.n)


@compiled
def test_backends_agree_on_products():
    hs = [make_family("cycle", 5), make_family("path", 4)]
    for g in load_corpus(6)[::7]:
        for h in hs:
            p = cartesian_product(g, h).base
            rows = p.closed_rows()
            assert _kernels_py.min_dominating_set(rows, p.n) == kernels._compiled.min_dominating_set(rows, p.n)


@pytest.mark.parametrize("prefer", list(both_backends()))
def test_dominating_sets_lexicographic(prefer):
    g = make_family("path", 4)
    sets = kernels.dominating_sets_of_size(g.closed_rows(), g.n, 2, prefer=prefer)
    assert [sorted(i for i in range(4) if s >> i & 1) for s in sets] == [[0, 2], [0, 3], [1, 2], [1, 3]]


@pytest.mark.parametrize("prefer", list(both_backends()))
def test_timeout_carries_bounds(prefer):
    g = cartesian_product(make_family("cycle", 8), make_family("cycle", 8)).base
    with pytest.raises(kernels.SearchTimeout) as exc:
        kernels.min_dominating_set(g.closed_rows(), g.n, deadline=0.0, prefer=prefer)
    e = exc.value
    assert 1 <= e.lower <= e.upper == popcount(e.best_mask)
    assert kernels.is_dominating(g.closed_rows(), g.n, e.best_mask)


def test_large_graph_uses_python_path():
    g = make_family("path", 90)
    size, mask = kernels.min_dominating_set(g.closed_rows(), g.n)
    assert size == 30 and kernels.is_dominating(g.closed_rows(), g.n, mask)


def test_benchmark_smoke(capsys):
    import importlib.util
    from pathlib import Path

    from vizbound import kernels

    if kernels.BACKEND != "cython":
        pytest.skip("compiled kernel not built")
    path = Path(__file__).resolve().parent.parent / "benchmarks" / "bench_kernels.py"
    spec = importlib.util.spec_from_file_location("bench_kernels", path)
    bench = importlib.util.module_from_spec(spec)
    spec.loader.exec_module(bench)
    assert bench.main(["--quick", "--repeat", "1"]) == 0
    assert "speedup" in capsys.readouterr().out
