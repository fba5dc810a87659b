import pytest

import oracles
from vizbound.domination import ContractError, enumerate_gamma_sets, min_dominating_set
from vizbound.graph import bits, cartesian_product, load_corpus_upto, make_family, mask_of, popcount
from vizbound.structure import (
    chamber,
    decompose,
    fiber_views,
    vertical_support,
    vertically_undominated_vertices,
)

P3 = make_family("path", 3)
P4 = make_family("path", 4)
C4 = make_family("cycle", 4)
K1 = make_family("complete", 1)
K2 = make_family("complete", 2)


def test_decompose_examples():
    d = decompose(P3, {1})
    assert d.cells == (0b111,) and d.shared == {}

    d = decompose(C4, {0, 2})
    assert d.cells == (0b0001, 0b0100)
    assert d.shared == {frozenset({0, 1}): 0b1010}

    d = decompose(P4, {0, 3})
    assert [sorted(bits(q)) for q in d.cells] == [[0, 1], [2, 3]]
    assert d.shared == {}


def test_decompose_rejects_non_gamma_sets():
    with pytest.raises(ContractError):
        decompose(P4, {0})
    with pytest.raises(ContractError):
        decompose(P4, {0, 1, 3})


def test_partition_property_on_corpus():
    for g in load_corpus_upto(6):
        for basis in enumerate_gamma_sets(g):
            dec = decompose(g, basis)
            parts = list(dec.cells) + list(dec.shared.values())
            assert sum(popcount(p) for p in parts) == g.n
            union = 0
            for p in parts:
                assert p and not union & p
                union |= p
            assert union == g.all_mask
            for s, m in dec.shared.items():
                for v in bits(m):
                    assert {i for i, b in enumerate(dec.basis) if g.has_edge(v, b)} == s


def test_chamber_examples():
    dec = decompose(C4, {0, 2})
    assert chamber(dec, {0, 1}) == 0b1111
    assert chamber(dec, {0}) == 0b0001
    assert chamber(dec, set()) == 0


def test_chamber_monotone():
    import itertools

    for g in load_corpus_upto(6)[::5]:
        dec = decompose(g, next(enumerate_gamma_sets(g)))
        idx = range(dec.k)
        subsets = [frozenset(c) for r in range(dec.k + 1) for c in itertools.combinations(idx, r)]
        for a in subsets:
            for b in subsets:
                if a <= b:
                    assert chamber(dec, a) & ~chamber(dec, b) == 0


def test_fiber_views_k1_k2():
    prod = cartesian_product(K1, K2)
    dec = decompose(K1, {0})
    views = fiber_views(prod, dec, mask_of([prod.index(0, 0)]))
    assert views[0].undominated == frozenset() and views[1].undominated == frozenset()
    assert views[0].d_h == 1 and views[1].d_h == 0


def test_fiber_views_rejects_non_dominating():
    prod = cartesian_product(P3, P3)
    dec = decompose(P3, {1})
    d = mask_of([prod.index(1, 0), prod.index(1, 2)])
    assert oracles.gamma(9, oracles.product_edges(3, P3.edges(), 3, P3.edges())) == 3
    with pytest.raises(ContractError):
        fiber_views(prod, dec, d)


def test_fiber_views_cube():
    prod = cartesian_product(C4, K2)
    dec = decompose(C4, {0, 2})
    d = mask_of([prod.index(1, 0), prod.index(3, 1)])
    assert popcount(d) == oracles.gamma(8, prod.base.edges()) == 2
    views = fiber_views(prod, dec, d)
    # support in both fibres is {1, 3} = P_{0,1}; both cells are vertically undominated
    for h in (0, 1):
        assert vertical_support(prod, d, h) == 0b1010
        assert views[h].undominated == frozenset({0, 1})
        assert views[h].ell == 2
    assert vertically_undominated_vertices(prod, d, 0) == 0b0101


def test_fiber_view_properties():
    hs = [K2, P3, make_family("cycle", 5)]
    for g in load_corpus_upto(5):
        dec = decompose(g, next(enumerate_gamma_sets(g)))
        for h in hs:
            prod = cartesian_product(g, h)
            d = min_dominating_set(prod.base)
            views = fiber_views(prod, dec, d)
            assert sum(popcount(v.d_h) for v in views.values()) == popcount(d)
            for hv, view in views.items():
                for i, cell in enumerate(dec.cells):
                    closed_h = h.closed(hv)
                    witnesses = [
                        (gv, hu) for gv in bits(cell) for hu in bits(closed_h) if d >> prod.index(gv, hu) & 1
                    ]
                    assert (i in view.undominated) == (not witnesses)
