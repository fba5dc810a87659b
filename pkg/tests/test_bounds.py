import math
import random
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from vizbound.bounds import (
    bounds,
    coefficient,
    improvement_discrepancies,
    improvement_region,
    is_feasible,
    objective,
    prop1_max,
    prop1_oracle,
    prop1_recession_ray,
    remark_condition,
    suen_tarr,
)


def test_prop1_small_values():
    assert prop1_max(2) == (Fraction(3, 2), (Fraction(1, 2), Fraction(1, 2)))
    assert prop1_max(3) == (Fraction(5, 3), (Fraction(2, 3), Fraction(0), Fraction(1, 3)))
    with pytest.raises(ValueError):
        prop1_max(1)


@pytest.mark.parametrize("n", range(2, 9))
def test_witness_attains_and_is_tight(n):
    value, t = prop1_max(n)
    assert is_feasible(t)
    assert objective(t) == value
    assert t[0] == (n - 1) * t[-1]


def test_oracle_values():
    assert prop1_oracle(2)[0] == Fraction(3, 2)
    assert prop1_oracle(4)[0] == Fraction(7, 4)
    with pytest.raises(ValueError):
        prop1_oracle(9)


def test_unbounded_without_nonnegativity():
    assert prop1_recession_ray(2) is None
    for n in (3, 4):
        d = prop1_recession_ray(n)
        assert d is not None and sum(d) == 0 and objective(d) > 0
        assert d[0] >= sum((i - 1) * x for i, x in enumerate(d, start=1) if i >= 2)
        # walking along the ray from the witness stays feasible (signs aside) and f grows
        _, t = prop1_max(n)
        far = tuple(a + 1000 * b for a, b in zip(t, d))
        assert is_feasible(far, nonnegative=False) and objective(far) > 1000 * objective(d)


@st.composite
def feasible_points(draw, n):
    extra = draw(st.lists(st.integers(0, 50), min_size=n - 1, max_size=n - 1))
    slack = draw(st.integers(0, 50))
    head = sum((i - 1) * a for i, a in enumerate(extra, start=2)) + slack
    raw = [head] + extra
    total = sum(raw)
    if total == 0:
        raw, total = [1] + [0] * (n - 1), 1
    return tuple(Fraction(x, total) for x in raw)


@given(st.integers(2, 8).flatmap(lambda n: st.tuples(st.just(n), feasible_points(n))))
def test_feasible_points_never_exceed(arg):
    n, t = arg
    assert is_feasible(t)
    assert objective(t) <= Fraction(2 * n - 1, n)


def test_bound_examples():
    r = bounds(3, 3, 2, 4)
    assert r.pi_bound_rhs == 6 == Fraction(2, 3) * 9
    assert bounds(4, 5, 1, 3).pi_bound_rhs == 20
    r = bounds(2, 10, 2, 3)
    assert r.gamma_bound_rhs == Fraction(40, 3) and r.suen_tarr_rhs == 11
    assert r.gamma_improves
    with pytest.raises(ValueError):
        bounds(0, 1, 1, 1)
    with pytest.raises(ValueError):
        bounds(1, 1, 1, -1)
    assert bounds(1, 1, 1, 0).delta_bound_rhs == 0


def test_with_product_uses_ceiling():
    r = bounds(2, 1, 2, 2).with_product(2)
    assert r.pi_bound_rhs == Fraction(4, 3)
    assert r.holds["pi"] and r.tightness() == 0
    assert not bounds(2, 2, 1, 2).with_product(3).holds["pi"]


@given(st.integers(1, 30), st.integers(1, 30), st.integers(1, 30), st.integers(1, 30))
def test_monotone(gg, gh, p, dl):
    r = bounds(gg, gh, p, dl)
    assert bounds(gg + 1, gh, p, dl).pi_bound_rhs >= r.pi_bound_rhs
    assert bounds(gg, gh + 1, p, dl).pi_bound_rhs >= r.pi_bound_rhs
    assert bounds(gg, gh, p + 1, dl).pi_bound_rhs <= r.pi_bound_rhs
    assert Fraction(1, 2) < coefficient(p + 1) < coefficient(p) <= 1


def test_improvement_examples():
    assert improvement_region(2, 10)
    assert not improvement_region(5, 5)
    assert bounds(5, 5, 5, 5).gamma_bound_rhs == Fraction(125, 9) < suen_tarr(5, 5) == 15
    assert all(improvement_region(1, k) for k in range(2, 40))


def test_remark_condition_grid():
    # with the G-side coefficient alone, the second disjunct never helps
    grid = improvement_discrepancies(25)
    assert grid and all(a > b and 2 * b < a + 1 for a, b in grid)
    # reading the remark symmetrically in G and H removes every discrepancy
    assert improvement_discrepancies(25, symmetric=True) == []


def test_sampled_points_exact():
    rng = random.Random(5)
    for n in range(2, 9):
        cap = Fraction(2 * n - 1, n)
        for _ in range(500):
            extra = [rng.randrange(0, 20) if rng.random() < 0.5 else 0 for _ in range(n - 1)]
            head = sum((i - 1) * a for i, a in enumerate(extra, start=2)) + rng.randrange(0, 3)
            total = head + sum(extra) or 1
            t = [Fraction(head or (1 if total == 1 else 0), total)] + [Fraction(a, total) for a in extra]
            if sum(t) != 1:
                continue
            assert objective(t) <= cap
            assert math.isclose(float(objective(t)), float(sum(i * x for i, x in enumerate(t, 1))))
