"""Exact-rational bound calculators and the weighted-simplex maximisation.

The maximisation problem: maximise ``f(t) = sum_i i * t_i`` subject to
``sum_i t_i = 1``, ``t_1 >= sum_{i>=2} (i - 1) t_i`` and ``t >= 0``.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

Vector = tuple[Fraction, ...]


def objective(t: Sequence[Fraction]) -> Fraction:
    return sum((i * x for i, x in enumerate(t, start=1)), Fraction(0))


def is_feasible(t: Sequence[Fraction], nonnegative: bool = True) -> bool:
    if sum(t) != 1:
        return False
    if nonnegative and any(x < 0 for x in t):
        return False
    return t[0] >= sum((i - 1) * x for i, x in enumerate(t, start=1) if i >= 2)


def prop1_max(n: int) -> tuple[Fraction, Vector]:
    """The maximum ``(2n - 1) / n`` and the point attaining it."""
    if n < 2:
        raise ValueError(f"n must be >= 2, got {n}")
    witness = [Fraction(0)] * n
    witness[0] = Fraction(n - 1, n)
    witness[-1] = Fraction(1, n)
    return Fraction(2 * n - 1, n), tuple(witness)


# -- independent oracle: exact vertex enumeration ---------------------------------


def _solve(rows: list[list[Fraction]], rhs: list[Fraction]) -> list[Fraction] | None:
    """Gauss-Jordan over the rationals; None when singular."""
    n = len(rows)
    a = [list(r) + [b] for r, b in zip(rows, rhs)]
    for col in range(n):
        piv = next((r for r in range(col, n) if a[r][col] != 0), None)
        if piv is None:
            return None
        a[col], a[piv] = a[piv], a[col]
        inv = 1 / a[col][col]
        a[col] = [x * inv for x in a[col]]
        for r in range(n):
            if r != col and a[r][col] != 0:
                f = a[r][col]
                a[r] = [x - f * y for x, y in zip(a[r], a[col])]
    return [a[r][n] for r in range(n)]


def vertex_max(
    c: Sequence[Fraction],
    eq: list[tuple[Sequence[Fraction], Fraction]],
    ge: list[tuple[Sequence[Fraction], Fraction]],
) -> tuple[Fraction, Vector] | None:
    """Maximise ``c.x`` over a bounded polytope by enumerating every basic feasible point.

    Each candidate vertex makes all equalities and ``n - len(eq)`` inequalities tight.
    Returns None when no vertex is feasible.
    """
    n = len(c)
    free = n - len(eq)
    best = None
    for tight in itertools.combinations(range(len(ge)), free):
        rows = [list(map(Fraction, a)) for a, _ in eq] + [list(map(Fraction, ge[j][0])) for j in tight]
        rhs = [Fraction(b) for _, b in eq] + [Fraction(ge[j][1]) for j in tight]
        x = _solve(rows, rhs)
        if x is None:
            continue
        if any(sum(ai * xi for ai, xi in zip(a, x)) != b for a, b in eq):
            continue
        if any(sum(ai * xi for ai, xi in zip(a, x)) < b for a, b in ge):
            continue
        val = sum(ci * xi for ci, xi in zip(c, x))
        if best is None or val > best[0] or (val == best[0] and tuple(x) < best[1]):
            best = (val, tuple(x))
    return best


def _ordering_row(n: int) -> list[int]:
    return [1] + [-(i - 1) for i in range(2, n + 1)]


def prop1_oracle(n: int) -> tuple[Fraction, Vector]:
    if not 2 <= n <= 8:
        raise ValueError(f"oracle supports 2 <= n <= 8, got {n}")
    c = list(range(1, n + 1))
    eq = [([1] * n, 1)]
    ge = [(_ordering_row(n), 0)] + [([int(j == i) for j in range(n)], 0) for i in range(n)]
    res = vertex_max(c, eq, ge)
    assert res is not None
    return res


def prop1_recession_ray(n: int) -> Vector | None:
    """A direction along which ``f`` grows without bound once ``t >= 0`` is dropped, or None.

    Searches the recession cone ``{sum d = 0, d_1 >= sum (i-1) d_i}`` inside the box
    ``[-1, 1]^n``; a positive optimum is an unbounded ray.
    """
    c = list(range(1, n + 1))
    eq = [([1] * n, 0)]
    ge = [(_ordering_row(n), 0)]
    for i in range(n):
        unit = [int(j == i) for j in range(n)]
        ge.append((unit, -1))
        ge.append(([-u for u in unit], -1))
    res = vertex_max(c, eq, ge)
    if res is None or res[0] <= 0:
        return None
    return res[1]


# -- closed-form bounds -----------------------------------------------------------


def coefficient(p: int) -> Fraction:
    """p / (2p - 1)."""
    return Fraction(p, 2 * p - 1)


def suen_tarr(gamma_g: int, gamma_h: int) -> Fraction:
    return Fraction(gamma_g * gamma_h + min(gamma_g, gamma_h), 2)


def gamma_bound(gamma_g: int, gamma_h: int) -> Fraction:
    return coefficient(gamma_g) * gamma_g * gamma_h


@dataclass(frozen=True)
class BoundReport:
    gamma_g: int
    gamma_h: int
    pi_g: int
    delta_g: int
    vizing_rhs: Fraction
    suen_tarr_rhs: Fraction
    pi_bound_rhs: Fraction
    gamma_bound_rhs: Fraction
    delta_bound_rhs: Fraction
    gamma_product: int | None = None
    holds: dict[str, bool] = field(default_factory=dict)

    @property
    def pi_improves(self) -> bool:
        return self.pi_bound_rhs > self.suen_tarr_rhs

    @property
    def gamma_improves(self) -> bool:
        return self.gamma_bound_rhs > self.suen_tarr_rhs

    def rhs(self) -> dict[str, Fraction]:
        return {
            "vizing": self.vizing_rhs,
            "suen_tarr": self.suen_tarr_rhs,
            "pi": self.pi_bound_rhs,
            "gamma": self.gamma_bound_rhs,
            "delta": self.delta_bound_rhs,
        }

    def with_product(self, gamma_product: int) -> "BoundReport":
        holds = {k: math.ceil(v) <= gamma_product for k, v in self.rhs().items()}
        return BoundReport(**{**self.__dict__, "gamma_product": gamma_product, "holds": holds})

    def tightness(self) -> int | None:
        """gamma(G□H) - ceil(pi bound)."""
        if self.gamma_product is None:
            return None
        return self.gamma_product - math.ceil(self.pi_bound_rhs)


def bounds(gamma_g: int, gamma_h: int, pi_g: int, delta_g: int) -> BoundReport:
    """All lower bounds on gamma(G□H) as exact rationals.

    ``delta_g`` may be 0 (G = K_1); the max-degree bound then degenerates to 0.
    """
    for name, val in (("gamma_g", gamma_g), ("gamma_h", gamma_h), ("pi_g", pi_g)):
        if val < 1:
            raise ValueError(f"{name} must be >= 1, got {val}")
    if delta_g < 0:
        raise ValueError(f"delta_g must be >= 0, got {delta_g}")
    prod = gamma_g * gamma_h
    return BoundReport(
        gamma_g=gamma_g,
        gamma_h=gamma_h,
        pi_g=pi_g,
        delta_g=delta_g,
        vizing_rhs=Fraction(prod),
        suen_tarr_rhs=suen_tarr(gamma_g, gamma_h),
        pi_bound_rhs=coefficient(pi_g) * prod,
        gamma_bound_rhs=gamma_bound(gamma_g, gamma_h),
        delta_bound_rhs=coefficient(delta_g) * prod if delta_g else Fraction(0),
    )


def improvement_region(gamma_g: int, gamma_h: int, symmetric: bool = False) -> bool:
    """Whether the gamma(G)-coefficient bound beats Suen-Tarr.

    With ``symmetric`` the better of the G-side and H-side coefficient bounds is used.
    """
    st = suen_tarr(gamma_g, gamma_h)
    if gamma_bound(gamma_g, gamma_h) > st:
        return True
    return symmetric and gamma_bound(gamma_h, gamma_g) > st


def remark_condition(gamma_g: int, gamma_h: int) -> bool:
    """gamma(G) < (gamma(H) + 1) / 2  or  gamma(H) < (gamma(G) + 1) / 2."""
    return 2 * gamma_g < gamma_h + 1 or 2 * gamma_h < gamma_g + 1


def improvement_discrepancies(top: int, symmetric: bool = False) -> list[tuple[int, int]]:
    """Grid points 1..top where :func:`improvement_region` and :func:`remark_condition` disagree."""
    return [
        (a, b)
        for a in range(1, top + 1)
        for b in range(1, top + 1)
        if improvement_region(a, b, symmetric) != remark_condition(a, b)
    ]
