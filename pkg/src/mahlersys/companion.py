"""Cyclic vectors and the ramification index read off the Newton lower hull."""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import reduce
from typing import Optional, Sequence

from .exact import RatFun, interpolate, lagrange_bound, valuation0
from .linalg import MatQ
from .system import MahlerSystem, RatMatrix


@dataclass(frozen=True)
class CompanionForm:
    """Gauge ``P`` with ``phi_p(P) A P^{-1}`` companion, last row ``q``."""

    P: RatMatrix
    q: tuple[RatFun, ...]
    z0: Fraction

    def companion(self) -> RatMatrix:
        m = len(self.q)
        rows = [[1 if j == i + 1 else 0 for j in range(m)] for i in range(m - 1)]
        rows.append(list(self.q))
        return RatMatrix(rows)


@dataclass(frozen=True)
class HullResult:
    vertices: tuple[tuple[int, int], ...]
    slopes: tuple[Fraction, ...]
    d: Optional[int] = None


def pick_z0(sys: MahlerSystem) -> Fraction:
    """An integer base point above every root modulus of ``det A`` and the entry denominators."""
    bound = lagrange_bound(sys.A.det().num)
    for row in sys.A.data:
        for f in row:
            bound = max(bound, lagrange_bound(f.den))
    return Fraction(max(2, math.ceil(bound)))


def cyclic_gauge(sys: MahlerSystem) -> CompanionForm:
    A, p, m = sys.A, sys.p, sys.m
    z0 = pick_z0(sys)
    pts = [z0 ** (p ** i) for i in range(m)]
    # targets[i] = e_{i+1} A(z0)^{-1} ... A(z0^{p^{i-1}})^{-1}
    targets = []
    acc = MatQ.identity(m)
    for i in range(m):
        e = MatQ(1, m, [[1 if j == i else 0 for j in range(m)]])
        targets.append(e @ acc)
        if i < m - 1:
            Ai = A(pts[i])
            if Ai.rank() < m:
                raise ArithmeticError("bad base point")
            acc = acc @ Ai.inverse()
    r = [RatFun(interpolate([(pts[i], targets[i][0, j]) for i in range(m)])) for j in range(m)]
    rows = [RatMatrix([r])]
    for _ in range(m - 1):
        rows.append(rows[-1].phi(p) @ A)
    P = RatMatrix([row.data[0] for row in rows])
    Pinv = P.inverse()
    q = (rows[-1].phi(p) @ A @ Pinv).data[0]
    return CompanionForm(P, tuple(q), z0)


def _cross(o, a, b) -> Fraction:
    return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])


def lower_hull(points: Sequence[tuple[int, int]]) -> HullResult:
    """Lower convex envelope; collinear interior points are dropped."""
    best: dict[int, int] = {}
    for x, y in points:
        best[x] = min(y, best.get(x, y))
    pts = sorted(best.items())
    hull: list[tuple[int, int]] = []
    for pt in pts:
        while len(hull) >= 2 and _cross(hull[-2], hull[-1], pt) <= 0:
            hull.pop()
        hull.append(pt)
    slopes = tuple(Fraction(b[1] - a[1], b[0] - a[0]) for a, b in zip(hull, hull[1:]))
    return HullResult(tuple(hull), slopes)


def hull_points(q: Sequence[RatFun], p: int) -> list[tuple[int, int]]:
    m = len(q)
    pts = [(p ** i, valuation0(qi)) for i, qi in enumerate(q) if qi]
    pts.append((p ** m, 0))
    return pts


def ramification_from_slopes(slopes: Sequence[Fraction], p: int) -> int:
    dens = [s.denominator for s in slopes if math.gcd(s.denominator, p) == 1]
    return reduce(math.lcm, dens, 1)


def ramification_index(sys: MahlerSystem, form: Optional[CompanionForm] = None) -> HullResult:
    if form is None:
        form = cyclic_gauge(sys)
    hull = lower_hull(hull_points(form.q, sys.p))
    d = ramification_from_slopes(hull.slopes, sys.p)
    assert 1 <= d <= sys.p ** sys.m - 1 and math.gcd(d, sys.p) == 1, d
    return HullResult(hull.vertices, hull.slopes, d)


def is_companion_identity(sys: MahlerSystem, form: CompanionForm) -> bool:
    lhs = form.P.phi(sys.p) @ sys.A @ form.P.inverse()
    return lhs == form.companion() and form.P(form.z0) == MatQ.identity(sys.m)
