"""Named example systems and a brute-force oracle for the candidate space."""
from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Optional

from .exact import RatFun
from .linalg import rref
from .system import MahlerSystem, RatMatrix


@dataclass(frozen=True)
class Expected:
    regular_singular: bool
    d: Optional[int] = None
    dimX: Optional[int] = None


@dataclass(frozen=True)
class NamedSystem:
    name: str
    sys: MahlerSystem
    expected: Optional[Expected] = None


_z = RatFun.z()


def example_order2() -> NamedSystem:
    """Companion system of a 3-Mahler equation of order 2; regular singular with ``d = 2``."""
    z = _z
    A = RatMatrix([
        [0, 1],
        [-(z**3 * (1 + z) * (1 - z**21 - z**30)) / ((1 - z**3 + z**6) * (1 - z**7 - z**10)),
         (1 - z**28 - z**31 - z**37 - z**40) / (z**3 * (1 - z**3 + z**6) * (1 - z**7 - z**10))],
    ])
    return NamedSystem("order2", MahlerSystem(3, A), Expected(True, 2, 2))


def rudin_shapiro() -> NamedSystem:
    z = _z
    half = RatFun.const(1) / 2
    A = RatMatrix([[half, half], [half / z, -half / z]])
    return NamedSystem("rudin_shapiro", MahlerSystem(2, A), Expected(False))


def baum_sweet_variant() -> NamedSystem:
    """``phi_2(Y) = C^{-1} Y`` for a polynomial matrix ``C`` with ``det C = -z^2 (1 + z)``."""
    z = _z
    C = RatMatrix([[1, z, 0], [z, 0, 0], [0, 1, 1 + z]])
    return NamedSystem("baum_sweet_variant", MahlerSystem(2, C.inverse()), Expected(False))


def order1_homogeneous(a, p: int) -> NamedSystem:
    """``phi_p(y) = a y``; always regular singular."""
    a = RatFun._coerce(a)
    if a.is_zero():
        raise ValueError("a must be nonzero")
    return NamedSystem("order1_homogeneous", MahlerSystem(p, RatMatrix([[a]])), Expected(True, 1, 1))


def order1_inhomogeneous(qm1, q0, q1, p: int) -> NamedSystem:
    """System form of ``q1 phi_p(y) + q0 y + qm1 = 0`` acting on ``(y, 1)``."""
    qm1, q0, q1 = (RatFun._coerce(q) for q in (qm1, q0, q1))
    if q0.is_zero() or q1.is_zero():
        raise ValueError("q0 and q1 must be nonzero")
    A = RatMatrix([[-q0 / q1, -qm1 / q1], [0, 1]])
    return NamedSystem("order1_inhomogeneous", MahlerSystem(p, A))


# name -> zero-argument constructor, as exposed on the command line
REGISTRY: dict[str, Callable[[], NamedSystem]] = {
    "order2": example_order2,
    "rudin_shapiro": rudin_shapiro,
    "baum_sweet_variant": baum_sweet_variant,
    "order1_homogeneous": lambda: order1_homogeneous(1 / _z, 2),
    # computed verdict is regular singular: A is the constant matrix [[1, 1], [0, 1]]
    "order1_inhomogeneous": lambda: _with_expected(
        order1_inhomogeneous(-1, -1, 1, 2), Expected(True, 1, 2)),
}


def _with_expected(ns: NamedSystem, expected: Expected) -> NamedSystem:
    return NamedSystem(ns.name, ns.sys, expected)


def by_name(name: str) -> NamedSystem:
    try:
        return REGISTRY[name]()
    except KeyError:
        raise KeyError(f"unknown example {name!r}; choose from {', '.join(sorted(REGISTRY))}") from None


def all_examples() -> list[NamedSystem]:
    return [REGISTRY[name]() for name in REGISTRY]


# --------------------------------------------------------------------------
# oracle

def _naive_blocks(sys: MahlerSystem, d: int):
    """``M``, ``N`` and ``c`` as plain row lists, built entry by entry."""
    p, m = sys.p, sys.m
    nu = -((-d * sys.v0A) // (p - 1))
    mu = -((d * sys.v0Ainv) // (p - 1))
    start = d * sys.v0Ainv + p * nu
    lo, hi = start - p * mu, mu - p * nu
    inner = sys.Ainv.laurent_matrices(-((-lo) // d), hi // d)

    def coeff(k: int, u: int, w: int):
        return inner[k // d][u, w] if k % d == 0 and (k // d) in inner else 0

    def rows_for(i_values):
        return [[coeff(i - p * j, u, w) for j in range(nu, mu + 1) for w in range(m)]
                for i in i_values for u in range(m)]

    M = rows_for(range(nu, mu + 1))
    N = rows_for(range(start, nu)) if nu < mu else [[0] * (m * (mu - nu + 1))]
    return M, N, m * (mu - nu + 1)


def _mul_rows(rows, M):
    out = []
    for r in rows:
        acc = [0] * len(M[0])
        for x, Mrow in zip(r, M):
            if x:
                for j, y in enumerate(Mrow):
                    if y:
                        acc[j] += x * y
        out.append(acc)
    return out


def _apply(M, v):
    return [sum(x * y for x, y in zip(row, v) if x and y) for row in M]


def _kernel_basis(rows, c: int):
    if not rows:
        return [[int(i == j) for i in range(c)] for j in range(c)]
    a, piv = rref([list(r) for r in rows])
    free = [j for j in range(c) if j not in piv]
    basis = []
    for f in free:
        v = [0] * c
        v[f] = 1
        for i, pj in enumerate(piv):
            v[pj] = -a[i][f]
        basis.append(v)
    return basis


def oracle_dim_naive(sys: MahlerSystem, d: int, window: int) -> int:
    """``dim cap_{-window <= n <= window} M^n ker N``, by brute force.

    Works in the dual: the intersection is the common kernel of the rows of
    ``N M^n`` (``0 <= n <= window``) and of annihilators of ``M^n ker N``
    (``1 <= n <= window``).  Every power is formed explicitly; nothing stops
    early.
    """
    M, N, c = _naive_blocks(sys, d)
    if window < c:
        raise ValueError("window must be at least c")
    constraints = [list(r) for r in N]
    Y = [list(r) for r in N]
    K = _kernel_basis(N, c)
    S = [list(v) for v in K]
    for _ in range(window):
        Y = _mul_rows(Y, M)
        constraints.extend(Y)
        S = [_apply(M, v) for v in S]
        constraints.extend(_kernel_basis(S, c))
        # keep the constraint list small: replace it by its row echelon form
        a, piv = rref(constraints)
        constraints = a[: len(piv)]
    a, piv = rref(constraints)
    return c - len(piv)
