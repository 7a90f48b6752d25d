"""Mahler systems ``phi_p(Y) = A Y`` and the series objects attached to them."""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Mapping, Optional, Sequence, Union

from .exact import Poly, RatFun, laurent_coeffs, valuation0
from .linalg import MatQ


class SingularMatrixError(ArithmeticError):
    pass


class RatMatrix:
    """Immutable matrix of rational functions."""

    __slots__ = ("rows", "cols", "data")

    def __init__(self, data: Sequence[Sequence]):
        rows = [tuple(RatFun._coerce(x) for x in r) for r in data]
        if any(x is NotImplemented for r in rows for x in r):
            raise TypeError("entries must be rational functions or rationals")
        self.rows = len(rows)
        self.cols = len(rows[0]) if rows else 0
        if any(len(r) != self.cols for r in rows):
            raise ValueError("ragged rows")
        self.data: tuple[tuple[RatFun, ...], ...] = tuple(rows)

    @classmethod
    def identity(cls, n: int) -> "RatMatrix":
        return cls([[1 if i == j else 0 for j in range(n)] for i in range(n)])

    @classmethod
    def from_matq(cls, M: MatQ) -> "RatMatrix":
        return cls(M.data)

    @property
    def shape(self) -> tuple[int, int]:
        return self.rows, self.cols

    def __getitem__(self, ij):
        i, j = ij
        return self.data[i][j]

    def __eq__(self, other) -> bool:
        if not isinstance(other, RatMatrix):
            return NotImplemented
        return self.data == other.data

    def __hash__(self) -> int:
        return hash(self.data)

    def __repr__(self) -> str:
        return "RatMatrix([" + "; ".join(", ".join(str(x) for x in r) for r in self.data) + "])"

    def row(self, i: int) -> "RatMatrix":
        return RatMatrix([self.data[i]])

    def __add__(self, other: "RatMatrix") -> "RatMatrix":
        return RatMatrix([[a + b for a, b in zip(r, s)] for r, s in zip(self.data, other.data)])

    def __sub__(self, other: "RatMatrix") -> "RatMatrix":
        return RatMatrix([[a - b for a, b in zip(r, s)] for r, s in zip(self.data, other.data)])

    def __matmul__(self, other: "RatMatrix") -> "RatMatrix":
        if self.cols != other.rows:
            raise ValueError(f"shape mismatch {self.shape} @ {other.shape}")
        out = []
        for r in self.data:
            row = []
            for j in range(other.cols):
                acc = RatFun.const(0)
                for k, a in enumerate(r):
                    b = other.data[k][j]
                    if a and b:
                        acc = acc + a * b
                row.append(acc)
            out.append(row)
        return RatMatrix(out)

    def phi(self, p: int) -> "RatMatrix":
        return RatMatrix([[x.phi(p) for x in r] for r in self.data])

    def __call__(self, x) -> MatQ:
        return MatQ(self.rows, self.cols, [[f(x) for f in r] for r in self.data])

    def is_zero(self) -> bool:
        return not any(x for r in self.data for x in r)

    def _eliminate(self, want_inverse: bool):
        n = self.rows
        if n != self.cols:
            raise ValueError("square matrix required")
        a = [list(r) + ([RatFun.const(1 if i == j else 0) for j in range(n)] if want_inverse else [])
             for i, r in enumerate(self.data)]
        det = RatFun.const(1)
        width = len(a[0]) if a else 0
        for c in range(n):
            cands = [i for i in range(c, n) if a[i][c]]
            if not cands:
                return RatFun.const(0), None
            # low-degree pivot keeps intermediate expressions small
            piv = min(cands, key=lambda i: max(a[i][c].num.degree, a[i][c].den.degree))
            if piv != c:
                a[c], a[piv] = a[piv], a[c]
                det = -det
            pv = a[c][c]
            det = det * pv
            inv = pv.inverse()
            a[c] = [x * inv if x else x for x in a[c]]
            for i in range(n):
                if i != c and a[i][c]:
                    f = a[i][c]
                    a[i] = [a[i][j] - f * a[c][j] if a[c][j] else a[i][j] for j in range(width)]
        return det, a

    def det(self) -> RatFun:
        return self._eliminate(False)[0]

    def inverse(self) -> "RatMatrix":
        det, a = self._eliminate(True)
        if a is None:
            raise SingularMatrixError("matrix not invertible over Q(z)")
        n = self.rows
        return RatMatrix([r[n:] for r in a])

    def laurent_matrices(self, lo: int, hi: int) -> dict[int, MatQ]:
        """Coefficient matrices of ``z^k`` for ``lo <= k <= hi``."""
        if hi < lo:
            return {}
        cols = [[laurent_coeffs(f, lo, hi) for f in r] for r in self.data]
        return {
            k: MatQ._raw(self.rows, self.cols,
                         tuple(tuple(cols[i][j][k - lo] for j in range(self.cols)) for i in range(self.rows)))
            for k in range(lo, hi + 1)
        }


def v0_matrix(M: Union[RatMatrix, Sequence[Sequence[RatFun]]]) -> int:
    """Minimum valuation at 0 over the nonzero entries."""
    data = M.data if isinstance(M, RatMatrix) else M
    vals = [valuation0(f) for r in data for f in r if f]
    if not vals:
        raise ValueError("valuation of the zero matrix is undefined")
    return min(vals)


@dataclass(frozen=True)
class MahlerSystem:
    """The system ``phi_p(Y) = A Y``; the inverse and valuations are computed once."""

    p: int
    A: RatMatrix
    m: int = field(init=False)
    Ainv: RatMatrix = field(init=False, repr=False)
    v0A: int = field(init=False)
    v0Ainv: int = field(init=False)

    def __post_init__(self):
        if not isinstance(self.A, RatMatrix):
            object.__setattr__(self, "A", RatMatrix(self.A))
        if self.p < 2:
            raise ValueError("the Mahler exponent p must be at least 2")
        if self.A.rows != self.A.cols or self.A.rows < 1:
            raise ValueError("A must be a nonempty square matrix")
        Ainv = self.A.inverse()
        object.__setattr__(self, "m", self.A.rows)
        object.__setattr__(self, "Ainv", Ainv)
        object.__setattr__(self, "v0A", v0_matrix(self.A))
        object.__setattr__(self, "v0Ainv", v0_matrix(Ainv))
        assert self.v0A + self.v0Ainv <= 0


def system_new(p: int, A) -> MahlerSystem:
    return MahlerSystem(p, A if isinstance(A, RatMatrix) else RatMatrix(A))


def ramification_candidates(p: int, m: int) -> list[int]:
    """``1 <= d <= p^m - 1`` with ``gcd(d, p) = 1``."""
    return [d for d in range(1, p ** m) if math.gcd(d, p) == 1]


@dataclass(frozen=True)
class CoeffTable:
    """Laurent coefficients ``B_k(d)`` of ``phi_d(A^{-1})`` for ``lo <= k <= hi``."""

    d: int
    lo: int
    hi: int
    coeffs: Mapping[int, MatQ]

    def __getitem__(self, k: int) -> MatQ:
        return self.coeffs[k]


def b_coeffs(sys: MahlerSystem, d: int, lo: int, hi: int) -> CoeffTable:
    if math.gcd(d, sys.p) != 1:
        raise ValueError("d must be coprime to p")
    if lo > hi:
        raise ValueError("empty coefficient window")
    m = sys.m
    zero = MatQ.zeros(m, m)
    klo, khi = -((-lo) // d), hi // d
    inner = sys.Ainv.laurent_matrices(klo, khi)
    table = {k: (inner[k // d] if k % d == 0 else zero) for k in range(lo, hi + 1)}
    return CoeffTable(d, lo, hi, table)


class _Infinity:
    """Valuation of a series whose computed coefficients all vanish."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self) -> str:
        return "INFINITY"

    def __eq__(self, other) -> bool:
        return other is self

    def __hash__(self) -> int:
        return hash("INFINITY")

    def __lt__(self, other) -> bool:
        return False

    def __le__(self, other) -> bool:
        return other is self

    def __gt__(self, other) -> bool:
        return other is not self

    def __ge__(self, other) -> bool:
        return True


INFINITY = _Infinity()


@dataclass(frozen=True)
class PuiseuxMatrix:
    """Truncated matrix series ``sum_n coeffs[n] z^(n/d)``, known for indices ``<= known_up_to``."""

    d: int
    size: int
    coeffs: Mapping[int, MatQ]
    known_up_to: int

    def coeff(self, n: int) -> MatQ:
        return self.coeffs.get(n) or MatQ.zeros(self.size, self.size)

    @property
    def low(self) -> int:
        nz = [n for n, c in self.coeffs.items() if not c.is_zero()]
        return min(nz) if nz else self.known_up_to + 1

    def valuation(self):
        nz = [n for n, c in self.coeffs.items() if not c.is_zero()]
        return min(nz) if nz else INFINITY

    def truncate(self, T: int) -> "PuiseuxMatrix":
        return PuiseuxMatrix(self.d, self.size, {n: c for n, c in self.coeffs.items() if n <= T}, T)

    def entry_series(self, i: int, j: int) -> dict[Fraction, Fraction]:
        """Nonzero terms of entry ``(i, j)`` as ``{exponent: coefficient}``."""
        return {Fraction(n, self.d): c[i, j] for n, c in sorted(self.coeffs.items()) if c[i, j]}

    @classmethod
    def constant(cls, M: MatQ, d: int = 1, known_up_to: int = 0) -> "PuiseuxMatrix":
        return cls(d, M.rows, {0: M}, known_up_to)


def phi_p_puiseux(G: PuiseuxMatrix, p: int) -> PuiseuxMatrix:
    """Substitute ``z -> z^p``: index ``n`` moves to ``p n``."""
    return PuiseuxMatrix(G.d, G.size, {p * n: c for n, c in G.coeffs.items()}, p * G.known_up_to + (p - 1))


def gauge_residual(sys: MahlerSystem, G: PuiseuxMatrix, Lambda: MatQ, lo: int, hi: int) -> dict[int, MatQ]:
    """Coefficients of ``A G - phi_p(G) Lambda`` at indices ``lo..hi`` (units of ``1/d``)."""
    d, p, m = G.d, sys.p, sys.m
    g_items = sorted((n, c) for n, c in G.coeffs.items() if not c.is_zero())
    if not g_items:
        return {N: MatQ.zeros(m, m) for N in range(lo, hi + 1)}
    g_lo = g_items[0][0]
    kmax = (hi - g_lo) // d
    A_k = sys.A.laurent_matrices(sys.v0A, kmax) if kmax >= sys.v0A else {}
    out = {}
    for N in range(lo, hi + 1):
        acc = MatQ.zeros(m, m)
        for n, c in g_items:
            if (N - n) % d:
                continue
            k = (N - n) // d
            if k in A_k:
                acc = acc + A_k[k] @ c
        if N % p == 0:
            c = G.coeffs.get(N // p)
            if c is not None:
                acc = acc - c @ Lambda
        out[N] = acc
    return out


def verify_gauge(sys: MahlerSystem, G: PuiseuxMatrix, Lambda: MatQ, T: Optional[int] = None,
                 scan_to: Optional[int] = None):
    """Lowest index where ``A G_T - phi_p(G_T) Lambda`` is nonzero, or ``INFINITY``.

    ``G`` is truncated at ``T`` (default ``G.known_up_to``). The scan covers
    every index from the lowest possible one up to ``scan_to`` (default
    ``p T + d``).
    """
    if T is None:
        T = G.known_up_to
    Gt = G.truncate(T)
    nz = [n for n, c in Gt.coeffs.items() if not c.is_zero()]
    if not nz:
        return INFINITY
    g_lo = min(nz)
    lo = min(G.d * sys.v0A + g_lo, sys.p * g_lo)
    hi = sys.p * T + G.d if scan_to is None else scan_to
    res = gauge_residual(sys, Gt, Lambda, lo, hi)
    for N in range(lo, hi + 1):
        if not res[N].is_zero():
            return N
    return INFINITY


def residual_threshold(sys: MahlerSystem, d: int, T: int) -> int:
    """Indices below this are unaffected by truncating the gauge at ``T``."""
    return d * sys.v0A + T + 1


def det_lowest_index(G: PuiseuxMatrix, T: Optional[int] = None):
    """Index of the lowest nonzero coefficient of ``det(G)`` that truncation at ``T`` cannot disturb.

    Returns ``None`` when no such coefficient is nonzero.
    """
    if T is None:
        T = G.known_up_to
    Gt = G.truncate(T)
    nz = [n for n, c in Gt.coeffs.items() if not c.is_zero()]
    if not nz:
        return None
    lo = min(nz)
    m = G.size
    # entries as polynomials in w = z^(1/d), shifted by w^(-lo)
    entries = [[Poly([Gt.coeff(n)[i, j] for n in range(lo, T + 1)]) for j in range(m)] for i in range(m)]
    det = RatMatrix(entries).det()
    if det.is_zero():
        return None
    v = det.num.valuation() + m * lo
    # coefficients of det(G) below (m-1)*lo + T + 1 only involve G_n with n <= T
    return v if v < (m - 1) * lo + T + 1 else None
