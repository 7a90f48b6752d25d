"""Deciding regular singularity at 0 and building the gauge series.

For a ramification ``d`` coprime to ``p`` the unknown coefficient blocks
``E_nu .. E_mu`` of a gauge transformation live in ``Q^c`` with
``c = m (mu - nu + 1)``.  The block matrices ``M`` and ``N`` encode the
coefficient recurrence on that window and below it; the candidate space
``X = cap_n M^n ker N`` has dimension ``m`` exactly when the system is
equivalent to a constant one over ``Q((z^(1/d)))``.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Literal, Mapping, Optional, Sequence

from .companion import ramification_index
from .linalg import (
    GriddedMat,
    MatQ,
    Subspace,
    gridded_from_dense,
    gridded_image_parts,
    image,
    interleave,
    intersect,
    kernel,
    rref,
    solve_right,
)
from .system import (
    INFINITY,
    MahlerSystem,
    PuiseuxMatrix,
    b_coeffs,
    ramification_candidates,
    residual_threshold,
    verify_gauge,
)

Method = Literal["gridded", "dense"]


class InvalidBasisError(ValueError):
    pass


def _ceil_div(a: int, b: int) -> int:
    return -((-a) // b)


@dataclass(frozen=True)
class Bounds:
    d: int
    nu: int
    mu: int
    m: int

    @property
    def c(self) -> int:
        return self.m * (self.mu - self.nu + 1)

    @property
    def n_blocks(self) -> int:
        return self.mu - self.nu + 1


def bounds(sys: MahlerSystem, d: int) -> Bounds:
    if math.gcd(d, sys.p) != 1:
        raise ValueError("d must be coprime to p")
    nu = _ceil_div(d * sys.v0A, sys.p - 1)
    mu = _ceil_div(-d * sys.v0Ainv, sys.p - 1)
    assert nu <= mu
    return Bounds(d, nu, mu, sys.m)


@dataclass(frozen=True)
class BlockPair:
    """``M`` (``c x c``) and ``N`` with their gridded packings.

    ``N_start`` is the recurrence index of the first block row of ``N``;
    ``N_gridded`` is ``None`` for the single zero row used when ``nu == mu``.
    """

    bounds: Bounds
    p: int
    M: MatQ
    N: MatQ
    N_start: Optional[int]
    M_gridded: GriddedMat
    N_gridded: Optional[GriddedMat]


def sigma_M(p: int, d: int, nu: int) -> tuple[int, ...]:
    """Column residue class of the nonzero blocks in block row class ``s`` of ``M`` (0-based)."""
    pinv = pow(p, -1, d) if d > 1 else 0
    return tuple((pinv * (s + (1 - p) * nu)) % d for s in range(d))


def sigma_N(p: int, d: int, start: int, nu: int) -> tuple[int, ...]:
    pinv = pow(p, -1, d) if d > 1 else 0
    return tuple((pinv * (start + s - p * nu)) % d for s in range(d))


def build_MN(sys: MahlerSystem, d: int) -> BlockPair:
    b = bounds(sys, d)
    p, m = sys.p, sys.m
    nu, mu = b.nu, b.mu
    start = d * sys.v0Ainv + p * nu
    table = b_coeffs(sys, d, start - p * mu, mu - p * nu)

    def block_rows(i_range) -> list[list]:
        rows = []
        for i in i_range:
            blocks = [table[i - p * j] for j in range(nu, mu + 1)]
            for u in range(m):
                rows.append([x for B in blocks for x in B.data[u]])
        return rows

    M = MatQ(b.c, b.c, block_rows(range(nu, mu + 1)))
    Mg = gridded_from_dense(M, d, m, sigma=sigma_M(p, d, nu))
    if nu < mu:
        n_rows = (nu - start) * m
        N = MatQ(n_rows, b.c, block_rows(range(start, nu)))
        Ng = gridded_from_dense(N, d, m, sigma=sigma_N(p, d, start, nu))
        return BlockPair(b, p, M, N, start, Mg, Ng)
    return BlockPair(b, p, M, MatQ.zeros(1, b.c), None, Mg, None)


# --------------------------------------------------------------------------
# the candidate space X

def _row_basis(rows: Sequence[Sequence]) -> list[list]:
    a, piv = rref([list(r) for r in rows])
    return a[: len(piv)]


class _DenseOps:
    def __init__(self, pair: BlockPair):
        self.M = pair.M
        self.c = pair.bounds.c
        self.N = pair.N

    def kernel_N(self):
        return kernel(self.N)

    def start_Y(self):
        return _row_basis(self.N.data)

    def next_Y(self, Y):
        if not Y:
            return Y
        return _row_basis((MatQ(len(Y), self.c, Y) @ self.M).data)

    def kernel_Y(self, Y):
        return kernel(MatQ(len(Y), self.c, Y)) if Y else Subspace.full(self.c)

    def image(self, S):
        return image(self.M, S)

    def intersect(self, S, T):
        return intersect(S, T)

    def dim(self, S) -> int:
        return S.dim

    def to_subspace(self, S) -> Subspace:
        return S


class _GriddedOps:
    """Same steps as :class:`_DenseOps`, one residue class at a time.

    A class-decomposed subspace is a tuple indexed by column residue class.
    ``Y`` (a row basis of ``N M^n``) is a list of ``(b, rows)`` pairs where
    ``rows`` act on the coordinates of class ``b``.
    """

    def __init__(self, pair: BlockPair):
        b = pair.bounds
        self.d, self.m, self.n_blocks = b.d, b.m, b.n_blocks
        self.Mg = pair.M_gridded
        self.Ng = pair.N_gridded
        self.class_dims = [len(range(r, self.n_blocks, self.d)) * self.m for r in range(self.d)]

    def kernel_N(self):
        if self.Ng is None:
            return tuple(Subspace.full(n) for n in self.class_dims)
        inv = {b: a for a, b in enumerate(self.Ng.sigma)}
        return tuple(kernel(self.Ng.blocks[inv[b]]) for b in range(self.d))

    def start_Y(self):
        if self.Ng is None:
            return []
        out = []
        for a, B in enumerate(self.Ng.blocks):
            rows = _row_basis(B.data) if B.rows else []
            if rows:
                out.append((self.Ng.sigma[a], rows))
        return out

    def next_Y(self, Y):
        out = []
        for b, rows in Y:
            blk = self.Mg.blocks[b]  # maps class sigma_M(b) into class b
            prod = MatQ(len(rows), blk.rows, rows) @ blk
            reduced = _row_basis(prod.data)
            if reduced:
                out.append((self.Mg.sigma[b], reduced))
        return out

    def kernel_Y(self, Y):
        parts = [Subspace.full(n) for n in self.class_dims]
        for b, rows in Y:
            parts[b] = intersect(parts[b], kernel(MatQ(len(rows), self.class_dims[b], rows)))
        return tuple(parts)

    def image(self, S):
        return tuple(gridded_image_parts(self.Mg, S))

    def intersect(self, S, T):
        return tuple(intersect(a, b) for a, b in zip(S, T))

    def dim(self, S) -> int:
        return sum(s.dim for s in S)

    def to_subspace(self, S) -> Subspace:
        return interleave(S, self.d, self.m, self.n_blocks)


def compute_X(pair: BlockPair, method: Method = "gridded", window: Optional[int] = None,
              early_exit: bool = True) -> Subspace:
    """``cap_{-w <= n <= w} M^n ker N`` with ``w = c`` by default.

    Negative powers mean ``ker(N M^|n|)``.  With ``early_exit`` each direction
    stops once it provably cannot change the result.
    """
    ops = _GriddedOps(pair) if method == "gridded" else _DenseOps(pair)
    w = pair.bounds.c if window is None else window
    K = ops.kernel_N()
    X = K

    # n < 0: J_n = cap_{k<=n} ker(N M^k) is stable once two consecutive terms agree
    Y = ops.start_Y()
    J = K
    for _ in range(w):
        Y = ops.next_Y(Y)
        J_next = ops.intersect(J, ops.kernel_Y(Y))
        if early_exit and J_next == J:
            break
        J = J_next
        if early_exit and ops.dim(J) == 0:
            break
    X = ops.intersect(X, J)

    # n > 0: S_n = M^n ker N; the sequence is periodic once a term repeats
    S = K
    seen = {S}
    for _ in range(w):
        if early_exit and ops.dim(X) == 0:
            break
        S = ops.image(S)
        if early_exit and S in seen:
            break
        seen.add(S)
        X = ops.intersect(X, S)
    return ops.to_subspace(X)


# --------------------------------------------------------------------------
# verdicts and the gauge series

@dataclass(frozen=True)
class GaugeSeries:
    """Blocks ``E_nu .. E_mu`` of a basis of ``X`` and the matrix ``R`` with ``M E = E R``."""

    bounds: Bounds
    R: MatQ
    E: Mapping[int, MatQ]

    @property
    def Rinv(self) -> MatQ:
        return self.R.inverse()


@dataclass(frozen=True)
class Verdict:
    regular_singular: bool
    d: int
    dimX: int
    X: Subspace
    bounds: Bounds
    Lambda: Optional[MatQ] = None
    R: Optional[MatQ] = None
    series: Optional[GaugeSeries] = field(default=None, repr=False)
    gauge: Optional[PuiseuxMatrix] = field(default=None, repr=False)
    residual_valuation: object = None
    truncation_index: Optional[int] = None


def decide_fixed_d(sys: MahlerSystem, d: int, basis_override: Optional[MatQ] = None,
                   method: Method = "gridded") -> Verdict:
    pair = build_MN(sys, d)
    b = pair.bounds
    X = compute_X(pair, method=method)
    m = sys.m
    if X.dim > m:
        raise AssertionError(f"dim X = {X.dim} exceeds m = {m}")
    if X.dim < m:
        return Verdict(False, d, X.dim, X, b)
    if basis_override is not None:
        if basis_override.shape != (b.c, m) or Subspace.from_basis(basis_override) != X:
            raise InvalidBasisError("basis_override does not span X")
        E = basis_override
    else:
        E = X.basis
    R = solve_right(E, pair.M @ E)
    Lambda = R.inverse()
    blocks = {n: E.block(m * (n - b.nu), m * (n - b.nu + 1), 0, m) for n in range(b.nu, b.mu + 1)}
    series = GaugeSeries(b, R, blocks)
    return Verdict(True, d, X.dim, X, b, Lambda=Lambda, R=R, series=series)


def recurrence_rhs(sys: MahlerSystem, gs: GaugeSeries, n: int, E: Mapping[int, MatQ], table=None) -> MatQ:
    """``(sum_{k + p l = n} B_k(d) E_l) R^{-1}`` using the blocks present in ``E``."""
    b, p, m = gs.bounds, sys.p, sys.m
    if table is None:
        lo = b.d * sys.v0Ainv
        hi = max(lo, n - p * b.nu)
        table = b_coeffs(sys, b.d, lo, hi)
    acc = MatQ.zeros(m, m)
    for l, El in E.items():
        k = n - p * l
        if k < table.lo or k % b.d or El.is_zero():
            continue
        if k > table.hi:
            raise ValueError(f"coefficient B_{k} outside the table")
        Bk = table[k]
        if not Bk.is_zero():
            acc = acc + Bk @ El
    return acc @ gs.Rinv


def extend_gauge(sys: MahlerSystem, gs: GaugeSeries, upto: int) -> PuiseuxMatrix:
    """Gauge ``sum_{nu <= n <= upto} E_n z^(n/d)`` with ``E_n`` for ``n > mu`` from the recurrence."""
    b, p = gs.bounds, sys.p
    E = dict(gs.E)
    lo = b.d * sys.v0Ainv
    table = b_coeffs(sys, b.d, lo, max(lo, upto - p * b.nu))
    Rinv = gs.Rinv
    for n in range(b.mu + 1, upto + 1):
        acc = MatQ.zeros(sys.m, sys.m)
        # only l < n contribute once n > mu
        for l in range(b.nu, n):
            k = n - p * l
            if k < lo:
                break
            if k % b.d:
                continue
            El = E[l]
            if El.is_zero():
                continue
            Bk = table[k]
            if not Bk.is_zero():
                acc = acc + Bk @ El
        E[n] = acc @ Rinv
    coeffs = {n: c for n, c in E.items() if n <= upto}
    return PuiseuxMatrix(b.d, sys.m, coeffs, max(upto, b.mu))


def decide(sys: MahlerSystem, truncation_order: int = 10, scan_all_d: bool = False,
           d: Optional[int] = None, method: Method = "gridded",
           basis_override: Optional[MatQ] = None) -> Verdict:
    """Full decision procedure.

    ``truncation_order`` bounds the Puiseux exponents of the returned gauge
    (index ``d * truncation_order`` in units of ``1/d``).  ``d`` skips the
    Newton-hull step; ``scan_all_d`` tries every admissible ramification.
    """
    if truncation_order < 0:
        raise ValueError("truncation order must be nonnegative")
    if d is not None:
        candidates = [d]
    elif scan_all_d:
        candidates = ramification_candidates(sys.p, sys.m)
    else:
        candidates = [ramification_index(sys).d]

    best: Optional[Verdict] = None
    for dd in candidates:
        v = decide_fixed_d(sys, dd, basis_override=basis_override, method=method)
        if v.regular_singular:
            T = max(v.bounds.mu + 1, dd * truncation_order)
            G = extend_gauge(sys, v.series, T)
            res = verify_gauge(sys, G, v.Lambda, T)
            if res is not INFINITY and res < residual_threshold(sys, dd, T):
                raise AssertionError(f"gauge residual at index {res} below the truncation threshold")
            return Verdict(True, dd, v.dimX, v.X, v.bounds, v.Lambda, v.R, v.series, G, res, T)
        if best is None or v.dimX > best.dimX:
            best = v
    return best
