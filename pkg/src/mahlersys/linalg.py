"""Exact dense linear algebra over Q and d-gridded block matrices.

Subspaces are stored in a canonical form (reduced column-echelon basis), so
``==`` on :class:`Subspace` is equality of vector spaces.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Optional, Sequence

ZERO = Fraction(0)
ONE = Fraction(1)


class LinAlgError(ValueError):
    pass


class NotGriddedError(LinAlgError):
    pass


def _f(x) -> Fraction:
    return x if isinstance(x, Fraction) else Fraction(x)


class MatQ:
    """Immutable dense rational matrix."""

    __slots__ = ("rows", "cols", "data", "_hash")

    def __init__(self, rows: int, cols: int, data: Iterable[Sequence]):
        self.rows = rows
        self.cols = cols
        self.data: tuple[tuple[Fraction, ...], ...] = tuple(tuple(_f(x) for x in r) for r in data)
        if len(self.data) != rows or any(len(r) != cols for r in self.data):
            raise LinAlgError(f"entries do not match shape {rows}x{cols}")
        self._hash = None

    @classmethod
    def _raw(cls, rows: int, cols: int, data) -> "MatQ":
        # trusted constructor: data is already a tuple of Fraction tuples
        obj = cls.__new__(cls)
        obj.rows, obj.cols, obj.data, obj._hash = rows, cols, data, None
        return obj

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence], cols: Optional[int] = None) -> "MatQ":
        rows = [list(r) for r in rows]
        if cols is None:
            cols = len(rows[0]) if rows else 0
        return cls(len(rows), cols, rows)

    @classmethod
    def from_columns(cls, columns: Sequence[Sequence], nrows: Optional[int] = None) -> "MatQ":
        columns = [list(c) for c in columns]
        if nrows is None:
            if not columns:
                raise LinAlgError("row count needed for an empty column list")
            nrows = len(columns[0])
        return cls(nrows, len(columns), [[c[i] for c in columns] for i in range(nrows)])

    @classmethod
    def zeros(cls, rows: int, cols: int) -> "MatQ":
        row = (ZERO,) * cols
        return cls._raw(rows, cols, (row,) * rows)

    @classmethod
    def identity(cls, n: int) -> "MatQ":
        return cls._raw(n, n, tuple(tuple(ONE if i == j else ZERO for j in range(n)) for i in range(n)))

    @property
    def shape(self) -> tuple[int, int]:
        return self.rows, self.cols

    def __getitem__(self, ij: tuple[int, int]) -> Fraction:
        i, j = ij
        return self.data[i][j]

    def __eq__(self, other) -> bool:
        if not isinstance(other, MatQ):
            return NotImplemented
        return self.shape == other.shape and self.data == other.data

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.rows, self.cols, self.data))
        return self._hash

    def __repr__(self) -> str:
        body = "; ".join(", ".join(str(x) for x in r) for r in self.data)
        return f"MatQ({self.rows}x{self.cols}: [{body}])"

    def tolist(self) -> list[list[Fraction]]:
        return [list(r) for r in self.data]

    def is_zero(self) -> bool:
        return not any(x for r in self.data for x in r)

    def column(self, j: int) -> tuple[Fraction, ...]:
        return tuple(r[j] for r in self.data)

    def columns(self) -> list[tuple[Fraction, ...]]:
        return [self.column(j) for j in range(self.cols)]

    @property
    def T(self) -> "MatQ":
        if self.rows == 0:
            return MatQ._raw(self.cols, 0, tuple(() for _ in range(self.cols)))
        return MatQ._raw(self.cols, self.rows, tuple(zip(*self.data)))

    def block(self, r0: int, r1: int, c0: int, c1: int) -> "MatQ":
        return MatQ._raw(r1 - r0, c1 - c0, tuple(r[c0:c1] for r in self.data[r0:r1]))

    def select_rows(self, idx: Sequence[int]) -> "MatQ":
        return MatQ._raw(len(idx), self.cols, tuple(self.data[i] for i in idx))

    def select_cols(self, idx: Sequence[int]) -> "MatQ":
        return MatQ._raw(self.rows, len(idx), tuple(tuple(r[j] for j in idx) for r in self.data))

    def __add__(self, other: "MatQ") -> "MatQ":
        if self.shape != other.shape:
            raise LinAlgError("shape mismatch in addition")
        return MatQ._raw(self.rows, self.cols,
                         tuple(tuple(a + b for a, b in zip(r, s)) for r, s in zip(self.data, other.data)))

    def __neg__(self) -> "MatQ":
        return MatQ._raw(self.rows, self.cols, tuple(tuple(-a for a in r) for r in self.data))

    def __sub__(self, other: "MatQ") -> "MatQ":
        return self + (-other)

    def scale(self, c) -> "MatQ":
        c = _f(c)
        return MatQ._raw(self.rows, self.cols, tuple(tuple(a * c for a in r) for r in self.data))

    def __matmul__(self, other: "MatQ") -> "MatQ":
        if self.cols != other.rows:
            raise LinAlgError(f"shape mismatch {self.shape} @ {other.shape}")
        n = other.cols
        # sparse rows of the right factor; most matrices here are block-sparse
        right = [[(j, x) for j, x in enumerate(r) if x] for r in other.data]
        out = []
        for r in self.data:
            acc = [ZERO] * n
            for k, a in enumerate(r):
                if a:
                    for j, b in right[k]:
                        acc[j] += a * b
            out.append(tuple(acc))
        return MatQ._raw(self.rows, n, tuple(out))

    def apply(self, v: Sequence[Fraction]) -> tuple[Fraction, ...]:
        if len(v) != self.cols:
            raise LinAlgError("dimension mismatch in matrix-vector product")
        nz = [(k, x) for k, x in enumerate(v) if x]
        return tuple(sum((r[k] * x for k, x in nz), ZERO) for r in self.data)

    def inverse(self) -> "MatQ":
        if self.rows != self.cols:
            raise LinAlgError("only square matrices are invertible")
        n = self.rows
        aug = [list(r) + [ONE if i == j else ZERO for j in range(n)] for i, r in enumerate(self.data)]
        _, pivots = rref(aug)
        if pivots[:n] != list(range(n)):
            raise LinAlgError("matrix is singular")
        return MatQ(n, n, [r[n:] for r in aug[:n]])

    def rank(self) -> int:
        _, piv = rref([list(r) for r in self.data])
        return len(piv)


def hstack(*mats: MatQ) -> MatQ:
    rows = mats[0].rows
    if any(m.rows != rows for m in mats):
        raise LinAlgError("row mismatch in hstack")
    return MatQ._raw(rows, sum(m.cols for m in mats),
                     tuple(sum((m.data[i] for m in mats), ()) for i in range(rows)))


def vstack(*mats: MatQ) -> MatQ:
    cols = mats[0].cols
    if any(m.cols != cols for m in mats):
        raise LinAlgError("column mismatch in vstack")
    return MatQ._raw(sum(m.rows for m in mats), cols, sum((m.data for m in mats), ()))


def rref(a: list[list[Fraction]]) -> tuple[list[list[Fraction]], list[int]]:
    """In-place reduced row echelon form. Returns ``(a, pivot_columns)``."""
    nrows = len(a)
    ncols = len(a[0]) if nrows else 0
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        if r == nrows:
            break
        piv = next((i for i in range(r, nrows) if a[i][c]), None)
        if piv is None:
            continue
        a[r], a[piv] = a[piv], a[r]
        row = a[r]
        inv = ONE / row[c]
        if inv != 1:
            for j in range(c, ncols):
                if row[j]:
                    row[j] *= inv
        nz = [(j, row[j]) for j in range(c, ncols) if row[j]]
        for i in range(nrows):
            if i != r:
                f = a[i][c]
                if f:
                    ri = a[i]
                    for j, x in nz:
                        ri[j] -= f * x
        pivots.append(c)
        r += 1
    return a, pivots


class Subspace:
    """Subspace of ``Q^n`` held by its reduced column-echelon basis."""

    __slots__ = ("ambient_dim", "_rows", "pivots", "_hash")

    def __init__(self, ambient_dim: int, vectors: Iterable[Sequence] = ()):
        rows = [[_f(x) for x in v] for v in vectors]
        if any(len(v) != ambient_dim for v in rows):
            raise LinAlgError("vector length does not match ambient dimension")
        rows, piv = rref(rows) if rows else (rows, [])
        self.ambient_dim = ambient_dim
        self._rows: tuple[tuple[Fraction, ...], ...] = tuple(tuple(r) for r in rows[: len(piv)])
        self.pivots: tuple[int, ...] = tuple(piv)
        self._hash = None

    @classmethod
    def full(cls, n: int) -> "Subspace":
        s = cls(n)
        s._rows = tuple(tuple(ONE if i == j else ZERO for j in range(n)) for i in range(n))
        s.pivots = tuple(range(n))
        return s

    @classmethod
    def zero(cls, n: int) -> "Subspace":
        return cls(n)

    @classmethod
    def from_basis(cls, B: MatQ) -> "Subspace":
        return cls(B.rows, B.columns())

    @property
    def dim(self) -> int:
        return len(self._rows)

    @property
    def vectors(self) -> tuple[tuple[Fraction, ...], ...]:
        return self._rows

    @property
    def basis(self) -> MatQ:
        """Columns are the canonical basis vectors."""
        return MatQ.from_columns(self._rows, nrows=self.ambient_dim)

    def is_full(self) -> bool:
        return self.dim == self.ambient_dim

    def contains(self, v: Sequence) -> bool:
        v = [_f(x) for x in v]
        if len(v) != self.ambient_dim:
            raise LinAlgError("dimension mismatch")
        for r, c in zip(self._rows, self.pivots):
            f = v[c]
            if f:
                v = [a - f * b for a, b in zip(v, r)]
        return not any(v)

    def issubspace(self, other: "Subspace") -> bool:
        return all(other.contains(v) for v in self._rows)

    def __add__(self, other: "Subspace") -> "Subspace":
        if self.ambient_dim != other.ambient_dim:
            raise LinAlgError("ambient dimension mismatch")
        return Subspace(self.ambient_dim, self._rows + other._rows)

    def __eq__(self, other) -> bool:
        if not isinstance(other, Subspace):
            return NotImplemented
        return self.ambient_dim == other.ambient_dim and self._rows == other._rows

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.ambient_dim, self._rows))
        return self._hash

    def __repr__(self) -> str:
        return f"Subspace(dim={self.dim}, ambient={self.ambient_dim})"


def kernel(M: MatQ) -> Subspace:
    """Right kernel ``{x : M x = 0}``."""
    n = M.cols
    if M.rows == 0:
        return Subspace.full(n)
    a, piv = rref([list(r) for r in M.data])
    pivset = set(piv)
    vecs = []
    for f in range(n):
        if f in pivset:
            continue
        v = [ZERO] * n
        v[f] = ONE
        for r, c in enumerate(piv):
            v[c] = -a[r][f]
        vecs.append(v)
    return Subspace(n, vecs)


def image(M: MatQ, S: Subspace) -> Subspace:
    """``{M x : x in S}``."""
    if M.cols != S.ambient_dim:
        raise LinAlgError(f"cannot apply a {M.rows}x{M.cols} matrix to a subspace of Q^{S.ambient_dim}")
    return Subspace(M.rows, [M.apply(v) for v in S.vectors])


def intersect(S1: Subspace, S2: Subspace) -> Subspace:
    if S1.ambient_dim != S2.ambient_dim:
        raise LinAlgError("ambient dimension mismatch")
    n = S1.ambient_dim
    if S1.dim == 0 or S2.dim == 0:
        return Subspace.zero(n)
    if S1.is_full():
        return S2
    if S2.is_full():
        return S1
    k1 = S1.dim
    # columns: B1 | -B2 ; kernel vectors (a, b) give B1 a in the intersection
    J = MatQ.from_columns(list(S1.vectors) + [tuple(-x for x in v) for v in S2.vectors], nrows=n)
    K = kernel(J)
    B1 = S1.basis
    return Subspace(n, [B1.apply(v[:k1]) for v in K.vectors])


def solve_right(E: MatQ, F: MatQ) -> MatQ:
    """The unique ``R`` with ``E @ R == F`` for ``E`` of full column rank."""
    if E.rows != F.rows:
        raise LinAlgError("E and F must have the same number of rows")
    k = E.cols
    # pick k independent rows of E from the row echelon form of E^T
    _, piv = rref([list(c) for c in E.columns()])
    if len(piv) < k:
        raise LinAlgError("basis not independent")
    Esub = E.select_rows(piv)
    R = Esub.inverse() @ F.select_rows(piv)
    if E @ R != F:
        raise LinAlgError("R does not exist")
    return R


# --------------------------------------------------------------------------
# d-gridded block matrices

def _residue_indices(a: int, count: int, d: int) -> list[int]:
    return list(range(a, count, d))


@dataclass(frozen=True)
class GriddedMat:
    """Block matrix whose nonzero ``m x m`` blocks ``(i, j)`` satisfy ``j = sigma(i) mod d``.

    Indices are 0-based block indices. ``blocks[a]`` packs the block rows
    ``a, a+d, ...`` against the block columns ``sigma[a], sigma[a]+d, ...``.
    """

    d: int
    block_size: int
    block_rows: int
    block_cols: int
    sigma: tuple[int, ...]
    blocks: tuple[MatQ, ...]

    def __post_init__(self):
        if sorted(self.sigma) != list(range(self.d)):
            raise LinAlgError("sigma is not a permutation")
        m = self.block_size
        for a, B in enumerate(self.blocks):
            nr = len(_residue_indices(a, self.block_rows, self.d)) * m
            nc = len(_residue_indices(self.sigma[a], self.block_cols, self.d)) * m
            if B.shape != (nr, nc):
                raise LinAlgError(f"packed block {a} has shape {B.shape}, expected {(nr, nc)}")

    @property
    def shape(self) -> tuple[int, int]:
        return self.block_rows * self.block_size, self.block_cols * self.block_size

    def to_dense(self) -> MatQ:
        m, d = self.block_size, self.d
        R, C = self.shape
        out = [[ZERO] * C for _ in range(R)]
        for a, B in enumerate(self.blocks):
            ri = _residue_indices(a, self.block_rows, d)
            ci = _residue_indices(self.sigma[a], self.block_cols, d)
            for s, i in enumerate(ri):
                for t, j in enumerate(ci):
                    for u in range(m):
                        row = B.data[s * m + u]
                        out[i * m + u][j * m:(j + 1) * m] = row[t * m:(t + 1) * m]
        return MatQ(R, C, out)


def gridded_from_dense(M: MatQ, d: int, m: int, sigma: Optional[Sequence[int]] = None) -> GriddedMat:
    """Pack a dense matrix; detects the permutation unless ``sigma`` is given."""
    if M.rows % m or M.cols % m:
        raise LinAlgError("matrix shape is not a multiple of the block size")
    br, bc = M.rows // m, M.cols // m

    def nonzero_block(i: int, j: int) -> bool:
        return any(M.data[i * m + u][j * m + w] for u in range(m) for w in range(m))

    assigned: dict[int, int] = {}
    if sigma is not None:
        assigned = {a: int(b) % d for a, b in enumerate(sigma)}
    for i in range(br):
        for j in range(bc):
            if nonzero_block(i, j):
                a, b = i % d, j % d
                if assigned.setdefault(a, b) != b:
                    raise NotGriddedError(f"not gridded: block ({i}, {j}) breaks the residue pattern")
    used = set(assigned.values())
    if len(used) != len(assigned):
        raise NotGriddedError("not gridded: two row classes share a column class")
    free = iter(b for b in range(d) if b not in used)
    perm = tuple(assigned[a] if a in assigned else next(free) for a in range(d))
    blocks = []
    for a in range(d):
        ri = _residue_indices(a, br, d)
        ci = _residue_indices(perm[a], bc, d)
        rows = [
            [M.data[i * m + u][j * m + w] for j in ci for w in range(m)]
            for i in ri for u in range(m)
        ]
        blocks.append(MatQ(len(ri) * m, len(ci) * m, rows))
    return GriddedMat(d, m, br, bc, perm, tuple(blocks))


def gridded_identity(n_blocks: int, d: int, m: int) -> GriddedMat:
    return gridded_from_dense(MatQ.identity(n_blocks * m), d, m, sigma=range(d))


def gridded_mul(G1: GriddedMat, G2: GriddedMat) -> GriddedMat:
    """Product of gridded matrices, computed per residue class."""
    if G1.d != G2.d or G1.block_size != G2.block_size:
        raise LinAlgError("gridded operands differ in d or block size")
    if G1.block_cols != G2.block_rows:
        raise LinAlgError("shape mismatch in gridded product")
    blocks = tuple(G1.blocks[a] @ G2.blocks[G1.sigma[a]] for a in range(G1.d))
    sigma = tuple(G2.sigma[G1.sigma[a]] for a in range(G1.d))
    return GriddedMat(G1.d, G1.block_size, G1.block_rows, G2.block_cols, sigma, blocks)


def gridded_kernel_parts(G: GriddedMat) -> list[Subspace]:
    """Kernel split by column residue class ``b``, in class-local coordinates."""
    inv = {b: a for a, b in enumerate(G.sigma)}
    return [kernel(G.blocks[inv[b]]) for b in range(G.d)]


def interleave(parts: Sequence[Subspace], d: int, m: int, n_blocks: int) -> Subspace:
    """Embed per-class subspaces back into ``Q^(n_blocks*m)``."""
    n = n_blocks * m
    vecs = []
    for b, S in enumerate(parts):
        idx = _residue_indices(b, n_blocks, d)
        if S.ambient_dim != len(idx) * m:
            raise LinAlgError("class subspace has the wrong ambient dimension")
        for v in S.vectors:
            w = [ZERO] * n
            for t, j in enumerate(idx):
                w[j * m:(j + 1) * m] = v[t * m:(t + 1) * m]
            vecs.append(w)
    return Subspace(n, vecs)


def split(S: Subspace, d: int, m: int, n_blocks: int) -> list[Subspace]:
    """Project a class-decomposable subspace onto each residue class."""
    parts = []
    for b in range(d):
        idx = _residue_indices(b, n_blocks, d)
        coords = [j * m + u for j in idx for u in range(m)]
        parts.append(Subspace(len(coords), [[v[c] for c in coords] for v in S.vectors]))
    return parts


def gridded_kernel(G: GriddedMat) -> Subspace:
    return interleave(gridded_kernel_parts(G), G.d, G.block_size, G.block_cols)


def gridded_image_parts(G: GriddedMat, parts: Sequence[Subspace]) -> list[Subspace]:
    """Apply a square gridded matrix to a class-decomposed subspace."""
    if G.block_rows != G.block_cols:
        raise LinAlgError("gridded image needs a square block matrix")
    return [image(G.blocks[a], parts[G.sigma[a]]) for a in range(G.d)]
