from fractions import Fraction

import pytest
import sympy as sp
from hypothesis import assume, given
from hypothesis import strategies as st

from conftest import small_q
from mahlersys.linalg import (
    GriddedMat,
    LinAlgError,
    MatQ,
    NotGriddedError,
    Subspace,
    gridded_from_dense,
    gridded_identity,
    gridded_kernel,
    gridded_mul,
    image,
    intersect,
    kernel,
    solve_right,
)

ints = st.integers(-3, 3)


@st.composite
def matrices(draw, rows=None, cols=None, entries=ints):
    r = draw(st.integers(1, 5)) if rows is None else rows
    c = draw(st.integers(1, 5)) if cols is None else cols
    return MatQ(r, c, [[draw(entries) for _ in range(c)] for _ in range(r)])


@st.composite
def subspaces(draw, n):
    k = draw(st.integers(0, n))
    vecs = [[draw(ints) for _ in range(n)] for _ in range(k)]
    return Subspace(n, vecs)


@st.composite
def gridded(draw, d, m, br, bc, sparse=True):
    sigma = draw(st.permutations(range(d)))
    rows = [[0] * (bc * m) for _ in range(br * m)]
    for i in range(br):
        for j in range(bc):
            if j % d == sigma[i % d] and (not sparse or draw(st.booleans())):
                for u in range(m):
                    for w in range(m):
                        rows[i * m + u][j * m + w] = draw(ints)
    return gridded_from_dense(MatQ(br * m, bc * m, rows), d, m, sigma=sigma)


def sympy_rank(M: MatQ) -> int:
    return sp.Matrix(M.tolist()).rank()


# --- kernel / image / intersect ------------------------------------------

def test_kernel_examples():
    assert kernel(MatQ.zeros(1, 2)) == Subspace.full(2)
    assert kernel(MatQ.identity(3)).dim == 0
    assert kernel(MatQ.from_rows([[1, 1], [1, 1]])) == Subspace(2, [[1, -1]])


@given(matrices())
def test_kernel_dimension_and_membership(M):
    K = kernel(M)
    assert K.dim == M.cols - sympy_rank(M)
    for v in K.vectors:
        assert all(x == 0 for x in M.apply(v))


def test_image_examples():
    S = Subspace.full(2)
    assert image(MatQ.zeros(2, 2), S).dim == 0
    assert image(MatQ.identity(2), Subspace(2, [[1, 2]])) == Subspace(2, [[1, 2]])
    assert image(MatQ.from_rows([[1, 0], [0, 0]]), S) == Subspace(2, [[1, 0]])
    with pytest.raises(LinAlgError):
        image(MatQ.identity(3), S)


def test_intersect_examples():
    e1, e2 = Subspace(2, [[1, 0]]), Subspace(2, [[0, 1]])
    assert intersect(e1, Subspace.full(2)) == e1
    assert intersect(e1, e2).dim == 0
    assert intersect(Subspace.full(2), Subspace(2, [[1, 1]])) == Subspace(2, [[1, 1]])
    with pytest.raises(LinAlgError):
        intersect(e1, Subspace.full(3))


@given(subspaces(4), subspaces(4), subspaces(4))
def test_intersect_lattice_laws(a, b, c):
    assert intersect(a, b) == intersect(b, a)
    assert intersect(intersect(a, b), c) == intersect(a, intersect(b, c))
    assert intersect(a, a) == a
    assert intersect(a, b).dim + (a + b).dim == a.dim + b.dim


@given(subspaces(4), st.lists(st.tuples(st.integers(0, 3), st.integers(0, 3), small_q), max_size=6),
       st.lists(small_q.filter(bool), min_size=4, max_size=4))
def test_subspace_canonical_under_column_operations(S, ops, scales):
    cols = [list(v) for v in S.vectors]
    assume(cols)
    k = len(cols)
    for i, j, c in ops:
        i, j = i % k, j % k
        if i != j:
            cols[i] = [x + c * y for x, y in zip(cols[i], cols[j])]
    cols = [[s * x for x in v] for s, v in zip(scales, cols)]
    T = Subspace.from_basis(MatQ.from_columns(cols))
    assert T == S and T.vectors == S.vectors


# --- solve_right ----------------------------------------------------------

def test_solve_right_examples():
    F = MatQ.from_rows([[1, 2], [3, 4]])
    assert solve_right(MatQ.identity(2), F) == F
    assert solve_right(MatQ.from_rows([[1], [1]]), MatQ.from_rows([[3], [3]])) == MatQ.from_rows([[3]])


def test_solve_right_errors():
    with pytest.raises(LinAlgError, match="basis not independent"):
        solve_right(MatQ.from_rows([[1, 2], [2, 4]]), MatQ.zeros(2, 2))
    with pytest.raises(LinAlgError, match="R does not exist"):
        solve_right(MatQ.from_rows([[1], [0]]), MatQ.from_rows([[0], [1]]))


@given(matrices(rows=4, cols=4), subspaces(4))
def test_solve_right_on_invariant_subspace(M, S):
    # the Krylov space of S under M is M-invariant
    W = S
    for _ in range(4):
        W = W + image(M, W)
    assume(W.dim)
    E = W.basis
    R = solve_right(E, M @ E)
    assert E @ R == M @ E


# --- gridded matrices -----------------------------------------------------

def test_block_diagonal_gives_identity_permutation():
    rows = [[0] * 8 for _ in range(8)]
    for b in range(4):
        rows[2 * b][2 * b] = b + 1
        rows[2 * b + 1][2 * b] = 1
    for d in (1, 2, 4):
        assert gridded_from_dense(MatQ(8, 8, rows), d, 2).sigma == tuple(range(d))


def test_zero_matrix_gets_identity_permutation():
    assert gridded_from_dense(MatQ.zeros(6, 6), 3, 2).sigma == (0, 1, 2)


def test_not_gridded_rejected():
    M = MatQ.from_rows([[1, 1], [0, 0]])
    with pytest.raises(NotGriddedError, match="not gridded"):
        gridded_from_dense(M, 2, 1)


@given(gridded(2, 2, 4, 4))
def test_multiply_by_gridded_identity(G):
    I = gridded_identity(4, 2, 2)
    assert gridded_mul(G, I).to_dense() == G.to_dense()
    assert gridded_mul(I, I).sigma == (0, 1)


@given(st.integers(1, 4).flatmap(lambda d: st.tuples(
    st.just(d), gridded(d, 2, 5, 4), gridded(d, 2, 4, 3))))
def test_gridded_product_matches_dense(args):
    d, G1, G2 = args
    P = gridded_mul(G1, G2)
    assert P.to_dense() == G1.to_dense() @ G2.to_dense()
    assert P.sigma == tuple(G2.sigma[G1.sigma[a]] for a in range(d))


@given(st.integers(1, 4).flatmap(lambda d: st.tuples(st.just(d), gridded(d, 2, 5, 6))))
def test_gridded_kernel_matches_dense(args):
    d, G = args
    assert gridded_kernel(G) == kernel(G.to_dense())


def test_gridded_kernel_trivial_cases():
    assert gridded_kernel(gridded_from_dense(MatQ.zeros(4, 4), 2, 2)) == Subspace.full(4)
    assert gridded_kernel(gridded_identity(3, 3, 1)).dim == 0


def test_gridded_shape_checks():
    G = gridded_identity(2, 2, 2)
    with pytest.raises(LinAlgError):
        gridded_mul(G, gridded_identity(3, 3, 2))
    with pytest.raises(LinAlgError):
        GriddedMat(2, 1, 2, 2, (0, 0), (MatQ.identity(1), MatQ.identity(1)))


def test_matrix_basics():
    A = MatQ.from_rows([[1, 2], [3, 4]])
    assert A.inverse() @ A == MatQ.identity(2)
    assert A.T == MatQ.from_rows([[1, 3], [2, 4]])
    assert A.rank() == 2 and MatQ.from_rows([[1, 2], [2, 4]]).rank() == 1
    with pytest.raises(LinAlgError, match="singular"):
        MatQ.from_rows([[1, 2], [2, 4]]).inverse()
    assert all(isinstance(x, Fraction) for row in (A @ A).data for x in row)
