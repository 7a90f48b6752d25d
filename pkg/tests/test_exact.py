from fractions import Fraction

import numpy as np
import pytest
import sympy as sp
from hypothesis import given
from hypothesis import strategies as st

from conftest import polys, ratfuns, small_q
from mahlersys.exact import (
    Poly,
    RatFun,
    interpolate,
    lagrange_bound,
    laurent_coeffs,
    poly_gcd,
    ratfun_new,
    valuation0,
)

z = RatFun.z()
Z = sp.symbols("z")


def to_sympy(f: RatFun):
    num = sum(sp.Rational(c.numerator, c.denominator) * Z**i for i, c in enumerate(f.num.coeffs))
    den = sum(sp.Rational(c.numerator, c.denominator) * Z**i for i, c in enumerate(f.den.coeffs))
    return num / den


# --- construction ---------------------------------------------------------

def test_common_factor_cancels():
    f = ratfun_new(Poly([-1, 0, 1]), Poly([-1, 1]))
    assert f.num == Poly([1, 1]) and f.den == Poly([1])


def test_zero_normalizes_denominator():
    f = ratfun_new(Poly([]), Poly([0, 0, 0, 1]))
    assert f.is_zero() and f.den == Poly([1])


def test_monic_denominator_moves_coefficient():
    f = ratfun_new(Poly([0, 2]), Poly([4]))
    assert f.num == Poly([0, Fraction(1, 2)]) and f.den == Poly([1])


def test_zero_denominator_rejected():
    with pytest.raises(ZeroDivisionError, match="division by zero polynomial"):
        ratfun_new(Poly([1]), Poly([]))


@given(ratfuns(), ratfuns(nonzero=True))
def test_reduced_form_invariants(f, g):
    for h in (f + g, f * g, f / g, f - g):
        assert h.den.lc == 1
        assert poly_gcd(h.num, h.den) == Poly([1]) or h.num.is_zero()


@given(ratfuns(), ratfuns(), ratfuns(nonzero=True))
def test_field_arithmetic_matches_sympy(f, g, h):
    lhs = to_sympy((f + g) * h - f / h)
    rhs = (to_sympy(f) + to_sympy(g)) * to_sympy(h) - to_sympy(f) / to_sympy(h)
    assert sp.simplify(lhs - rhs) == 0


@given(polys(), polys(nonzero=True))
def test_polynomial_division_identity(a, b):
    q, r = a.divmod(b)
    assert q * b + r == a
    assert r.is_zero() or r.degree < b.degree


@given(polys(nonzero=True), polys(nonzero=True), polys(nonzero=True))
def test_gcd_divides_and_contains_common_factor(a, b, c):
    g = poly_gcd(a * c, b * c)
    assert (a * c) % g == Poly() and (b * c) % g == Poly()
    assert g % c.monic() == Poly()


# --- valuation ------------------------------------------------------------

def test_valuation_examples():
    entry = (1 - z**28 - z**31 - z**37 - z**40) / (z**3 * (1 - z**3 + z**6) * (1 - z**7 - z**10))
    assert valuation0(entry) == -3
    assert valuation0(z + 1) == 0
    assert valuation0(z**5 / (z**2 + z**3)) == 3


def test_valuation_of_zero_undefined():
    with pytest.raises(ValueError, match="valuation of zero undefined"):
        valuation0(RatFun.const(0))


@given(ratfuns(nonzero=True), ratfuns(nonzero=True))
def test_valuation_is_additive(f, g):
    assert valuation0(f * g) == valuation0(f) + valuation0(g)


# --- Laurent coefficients -------------------------------------------------

def test_laurent_examples():
    assert laurent_coeffs(1 / (1 - z), 0, 3) == [1, 1, 1, 1]
    assert laurent_coeffs(1 / z, -2, 0) == [0, 1, 0]
    assert laurent_coeffs((1 + z) / (1 - z) ** 2, 0, 4) == [1, 3, 5, 7, 9]
    assert laurent_coeffs(RatFun.const(0), -1, 1) == [0, 0, 0]


def test_laurent_bad_window():
    with pytest.raises(ValueError):
        laurent_coeffs(z, 3, 2)


@given(ratfuns(nonzero=True))
def test_laurent_matches_sympy_series(f):
    lo = valuation0(f) - 1
    hi = lo + 7
    ser = sp.expand(sp.series(to_sympy(f), Z, 0, hi + 1).removeO() * Z ** (-lo))
    coeffs = sp.Poly(ser, Z).all_coeffs()[::-1]
    want = [Fraction(str(c)) for c in coeffs] + [Fraction(0)] * (hi - lo + 1 - len(coeffs))
    assert laurent_coeffs(f, lo, hi) == want


@given(ratfuns(), st.integers(-4, 2), st.integers(0, 4), st.integers(1, 4))
def test_laurent_windows_concatenate(f, lo, w1, w2):
    hi = lo + w1
    assert laurent_coeffs(f, lo, hi) + laurent_coeffs(f, hi + 1, hi + w2) == laurent_coeffs(f, lo, hi + w2)


@given(ratfuns(nonzero=True))
def test_truncation_satisfies_congruence(f):
    # f = z^v s with s a power series; z^v * s_trunc * den agrees with num below z^(hi+1)
    v = valuation0(f)
    hi = v + 8
    prod = Poly(laurent_coeffs(f, v, hi)) * f.den
    for n in range(v, hi + 1):
        assert prod.coeff(n - v) == (f.num.coeff(n) if n >= 0 else 0)


# --- Lagrange bound -------------------------------------------------------

def test_lagrange_bound_examples():
    assert lagrange_bound(Poly([1, -3, 1])) == 4
    assert lagrange_bound(Poly([7])) == 1
    assert lagrange_bound(Poly([-4, 8, 0, 2])) == 5


def test_lagrange_bound_zero_rejected():
    with pytest.raises(ValueError):
        lagrange_bound(Poly())


@given(st.lists(st.integers(-9, 9), min_size=1, max_size=5), st.integers(1, 5))
def test_lagrange_bound_exceeds_root_moduli(roots, lead):
    f = Poly([lead])
    for r in roots:
        f = f * Poly([-r, 1])
    assert all(abs(r) < lagrange_bound(f) for r in roots)
    coeffs = [float(c) for c in reversed(f.coeffs)]
    assert max(abs(np.roots(coeffs))) < float(lagrange_bound(f))


# --- interpolation --------------------------------------------------------

def test_interpolate_examples():
    assert interpolate([(0, 1), (1, 2)]) == Poly([1, 1])
    assert interpolate([(1, 5)]) == Poly([5])
    assert interpolate([(0, 0), (1, 1), (2, 4)]) == Poly([0, 0, 1])


def test_interpolate_repeated_abscissa():
    with pytest.raises(ValueError, match="repeated abscissa"):
        interpolate([(1, 2), (1, 3)])


@given(st.lists(st.tuples(small_q, small_q), min_size=1, max_size=6, unique_by=lambda t: t[0]))
def test_interpolate_is_exact(points):
    f = interpolate(points)
    assert f.is_zero() or f.degree < len(points)
    assert all(f(x) == y for x, y in points)


def test_phi_substitutes_power():
    f = (1 + z) / (2 - z**2)
    assert f.phi(3) == (1 + z**3) / (2 - z**6)
    assert f(Fraction(1, 2)) == Fraction(3, 2) / Fraction(7, 4)
