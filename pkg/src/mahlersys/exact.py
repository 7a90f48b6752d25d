"""Exact univariate arithmetic over the rationals.

Rationals are :class:`fractions.Fraction`.  :class:`Poly` is a dense
polynomial in ``z`` and :class:`RatFun` a reduced quotient of two of them with
a monic denominator.  All values are immutable.
"""
from __future__ import annotations

import math
from fractions import Fraction
from functools import reduce
from typing import Iterable, Sequence, Union

from sympy.polys.domains import ZZ
from sympy.polys.euclidtools import dup_gcd

Scalar = Union[int, Fraction]


def _frac(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    raise TypeError(f"expected an exact rational, got {type(x).__name__}")


class Poly:
    """Dense polynomial with rational coefficients, index = degree."""

    __slots__ = ("coeffs", "_hash")

    def __init__(self, coeffs: Iterable[Scalar] = ()):
        c = [_frac(x) for x in coeffs]
        while c and c[-1] == 0:
            c.pop()
        self.coeffs: tuple[Fraction, ...] = tuple(c)
        self._hash = None

    @classmethod
    def const(cls, c: Scalar) -> "Poly":
        return cls([c])

    @classmethod
    def monomial(cls, n: int, c: Scalar = 1) -> "Poly":
        if n < 0:
            raise ValueError("negative degree")
        return cls([0] * n + [c])

    @classmethod
    def z(cls) -> "Poly":
        return cls([0, 1])

    # -- basic queries -----------------------------------------------------
    def is_zero(self) -> bool:
        return not self.coeffs

    @property
    def degree(self) -> int:
        """Degree; -1 for the zero polynomial."""
        return len(self.coeffs) - 1

    @property
    def lc(self) -> Fraction:
        if not self.coeffs:
            raise ValueError("zero polynomial has no leading coefficient")
        return self.coeffs[-1]

    def coeff(self, n: int) -> Fraction:
        if 0 <= n < len(self.coeffs):
            return self.coeffs[n]
        return Fraction(0)

    def valuation(self) -> int:
        if not self.coeffs:
            raise ValueError("valuation of zero undefined")
        for i, c in enumerate(self.coeffs):
            if c:
                return i
        raise AssertionError  # unreachable, trailing zeros are trimmed

    def __call__(self, x: Scalar) -> Fraction:
        acc = Fraction(0)
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def __bool__(self) -> bool:
        return bool(self.coeffs)

    def __eq__(self, other) -> bool:
        if isinstance(other, (int, Fraction)):
            other = Poly.const(other)
        if not isinstance(other, Poly):
            return NotImplemented
        return self.coeffs == other.coeffs

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(self.coeffs)
        return self._hash

    def __repr__(self) -> str:
        return f"Poly({[str(c) for c in self.coeffs]})"

    def __str__(self) -> str:
        return poly_to_str(self)

    # -- arithmetic --------------------------------------------------------
    @staticmethod
    def _coerce(x) -> "Poly":
        if isinstance(x, Poly):
            return x
        if isinstance(x, (int, Fraction)):
            return Poly.const(x)
        return NotImplemented

    def __add__(self, other):
        other = Poly._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, c in enumerate(b):
            out[i] += c
        return Poly(out)

    __radd__ = __add__

    def __neg__(self) -> "Poly":
        return Poly(-c for c in self.coeffs)

    def __sub__(self, other):
        other = Poly._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        other = Poly._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return other - self

    def __mul__(self, other):
        other = Poly._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        a, b = self.coeffs, other.coeffs
        if not a or not b:
            return Poly()
        out = [Fraction(0)] * (len(a) + len(b) - 1)
        for i, x in enumerate(a):
            if not x:
                continue
            for j, y in enumerate(b):
                if y:
                    out[i + j] += x * y
        return Poly(out)

    __rmul__ = __mul__

    def __pow__(self, n: int) -> "Poly":
        if n < 0:
            raise ValueError("negative power of a polynomial")
        result, base = Poly.const(1), self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def scale(self, c: Scalar) -> "Poly":
        c = _frac(c)
        return Poly(x * c for x in self.coeffs)

    def shift(self, n: int) -> "Poly":
        """Multiply by ``z**n`` (``n >= 0``) or divide exactly (``n < 0``)."""
        if n >= 0:
            return Poly((0,) * n + self.coeffs)
        if any(self.coeffs[:-n]):
            raise ValueError("inexact division by a power of z")
        return Poly(self.coeffs[-n:])

    def divmod(self, other: "Poly") -> tuple["Poly", "Poly"]:
        if other.is_zero():
            raise ZeroDivisionError("division by zero polynomial")
        r = list(self.coeffs)
        dq = len(r) - len(other.coeffs)
        if dq < 0:
            return Poly(), self
        q = [Fraction(0)] * (dq + 1)
        inv_lc = 1 / other.lc
        db = other.degree
        for k in range(dq, -1, -1):
            c = r[k + db] * inv_lc
            q[k] = c
            if c:
                for j, b in enumerate(other.coeffs):
                    r[k + j] -= c * b
        return Poly(q), Poly(r[:db])

    def __floordiv__(self, other: "Poly") -> "Poly":
        return self.divmod(other)[0]

    def __mod__(self, other: "Poly") -> "Poly":
        return self.divmod(other)[1]

    def monic(self) -> "Poly":
        if self.is_zero():
            return self
        return self.scale(1 / self.lc)

    def compose_power(self, p: int) -> "Poly":
        """``f(z) -> f(z**p)``."""
        if p < 1:
            raise ValueError("p must be positive")
        if p == 1 or len(self.coeffs) <= 1:
            return self
        out = [Fraction(0)] * (p * self.degree + 1)
        for i, c in enumerate(self.coeffs):
            out[p * i] = c
        return Poly(out)

    def content_integer(self) -> tuple[list[int], Fraction]:
        """Return ``(ints, s)`` with ``self == s * Poly(ints)`` and ints primitive."""
        den = reduce(math.lcm, (c.denominator for c in self.coeffs), 1)
        ints = [int(c * den) for c in self.coeffs]
        g = reduce(math.gcd, ints, 0) or 1
        return [x // g for x in ints], Fraction(g, den)


def poly_gcd(a: Poly, b: Poly) -> Poly:
    """Monic gcd (zero if both are zero)."""
    if a.is_zero():
        return b.monic()
    if b.is_zero():
        return a.monic()
    if a.degree == 0 or b.degree == 0:
        return Poly.const(1)
    ia, _ = a.content_integer()
    ib, _ = b.content_integer()
    g = dup_gcd([ZZ(x) for x in reversed(ia)], [ZZ(x) for x in reversed(ib)], ZZ)
    return Poly(int(x) for x in reversed(g)).monic()


def poly_to_str(f: Poly, var: str = "z") -> str:
    if f.is_zero():
        return "0"
    terms = []
    for n in range(f.degree, -1, -1):
        c = f.coeffs[n]
        if not c:
            continue
        sign = "-" if c < 0 else "+"
        a = abs(c)
        if n == 0:
            body = str(a)
        else:
            mono = var if n == 1 else f"{var}^{n}"
            body = mono if a == 1 else f"{a}*{mono}"
        terms.append((sign, body))
    first_sign, first = terms[0]
    out = ("-" if first_sign == "-" else "") + first
    for sign, body in terms[1:]:
        out += f" {sign} {body}"
    return out


class RatFun:
    """Reduced rational function ``num/den`` with ``den`` monic."""

    __slots__ = ("num", "den", "_hash")

    def __init__(self, num, den=None, *, _reduced: bool = False):
        num = Poly._coerce(num)
        den = Poly.const(1) if den is None else Poly._coerce(den)
        if num is NotImplemented or den is NotImplemented:
            raise TypeError("RatFun expects polynomials or rationals")
        if den.is_zero():
            raise ZeroDivisionError("division by zero polynomial")
        if not _reduced:
            if num.is_zero():
                den = Poly.const(1)
            else:
                g = poly_gcd(num, den)
                if g.degree > 0:
                    num, den = num // g, den // g
                c = den.lc
                if c != 1:
                    num, den = num.scale(1 / c), den.scale(1 / c)
        self.num: Poly = num
        self.den: Poly = den
        self._hash = None

    @classmethod
    def const(cls, c: Scalar) -> "RatFun":
        return cls(Poly.const(c), Poly.const(1), _reduced=True)

    @classmethod
    def z(cls, n: int = 1) -> "RatFun":
        if n >= 0:
            return cls(Poly.monomial(n), Poly.const(1), _reduced=True)
        return cls(Poly.const(1), Poly.monomial(-n), _reduced=True)

    @staticmethod
    def _coerce(x) -> "RatFun":
        if isinstance(x, RatFun):
            return x
        if isinstance(x, (int, Fraction)):
            return RatFun.const(x)
        if isinstance(x, Poly):
            return RatFun(x, Poly.const(1), _reduced=True)
        return NotImplemented

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def is_const(self) -> bool:
        return self.num.degree <= 0 and self.den.degree == 0

    def __bool__(self) -> bool:
        return not self.num.is_zero()

    def __eq__(self, other) -> bool:
        other = RatFun._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self.num == other.num and self.den == other.den

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.num, self.den))
        return self._hash

    def __repr__(self) -> str:
        return f"RatFun({self})"

    def __str__(self) -> str:
        return ratfun_to_str(self)

    def __add__(self, other):
        other = RatFun._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        if self.den == other.den:
            return RatFun(self.num + other.num, self.den)
        return RatFun(self.num * other.den + other.num * self.den, self.den * other.den)

    __radd__ = __add__

    def __neg__(self) -> "RatFun":
        return RatFun(-self.num, self.den, _reduced=True)

    def __sub__(self, other):
        other = RatFun._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        other = RatFun._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return other - self

    def __mul__(self, other):
        other = RatFun._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        if self.is_zero() or other.is_zero():
            return RatFun.const(0)
        # cross-cancel before multiplying keeps the operands small
        g1 = poly_gcd(self.num, other.den)
        g2 = poly_gcd(other.num, self.den)
        num = (self.num // g1) * (other.num // g2)
        den = (self.den // g2) * (other.den // g1)
        c = den.lc
        return RatFun(num.scale(1 / c), den.scale(1 / c), _reduced=True)

    __rmul__ = __mul__

    def inverse(self) -> "RatFun":
        if self.is_zero():
            raise ZeroDivisionError("division by zero polynomial")
        c = self.num.lc
        return RatFun(self.den.scale(1 / c), self.num.scale(1 / c), _reduced=True)

    def __truediv__(self, other):
        other = RatFun._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self * other.inverse()

    def __rtruediv__(self, other):
        other = RatFun._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return other * self.inverse()

    def __pow__(self, n: int) -> "RatFun":
        if n < 0:
            return self.inverse() ** (-n)
        return RatFun(self.num ** n, self.den ** n, _reduced=True)

    def __call__(self, x: Scalar) -> Fraction:
        d = self.den(x)
        if d == 0:
            raise ZeroDivisionError(f"pole at {x}")
        return self.num(x) / d

    def phi(self, p: int) -> "RatFun":
        """``f(z) -> f(z**p)``; stays reduced since ``z -> z**p`` is injective on ``Q(z)``."""
        return RatFun(self.num.compose_power(p), self.den.compose_power(p), _reduced=True)

    def valuation(self) -> int:
        return valuation0(self)


def ratfun_new(num: Poly, den: Poly) -> RatFun:
    return RatFun(num, den)


def ratfun_to_str(f: RatFun, var: str = "z") -> str:
    num = poly_to_str(f.num, var)
    if f.den == Poly.const(1):
        return num
    if len(f.num.coeffs) > 1 and sum(1 for c in f.num.coeffs if c) > 1:
        num = f"({num})"
    elif f.num.lc.denominator != 1:
        num = f"({num})"
    return f"{num}/({poly_to_str(f.den, var)})"


def valuation0(f: RatFun) -> int:
    """Order of ``f`` at ``z = 0``."""
    if f.is_zero():
        raise ValueError("valuation of zero undefined")
    return f.num.valuation() - f.den.valuation()


def laurent_coeffs(f: RatFun, lo: int, hi: int) -> list[Fraction]:
    """Coefficients ``c_lo .. c_hi`` of the Laurent expansion of ``f`` at 0."""
    if lo > hi:
        raise ValueError(f"malformed range [{lo}, {hi}]")
    n = hi - lo + 1
    if f.is_zero():
        return [Fraction(0)] * n
    vn, vd = f.num.valuation(), f.den.valuation()
    v = vn - vd
    P = f.num.coeffs[vn:]
    Q = f.den.coeffs[vd:]
    top = hi - v
    if top < 0:
        return [Fraction(0)] * n
    # P/Q = sum c_k z^k with Q[0] != 0
    inv_q0 = 1 / Q[0]
    c: list[Fraction] = []
    for k in range(top + 1):
        s = P[k] if k < len(P) else Fraction(0)
        for j in range(1, min(k, len(Q) - 1) + 1):
            s -= Q[j] * c[k - j]
        c.append(s * inv_q0)
    out = []
    for e in range(lo, hi + 1):
        k = e - v
        out.append(c[k] if k >= 0 else Fraction(0))
    return out


def lagrange_bound(f: Poly) -> Fraction:
    """``1 + max |f_k| / |f_h|`` over ``k < h``; exceeds every root modulus."""
    if f.is_zero():
        raise ValueError("Lagrange bound of the zero polynomial")
    h = f.lc
    lower = f.coeffs[:-1]
    if not lower:
        return Fraction(1)
    return 1 + max(abs(c) for c in lower) / abs(h)


def interpolate(points: Sequence[tuple[Scalar, Scalar]]) -> Poly:
    """Unique polynomial of degree ``< len(points)`` through ``points`` (Newton form)."""
    xs = [_frac(x) for x, _ in points]
    ys = [_frac(y) for _, y in points]
    if len(set(xs)) != len(xs):
        raise ValueError("repeated abscissa in interpolation")
    n = len(xs)
    if n == 0:
        return Poly()
    # divided differences
    dd = list(ys)
    for j in range(1, n):
        for i in range(n - 1, j - 1, -1):
            dd[i] = (dd[i] - dd[i - 1]) / (xs[i] - xs[i - j])
    result = Poly.const(dd[-1])
    for i in range(n - 2, -1, -1):
        result = result * Poly([-xs[i], 1]) + dd[i]
    return result
