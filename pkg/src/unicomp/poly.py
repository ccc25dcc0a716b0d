"""Exact integer polynomials, characteristic polynomials and certified roots.

All characteristic polynomials use the det(M - x I) convention, so an n x n
matrix gives leading coefficient (-1)^n.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd
from typing import Iterable, Sequence, Union

import numpy as np

from .graph import Graph

Rational = Union[int, Fraction]


@dataclass(frozen=True)
class IntPoly:
    """Dense polynomial with integer coefficients in ascending degree.

    Trailing zeros are stripped, so the zero polynomial is ``IntPoly(())``.
    """

    coeffs: tuple[int, ...]

    def __init__(self, coeffs: Iterable[int] = ()):
        cs = [int(c) for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        object.__setattr__(self, "coeffs", tuple(cs))

    @classmethod
    def x(cls) -> IntPoly:
        return cls((0, 1))

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    @property
    def lead(self) -> int:
        return self.coeffs[-1] if self.coeffs else 0

    def is_zero(self) -> bool:
        return not self.coeffs

    def __add__(self, other: IntPoly | int) -> IntPoly:
        other = _as_poly(other)
        a, b = self.coeffs, other.coeffs
        size = max(len(a), len(b))
        return IntPoly(
            (a[i] if i < len(a) else 0) + (b[i] if i < len(b) else 0) for i in range(size)
        )

    __radd__ = __add__

    def __neg__(self) -> IntPoly:
        return IntPoly(-c for c in self.coeffs)

    def __sub__(self, other: IntPoly | int) -> IntPoly:
        return self + (-_as_poly(other))

    def __rsub__(self, other: int) -> IntPoly:
        return _as_poly(other) - self

    def __mul__(self, other: IntPoly | int) -> IntPoly:
        other = _as_poly(other)
        if self.is_zero() or other.is_zero():
            return IntPoly()
        out = [0] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    out[i + j] += a * b
        return IntPoly(out)

    __rmul__ = __mul__

    def __pow__(self, k: int) -> IntPoly:
        out = IntPoly((1,))
        for _ in range(k):
            out = out * self
        return out

    def __call__(self, x: Rational) -> Rational:
        """Exact Horner evaluation; floats are accepted for numeric use."""
        acc = 0
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def derivative(self) -> IntPoly:
        return IntPoly(i * c for i, c in enumerate(self.coeffs) if i)

    def content(self) -> int:
        g = 0
        for c in self.coeffs:
            g = gcd(g, c)
        return g

    def primitive(self) -> IntPoly:
        """Divide by the content and make the leading coefficient positive."""
        if self.is_zero():
            return self
        g = self.content()
        if self.lead < 0:
            g = -g
        return IntPoly(c // g for c in self.coeffs)

    def sign_at(self, x: Rational) -> int:
        """Exact sign of the value at a rational point (integer arithmetic only)."""
        if self.is_zero():
            return 0
        x = Fraction(x)
        a, b = x.numerator, x.denominator
        d = self.degree
        total = 0
        apow = 1
        bpow = b**d
        for c in self.coeffs:
            total += c * apow * bpow
            apow *= a
            bpow //= b
        return (total > 0) - (total < 0)

    def sign_at_infinity(self, negative: bool = False) -> int:
        if self.is_zero():
            return 0
        s = 1 if self.lead > 0 else -1
        return -s if negative and self.degree % 2 else s

    def to_json(self) -> list[str]:
        return [str(c) for c in self.coeffs]

    def __repr__(self) -> str:
        return f"IntPoly({list(self.coeffs)})"


def _as_poly(v: IntPoly | int) -> IntPoly:
    return v if isinstance(v, IntPoly) else IntPoly((v,))


def evaluate(poly: IntPoly, point: Rational) -> Rational:
    return poly(point)


def sub(a: IntPoly, b: IntPoly) -> IntPoly:
    return a - b


def mul(a: IntPoly, b: IntPoly) -> IntPoly:
    return a * b


LAMBDA = IntPoly.x()


# -- division, gcd -----------------------------------------------------------


def pseudo_remainder(a: IntPoly, b: IntPoly) -> IntPoly:
    """lead(b)^(deg a - deg b + 1) * (a mod b), computed over the integers."""
    if b.is_zero():
        raise ZeroDivisionError("pseudo-remainder by zero polynomial")
    r = list(a.coeffs)
    db, lb = b.degree, b.lead
    steps = max(a.degree - db + 1, 0)
    for _ in range(steps):
        dr = len(r) - 1
        while dr >= 0 and r[dr] == 0:
            dr -= 1
        if dr < db:
            r = [c * lb for c in r]
            continue
        top = r[dr]
        r = [c * lb for c in r]
        shift = dr - db
        for i, c in enumerate(b.coeffs):
            r[i + shift] -= top * c
    return IntPoly(r)


def exact_quotient(a: IntPoly, b: IntPoly) -> IntPoly:
    """a / b when b divides a over the rationals, returned as a primitive
    integer polynomial (positive leading coefficient)."""
    if b.is_zero():
        raise ZeroDivisionError("division by zero polynomial")
    r = [Fraction(c) for c in a.coeffs]
    q = [Fraction(0)] * max(a.degree - b.degree + 1, 0)
    for k in range(len(q) - 1, -1, -1):
        coef = r[k + b.degree] / b.lead
        q[k] = coef
        for i, c in enumerate(b.coeffs):
            r[i + k] -= coef * c
    if any(r):
        raise ArithmeticError("polynomial division is not exact")
    den = 1
    for c in q:
        den = den * c.denominator // gcd(den, c.denominator)
    return IntPoly(int(c * den) for c in q).primitive()


def poly_gcd(a: IntPoly, b: IntPoly) -> IntPoly:
    """Primitive gcd over Q[x] via the primitive remainder sequence."""
    a, b = a.primitive(), b.primitive()
    while not b.is_zero():
        a, b = b, pseudo_remainder(a, b).primitive()
    return a.primitive()


def squarefree_part(p: IntPoly) -> IntPoly:
    if p.degree < 1:
        return p.primitive()
    g = poly_gcd(p, p.derivative())
    return exact_quotient(p, g) if g.degree > 0 else p.primitive()


# -- characteristic polynomials ---------------------------------------------


def matrix_char_poly(matrix: Sequence[Sequence[int]]) -> IntPoly:
    """det(M - x I) for a square integer matrix via the Faddeev-LeVerrier
    recurrence, run over Python integers. Each trace division is checked for
    exactness."""
    a = np.array([[int(v) for v in row] for row in matrix], dtype=object)
    n = a.shape[0]
    if a.shape != (n, n):
        raise ValueError("matrix must be square")
    if n == 0:
        return IntPoly((1,))
    eye = np.eye(n, dtype=int).astype(object)
    # monic det(x I - M) = sum c[k] x^k, c[n] = 1
    c = [0] * (n + 1)
    c[n] = 1
    m = np.zeros((n, n), dtype=object)
    for k in range(1, n + 1):
        m = a.dot(m) + c[n - k + 1] * eye
        tr = int(np.trace(a.dot(m)))
        if tr % k:
            raise ArithmeticError(f"non-integral trace step at k={k}")
        c[n - k] = -tr // k
    sign = -1 if n % 2 else 1
    return IntPoly(sign * v for v in c)


def char_poly(g: Graph) -> IntPoly:
    """det(A(g) - x I) with exact integer coefficients."""
    return matrix_char_poly(g.adjacency_matrix().tolist())


# -- the parametric polynomials ----------------------------------------------


def paper_f(p: int, q: int) -> IntPoly:
    """Degree-7 polynomial whose least root is the least eigenvalue of the
    complement of U(p, q)."""
    if p < 1 or q < 3:
        raise ValueError(f"f(x; p, q) needs p >= 1 and q >= 3, got p={p}, q={q}")
    return IntPoly((
        -8 + 2 * p + 2 * q,
        13 - 11 * p - 7 * q + 4 * p * q,
        20 - 6 * q - 4 * q * p,
        -1 + 11 * p + 7 * q - 7 * p * q,
        -20 + 12 * p + 12 * q - 2 * p * q,
        -16 + 6 * p + 6 * q,
        -6 + p + q,
        -1,
    ))


def paper_g(p: int) -> IntPoly:
    """Degree-5 polynomial whose least root is the least eigenvalue of the
    complement of U'(p)."""
    if p < 1:
        raise ValueError(f"g(x; p) needs p >= 1, got {p}")
    return IntPoly((-4 + 2 * p, 3 - 5 * p, 6 - p, 1 + 4 * p, -2 + p, -1))


def paper_g_bar(p: int) -> IntPoly:
    """(x + 1)^2 g(x; p)."""
    return paper_g(p) * (LAMBDA + 1) ** 2


# Class order of the quotient matrices: (v1, ..., v7) and (u1, ..., u5).
U_CLASS_ORDER = ["v1", "v2", "v3", "v4", "v5", "v6", "v7"]
UPRIME_CLASS_ORDER = ["u1", "u2", "u3", "u4", "u5"]


def quotient_matrix_u(p: int, q: int) -> tuple[tuple[int, ...], ...]:
    """Eigen-system of the complement of U(p, q) collapsed onto the seven
    vertex classes v1..v7.

    Row i lists, for a vertex of class i, how many complement neighbours it has
    in each class. A v7 vertex sees the q - 4 other v7 vertices, not q - 3.
    """
    if p < 1 or q < 3:
        raise ValueError(f"quotient of U(p, q) needs p >= 1 and q >= 3, got p={p}, q={q}")
    return (
        (p - 2, 0, 1, 1, 1, 2, q - 3),
        (0, 0, 0, 1, 1, 2, q - 3),
        (p - 1, 0, 0, 0, 1, 2, q - 3),
        (p - 1, 1, 0, 0, 0, 2, q - 3),
        (p - 1, 1, 1, 0, 0, 0, 0),
        (p - 1, 1, 1, 1, 0, 0, q - 3),
        (p - 1, 1, 1, 1, 0, 2, q - 4),
    )


def quotient_matrix_uprime(p: int) -> tuple[tuple[int, ...], ...]:
    """Eigen-system of the complement of U'(p) collapsed onto u1..u5.

    u3 is adjacent to u4 in U'(p), so the u3 row has no u4 entry.
    """
    if p < 1:
        raise ValueError(f"quotient of U'(p) needs p >= 1, got {p}")
    return (
        (p - 2, 0, 1, 1, 2),
        (0, 0, 0, 1, 2),
        (p - 1, 0, 0, 0, 2),
        (p - 1, 1, 0, 0, 0),
        (p - 1, 1, 1, 0, 0),
    )


# -- Sturm sequences and certified roots -------------------------------------


class NoRealRootError(ValueError):
    pass


def sturm_chain(p: IntPoly) -> list[IntPoly]:
    """Sturm sequence p, p', -rem, ... kept integral by positive rescaling."""
    chain = [p, p.derivative()]
    while chain[-1].degree > 0:
        a, b = chain[-2], chain[-1]
        r = -pseudo_remainder(a, b)
        if b.lead < 0 and (a.degree - b.degree + 1) % 2:
            r = -r
        if r.is_zero():
            break
        g = r.content()
        chain.append(IntPoly(c // g for c in r.coeffs))
    return chain


def _variations(signs: Iterable[int]) -> int:
    nz = [s for s in signs if s]
    return sum(1 for a, b in zip(nz, nz[1:]) if a != b)


def sign_variations(chain: list[IntPoly], x: Rational | None, negative_inf: bool = False) -> int:
    if x is None:
        return _variations(p.sign_at_infinity(negative_inf) for p in chain)
    return _variations(p.sign_at(x) for p in chain)


def cauchy_bound(p: IntPoly) -> int:
    """Integer B with every real root strictly inside (-B, B)."""
    lead = abs(p.lead)
    top = max((abs(c) for c in p.coeffs[:-1]), default=0)
    return 1 + -(-top // lead) + 1


@dataclass(frozen=True)
class RootBracket:
    """Exact interval (lo, hi] holding a real root; lo == hi means the root
    is exactly lo."""

    lo: Fraction
    hi: Fraction

    @property
    def width(self) -> Fraction:
        return self.hi - self.lo

    @property
    def exact(self) -> bool:
        return self.lo == self.hi

    @property
    def mid(self) -> float:
        return float((self.lo + self.hi) / 2)

    def to_json(self) -> dict:
        return {"lo": exact_decimal(self.lo), "hi": exact_decimal(self.hi), "approx": f"{self.mid:.17g}"}


def exact_decimal(x: Fraction) -> str:
    """Exact decimal expansion of a dyadic (or any terminating) rational;
    falls back to 'num/den' otherwise."""
    x = Fraction(x)
    den = x.denominator
    twos = fives = 0
    while den % 2 == 0:
        den //= 2
        twos += 1
    while den % 5 == 0:
        den //= 5
        fives += 1
    if den != 1:
        return f"{x.numerator}/{x.denominator}"
    k = max(twos, fives)
    scaled = x * 10**k
    assert scaled.denominator == 1
    digits = str(abs(scaled.numerator)).rjust(k + 1, "0")
    sign = "-" if x < 0 else ""
    if k == 0:
        return sign + digits
    return f"{sign}{digits[:-k]}.{digits[-k:]}"


class LeastRootIsolator:
    """Brackets the smallest real root of an integer polynomial and narrows
    it on demand. Root counts come from an exact Sturm chain of the
    square-free part, so the bracket is certified at every width."""

    def __init__(self, poly: IntPoly):
        if poly.degree < 1:
            raise ValueError("least real root needs a nonconstant polynomial")
        self.poly = poly
        self.sf = squarefree_part(poly)
        self.chain = sturm_chain(self.sf)
        total = sign_variations(self.chain, None, True) - sign_variations(self.chain, None, False)
        if total == 0:
            raise NoRealRootError(f"{poly} has no real root")
        self.root_count = total
        bound = cauchy_bound(self.sf)
        self.lo = Fraction(-bound)
        self.hi = Fraction(bound)
        self._isolated = False

    def _count(self, a: Fraction, b: Fraction) -> int:
        return sign_variations(self.chain, a) - sign_variations(self.chain, b)

    def _isolate(self) -> None:
        # keep the least root in (lo, hi] until it is the only root there
        while self.lo != self.hi and self._count(self.lo, self.hi) > 1:
            mid = (self.lo + self.hi) / 2
            if self._count(self.lo, mid) >= 1:
                self.hi = mid
            else:
                self.lo = mid
        self._isolated = True

    def refine(self, tol: Rational | float) -> RootBracket:
        tol = Fraction(tol)
        if tol <= 0:
            raise ValueError("tolerance must be positive")
        if not self._isolated:
            self._isolate()
        sf = self.sf
        if sf.sign_at(self.hi) == 0:
            self.lo = self.hi
        s_lo = sf.sign_at(self.lo)
        while self.hi - self.lo > tol:
            mid = (self.lo + self.hi) / 2
            s = sf.sign_at(mid)
            if s == 0:
                self.lo = self.hi = mid
                break
            if s == s_lo:
                self.lo = mid
            else:
                self.hi = mid
        return RootBracket(self.lo, self.hi)

    @property
    def bracket(self) -> RootBracket:
        return RootBracket(self.lo, self.hi)


def least_real_root(poly: IntPoly, tol: Rational | float = 1e-12) -> RootBracket:
    return LeastRootIsolator(poly).refine(tol)


def _strictly_before(x: RootBracket, y: RootBracket) -> bool:
    # every point of x lies below every point of y; (lo, hi] unless exact
    return x.hi < y.lo or (x.hi == y.lo and not y.exact)


def _contains(b: RootBracket, x: Fraction) -> bool:
    return x == b.lo if b.exact else b.lo < x <= b.hi


def compare_least_roots(a: IntPoly, b: IntPoly, max_bits: int = 400) -> int:
    """Certified sign of (least root of a) - (least root of b): -1, 0 or 1.

    Brackets are narrowed until they separate. Equal roots never separate, so
    overlap is settled by looking for a common root (a root of gcd(a, b))
    inside both brackets.
    """
    ia, ib = LeastRootIsolator(a), LeastRootIsolator(b)
    common = poly_gcd(ia.sf, ib.sf)
    width = Fraction(1, 2**20)
    while True:
        ba, bb = ia.refine(width), ib.refine(width)
        if _strictly_before(ba, bb):
            return -1
        if _strictly_before(bb, ba):
            return 1
        if ba.exact and bb.exact:
            return 0
        if common.degree > 0:
            if ba.exact or bb.exact:
                point, other = (ba.lo, bb) if ba.exact else (bb.lo, ba)
                if _contains(other, point) and common.sign_at(point) == 0:
                    return 0
            else:
                lo, hi = max(ba.lo, bb.lo), min(ba.hi, bb.hi)
                if lo < hi and _count_on(common, lo, hi) >= 1:
                    return 0
        if width < Fraction(1, 2**max_bits):
            raise ArithmeticError("could not separate least roots")
        width /= 2**16


def _count_on(p: IntPoly, lo: Fraction, hi: Fraction) -> int:
    chain = sturm_chain(p)
    return sign_variations(chain, lo) - sign_variations(chain, hi)
