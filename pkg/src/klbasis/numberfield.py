"""Exact arithmetic in the real field Q(2cos(pi/N)).

Root systems of the non-crystallographic groups need the values
2cos(pi/m) for every bond label m; all of them live in Q(theta) with
theta = 2cos(pi/N) and N the lcm of the labels.  Elements are rational
vectors in the power basis of theta.  The zero test is exact (coordinates
of a reduced element vanish iff the element does), and the sign of a
nonzero element is determined by certified interval evaluation at
increasing precision, so no root-sign decision ever rests on a float
tolerance.
"""

from __future__ import annotations

import math
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Sequence

import mpmath


@lru_cache(maxsize=None)
def cyclotomic(n: int) -> tuple[int, ...]:
    """Coefficients (ascending) of the n-th cyclotomic polynomial."""
    if n == 1:
        return (-1, 1)
    # divide x^n - 1 by the cyclotomic polynomials of the proper divisors
    num = [-1] + [0] * (n - 1) + [1]
    for d in range(1, n):
        if n % d == 0:
            den = cyclotomic(d)
            num = _polydiv_exact(num, list(den))
    return tuple(num)


def _polydiv_exact(num: list[int], den: list[int]) -> list[int]:
    out = [0] * (len(num) - len(den) + 1)
    rem = list(num)
    for i in range(len(out) - 1, -1, -1):
        c = rem[i + len(den) - 1]
        if c % den[-1]:
            raise ArithmeticError("inexact cyclotomic division")
        c //= den[-1]
        out[i] = c
        if c:
            for j, d in enumerate(den):
                rem[i + j] -= c * d
    if any(rem):
        raise ArithmeticError("nonzero remainder in cyclotomic division")
    return out


@lru_cache(maxsize=None)
def cos_minimal_poly(n: int) -> tuple[int, ...]:
    """Minimal polynomial (ascending, monic) of 2cos(pi/n) over Q."""
    if n == 1:
        return (2, 1)  # 2cos(pi) = -2
    if n == 2:
        return (0, 1)  # 2cos(pi/2) = 0
    phi = cyclotomic(2 * n)
    k = (len(phi) - 1) // 2
    # phi is palindromic of even degree 2k; rewrite phi(x)/x^k in
    # y = x + 1/x using x^j + x^-j = p_j(y), p_0 = 2, p_1 = y.
    out = [0] * (k + 1)
    out[0] = phi[k]
    p_prev = [2]
    p_cur = [0, 1]
    for j in range(1, k + 1):
        for i, c in enumerate(p_cur):
            out[i] += phi[k + j] * c
        if j < k:
            p_next = [0] + p_cur  # y * p_cur
            for i, c in enumerate(p_prev):
                p_next[i] -= c
            p_prev, p_cur = p_cur, p_next
    return tuple(out)


class NumberField:
    """The field Q(theta), theta = 2cos(pi/N), in the power basis of theta."""

    def __init__(self, N: int):
        self.N = N
        self.minpoly = cos_minimal_poly(N)
        self.degree = len(self.minpoly) - 1
        # x^d = -(a_0 + ... + a_{d-1} x^{d-1}); extend to x^(2d-2)
        d = self.degree
        red: list[tuple[Fraction, ...]] = []
        cur = [Fraction(-a) for a in self.minpoly[:-1]]
        for _ in range(d, 2 * d - 1):
            red.append(tuple(cur))
            nxt = [Fraction(0)] + cur[:-1]
            top = cur[-1]
            if top:
                for i in range(d):
                    nxt[i] += top * red[0][i]
            cur = nxt
        self._reduction = red
        self.zero = AlgebraicReal(self, (Fraction(0),) * d)
        self.one = AlgebraicReal(self, (Fraction(1),) + (Fraction(0),) * (d - 1))
        self._theta_iv: dict[int, object] = {}
        self._cos_cache: dict[int, AlgebraicReal] = {}

    def from_rational(self, q) -> "AlgebraicReal":
        coeffs = [Fraction(q)] + [Fraction(0)] * (self.degree - 1)
        return AlgebraicReal(self, tuple(coeffs))

    def theta(self) -> "AlgebraicReal":
        if self.degree == 1:
            return self.from_rational(-self.minpoly[0])
        coeffs = [Fraction(0)] * self.degree
        coeffs[1] = Fraction(1)
        return AlgebraicReal(self, tuple(coeffs))

    def two_cos_pi_over(self, m: int) -> "AlgebraicReal":
        """2cos(pi/m) as a field element; m must be 2 or a divisor of N."""
        if m in self._cos_cache:
            return self._cos_cache[m]
        if m == 2:
            val = self.zero
        else:
            if self.N % m:
                raise ValueError(f"2cos(pi/{m}) does not live in Q(2cos(pi/{self.N}))")
            j = self.N // m
            # 2cos(j*pi/N) by the Chebyshev recurrence c_j = theta*c_{j-1} - c_{j-2}
            theta = self.theta()
            prev, cur = self.from_rational(2), theta
            for _ in range(j - 1):
                prev, cur = cur, theta * cur - prev
            val = cur if j >= 1 else prev
        self._cos_cache[m] = val
        return val

    # -- coordinate-level arithmetic ------------------------------------

    def _mul(self, a: Sequence[Fraction], b: Sequence[Fraction]) -> tuple[Fraction, ...]:
        d = self.degree
        prod = [Fraction(0)] * (2 * d - 1)
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    if y:
                        prod[i + j] += x * y
        out = prod[:d]
        for k in range(d, 2 * d - 1):
            c = prod[k]
            if c:
                row = self._reduction[k - d]
                for i in range(d):
                    out[i] += c * row[i]
        return tuple(out)

    def _inv(self, a: Sequence[Fraction]) -> tuple[Fraction, ...]:
        # extended Euclid in Q[x] against the minimal polynomial
        r0 = [Fraction(c) for c in self.minpoly]
        r1 = list(a)
        s0, s1 = [Fraction(0)], [Fraction(1)]
        while True:
            while r1 and not r1[-1]:
                r1.pop()
            if not r1:
                raise ZeroDivisionError("inverse of zero field element")
            if len(r1) == 1:
                c = r1[0]
                d = self.degree
                out = [x / c for x in s1] + [Fraction(0)] * d
                return tuple(out[:d])
            q, r = _polydivmod(r0, r1)
            s_new = _polysub(s0, _polymul(q, s1))
            r0, r1 = r1, r
            s0, s1 = s1, s_new

    def _sign(self, a: Sequence[Fraction]) -> int:
        if not any(a):
            return 0
        if self.degree == 1:
            return 1 if a[0] > 0 else -1
        prec = 64
        while prec <= (1 << 14):
            theta = self._theta_interval(prec)
            iv = mpmath.iv
            old = iv.prec
            try:
                iv.prec = prec
                acc = iv.mpf(0)
                for c in reversed(a):
                    acc = acc * theta + iv.mpf(c.numerator) / iv.mpf(c.denominator)
                if acc > 0:
                    return 1
                if acc < 0:
                    return -1
            finally:
                iv.prec = old
            prec *= 2
        raise ArithmeticError("sign of algebraic number undecided at 16384 bits")

    def _theta_interval(self, prec: int):
        if prec not in self._theta_iv:
            iv = mpmath.iv
            old = iv.prec
            try:
                iv.prec = prec
                self._theta_iv[prec] = 2 * iv.cos(iv.pi / self.N)
            finally:
                iv.prec = old
        return self._theta_iv[prec]

    def __repr__(self) -> str:
        return f"NumberField(2cos(pi/{self.N}), degree {self.degree})"


def _polydivmod(a: list[Fraction], b: list[Fraction]):
    a = list(a)
    q = [Fraction(0)] * max(1, len(a) - len(b) + 1)
    inv_lead = 1 / b[-1]
    for i in range(len(a) - len(b), -1, -1):
        c = a[i + len(b) - 1] * inv_lead
        q[i] = c
        if c:
            for j, d in enumerate(b):
                a[i + j] -= c * d
    while a and not a[-1]:
        a.pop()
    return q, a


def _polymul(a: list[Fraction], b: list[Fraction]) -> list[Fraction]:
    out = [Fraction(0)] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return out


def _polysub(a: list[Fraction], b: list[Fraction]) -> list[Fraction]:
    out = [Fraction(0)] * max(len(a), len(b))
    for i, x in enumerate(a):
        out[i] += x
    for i, x in enumerate(b):
        out[i] -= x
    return out


class AlgebraicReal:
    """An element of a fixed NumberField; supports exact ring and field
    operations and decidable sign/comparison."""

    __slots__ = ("field", "coeffs")

    def __init__(self, field: NumberField, coeffs: Iterable[Fraction]):
        self.field = field
        self.coeffs = tuple(Fraction(c) for c in coeffs)
        if len(self.coeffs) != field.degree:
            raise ValueError("coordinate length does not match field degree")

    def __add__(self, other: "AlgebraicReal") -> "AlgebraicReal":
        return AlgebraicReal(self.field, (a + b for a, b in zip(self.coeffs, other.coeffs)))

    def __sub__(self, other: "AlgebraicReal") -> "AlgebraicReal":
        return AlgebraicReal(self.field, (a - b for a, b in zip(self.coeffs, other.coeffs)))

    def __neg__(self) -> "AlgebraicReal":
        return AlgebraicReal(self.field, (-a for a in self.coeffs))

    def __mul__(self, other) -> "AlgebraicReal":
        if isinstance(other, AlgebraicReal):
            return AlgebraicReal(self.field, self.field._mul(self.coeffs, other.coeffs))
        return AlgebraicReal(self.field, (a * other for a in self.coeffs))

    __rmul__ = __mul__

    def __truediv__(self, other: "AlgebraicReal") -> "AlgebraicReal":
        inv = AlgebraicReal(self.field, self.field._inv(other.coeffs))
        return self * inv

    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def __bool__(self) -> bool:
        return any(self.coeffs)

    def sign(self) -> int:
        return self.field._sign(self.coeffs)

    def __lt__(self, other: "AlgebraicReal") -> bool:
        return (self - other).sign() < 0

    def __gt__(self, other: "AlgebraicReal") -> bool:
        return (self - other).sign() > 0

    def __le__(self, other: "AlgebraicReal") -> bool:
        return (self - other).sign() <= 0

    def __ge__(self, other: "AlgebraicReal") -> bool:
        return (self - other).sign() >= 0

    def __eq__(self, other: object) -> bool:
        return (
            isinstance(other, AlgebraicReal)
            and self.field is other.field
            and self.coeffs == other.coeffs
        )

    def __hash__(self) -> int:
        return hash(self.coeffs)

    def __float__(self) -> float:
        theta = 2 * math.cos(math.pi / self.field.N)
        return float(sum(float(c) * theta**i for i, c in enumerate(self.coeffs)))

    def __repr__(self) -> str:
        return f"AlgebraicReal({self.coeffs}, N={self.field.N})"


def field_for_labels(labels: Iterable[int]) -> NumberField:
    """Smallest field of the form Q(2cos(pi/N)) containing 2cos(pi/m) for
    every bond label m in the input."""
    N = 1
    for m in labels:
        if m >= 3:
            N = math.lcm(N, m)
    return NumberField(N)
