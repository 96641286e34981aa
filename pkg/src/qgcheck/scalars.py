"""Exact cyclotomic scalars.

The algebraic tier of the workbench computes in Q(zeta_N), the field of
rationals extended by a primitive N-th root of unity.  An element is stored
as a residue-class polynomial in zeta with Fraction coefficients, reduced
modulo the N-th cyclotomic polynomial, so equality, inversion and complex
conjugation (zeta -> zeta^(N-1)) are all exact.  N = 1 is the rational
field.  The float tier of the workbench is plain complex arithmetic;
``Cyc.to_complex`` is the bridge between the two.
"""

from __future__ import annotations

import cmath
from fractions import Fraction
from typing import Union

Rational = Union[int, Fraction]

_F0 = Fraction(0)
_F1 = Fraction(1)


def _divisors(n: int) -> list[int]:
    return [d for d in range(1, n + 1) if n % d == 0]


def _int_poly_div(num: list[int], den: list[int]) -> list[int]:
    """Exact division of integer polynomials (ascending coefficients)."""
    num = list(num)
    dd = len(den) - 1
    if den[-1] != 1:
        raise ValueError("divisor must be monic")
    out = [0] * (len(num) - dd)
    for i in range(len(num) - 1, dd - 1, -1):
        c = num[i]
        out[i - dd] = c
        if c:
            for j, dj in enumerate(den):
                num[i - dd + j] -= c * dj
    if any(num[:dd]):
        raise ValueError("inexact polynomial division")
    return out


def cyclotomic_polynomial(n: int) -> list[int]:
    """Coefficients of Phi_n, ascending, computed by dividing x^n - 1
    by the cyclotomic polynomials of the proper divisors of n."""
    poly = [-1] + [0] * (n - 1) + [1]
    for d in _divisors(n)[:-1]:
        poly = _int_poly_div(poly, cyclotomic_polynomial(d))
    return poly


class _Context:
    """Per-order tables: modulus, power reductions and conjugation."""

    __slots__ = ("order", "degree", "modulus", "powers", "conj", "zeta")

    def __init__(self, order: int):
        self.order = order
        self.modulus = cyclotomic_polynomial(order)
        self.degree = len(self.modulus) - 1
        d = self.degree
        # powers[k] = coefficient vector of zeta^k reduced mod Phi_N,
        # for every exponent a product or a conjugate can produce.
        top = max(order, 2 * d - 1)
        powers: list[tuple[Fraction, ...]] = []
        cur = [_F1] + [_F0] * (d - 1)
        for _ in range(top):
            powers.append(tuple(cur))
            cur = [_F0] + cur  # multiply by zeta
            if cur[d]:
                lead = cur[d]
                cur = [cur[j] - lead * self.modulus[j] for j in range(d)]
            cur = cur[:d]
        self.powers = powers
        self.conj = [powers[(order - j) % order] for j in range(d)]
        self.zeta = cmath.exp(2j * cmath.pi / order)


_CONTEXTS: dict[int, _Context] = {}


def _context(order: int) -> _Context:
    ctx = _CONTEXTS.get(order)
    if ctx is None:
        if order < 1:
            raise ValueError(f"cyclotomic order must be >= 1, got {order}")
        ctx = _CONTEXTS[order] = _Context(order)
    return ctx


class Cyc:
    """An element of Q(zeta_N), exact.

    ``coeffs`` has length deg Phi_N and lists the coefficients of
    zeta^0, zeta^1, ... in the reduced representative.
    """

    __slots__ = ("order", "coeffs")

    def __init__(self, order: int, coeffs):
        ctx = _context(order)
        cs = [c if isinstance(c, Fraction) else Fraction(c) for c in coeffs]
        if len(cs) > ctx.degree:
            # fold powers beyond the residue basis through the reduction table
            folded = list(cs[: ctx.degree])
            folded += [_F0] * (ctx.degree - len(folded))
            for k in range(ctx.degree, len(cs)):
                if cs[k]:
                    red = ctx.powers[k if k < len(ctx.powers) else k % ctx.order]
                    folded = [folded[j] + cs[k] * red[j] for j in range(ctx.degree)]
            cs = folded
        else:
            cs = list(cs) + [_F0] * (ctx.degree - len(cs))
        object.__setattr__(self, "order", order)
        object.__setattr__(self, "coeffs", tuple(cs))

    def __setattr__(self, *a):  # immutable
        raise AttributeError("Cyc is immutable")

    # -- constructors -------------------------------------------------

    @staticmethod
    def rational(value: Rational, order: int = 1) -> "Cyc":
        return Cyc(order, [Fraction(value)])

    @staticmethod
    def zero(order: int = 1) -> "Cyc":
        return Cyc(order, [])

    @staticmethod
    def one(order: int = 1) -> "Cyc":
        return Cyc(order, [_F1])

    @staticmethod
    def zeta(order: int, power: int = 1) -> "Cyc":
        ctx = _context(order)
        return Cyc(order, ctx.powers[power % order])

    @staticmethod
    def promote(value, order: int) -> "Cyc":
        """Coerce an int, Fraction or Cyc into Q(zeta_order)."""
        if isinstance(value, Cyc):
            if value.order == order:
                return value
            if value.is_rational():
                return Cyc.rational(value.rational_value(), order)
            raise ValueError(
                f"cannot coerce Q(zeta_{value.order}) element into Q(zeta_{order})"
            )
        return Cyc.rational(value, order)

    # -- coercion helpers ---------------------------------------------

    def _pair(self, other) -> tuple["Cyc", "Cyc"]:
        if isinstance(other, (int, Fraction)):
            other = Cyc.rational(other, self.order)
        elif not isinstance(other, Cyc):
            return NotImplemented, NotImplemented  # type: ignore[return-value]
        if self.order == other.order:
            return self, other
        if self.is_rational():
            return Cyc.rational(self.rational_value(), other.order), other
        if other.is_rational():
            return self, Cyc.rational(other.rational_value(), self.order)
        raise ValueError(
            f"mixed cyclotomic orders {self.order} and {other.order}"
        )

    # -- predicates ----------------------------------------------------

    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def __bool__(self) -> bool:
        return not self.is_zero()

    def is_rational(self) -> bool:
        return not any(self.coeffs[1:])

    def rational_value(self) -> Fraction:
        if not self.is_rational():
            raise ValueError(f"{self!r} is not rational")
        return self.coeffs[0]

    def is_real(self) -> bool:
        return self == self.conj()

    # -- arithmetic -----------------------------------------------------

    def __add__(self, other):
        a, b = self._pair(other)
        if a is NotImplemented:
            return NotImplemented
        return Cyc(a.order, [x + y for x, y in zip(a.coeffs, b.coeffs)])

    __radd__ = __add__

    def __neg__(self):
        return Cyc(self.order, [-x for x in self.coeffs])

    def __sub__(self, other):
        a, b = self._pair(other)
        if a is NotImplemented:
            return NotImplemented
        return Cyc(a.order, [x - y for x, y in zip(a.coeffs, b.coeffs)])

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        a, b = self._pair(other)
        if a is NotImplemented:
            return NotImplemented
        ctx = _context(a.order)
        d = ctx.degree
        if d == 1:
            return Cyc(a.order, [a.coeffs[0] * b.coeffs[0]])
        out = [_F0] * d
        for i, x in enumerate(a.coeffs):
            if not x:
                continue
            for j, y in enumerate(b.coeffs):
                if not y:
                    continue
                k = i + j
                if k < d:
                    out[k] += x * y
                else:
                    red = ctx.powers[k]
                    xy = x * y
                    for t in range(d):
                        if red[t]:
                            out[t] += xy * red[t]
        return Cyc(a.order, out)

    __rmul__ = __mul__

    def inverse(self) -> "Cyc":
        if self.is_zero():
            raise ZeroDivisionError("division by zero scalar")
        ctx = _context(self.order)
        if ctx.degree == 1:
            return Cyc(self.order, [1 / self.coeffs[0]])
        # extended Euclid in Q[x] against the cyclotomic modulus
        r0 = [Fraction(c) for c in ctx.modulus]
        r1 = list(self.coeffs)
        s0, s1 = [_F0], [_F1]

        def trim(p):
            while p and not p[-1]:
                p.pop()
            return p

        r0, r1 = trim(r0), trim(r1)
        while len(r1) > 1 or (r1 and r1[0]):
            if len(r1) == 1:
                break
            if len(r0) < len(r1):
                r0, r1, s0, s1 = r1, r0, s1, s0
                continue
            lead = r0[-1] / r1[-1]
            shift = len(r0) - len(r1)
            new_r = list(r0)
            for j, c in enumerate(r1):
                new_r[j + shift] -= lead * c
            new_s = list(s0) + [_F0] * max(0, shift + len(s1) - len(s0))
            for j, c in enumerate(s1):
                new_s[j + shift] -= lead * c
            r0, s0 = r1, s1
            r1, s1 = trim(new_r), trim(new_s)
        if not r1:
            raise ZeroDivisionError("scalar is a zero divisor (non-primitive order?)")
        g = r1[0]
        inv = [c / g for c in s1]
        return Cyc(self.order, inv)

    def __truediv__(self, other):
        a, b = self._pair(other)
        if a is NotImplemented:
            return NotImplemented
        return a * b.inverse()

    def __rtruediv__(self, other):
        return Cyc.promote(other, self.order) / self

    def __pow__(self, n: int) -> "Cyc":
        if n < 0:
            return self.inverse() ** (-n)
        out = Cyc.one(self.order)
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def conj(self) -> "Cyc":
        """Complex conjugation, zeta -> zeta^(N-1); exact."""
        ctx = _context(self.order)
        d = ctx.degree
        out = [_F0] * d
        for j, c in enumerate(self.coeffs):
            if c:
                img = ctx.conj[j]
                for t in range(d):
                    if img[t]:
                        out[t] += c * img[t]
        return Cyc(self.order, out)

    # -- comparisons and hashing ----------------------------------------

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.is_rational() and self.coeffs[0] == other
        if not isinstance(other, Cyc):
            return NotImplemented
        if self.order == other.order:
            return self.coeffs == other.coeffs
        if self.is_rational() and other.is_rational():
            return self.coeffs[0] == other.coeffs[0]
        return False

    def __hash__(self):
        if self.is_rational():
            return hash(self.coeffs[0])
        return hash((self.order, self.coeffs))

    # -- embeddings ------------------------------------------------------

    def to_complex(self) -> complex:
        ctx = _context(self.order)
        z = 0j
        for j, c in enumerate(self.coeffs):
            if c:
                z += float(c) * ctx.zeta**j
        return z

    def __repr__(self):
        if self.is_rational():
            return str(self.coeffs[0])
        terms = []
        for j, c in enumerate(self.coeffs):
            if not c:
                continue
            if j == 0:
                terms.append(str(c))
            else:
                zp = "z" if j == 1 else f"z^{j}"
                terms.append(zp if c == 1 else f"({c})*{zp}")
        return " + ".join(terms) + f" [N={self.order}]"

    # -- serialization ----------------------------------------------------

    def to_strings(self) -> list[str]:
        return [str(c) for c in self.coeffs]

    @staticmethod
    def from_strings(order: int, parts: list[str]) -> "Cyc":
        return Cyc(order, [Fraction(p) for p in parts])
