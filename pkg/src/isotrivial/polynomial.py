"""Univariate polynomials over Q with exact square-free decomposition."""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence


def parse_rational(text: str) -> Fraction:
    text = text.strip()
    if not text:
        raise ValueError("empty coefficient")
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError) as exc:
        raise ValueError(f"not a rational number: {text!r}") from exc


def format_rational(x: Fraction | int) -> str:
    x = Fraction(x)
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


@dataclass(frozen=True)
class RationalPolynomial:
    """Coefficients in increasing degree; trailing zeros are stripped."""

    coefficients: tuple[Fraction, ...]

    def __init__(self, coefficients: Iterable[Fraction | int | str] = ()):
        coeffs = [c if isinstance(c, Fraction) else Fraction(c) for c in coefficients]
        while coeffs and coeffs[-1] == 0:
            coeffs.pop()
        object.__setattr__(self, "coefficients", tuple(coeffs))

    @classmethod
    def parse(cls, text: str) -> RationalPolynomial:
        """Comma-separated rationals, constant term first: ``"0,1,-3/2"``."""
        return cls(parse_rational(part) for part in text.split(","))

    @classmethod
    def from_roots(cls, roots: Sequence[Fraction | int], leading: Fraction | int = 1) -> RationalPolynomial:
        p = cls([leading])
        for r in roots:
            p = p * cls([-Fraction(r), 1])
        return p

    @property
    def is_zero(self) -> bool:
        return not self.coefficients

    @property
    def degree(self) -> int:
        """Degree; -1 for the zero polynomial."""
        return len(self.coefficients) - 1

    @property
    def leading(self) -> Fraction:
        return self.coefficients[-1] if self.coefficients else Fraction(0)

    def __call__(self, t: Fraction | int) -> Fraction:
        acc = Fraction(0)
        for c in reversed(self.coefficients):
            acc = acc * t + c
        return acc

    def __add__(self, other: RationalPolynomial) -> RationalPolynomial:
        n = max(len(self.coefficients), len(other.coefficients))
        a = self.coefficients + (Fraction(0),) * (n - len(self.coefficients))
        b = other.coefficients + (Fraction(0),) * (n - len(other.coefficients))
        return RationalPolynomial(x + y for x, y in zip(a, b))

    def __neg__(self) -> RationalPolynomial:
        return RationalPolynomial(-c for c in self.coefficients)

    def __sub__(self, other: RationalPolynomial) -> RationalPolynomial:
        return self + (-other)

    def __mul__(self, other: RationalPolynomial | Fraction | int) -> RationalPolynomial:
        if not isinstance(other, RationalPolynomial):
            return RationalPolynomial(c * other for c in self.coefficients)
        if self.is_zero or other.is_zero:
            return RationalPolynomial()
        out = [Fraction(0)] * (len(self.coefficients) + len(other.coefficients) - 1)
        for i, x in enumerate(self.coefficients):
            if x:
                for j, y in enumerate(other.coefficients):
                    out[i + j] += x * y
        return RationalPolynomial(out)

    __rmul__ = __mul__

    def __pow__(self, k: int) -> RationalPolynomial:
        result = RationalPolynomial([1])
        for _ in range(k):
            result = result * self
        return result

    def derivative(self) -> RationalPolynomial:
        return RationalPolynomial(i * c for i, c in enumerate(self.coefficients) if i)

    def divmod(self, other: RationalPolynomial) -> tuple[RationalPolynomial, RationalPolynomial]:
        if other.is_zero:
            raise ZeroDivisionError("polynomial division by zero")
        rem = list(self.coefficients)
        dq = other.degree
        lead = other.leading
        quot = [Fraction(0)] * max(len(rem) - dq, 0)
        for k in range(len(rem) - 1 - dq, -1, -1):
            coef = rem[k + dq] / lead
            quot[k] = coef
            if coef:
                for j, oc in enumerate(other.coefficients):
                    rem[k + j] -= coef * oc
        return RationalPolynomial(quot), RationalPolynomial(rem[:dq] if dq > 0 else [])

    def __floordiv__(self, other: RationalPolynomial) -> RationalPolynomial:
        q, r = self.divmod(other)
        if not r.is_zero:
            raise ValueError("inexact polynomial division")
        return q

    def primitive(self) -> RationalPolynomial:
        """Scale to integer coefficients with content 1 and positive leading term."""
        if self.is_zero:
            return self
        denom = math.lcm(*(c.denominator for c in self.coefficients))
        ints = [int(c * denom) for c in self.coefficients]
        content = math.gcd(*ints)
        sign = 1 if ints[-1] > 0 else -1
        return RationalPolynomial(Fraction(sign * x, content) for x in ints)

    def monic(self) -> RationalPolynomial:
        return self * (1 / self.leading)

    def __str__(self) -> str:
        return ",".join(format_rational(c) for c in self.coefficients) or "0"

    def pretty(self, var: str = "t") -> str:
        if self.is_zero:
            return "0"
        terms = []
        for i in range(self.degree, -1, -1):
            c = self.coefficients[i]
            if c == 0:
                continue
            mag = format_rational(abs(c))
            mono = "" if i == 0 else var if i == 1 else f"{var}^{i}"
            body = mag if not mono else mono if mag == "1" else f"{mag}*{mono}"
            terms.append(("-" if c < 0 else "+", body))
        first_sign, first = terms[0]
        out = ("-" if first_sign == "-" else "") + first
        for sign, body in terms[1:]:
            out += f" {sign} {body}"
        return out


def gcd(p: RationalPolynomial, q: RationalPolynomial) -> RationalPolynomial:
    """Monic gcd (zero if both are zero); remainders are kept primitive."""
    while not q.is_zero:
        p, q = q, p.divmod(q)[1].primitive()
    return p.monic() if not p.is_zero else p


def squarefree_decomposition(p: RationalPolynomial) -> dict[int, RationalPolynomial]:
    """Yun's algorithm: ``p = lc * prod(c_i ** i)`` with c_i monic, square-free, coprime.

    Returns ``{i: c_i}`` for the nonconstant factors only.  The number of
    distinct complex roots of multiplicity exactly i is ``deg c_i``.
    """
    if p.is_zero:
        raise ValueError("zero polynomial has no square-free decomposition")
    factors: dict[int, RationalPolynomial] = {}
    if p.degree == 0:
        return factors
    dp = p.derivative()
    a = gcd(p, dp)
    b = p // a
    c = dp // a
    d = c - b.derivative()
    i = 1
    while b.degree > 0:
        a = gcd(b, d)
        if a.degree > 0:
            factors[i] = a.monic()
        b = b // a
        c = d // a
        d = c - b.derivative()
        i += 1
    return factors
