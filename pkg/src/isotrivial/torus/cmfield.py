"""Endomorphism fields of CM elliptic curves C/<1, tau>.

An element p + q*tau acts on the lattice coordinates (x, y) of the point
x + y*tau by the integer-coefficient matrix p*I + q*J, where J is
multiplication by tau.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from ..polynomial import format_rational

KINDS = ("gauss", "eisenstein", "rational")

# multiplication by tau in lattice coordinates
TAU_MATRIX = {
    "gauss": ((0, -1), (1, 0)),  # i * (x + y i) = -y + x i
    "eisenstein": ((0, -1), (1, 1)),  # zeta * (x + y zeta) = -y + (x + y) zeta, zeta^2 = zeta - 1
}
_TAU_SYMBOL = {"gauss": "i", "eisenstein": "zeta", "rational": "tau"}


def check_kind(kind: str) -> str:
    if kind not in KINDS:
        raise ValueError(f"unknown field kind {kind!r}; expected one of {KINDS}")
    return kind


@dataclass(frozen=True)
class CMNumber:
    p: Fraction
    q: Fraction
    kind: str

    def __post_init__(self):
        object.__setattr__(self, "p", Fraction(self.p))
        object.__setattr__(self, "q", Fraction(self.q))
        if self.kind == "rational" and self.q:
            raise ValueError("rational field has no tau")

    def _coerce(self, other) -> CMNumber:
        if isinstance(other, CMNumber):
            if other.kind != self.kind:
                raise ValueError(f"cannot mix {self.kind} and {other.kind}")
            return other
        return CMNumber(Fraction(other), Fraction(0), self.kind)

    def __add__(self, other) -> CMNumber:
        o = self._coerce(other)
        return CMNumber(self.p + o.p, self.q + o.q, self.kind)

    __radd__ = __add__

    def __neg__(self) -> CMNumber:
        return CMNumber(-self.p, -self.q, self.kind)

    def __sub__(self, other) -> CMNumber:
        return self + (-self._coerce(other))

    def __rsub__(self, other) -> CMNumber:
        return self._coerce(other) - self

    def __mul__(self, other) -> CMNumber:
        o = self._coerce(other)
        pp, pq, qp, qq = self.p * o.p, self.p * o.q, self.q * o.p, self.q * o.q
        if self.kind == "gauss":
            return CMNumber(pp - qq, pq + qp, self.kind)
        # eisenstein: tau^2 = tau - 1 (rational has q = 0 throughout)
        return CMNumber(pp - qq, pq + qp + qq, self.kind)

    __rmul__ = __mul__

    def __truediv__(self, other) -> CMNumber:
        if isinstance(other, CMNumber):
            return self * other.inverse()
        return CMNumber(self.p / other, self.q / other, self.kind)

    def conjugate(self) -> CMNumber:
        if self.kind == "eisenstein":
            # conj(zeta) = 1 - zeta
            return CMNumber(self.p + self.q, -self.q, self.kind)
        return CMNumber(self.p, -self.q, self.kind)

    def norm(self) -> Fraction:
        n = self * self.conjugate()
        assert n.q == 0
        return n.p

    def inverse(self) -> CMNumber:
        n = self.norm()
        if n == 0:
            raise ZeroDivisionError("inverse of zero")
        return self.conjugate() / n

    def __eq__(self, other) -> bool:
        if isinstance(other, CMNumber):
            return (self.p, self.q, self.kind) == (other.p, other.q, other.kind)
        if isinstance(other, (int, Fraction)):
            return self.q == 0 and self.p == other
        return NotImplemented

    def __hash__(self) -> int:
        return hash((self.p, self.q, self.kind))

    def is_rational_integer(self) -> bool:
        return self.q == 0 and self.p.denominator == 1

    def matrix(self) -> tuple[tuple[int, int], tuple[int, int]]:
        """Integer lattice-coordinate matrix of multiplication by this element."""
        if self.p.denominator != 1 or self.q.denominator != 1:
            raise ValueError(f"{self} is not an algebraic integer in lattice form")
        p, q = int(self.p), int(self.q)
        if self.kind == "rational":
            return ((p, 0), (0, p))
        (a, b), (c, d) = TAU_MATRIX[self.kind]
        return ((p + q * a, q * b), (q * c, p + q * d))

    def __pow__(self, k: int) -> CMNumber:
        base = self if k >= 0 else self.inverse()
        out = CMNumber(1, 0, self.kind)
        for _ in range(abs(k)):
            out = out * base
        return out

    def __str__(self) -> str:
        if self.q == 0:
            return format_rational(self.p)
        sym = _TAU_SYMBOL[self.kind]
        qs = "" if self.q == 1 else "-" if self.q == -1 else format_rational(self.q) + "*"
        if self.p == 0:
            return f"{qs}{sym}"
        sign = "+" if self.q > 0 else "-"
        qa = "" if abs(self.q) == 1 else format_rational(abs(self.q)) + "*"
        return f"{format_rational(self.p)}{sign}{qa}{sym}"


def element_from_block(block, kind: str) -> CMNumber:
    """Inverse of :meth:`CMNumber.matrix`; raises if the block is not multiplication by an element."""
    (a, b), (c, d) = block
    if kind == "rational":
        candidate = CMNumber(a, 0, kind)
    else:
        candidate = CMNumber(a, c, kind)
    if candidate.matrix() != ((a, b), (c, d)):
        raise ValueError(f"block {block} does not commute with multiplication by tau ({kind})")
    return candidate


def one(kind: str) -> CMNumber:
    return CMNumber(1, 0, kind)


def zero(kind: str) -> CMNumber:
    return CMNumber(0, 0, kind)


def tau(kind: str) -> CMNumber:
    if kind == "rational":
        raise ValueError("rational field has no tau")
    return CMNumber(0, 1, kind)


def units(kind: str) -> list[CMNumber]:
    """Roots of unity of the field, in the order 1, tau, tau^2, ... of a generator."""
    if kind == "rational":
        return [one(kind), -one(kind)]
    gen = tau(kind)
    size = 4 if kind == "gauss" else 6
    return [gen**k for k in range(size)]


def unit_of_order(k: int, kind: str) -> CMNumber:
    """The standard primitive k-th root of unity: -1, zeta^2, i, zeta for k = 2, 3, 4, 6."""
    if k == 1:
        return one(kind)
    if k == 2:
        return -one(kind)
    if k == 4 and kind == "gauss":
        return tau(kind)
    if k in (3, 6) and kind == "eisenstein":
        return tau(kind) ** (6 // k)
    raise ValueError(f"no primitive {k}-th root of unity in the {kind} field")


def multiplicative_order(x: CMNumber) -> int | None:
    power = x
    for k in range(1, 13):
        if power == 1:
            return k
        power = power * x
    return None
