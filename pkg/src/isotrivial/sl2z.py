"""Exact arithmetic in SL(2,Z) and PSL(2,Z).

Elements are 2x2 integer matrices of determinant one.  PSL(2,Z) is the free
product Z/3 * Z/2 generated by the images of ALPHA (order 6 in SL(2,Z)) and
BETA (order 4), so every element has a unique reduced word in the tokens
``a``, ``a2``, ``b`` together with a sign.
"""

from __future__ import annotations

import itertools
import json
import math
import re
from dataclasses import dataclass
from typing import Iterator, Sequence

INFINITE = math.inf


@dataclass(frozen=True)
class UnimodularMatrix:
    a: int
    b: int
    c: int
    d: int

    def __post_init__(self):
        for entry in (self.a, self.b, self.c, self.d):
            if not isinstance(entry, int) or isinstance(entry, bool):
                raise TypeError(f"entries must be integers, got {entry!r}")
        if self.a * self.d - self.b * self.c != 1:
            raise ValueError(f"determinant of {self.rows()} is not 1")

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[int]]) -> UnimodularMatrix:
        (a, b), (c, d) = rows
        return cls(int(a), int(b), int(c), int(d))

    def rows(self) -> list[list[int]]:
        return [[self.a, self.b], [self.c, self.d]]

    def __mul__(self, other: UnimodularMatrix) -> UnimodularMatrix:
        if not isinstance(other, UnimodularMatrix):
            return NotImplemented
        return UnimodularMatrix(
            self.a * other.a + self.b * other.c,
            self.a * other.b + self.b * other.d,
            self.c * other.a + self.d * other.c,
            self.c * other.b + self.d * other.d,
        )

    def __neg__(self) -> UnimodularMatrix:
        return UnimodularMatrix(-self.a, -self.b, -self.c, -self.d)

    def __pow__(self, k: int) -> UnimodularMatrix:
        base = self if k >= 0 else self.inverse()
        result = IDENTITY
        for _ in range(abs(k)):
            result = result * base
        return result

    def inverse(self) -> UnimodularMatrix:
        return UnimodularMatrix(self.d, -self.b, -self.c, self.a)

    def conjugate_by(self, u: UnimodularMatrix) -> UnimodularMatrix:
        """Return ``u * self * u^-1``."""
        return u * self * u.inverse()

    @property
    def trace(self) -> int:
        return self.a + self.d

    def is_central(self) -> bool:
        return self == IDENTITY or self == MINUS_IDENTITY

    def __str__(self) -> str:
        return format_matrix(self)


IDENTITY = UnimodularMatrix(1, 0, 0, 1)
MINUS_IDENTITY = UnimodularMatrix(-1, 0, 0, -1)
ALPHA = UnimodularMatrix(1, 1, -1, 0)
BETA = UnimodularMatrix(0, 1, -1, 0)


def format_matrix(m: UnimodularMatrix) -> str:
    return f"[[{m.a},{m.b}],[{m.c},{m.d}]]"


def parse_matrix(text: str) -> UnimodularMatrix:
    """Parse ``"[[a,b],[c,d]]"``; raises ValueError on malformed input."""
    try:
        rows = json.loads(text)
        if len(rows) != 2 or any(len(r) != 2 for r in rows):
            raise ValueError
        if not all(isinstance(x, int) for r in rows for x in r):
            raise ValueError
    except (ValueError, TypeError) as exc:
        raise ValueError(f"cannot parse matrix {text!r}; expected [[a,b],[c,d]]") from exc
    return UnimodularMatrix.from_rows(rows)


def order(m: UnimodularMatrix) -> int | float:
    """Least k >= 1 with m^k = I, or INFINITE.

    Elliptic elements (|trace| < 2) have order 3, 4 or 6; the only central
    elements are I and -I.  Everything else (|trace| >= 2, not central) is
    parabolic or hyperbolic and has infinite order.
    """
    if m == IDENTITY:
        return 1
    if m == MINUS_IDENTITY:
        return 2
    if abs(m.trace) >= 2:
        return INFINITE
    power = m
    for k in range(2, 7):
        power = power * m
        if power == IDENTITY:
            return k
    raise AssertionError(f"elliptic element {m} has no order dividing 6")  # pragma: no cover


# -- words -------------------------------------------------------------------

TOKENS = ("a", "a2", "b")
_TOKEN_MATRIX = {"a": ALPHA, "a2": ALPHA * ALPHA, "b": BETA}
# (generator, exponent) pairs; ``a`` lives in Z/3, ``b`` in Z/2 modulo -I
_TOKEN_POWER = {"a": ("a", 1), "a2": ("a", 2), "b": ("b", 1)}
_MODULUS = {"a": 3, "b": 2}


@dataclass(frozen=True)
class ModularWord:
    sign: int
    letters: tuple[str, ...]

    def __post_init__(self):
        if self.sign not in (1, -1):
            raise ValueError("sign must be +1 or -1")
        for tok in self.letters:
            if tok not in TOKENS:
                raise ValueError(f"unknown token {tok!r}")
        for left, right in zip(self.letters, self.letters[1:]):
            if _TOKEN_POWER[left][0] == _TOKEN_POWER[right][0]:
                raise ValueError(f"word {self.letters} is not reduced")

    def __len__(self) -> int:
        return len(self.letters)

    def evaluate(self) -> UnimodularMatrix:
        result = IDENTITY if self.sign == 1 else MINUS_IDENTITY
        for tok in self.letters:
            result = result * _TOKEN_MATRIX[tok]
        return result

    def inverse(self) -> ModularWord:
        return normal_form(self.evaluate().inverse())

    def __str__(self) -> str:
        return ("-" if self.sign < 0 else "") + "".join(self.letters)

    def display(self) -> str:
        body = "".join(self.letters) or "(empty)"
        return ("-" if self.sign < 0 else "+") + body


_WORD_RE = re.compile(r"a2|a|b")


def parse_word(text: str) -> ModularWord:
    """Parse strings such as ``"-ab"`` or ``"a2ba"``; tokens need not be reduced."""
    text = text.strip().replace(" ", "")
    sign = 1
    if text[:1] in "+-" and text:
        sign = -1 if text[0] == "-" else 1
        text = text[1:]
    if text in ("", "(empty)"):
        return ModularWord(sign, ())
    pos = 0
    tokens = []
    while pos < len(text):
        match = _WORD_RE.match(text, pos)
        if match is None:
            raise ValueError(f"cannot parse word {text!r} at position {pos}")
        tokens.append(match.group())
        pos = match.end()
    m = IDENTITY if sign == 1 else MINUS_IDENTITY
    for tok in tokens:
        m = m * _TOKEN_MATRIX[tok]
    return normal_form(m)


def _reduce_tokens(tokens: Sequence[str]) -> tuple[str, ...]:
    """Free reduction in Z/3 * Z/2 (signs are ignored here)."""
    stack: list[tuple[str, int]] = []
    for tok in tokens:
        gen, exp = _TOKEN_POWER[tok]
        if stack and stack[-1][0] == gen:
            total = (stack[-1][1] + exp) % _MODULUS[gen]
            stack.pop()
            if total:
                stack.append((gen, total))
        else:
            stack.append((gen, exp))
    return tuple("a" if (g, e) == ("a", 1) else "a2" if g == "a" else "b" for g, e in stack)


# T = [[1,1],[0,1]] equals -BETA*ALPHA^2, so in PSL(2,Z) T -> b a2 and T^-1 -> a b.
_T_TOKENS = ("b", "a2")
_T_INV_TOKENS = ("a", "b")


def normal_form(m: UnimodularMatrix) -> ModularWord:
    """The unique reduced signed word evaluating to ``m``.

    The matrix is peeled from the left with the Euclidean algorithm on its
    first column (m = T^q * BETA * m'), the resulting token string is freely
    reduced in Z/3 * Z/2, and the sign is read off by evaluating.
    """
    tokens: list[str] = []
    a, b, c, d = m.a, m.b, m.c, m.d
    while c != 0:
        q = a // c
        tokens.extend((_T_TOKENS if q > 0 else _T_INV_TOKENS) * abs(q))
        a, b = a - q * c, b - q * d
        # [[a,b],[c,d]] = BETA * [[-c,-d],[a,b]]
        tokens.append("b")
        a, b, c, d = -c, -d, a, b
    # now m' = +-T^b with a = d = +-1
    k = b * a
    tokens.extend((_T_TOKENS if k > 0 else _T_INV_TOKENS) * abs(k))
    letters = _reduce_tokens(tokens)
    word = ModularWord(1, letters)
    value = word.evaluate()
    if value == m:
        return word
    if value == -m:
        return ModularWord(-1, letters)
    raise AssertionError("normal form failed to round-trip")  # pragma: no cover


def reduced_words(max_length: int) -> Iterator[ModularWord]:
    """All positive reduced words with at most ``max_length`` tokens.

    Ordered by length, then lexicographically by token; this ordering fixes
    which witness is reported by the searches below.
    """
    yield ModularWord(1, ())
    for length in range(1, max_length + 1):
        for first in TOKENS:
            for rest in _continuations(first, length - 1):
                yield ModularWord(1, (first, *rest))


def _continuations(prev: str, remaining: int) -> Iterator[tuple[str, ...]]:
    if remaining == 0:
        yield ()
        return
    options = ("b",) if prev != "b" else ("a", "a2")
    for tok in options:
        for rest in _continuations(tok, remaining - 1):
            yield (tok, *rest)


def count_reduced_words(max_length: int) -> int:
    return sum(1 for _ in reduced_words(max_length))


# -- conjugacy ---------------------------------------------------------------


@dataclass(frozen=True)
class ConjugacyResult:
    conjugate: bool
    witness: ModularWord | None = None
    search_bound: int = 0

    def __bool__(self) -> bool:
        return self.conjugate


def is_conjugate(m1: UnimodularMatrix, m2: UnimodularMatrix, search_bound: int) -> ConjugacyResult:
    """Search for u with ``u m1 u^-1 = m2`` among reduced words of length <= bound.

    Only finite-order inputs are accepted.  Matching order and trace is
    necessary but not sufficient: ALPHA and ALPHA^-1 share both and lie in
    different SL(2,Z) classes, so for them every bound answers False.
    """
    for m in (m1, m2):
        if order(m) == INFINITE:
            raise ValueError(f"{m} has infinite order; conjugacy search is only offered for elliptic elements")
    if search_bound < 0:
        raise ValueError("search_bound must be nonnegative")
    if m1.trace != m2.trace:
        return ConjugacyResult(False, None, search_bound)
    for u in reduced_words(search_bound):
        if m1.conjugate_by(u.evaluate()) == m2:
            return ConjugacyResult(True, u, search_bound)
    return ConjugacyResult(False, None, search_bound)


@dataclass(frozen=True)
class RigiditySolution:
    conjugators: tuple[ModularWord, ...]
    conjugates: tuple[UnimodularMatrix, ...]


def conjugacy_orbit(m: UnimodularMatrix, max_word_length: int) -> dict[UnimodularMatrix, ModularWord]:
    """Distinct conjugates ``u m u^-1`` over reduced u, each with its first witness."""
    orbit: dict[UnimodularMatrix, ModularWord] = {}
    for u in reduced_words(max_word_length):
        orbit.setdefault(m.conjugate_by(u.evaluate()), u)
    return orbit


def rigidity_search(classes: Sequence[UnimodularMatrix], max_word_length: int) -> list[RigiditySolution]:
    """All ways to pick conjugates of ``classes`` with trivial ordered product.

    The first conjugator is pinned to the identity: simultaneous conjugation
    of a solution is always another solution, so leaving it free only
    reproduces the same configuration in a different basis.  The remaining
    conjugators range over reduced words of length <= ``max_word_length``.
    Solutions are distinct tuples of conjugates (so u and -u, or u and
    u times a centraliser element, are not reported twice); the witness for
    each is the first conjugator tuple in enumeration order.  The bound is a
    search horizon, not a proof of completeness.
    """
    if not classes:
        raise ValueError("classes must be nonempty")
    for m in classes:
        if order(m) == INFINITE:
            raise ValueError(f"{m} has infinite order")
    k = len(classes)
    identity_word = ModularWord(1, ())
    if k == 1:
        return [RigiditySolution((identity_word,), (classes[0],))] if classes[0] == IDENTITY else []

    orbits = [conjugacy_orbit(m, max_word_length) for m in classes[1:]]
    last = orbits[-1]
    solutions = []
    for middle in itertools.product(*(list(o.items()) for o in orbits[:-1])):
        prefix = classes[0]
        for conj, _ in middle:
            prefix = prefix * conj
        needed = prefix.inverse()
        if needed in last:
            conjugates = (classes[0], *(c for c, _ in middle), needed)
            words = (identity_word, *(w for _, w in middle), last[needed])
            solutions.append(RigiditySolution(words, conjugates))
    return solutions


def generated_group_order(generators: Sequence[UnimodularMatrix], cap: int = 1000) -> int | float:
    """Order of the subgroup generated by ``generators`` (INFINITE past ``cap``)."""
    seen = {IDENTITY}
    frontier = [IDENTITY]
    while frontier:
        nxt = []
        for g in frontier:
            for h in generators:
                p = g * h
                if p not in seen:
                    seen.add(p)
                    nxt.append(p)
                    if len(seen) > cap:
                        return INFINITE
        frontier = nxt
    return len(seen)
