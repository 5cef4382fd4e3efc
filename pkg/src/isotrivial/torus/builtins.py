"""The group actions on products of CM elliptic curves used in the examples.

Complex coordinates on E^{2n} are ordered x_1, y_1, x_2, y_2, ...; "pair i"
means (x_i, y_i).
"""

from __future__ import annotations

from fractions import Fraction
from typing import Sequence

from .action import DEFAULT_ORDER_CAP, FiniteActionGroup, TorusAutomorphism, from_holomorphic
from .cmfield import CMNumber, check_kind, unit_of_order

BUILTIN_NAMES = ("cyclic-surface", "hilbert", "translated", "matsushita")
TWO_TORSION = ((Fraction(1, 2), Fraction(0)), (Fraction(0), Fraction(1, 2)), (Fraction(1, 2), Fraction(1, 2)))


def field_for(k: int, kind: str | None = None) -> str:
    """Field forced by a cyclic group of order k (k = 2 works over any field)."""
    if k not in (2, 3, 4, 6):
        raise ValueError(f"cyclic order must be 2, 3, 4 or 6, not {k}")
    forced = {3: "eisenstein", 6: "eisenstein", 4: "gauss"}.get(k)
    if kind is None:
        return forced or "gauss"
    check_kind(kind)
    if forced and kind != forced:
        raise ValueError(f"order {k} needs the {forced} field, not {kind}")
    return kind


def _pair_diagonal(n_pairs: int, kind: str, entries: dict[int, CMNumber]) -> list[list[CMNumber]]:
    """diag(a, a^-1) on each listed pair, identity elsewhere."""
    d = 2 * n_pairs
    one = CMNumber(1, 0, kind)
    mat = [[CMNumber(0, 0, kind) for _ in range(d)] for _ in range(d)]
    for i in range(d):
        mat[i][i] = one
    for pair, a in entries.items():
        mat[2 * pair][2 * pair] = a
        mat[2 * pair + 1][2 * pair + 1] = a.inverse()
    return mat


def _pair_permutation(n_pairs: int, kind: str, perm: Sequence[int]) -> list[list[CMNumber]]:
    """Move the coordinates of pair j to pair perm[j]."""
    d = 2 * n_pairs
    mat = [[CMNumber(0, 0, kind) for _ in range(d)] for _ in range(d)]
    for j, target in enumerate(perm):
        for off in (0, 1):
            mat[2 * target + off][2 * j + off] = CMNumber(1, 0, kind)
    return mat


def _transposition(n: int, i: int, j: int) -> list[int]:
    perm = list(range(n))
    perm[i], perm[j] = j, i
    return perm


def cyclic_surface(k: int, kind: str | None = None, order_cap: int = DEFAULT_ORDER_CAP) -> FiniteActionGroup:
    """Z/k acting on E x E by diag(a, a^-1), a = -1, zeta^2, i, zeta for k = 2, 3, 4, 6."""
    kind = field_for(k, kind)
    a = unit_of_order(k, kind)
    gen = from_holomorphic(_pair_diagonal(1, kind, {0: a}), kind, name="g")
    return FiniteActionGroup([gen], f"cyclic-surface(k={k})", order_cap)


def hilbert(k: int, n: int, kind: str | None = None, order_cap: int = DEFAULT_ORDER_CAP) -> FiniteActionGroup:
    """G^n x| S_n on E^{2n}: a acting on pair i, plus adjacent transpositions of pairs."""
    kind = field_for(k, kind)
    a = unit_of_order(k, kind)
    gens = [from_holomorphic(_pair_diagonal(n, kind, {i: a}), kind, name=f"gamma{i + 1}") for i in range(n)]
    gens += _adjacent_transpositions(n, kind)
    return FiniteActionGroup(gens, f"hilbert(k={k},n={n})", order_cap)


def _adjacent_transpositions(n: int, kind: str) -> list[TorusAutomorphism]:
    return [
        from_holomorphic(_pair_permutation(n, kind, _transposition(n, i, i + 1)), kind, name=f"s{i + 1}{i + 2}")
        for i in range(n - 1)
    ]


def translated(n: int, torsion: Sequence = TWO_TORSION[0], kind: str = "gauss",
               order_cap: int = DEFAULT_ORDER_CAP) -> FiniteActionGroup:
    """(Z/2)^n x| S_n on E^{2n}; gamma_i negates pair i and shifts every other x_j by a 2-torsion point."""
    check_kind(kind)
    tp, tq = (Fraction(x) if not isinstance(x, str) else Fraction(x) for x in torsion)
    if (2 * tp).denominator != 1 or (2 * tq).denominator != 1 or (tp % 1 == 0 and tq % 1 == 0):
        raise ValueError(f"({tp}, {tq}) is not a nonzero 2-torsion point")
    minus = CMNumber(-1, 0, kind)
    gens = []
    for i in range(n):
        shift = [Fraction(0)] * (4 * n)
        for j in range(n):
            if j != i:
                # x_j is complex coordinate 2j, lattice coordinates 4j, 4j + 1
                shift[4 * j], shift[4 * j + 1] = tp, tq
        gens.append(from_holomorphic(_pair_diagonal(n, kind, {i: minus}), kind, shift, name=f"gamma{i + 1}"))
    gens += _adjacent_transpositions(n, kind)
    return FiniteActionGroup(gens, f"translated(n={n})", order_cap)


def matsushita(k: int, n: int, kind: str | None = None, order_cap: int = DEFAULT_ORDER_CAP) -> FiniteActionGroup:
    """{(a_1..a_n) in G^n : a_1...a_n = 1} x| A_n on E^{2n}."""
    if n < 2:
        raise ValueError("need n >= 2")
    kind = field_for(k, kind)
    a = unit_of_order(k, kind)
    gens = [
        from_holomorphic(_pair_diagonal(n, kind, {i: a, i + 1: a.inverse()}), kind, name=f"h{i + 1}")
        for i in range(n - 1)
    ]
    for j in range(2, n):
        # 3-cycle (1 2 j+1) on pairs
        perm = list(range(n))
        perm[0], perm[1], perm[j] = 1, j, 0
        gens.append(from_holomorphic(_pair_permutation(n, kind, perm), kind, name=f"c12{j + 1}"))
    return FiniteActionGroup(gens, f"matsushita(k={k},n={n})", order_cap)


def builtin_action(name: str, *, k: int | None = None, n: int | None = None, torsion: Sequence | None = None,
                   kind: str | None = None, order_cap: int = DEFAULT_ORDER_CAP) -> FiniteActionGroup:
    if name == "cyclic-surface":
        return cyclic_surface(_need(k, "k"), kind, order_cap)
    if name == "hilbert":
        return hilbert(_need(k, "k"), _need(n, "n"), kind, order_cap)
    if name == "translated":
        return translated(_need(n, "n"), torsion or TWO_TORSION[0], kind or "gauss", order_cap)
    if name == "matsushita":
        return matsushita(_need(k, "k"), _need(n, "n"), kind, order_cap)
    raise ValueError(f"unknown builtin action {name!r}; expected one of {BUILTIN_NAMES}")


def _need(value, label):
    if value is None:
        raise ValueError(f"parameter {label} is required")
    return value
