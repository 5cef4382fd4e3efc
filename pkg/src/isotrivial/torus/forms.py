"""Invariant holomorphic forms and the holomorphic symplectic form."""

from __future__ import annotations

from typing import Sequence

import numpy as np

from .action import FiniteActionGroup, TorusAutomorphism
from .cmfield import CMNumber


def _matmul(a, b, kind):
    n = len(a)
    zero = CMNumber(0, 0, kind)
    out = []
    for i in range(n):
        row = []
        for j in range(len(b[0])):
            acc = zero
            for k in range(len(b)):
                if a[i][k].p or a[i][k].q:
                    acc = acc + a[i][k] * b[k][j]
            row.append(acc)
        out.append(row)
    return out


def _pair_matrix(a: Sequence[Sequence[CMNumber]]) -> list[list[tuple[int, int]]]:
    return [[(int(x.p), int(x.q)) for x in row] for row in a]


def _linear_pairs(g: TorusAutomorphism) -> list[list[tuple[int, int]]]:
    # the block of p + q*tau has first column (p, q); see CMNumber.matrix
    m = g.linear_array
    d = g.complex_dimension
    rational = g.kind == "rational"
    return [
        [(int(m[2 * r, 2 * c]), 0 if rational else int(m[2 * r + 1, 2 * c])) for c in range(d)]
        for r in range(d)
    ]


def _charpoly_pairs(a: list[list[tuple[int, int]]], eisenstein: bool) -> list[tuple[int, int]]:
    """Faddeev-LeVerrier on entries p + q*tau stored as integer pairs.

    Every coefficient is an algebraic integer, so the divisions by k are exact.
    """
    d = len(a)

    def mul(x, y):
        p = x[0] * y[0] - x[1] * y[1]
        q = x[0] * y[1] + x[1] * y[0]
        if eisenstein:
            q += x[1] * y[1]
        return p, q

    def matmul(x, y):
        out = [[(0, 0)] * d for _ in range(d)]
        for i in range(d):
            row = out[i]
            for k in range(d):
                xik = x[i][k]
                if xik == (0, 0):
                    continue
                yk = y[k]
                for j in range(d):
                    ykj = yk[j]
                    if ykj != (0, 0):
                        pr = mul(xik, ykj)
                        row[j] = (row[j][0] + pr[0], row[j][1] + pr[1])
        return out

    coeffs = [(0, 0)] * (d + 1)
    coeffs[d] = (1, 0)
    m = [[(0, 0)] * d for _ in range(d)]
    for k in range(1, d + 1):
        # M_k = A M_{k-1} + c_{d-k+1} I ;  c_{d-k} = -tr(A M_k) / k
        m = matmul(a, m)
        c = coeffs[d - k + 1]
        for i in range(d):
            m[i][i] = (m[i][i][0] + c[0], m[i][i][1] + c[1])
        am = matmul(a, m)
        tp = sum(am[i][i][0] for i in range(d))
        tq = sum(am[i][i][1] for i in range(d))
        if tp % k or tq % k:
            raise ArithmeticError("characteristic polynomial is not integral")
        coeffs[d - k] = (-tp // k, -tq // k)
    return coeffs


def characteristic_coefficients(a: Sequence[Sequence[CMNumber]], kind: str) -> list[CMNumber]:
    """Coefficients c_0..c_d of det(t I - A) = sum c_k t^k."""
    return [CMNumber(p, q, kind) for p, q in _charpoly_pairs(_pair_matrix(a), kind == "eisenstein")]


def exterior_traces(a: Sequence[Sequence[CMNumber]], kind: str) -> list[CMNumber]:
    """tr(Lambda^p A) for p = 0..d: (-1)^p times the coefficient of t^{d-p}."""
    d = len(a)
    coeffs = characteristic_coefficients(a, kind)
    return [coeffs[d - p] * (-1) ** p for p in range(d + 1)]


def invariant_form_dimensions(group: FiniteActionGroup) -> list[int]:
    """Dimensions of group-invariant holomorphic p-forms on the torus, p = 0..d.

    Averages tr(Lambda^p A_g) over the group.  Translations act trivially on
    forms, so elements sharing a linear part are computed once.
    """
    if "form_dimensions" in group.cache:
        return group.cache["form_dimensions"]
    d = group.complex_dimension
    eis = group.kind == "eisenstein"
    per_linear: dict[bytes, list[tuple[int, int]]] = {}
    totals = [[0, 0] for _ in range(d + 1)]
    for g in group.elements:
        key = g.linear_array.tobytes()
        if key not in per_linear:
            per_linear[key] = _charpoly_pairs(_linear_pairs(g), eis)
        coeffs = per_linear[key]
        for p in range(d + 1):
            sign = -1 if p % 2 else 1
            totals[p][0] += sign * coeffs[d - p][0]
            totals[p][1] += sign * coeffs[d - p][1]
    dims = []
    for p, (tp, tq) in enumerate(totals):
        if tq != 0 or tp % group.order or tp < 0:
            raise ArithmeticError(
                f"average trace of Lambda^{p} is {tp}/{group.order} + {tq}/{group.order} tau, not a nonnegative integer"
            )
        dims.append(tp // group.order)
    group.cache["form_dimensions"] = dims
    return dims


def invariant_form_dimension(group: FiniteActionGroup, p: int) -> int:
    d = group.complex_dimension
    if not 0 <= p <= d:
        raise ValueError(f"p must lie in [0, {d}]")
    return invariant_form_dimensions(group)[p]


def hodge_numbers(group: FiniteActionGroup) -> list[int]:
    """h^{p,0} of the quotient for p = 0..d."""
    return list(invariant_form_dimensions(group))


def symplectic_matrix(d: int) -> list[list[int]]:
    """dx_1^dy_1 + dx_2^dy_2 + ... as an antisymmetric matrix on coordinates x_1, y_1, ..."""
    if d % 2:
        raise ValueError("symplectic form needs even complex dimension")
    j = [[0] * d for _ in range(d)]
    for i in range(0, d, 2):
        j[i][i + 1] = 1
        j[i + 1][i] = -1
    return j


def preserves_form(g: TorusAutomorphism) -> bool:
    a = g.holomorphic_matrix()
    d = len(a)
    kind = g.kind
    j = [[CMNumber(x, 0, kind) for x in row] for row in symplectic_matrix(d)]
    at = [list(r) for r in zip(*a)]
    return _matmul(_matmul(at, j, kind), a, kind) == j


def preserves_symplectic(group: FiniteActionGroup) -> bool:
    """True iff every generator satisfies A^T J A = J for the standard pairing."""
    if group.complex_dimension % 2:
        return False
    return all(preserves_form(g) for g in group.generators)


def top_power_invariant(group: FiniteActionGroup) -> bool:
    """Whether omega^{d/2} (a multiple of the volume form) is invariant: det A = 1 for all g."""
    d = group.complex_dimension
    for g in group.generators:
        if exterior_traces(g.holomorphic_matrix(), g.kind)[d] != 1:
            return False
    return True


def _project(g: TorusAutomorphism, coords: list[int]) -> TorusAutomorphism:
    lattice = [2 * c + off for c in coords for off in (0, 1)]
    mat = g.linear_array
    others = [i for i in range(mat.shape[0]) if i not in lattice]
    if np.any(mat[np.ix_(lattice, others)]):
        raise ValueError("projection is not equivariant: chosen coordinates depend on the others")
    sub = mat[np.ix_(lattice, lattice)].tolist()
    trans = [g.translation[i] for i in lattice]
    return TorusAutomorphism(sub, trans, g.kind, g.name)


def base_action(group: FiniteActionGroup, coords: str | Sequence[int] = "even") -> FiniteActionGroup:
    """Induced action on the factor of the chosen complex coordinates.

    ``"even"`` means y_1, y_2, ... (the second, fourth, ... copies of E),
    the base of the Lagrangian fibration.
    """
    d = group.complex_dimension
    if coords == "even":
        chosen = list(range(1, d, 2))
    elif coords == "odd":
        chosen = list(range(0, d, 2))
    else:
        chosen = list(coords)
    gens = [_project(g, chosen) for g in group.generators]
    return FiniteActionGroup(gens, f"{group.name} on base" if group.name else "base")

