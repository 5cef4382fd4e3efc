"""Affine automorphisms of E^d in lattice coordinates and their fixed loci.

A point of E^d = (C/<1, tau>)^d is a vector of 2d rationals modulo 1; the
complex coordinate z_k is x_{2k} + x_{2k+1} * tau.  An automorphism is
x -> M x + t (mod Z^{2d}) with M an integer matrix of determinant +-1
built from 2x2 blocks that commute with multiplication by tau.
"""

from __future__ import annotations

import itertools
import json
import math
from collections import deque
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from typing import Iterator, Sequence

import numpy as np

from ..polynomial import format_rational, parse_rational
from .cmfield import CMNumber, check_kind, element_from_block
from .lattice import determinant, identity, smith_normal_form

DEFAULT_ORDER_CAP = 10_000


class GroupOrderExceeded(RuntimeError):
    pass


def _frac(x) -> Fraction:
    if isinstance(x, str):
        return parse_rational(x)
    return Fraction(x)


@dataclass(frozen=True)
class TorusPoint:
    coords: tuple[Fraction, ...]

    def __init__(self, coords: Sequence):
        object.__setattr__(self, "coords", tuple(_frac(c) % 1 for c in coords))

    @classmethod
    def from_complex(cls, values: Sequence) -> TorusPoint:
        """One entry per complex coordinate: a rational p (meaning p + 0*tau) or a CMNumber."""
        coords = []
        for v in values:
            if isinstance(v, CMNumber):
                coords += [v.p, v.q]
            else:
                coords += [_frac(v), Fraction(0)]
        return cls(coords)

    @property
    def complex_dimension(self) -> int:
        return len(self.coords) // 2

    def __str__(self) -> str:
        pairs = [
            f"{format_rational(self.coords[i])},{format_rational(self.coords[i + 1])}"
            for i in range(0, len(self.coords), 2)
        ]
        return "(" + "; ".join(pairs) + ")"

    def as_list(self) -> list[str]:
        return [format_rational(c) for c in self.coords]


def splitting_test(b: Sequence) -> bool:
    """The torus C^2/<(1,0),(s,0),(0,1),(b,tau)> is F x E iff b lies in <1, s>.

    ``b`` is given in lattice coordinates of the fibre curve F = C/<1, s>.
    """
    return all(_frac(x).denominator == 1 for x in b)


class TorusAutomorphism:
    """x -> M x + t on (R/Z)^{2d}; immutable and hashable by value."""

    __slots__ = ("_mat", "_num", "_den", "kind", "name", "_key")

    def __init__(self, linear: Sequence[Sequence[int]], translation: Sequence | None = None,
                 kind: str = "gauss", name: str = ""):
        check_kind(kind)
        mat = np.array([[int(x) for x in row] for row in linear], dtype=np.int64)
        n = mat.shape[0]
        if mat.shape != (n, n) or n % 2:
            raise ValueError("linear part must be a square matrix of even size")
        trans = [Fraction(0)] * n if translation is None else [_frac(x) for x in translation]
        if len(trans) != n:
            raise ValueError("translation length does not match the matrix")
        if abs(determinant(mat.tolist())) != 1:
            raise ValueError("linear part is not invertible over the integers")
        for r in range(0, n, 2):
            for c in range(0, n, 2):
                block = ((int(mat[r, c]), int(mat[r, c + 1])), (int(mat[r + 1, c]), int(mat[r + 1, c + 1])))
                element_from_block(block, kind)
        den = math.lcm(*(x.denominator for x in trans))
        num = np.array([int(x * den) for x in trans], dtype=np.int64)
        self._init(mat, num, den, kind, name)

    def _init(self, mat, num, den, kind, name):
        num = num % den
        g = math.gcd(den, *(int(x) for x in num))
        if g > 1:
            den //= g
            num = num // g
        mat.setflags(write=False)
        num.setflags(write=False)
        self._mat = mat
        self._num = num
        self._den = int(den)
        self.kind = kind
        self.name = name
        self._key = (mat.tobytes(), mat.shape[0], num.tobytes(), self._den, kind)

    @classmethod
    def _raw(cls, mat, num, den, kind, name="") -> TorusAutomorphism:
        obj = cls.__new__(cls)
        obj._init(mat, num, den, kind, name)
        return obj

    @property
    def real_dimension(self) -> int:
        return self._mat.shape[0]

    @property
    def complex_dimension(self) -> int:
        return self._mat.shape[0] // 2

    @property
    def linear(self) -> tuple[tuple[int, ...], ...]:
        return tuple(tuple(int(x) for x in row) for row in self._mat)

    @property
    def linear_array(self) -> np.ndarray:
        return self._mat

    @property
    def translation(self) -> tuple[Fraction, ...]:
        return tuple(Fraction(int(x), self._den) for x in self._num)

    @property
    def translation_denominator(self) -> int:
        return self._den

    def __eq__(self, other) -> bool:
        return isinstance(other, TorusAutomorphism) and self._key == other._key

    def __hash__(self) -> int:
        return hash(self._key)

    def __mul__(self, other: TorusAutomorphism) -> TorusAutomorphism:
        """Composition: (self * other)(x) = self(other(x))."""
        den = math.lcm(self._den, other._den)
        num = self._mat @ (other._num * (den // other._den)) + self._num * (den // self._den)
        return TorusAutomorphism._raw(self._mat @ other._mat, num, den, self.kind)

    def __call__(self, point: TorusPoint) -> TorusPoint:
        x = point.coords
        out = []
        for row, t in zip(self._mat, self.translation):
            out.append(sum(int(a) * b for a, b in zip(row, x)) + t)
        return TorusPoint(out)

    def apply_array(self, points: np.ndarray, den: int) -> np.ndarray:
        """Act on rows of integer coordinates with common denominator ``den``.

        ``den`` must be a multiple of the translation denominator.
        """
        shift = self._num * (den // self._den)
        return (points @ self._mat.T + shift) % den

    def is_identity(self) -> bool:
        return self._den == 1 and np.array_equal(self._mat, np.eye(self._mat.shape[0], dtype=np.int64))

    def holomorphic_matrix(self) -> list[list[CMNumber]]:
        """The d x d matrix over the CM field by which the map acts on complex coordinates."""
        m = self._mat
        d = self.complex_dimension
        return [
            [
                element_from_block(
                    ((int(m[2 * r, 2 * c]), int(m[2 * r, 2 * c + 1])),
                     (int(m[2 * r + 1, 2 * c]), int(m[2 * r + 1, 2 * c + 1]))),
                    self.kind,
                )
                for c in range(d)
            ]
            for r in range(d)
        ]

    def order(self, cap: int = 1000) -> int:
        power = self
        for k in range(1, cap + 1):
            if power.is_identity():
                return k
            power = power * self
        raise GroupOrderExceeded(f"element order exceeds {cap}")

    def as_dict(self) -> dict:
        out = {"matrix": [list(r) for r in self.linear], "translation": [format_rational(t) for t in self.translation]}
        if self.name:
            out = {"name": self.name, **out}
        return out

    def __repr__(self) -> str:
        label = self.name or "TorusAutomorphism"
        return f"<{label} dim={self.complex_dimension} {self.kind}>"


def from_holomorphic(matrix: Sequence[Sequence[CMNumber | int]], kind: str,
                     translation: Sequence | None = None, name: str = "") -> TorusAutomorphism:
    """Build x -> A z + t from a d x d matrix over the CM field."""
    d = len(matrix)
    lin = [[0] * (2 * d) for _ in range(2 * d)]
    for r, row in enumerate(matrix):
        for c, entry in enumerate(row):
            el = entry if isinstance(entry, CMNumber) else CMNumber(entry, 0, kind)
            (a, b), (cc, dd) = el.matrix()
            lin[2 * r][2 * c], lin[2 * r][2 * c + 1] = a, b
            lin[2 * r + 1][2 * c], lin[2 * r + 1][2 * c + 1] = cc, dd
    return TorusAutomorphism(lin, translation, kind, name)


# -- fixed loci ----------------------------------------------------------------


@dataclass(frozen=True)
class FixedComponent:
    dimension: int  # complex
    sample: TorusPoint
    directions: tuple[tuple[int, ...], ...]


class FixedLocus:
    """Solutions of (M - I) x = -t (mod Z^{2d}), via the Smith form U (M - I) V = D.

    With y = V^-1 x the system decouples into d_i y_i = s_i (mod 1),
    s = -U t.  Coordinates with d_i != 0 take |d_i| values each; the others
    are free and span the tangent directions (columns of V).
    """

    def __init__(self, g: TorusAutomorphism):
        self.automorphism = g
        n = g.real_dimension
        mi = (g.linear_array - np.eye(n, dtype=np.int64)).tolist()
        diag_m, u, v = smith_normal_form(mi)
        self._v = v
        diag = [diag_m[i][i] for i in range(n)]
        rank = sum(1 for x in diag if x)
        t = g.translation
        s = [-sum(u[i][j] * t[j] for j in range(n)) for i in range(n)]
        self.solvable = all(s[i].denominator == 1 for i in range(rank, n))
        self._moduli = tuple(diag[:rank])
        self._offsets = tuple(s[:rank])
        self._rank = rank
        self.real_dimension = n - rank if self.solvable else -1
        self.dimension = (n - rank) // 2 if self.solvable else -1
        self.directions = tuple(tuple(v[r][c] for r in range(n)) for c in range(rank, n))
        self.component_count = math.prod(self._moduli) if self.solvable else 0

    @property
    def is_isolated(self) -> bool:
        return self.solvable and self.dimension == 0

    def _discrete_values(self) -> Iterator[tuple[Fraction, ...]]:
        ranges = [
            [(off + k) / d for k in range(d)] for d, off in zip(self._moduli, self._offsets)
        ]
        yield from itertools.product(*ranges)

    def samples(self) -> Iterator[TorusPoint]:
        """One point per component (the one with free coordinates zero), deterministic order."""
        if not self.solvable:
            return
        n = self.automorphism.real_dimension
        free = [Fraction(0)] * (n - self._rank)
        for ys in self._discrete_values():
            y = list(ys) + free
            yield TorusPoint([sum(self._v[r][c] * y[c] for c in range(n)) for r in range(n)])

    @cached_property
    def isolated_points(self) -> list[TorusPoint]:
        return list(self.samples()) if self.is_isolated else []

    @property
    def components(self) -> list[FixedComponent]:
        if not self.solvable or self.dimension == 0:
            return []
        return [FixedComponent(self.dimension, p, self.directions) for p in self.samples()]

    def sample_array(self) -> tuple[int, np.ndarray]:
        """(den, X): one sample per component as integer rows over the common denominator."""
        n = self.automorphism.real_dimension
        if not self.solvable:
            return 1, np.zeros((0, n), dtype=np.int64)
        den = math.lcm(self.automorphism.translation_denominator,
                       *(d * off.denominator for d, off in zip(self._moduli, self._offsets)))
        cols = []
        for d, off in zip(self._moduli, self._offsets):
            step = den // d
            base = int(off * den) // d
            cols.append(np.array([base + k * step for k in range(d)], dtype=np.int64))
        if cols:
            grid = np.stack(np.meshgrid(*cols, indexing="ij"), axis=-1).reshape(-1, len(cols))
        else:
            grid = np.zeros((1, 0), dtype=np.int64)
        y = np.concatenate([grid, np.zeros((grid.shape[0], n - self._rank), dtype=np.int64)], axis=1)
        v = np.array(self._v, dtype=np.int64)
        return den, (y @ v.T) % den

    def contains(self, point: TorusPoint) -> bool:
        return self.automorphism(point) == point

    def summary(self) -> dict:
        out = {
            "solvable": self.solvable,
            "dimension": self.dimension if self.solvable else None,
            "component_count": self.component_count,
        }
        if self.solvable and self.dimension > 0:
            out["directions"] = [list(v) for v in self.directions]
        return out


def fixed_locus(g: TorusAutomorphism) -> FixedLocus:
    return FixedLocus(g)


# -- groups --------------------------------------------------------------------


class FiniteActionGroup:
    """Closure of a list of generators under composition (breadth first).

    ``elements[0]`` is the identity; every element carries the generator word
    that first reached it (``words[i]``, rightmost letter applied first).
    """

    def __init__(self, generators: Sequence[TorusAutomorphism], name: str = "",
                 order_cap: int = DEFAULT_ORDER_CAP):
        if not generators:
            raise ValueError("need at least one generator")
        kinds = {g.kind for g in generators}
        dims = {g.real_dimension for g in generators}
        if len(kinds) != 1 or len(dims) != 1:
            raise ValueError("generators must share field and dimension")
        self.generators = list(generators)
        self.name = name
        self.cache: dict = {}
        self.kind = kinds.pop()
        n = dims.pop()
        ident = TorusAutomorphism._raw(np.eye(n, dtype=np.int64), np.zeros(n, dtype=np.int64), 1, self.kind, "id")
        self.elements: list[TorusAutomorphism] = [ident]
        self.words: list[tuple[int, ...]] = [()]
        self.index: dict[TorusAutomorphism, int] = {ident: 0}
        queue = deque([0])
        while queue:
            i = queue.popleft()
            for gi, gen in enumerate(self.generators):
                prod = self.elements[i] * gen
                if prod not in self.index:
                    if len(self.elements) >= order_cap:
                        raise GroupOrderExceeded(f"group order exceeds cap {order_cap}")
                    self.index[prod] = len(self.elements)
                    self.elements.append(prod)
                    self.words.append(self.words[i] + (gi,))
                    queue.append(len(self.elements) - 1)

    @property
    def order(self) -> int:
        return len(self.elements)

    def __len__(self) -> int:
        return len(self.elements)

    @property
    def complex_dimension(self) -> int:
        return self.elements[0].complex_dimension

    @property
    def identity(self) -> TorusAutomorphism:
        return self.elements[0]

    def generator_name(self, i: int) -> str:
        return self.generators[i].name or f"g{i + 1}"

    def element_name(self, idx: int) -> str:
        word = self.words[idx]
        return "*".join(self.generator_name(i) for i in word) if word else "id"

    def element(self, word: str) -> TorusAutomorphism:
        """Look up ``"gamma1*gamma2"`` (composition, rightmost applied first)."""
        names = {self.generator_name(i): g for i, g in enumerate(self.generators)}
        result = self.identity
        for part in word.replace(" ", "").split("*"):
            if part in ("", "id"):
                continue
            if part not in names:
                raise KeyError(f"unknown generator {part!r}; known: {sorted(names)}")
            result = result * names[part]
        return result

    def index_of(self, g: TorusAutomorphism) -> int:
        return self.index[g]

    def as_dict(self) -> dict:
        return {
            "name": self.name,
            "kind": self.kind,
            "dimension": self.complex_dimension,
            "generators": [
                {"name": self.generator_name(i), **{k: v for k, v in g.as_dict().items() if k != "name"}}
                for i, g in enumerate(self.generators)
            ],
        }

    def to_json(self) -> str:
        return json.dumps(self.as_dict(), indent=2)


def group_from_dict(data: dict, order_cap: int = DEFAULT_ORDER_CAP) -> FiniteActionGroup:
    kind = data.get("kind", "gauss")
    dim = int(data["dimension"])
    gens = []
    for i, gd in enumerate(data["generators"]):
        g = TorusAutomorphism(gd["matrix"], gd.get("translation"), kind, gd.get("name", f"g{i + 1}"))
        if g.complex_dimension != dim:
            raise ValueError(f"generator {i + 1} acts on dimension {g.complex_dimension}, expected {dim}")
        gens.append(g)
    return FiniteActionGroup(gens, data.get("name", ""), order_cap)


def group_from_json(text: str, order_cap: int = DEFAULT_ORDER_CAP) -> FiniteActionGroup:
    return group_from_dict(json.loads(text), order_cap)


def cyclic_group(g: TorusAutomorphism, name: str = "", order_cap: int = DEFAULT_ORDER_CAP) -> FiniteActionGroup:
    return FiniteActionGroup([g], name, order_cap)


def identity_automorphism(complex_dimension: int, kind: str = "gauss") -> TorusAutomorphism:
    return TorusAutomorphism(identity(2 * complex_dimension), None, kind, "id")


def random_automorphism(rng, complex_dimension: int, kind: str = "gauss", steps: int = 6,
                        coefficient_bound: int = 2, denominators: Sequence[int] = (1, 2, 3, 4)) -> TorusAutomorphism:
    """A random affine automorphism: elementary row operations over the CM ring.

    ``rng`` is a :class:`random.Random`.  The linear part need not have
    finite order.
    """
    from .cmfield import units

    d = complex_dimension
    mat = [[CMNumber(int(i == j), 0, kind) for j in range(d)] for i in range(d)]
    unit_list = units(kind)
    for _ in range(steps):
        op = rng.randrange(3)
        i = rng.randrange(d)
        if op == 0 and d > 1:
            j = rng.choice([x for x in range(d) if x != i])
            q = 0 if kind == "rational" else rng.randint(-coefficient_bound, coefficient_bound)
            c = CMNumber(rng.randint(-coefficient_bound, coefficient_bound), q, kind)
            mat[i] = [a + c * b for a, b in zip(mat[i], mat[j])]
        elif op == 1:
            u = rng.choice(unit_list)
            mat[i] = [u * a for a in mat[i]]
        elif d > 1:
            j = rng.randrange(d)
            mat[i], mat[j] = mat[j], mat[i]
    trans = [Fraction(rng.randrange(den), den) for den in (rng.choice(denominators) for _ in range(2 * d))]
    return from_holomorphic(mat, kind, trans)
