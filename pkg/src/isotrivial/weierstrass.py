"""Isotrivial elliptic K3 surfaces from Weierstrass data.

With constant j = 0 the surface is y^2 = x^3 + b(t), b a section of O(12);
with j = 1728 it is y^2 = x^3 + a(t) x, a a section of O(8).  Each zero of
b (resp. a), including a zero at t = infinity coming from a degree deficit,
produces one singular fibre whose type depends only on the zero's order.
"""

from __future__ import annotations

import json
from collections import Counter
from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction

from .kodaira import DISPLAY_NAMES, TABLE
from .polynomial import RationalPolynomial, format_rational, squarefree_decomposition

BUNDLE_DEGREE = {"zero": 12, "1728": 8}
MAX_ORDER = {"zero": 5, "1728": 3}
_BOUND_WORDS = {"zero": "six", "1728": "four"}

# order of zero -> (Kodaira type, exponent of the monodromy generator, local singularity)
_ZERO_TABLE = {
    "zero": {
        1: ("II", 1, "smooth"),
        2: ("IV", 2, "A2"),
        3: ("I0star", 3, "D4"),
        4: ("IVstar", 4, "E6"),
        5: ("IIstar", 5, "E8"),
    },
    "1728": {
        1: ("III", 1, "A1"),
        2: ("I0star", 2, "D4"),
        3: ("IIIstar", 3, "E7"),
    },
}
GENERATOR = {"zero": "alpha", "1728": "beta"}
GENERATOR_ORDER = {"zero": 6, "1728": 4}


class WeierstrassError(ValueError):
    pass


class WrongJCase(WeierstrassError):
    """The defining coefficient vanishes identically."""


class NotRationalDoublePoint(WeierstrassError):
    """A zero of too high order: the Weierstrass model is not a K3 surface."""


def normalize_j_case(j_case: str | int) -> str:
    key = str(j_case).strip().lower()
    if key in ("0", "zero", "j0"):
        return "zero"
    if key in ("1728", "j1728"):
        return "1728"
    if key == "generic":
        return "generic"
    raise WeierstrassError(f"unknown j case {j_case!r}; expected zero, 1728 or generic")


@dataclass(frozen=True)
class ZeroProfile:
    # (multiplicity, number of distinct finite roots with that multiplicity), multiplicity descending
    finite_zeros: tuple[tuple[int, int], ...]
    infinity_multiplicity: int
    bundle_degree: int

    def __post_init__(self):
        total = sum(m * c for m, c in self.finite_zeros) + self.infinity_multiplicity
        if total != self.bundle_degree:
            raise ValueError(f"zero multiplicities sum to {total}, expected {self.bundle_degree}")
        if any(m < 1 or c < 1 for m, c in self.finite_zeros) or self.infinity_multiplicity < 0:
            raise ValueError("multiplicities and counts must be positive")

    @classmethod
    def from_multiplicities(cls, mults, bundle_degree: int, infinity: int = 0) -> ZeroProfile:
        counts = Counter(mults)
        return cls(tuple(sorted(counts.items(), reverse=True)), infinity, bundle_degree)

    def multiplicities(self) -> list[int]:
        """Every zero (infinity included) as one entry, descending."""
        out = [m for m, c in self.finite_zeros for _ in range(c)]
        if self.infinity_multiplicity:
            out.append(self.infinity_multiplicity)
        return sorted(out, reverse=True)

    def as_dict(self) -> dict:
        return {
            "finite_zeros": {str(m): c for m, c in self.finite_zeros},
            "infinity_multiplicity": self.infinity_multiplicity,
            "bundle_degree": self.bundle_degree,
        }


def multiplicity_profile(p: RationalPolynomial, bundle_degree: int) -> ZeroProfile:
    """Root multiplicities of ``p`` over the algebraic closure, without finding roots."""
    if p.is_zero:
        raise WrongJCase("polynomial vanishes identically (this is the other j case)")
    if p.degree > bundle_degree:
        raise WeierstrassError(f"degree {p.degree} exceeds bundle degree {bundle_degree}")
    parts = squarefree_decomposition(p.primitive())
    finite = tuple(sorted(((i, c.degree) for i, c in parts.items()), reverse=True))
    return ZeroProfile(finite, bundle_degree - p.degree, bundle_degree)


@dataclass(frozen=True)
class ZeroClass:
    kind: str
    euler: int
    monodromy_exponent: int
    generator: str
    singularity: str

    @property
    def monodromy_name(self) -> str:
        return self.generator if self.monodromy_exponent == 1 else f"{self.generator}^{self.monodromy_exponent}"


def classify_zero(j_case: str, m: int) -> ZeroClass:
    """Fibre type, Euler number, monodromy power and surface singularity for a zero of order m."""
    j_case = normalize_j_case(j_case)
    if j_case == "generic":
        raise WeierstrassError("zeros are only classified for j = 0 or j = 1728")
    if m < 1:
        raise ValueError("order of a zero must be positive")
    if m > MAX_ORDER[j_case]:
        raise NotRationalDoublePoint(
            f"zero of order {m}: order {_BOUND_WORDS[j_case]} or greater is worse than a rational double point"
        )
    kind, exponent, sing = _ZERO_TABLE[j_case][m]
    return ZeroClass(kind, TABLE[kind].euler, exponent, GENERATOR[j_case], sing)


@dataclass(frozen=True)
class ZeroRecord:
    location: str
    multiplicity: int
    count: int
    kind: str | None
    euler: int | None
    monodromy: str | None
    singularity: str | None


@dataclass(frozen=True)
class IsotrivialK3Report:
    j_case: str
    fibres: tuple[tuple[str, int], ...]
    local_singularities: tuple[tuple[str, int], ...]
    euler_total: int
    valid_k3: bool
    reasons: tuple[str, ...] = ()
    zeros: tuple[ZeroRecord, ...] = field(default=())
    polynomial: str | None = None

    def fibre_counts(self) -> dict[str, int]:
        return dict(self.fibres)

    def as_dict(self) -> dict:
        return {
            "j_case": self.j_case,
            "polynomial": self.polynomial,
            "valid_k3": self.valid_k3,
            "euler_total": self.euler_total,
            "fibres": [{"type": k, "count": c} for k, c in self.fibres],
            "local_singularities": [{"type": s, "count": c} for s, c in self.local_singularities],
            "zeros": [
                {
                    "location": z.location,
                    "multiplicity": z.multiplicity,
                    "count": z.count,
                    "type": z.kind,
                    "euler": z.euler,
                    "monodromy": z.monodromy,
                    "singularity": z.singularity,
                }
                for z in self.zeros
            ],
            "reasons": list(self.reasons),
        }

    def to_json(self) -> str:
        return json.dumps(self.as_dict(), indent=2)


def _location(factor: RationalPolynomial) -> str:
    if factor.degree == 1:
        root = -factor.coefficients[0] / factor.coefficients[1]
        return f"t={format_rational(root)}"
    return f"roots of {factor.pretty()}"


def _fibre_key(kind: str) -> tuple[int, str]:
    return (-TABLE[kind].euler, kind)


def classify_surface(j_case: str, p: RationalPolynomial | None = None) -> IsotrivialK3Report:
    """Singular fibres of the Weierstrass surface defined by ``p`` (b for j=0, a for j=1728).

    Bad input never raises: it yields ``valid_k3=False`` with reasons.  For
    the generic case (constant j other than 0, 1728) the answer does not
    depend on any polynomial: four fibres of type I0*.
    """
    try:
        j_case = normalize_j_case(j_case)
    except WeierstrassError as exc:
        return IsotrivialK3Report(str(j_case), (), (), 0, False, (str(exc),))
    if j_case == "generic":
        return generic_report()
    bundle = BUNDLE_DEGREE[j_case]
    label = None if p is None else str(p)
    if p is None or p.is_zero:
        return IsotrivialK3Report(
            j_case, (), (), 0, False, ("coefficient vanishes identically: wrong j case",), polynomial=label
        )
    if p.degree > bundle:
        return IsotrivialK3Report(
            j_case, (), (), 0, False,
            (f"degree {p.degree} exceeds {bundle}: not a section of O({bundle})",), polynomial=label,
        )

    parts = squarefree_decomposition(p.primitive())
    entries = [(i, c.degree, _location(c)) for i, c in sorted(parts.items(), reverse=True)]
    if p.degree < bundle:
        entries.append((bundle - p.degree, 1, "t=infinity"))

    fibres: Counter[str] = Counter()
    sings: Counter[str] = Counter()
    records = []
    reasons = []
    euler = 0
    for mult, count, where in entries:
        try:
            zc = classify_zero(j_case, mult)
        except NotRationalDoublePoint:
            reasons.append(
                f"zero of order {mult} at {where}: order {_BOUND_WORDS[j_case]} or greater "
                "is worse than a rational double point"
            )
            records.append(ZeroRecord(where, mult, count, None, None, None, None))
            continue
        fibres[zc.kind] += count
        if zc.singularity != "smooth":
            sings[zc.singularity] += count
        euler += zc.euler * count
        records.append(ZeroRecord(where, mult, count, zc.kind, zc.euler, zc.monodromy_name, zc.singularity))

    return IsotrivialK3Report(
        j_case,
        tuple(sorted(fibres.items(), key=lambda kv: _fibre_key(kv[0]))),
        tuple(sorted(sings.items())),
        euler,
        not reasons,
        tuple(reasons),
        tuple(records),
        label,
    )


def generic_report() -> IsotrivialK3Report:
    return IsotrivialK3Report(
        "generic",
        (("I0star", 4),),
        (("D4", 4),),
        4 * TABLE["I0star"].euler,
        True,
        (),
        (),
        None,
    )


def fibre_display(kind: str) -> str:
    return DISPLAY_NAMES.get(kind, kind)


class JConstancy(str, Enum):
    CONSTANT_0 = "constant-0"
    CONSTANT_1728 = "constant-1728"
    CONSTANT_OTHER = "constant-other"
    NON_CONSTANT = "non-constant"


def j_invariant_constancy(a: RationalPolynomial, b: RationalPolynomial) -> JConstancy:
    """Whether j = 1728 * 4a^3 / (4a^3 + 27b^2) is constant in t.

    j is constant iff a^3 * D(t0) - D * a^3(t0) vanishes identically, where
    D = 4a^3 + 27b^2 and t0 is any point with D(t0) != 0.
    """
    a3 = a * a * a
    disc = a3 * 4 + b * b * 27
    if disc.is_zero:
        raise WeierstrassError("4a^3 + 27b^2 vanishes identically: not an elliptic fibration")
    t0 = 0
    while disc(t0) == 0:
        t0 += 1
    if not (a3 * disc(t0) - disc * a3(t0)).is_zero:
        return JConstancy.NON_CONSTANT
    if a.is_zero:
        return JConstancy.CONSTANT_0
    if b.is_zero:
        return JConstancy.CONSTANT_1728
    return JConstancy.CONSTANT_OTHER


def j_value(a: RationalPolynomial, b: RationalPolynomial, t: Fraction | int) -> Fraction:
    disc = 4 * a(t) ** 3 + 27 * b(t) ** 2
    return 1728 * 4 * a(t) ** 3 / disc
