"""Singular-fibre configurations of isotrivial elliptic K3 surfaces."""

from __future__ import annotations

import json
from collections import Counter
from dataclasses import dataclass
from typing import Iterable, Iterator

from .kodaira import STARRED_KINDS, TABLE, fibre_for
from .sl2z import (
    ALPHA,
    BETA,
    MINUS_IDENTITY,
    IDENTITY,
    UnimodularMatrix,
    format_matrix,
    generated_group_order,
    rigidity_search,
)
from .weierstrass import BUNDLE_DEGREE, MAX_ORDER, ZeroProfile, classify_zero, normalize_j_case

EULER_TOTAL = 24
DEFAULT_WORD_LENGTH = 6

_J0_ONLY = {"II", "IV", "IVstar", "IIstar"}
_J1728_ONLY = {"III", "IIIstar"}


class UnsupportedConfiguration(ValueError):
    pass


def partitions(total: int, parts: Iterable[int]) -> Iterator[tuple[int, ...]]:
    """Partitions of ``total`` into the allowed parts, each written in decreasing order.

    Yielded in decreasing lexicographic order.
    """
    allowed = sorted(set(parts), reverse=True)

    def rec(remaining: int, start: int) -> Iterator[tuple[int, ...]]:
        if remaining == 0:
            yield ()
            return
        for idx in range(start, len(allowed)):
            part = allowed[idx]
            if part <= remaining:
                for rest in rec(remaining - part, idx):
                    yield (part, *rest)

    yield from rec(total, 0)


@dataclass(frozen=True)
class FibreConfiguration:
    # (kind, count), sorted by Euler number descending then name
    fibres: tuple[tuple[str, int], ...]
    j_case: str

    @classmethod
    def from_kinds(cls, kinds: Iterable[str], j_case: str | None = None) -> FibreConfiguration:
        counts = Counter(fibre_for(k).kind for k in kinds)
        for kind in counts:
            if not fibre_for(kind).finite_monodromy:
                raise UnsupportedConfiguration(f"{kind} has infinite monodromy; impossible for constant j")
            if kind == "I0":
                raise UnsupportedConfiguration("I0 is a smooth fibre")
        fibres = tuple(sorted(counts.items(), key=lambda kv: (-TABLE[kv[0]].euler, kv[0])))
        return cls(fibres, j_case or _infer_j_case(counts))

    def kinds(self) -> list[str]:
        return [k for k, c in self.fibres for _ in range(c)]

    @property
    def euler_sum(self) -> int:
        return sum(TABLE[k].euler * c for k, c in self.fibres)

    @property
    def all_starred(self) -> bool:
        return all(k in STARRED_KINDS for k, _ in self.fibres)

    def as_json_list(self) -> list[dict]:
        return [{"type": k, "count": c} for k, c in self.fibres]

    def euler_ledger(self) -> str:
        terms = [str(TABLE[k].euler) for k in self.kinds()]
        return "+".join(terms) + f" = {self.euler_sum}"

    def __str__(self) -> str:
        return ", ".join(f"{TABLE[k].display_name} x{c}" for k, c in self.fibres)


def _infer_j_case(counts) -> str:
    kinds = set(counts)
    if kinds & _J0_ONLY and kinds & _J1728_ONLY:
        return "mixed"
    if kinds & _J0_ONLY:
        return "zero"
    if kinds & _J1728_ONLY:
        return "1728"
    return "generic"


def configuration_from_json(data: list[dict], j_case: str | None = None) -> FibreConfiguration:
    kinds = []
    for item in data:
        kinds.extend([item["type"]] * int(item["count"]))
    return FibreConfiguration.from_kinds(kinds, j_case)


def enumerate_starred() -> list[FibreConfiguration]:
    """All-starred configurations with Euler sum 24, by exhaustive partition of 24."""
    by_euler = {TABLE[k].euler: k for k in STARRED_KINDS}
    found = [
        FibreConfiguration.from_kinds(by_euler[e] for e in part)
        for part in partitions(EULER_TOTAL, by_euler)
    ]
    return sorted(found, key=lambda cfg: sorted((TABLE[k].euler for k in cfg.kinds()), reverse=True))


def enumerate_profiles(j_case: str) -> list[ZeroProfile]:
    """Every admissible zero profile: partitions of the bundle degree into allowed orders.

    Each profile is realised by putting its zeros at distinct finite points,
    see :func:`realize_profile`.
    """
    j_case = normalize_j_case(j_case)
    if j_case == "generic":
        raise ValueError("profiles exist only for j = 0 or 1728")
    bundle = BUNDLE_DEGREE[j_case]
    parts = range(1, MAX_ORDER[j_case] + 1)
    return [ZeroProfile.from_multiplicities(p, bundle) for p in partitions(bundle, parts)]


def realize_profile(profile: ZeroProfile):
    """A polynomial with roots 0, 1, 2, ... of the profile's multiplicities."""
    from .polynomial import RationalPolynomial

    roots = []
    for idx, mult in enumerate(m for m, c in profile.finite_zeros for _ in range(c)):
        roots.extend([idx] * mult)
    return RationalPolynomial.from_roots(roots)


def profile_configuration(j_case: str, profile: ZeroProfile) -> FibreConfiguration:
    j_case = normalize_j_case(j_case)
    kinds = [classify_zero(j_case, m).kind for m in profile.multiplicities()]
    return FibreConfiguration.from_kinds(kinds, j_case)


# -- monodromy ---------------------------------------------------------------

def _exponent(kind: str, j_case: str) -> tuple[str, int]:
    for m in range(1, MAX_ORDER[j_case] + 1):
        zc = classify_zero(j_case, m)
        if zc.kind == kind:
            return zc.generator, zc.monodromy_exponent
    raise UnsupportedConfiguration(f"{kind} does not occur for j case {j_case}")


@dataclass(frozen=True)
class NecessaryConditions:
    euler_sum: int
    generator: str | None
    exponent_sum: int | None
    modulus: int | None
    passed: bool
    status: str


def necessary_conditions(config: FibreConfiguration) -> NecessaryConditions:
    """Euler sum 24 and vanishing total monodromy exponent.

    Passing does not prove a configuration exists: whether some choice of
    conjugates has literally trivial product is left open here.
    """
    euler_ok = config.euler_sum == EULER_TOTAL
    if config.j_case == "mixed":
        return NecessaryConditions(config.euler_sum, None, None, None, False, "mixed j cases")
    if config.j_case == "generic":
        count = sum(c for _, c in config.fibres)
        passed = euler_ok and all(k == "I0star" for k, _ in config.fibres) and count % 2 == 0
        status = "necessary conditions pass" if passed else "fails necessary conditions"
        return NecessaryConditions(config.euler_sum, "-I", count, 2, passed, status)
    total = 0
    gen = None
    for kind, count in config.fibres:
        gen, e = _exponent(kind, config.j_case)
        total += e * count
    modulus = 6 if config.j_case == "zero" else 4
    passed = euler_ok and total % modulus == 0
    status = "necessary conditions pass" if passed else "fails necessary conditions"
    return NecessaryConditions(config.euler_sum, gen, total, modulus, passed, status)


# Product order for the rigidity search, as (kind, representative): the
# representative placed first is the one fixed by the choice of basis.
_RIGID_ORDER = {
    (("I0star", 4),): [("I0star", MINUS_IDENTITY)] * 4,
    (("IVstar", 3),): [("IVstar", ALPHA**4)] * 3,
    (("IIIstar", 2), ("I0star", 1)): [("IIIstar", BETA**3), ("I0star", BETA**2), ("IIIstar", BETA**3)],
    (("IIstar", 1), ("IVstar", 1), ("I0star", 1)): [
        ("IIstar", ALPHA**5), ("I0star", ALPHA**3), ("IVstar", ALPHA**4),
    ],
}


@dataclass(frozen=True)
class RigidityReport:
    configuration: FibreConfiguration
    word_length: int
    classes: tuple[UnimodularMatrix, ...]
    solutions: int
    forced: tuple[tuple[str, UnimodularMatrix], ...] | None
    group_order: int | float | None
    product_is_identity: bool

    @property
    def rigid(self) -> bool:
        return self.solutions == 1 and self.forced is not None

    def as_dict(self) -> dict:
        return {
            "configuration": self.configuration.as_json_list(),
            "word_length": self.word_length,
            "classes": [format_matrix(m) for m in self.classes],
            "solutions": self.solutions,
            "rigid": self.rigid,
            "forced_monodromies": None if self.forced is None else [
                {"type": k, "monodromy": format_matrix(m)} for k, m in self.forced
            ],
            "group_order": self.group_order,
            "product_is_identity": self.product_is_identity,
        }


def rigid_configuration_check(config: FibreConfiguration, word_length: int = DEFAULT_WORD_LENGTH) -> RigidityReport:
    """Search all trivial-product conjugate assignments for a starred configuration.

    ``word_length`` bounds the conjugating words; it is a completeness
    horizon for the search, not part of the statement being checked.
    """
    if config.fibres not in _RIGID_ORDER:
        raise UnsupportedConfiguration(f"rigidity check only covers the four starred configurations, not {config}")
    order = _RIGID_ORDER[config.fibres]
    classes = tuple(m for _, m in order)
    sols = rigidity_search(classes, word_length)
    forced = None
    group_order = None
    product_ok = False
    if len(sols) == 1 and sols[0].conjugates == classes:
        forced = tuple(zip((k for k, _ in order), sols[0].conjugates))
        # report in configuration order
        forced = tuple(sorted(forced, key=lambda km: (-TABLE[km[0]].euler, km[0])))
        group_order = generated_group_order([m for _, m in forced])
        prod = IDENTITY
        for m in sols[0].conjugates:
            prod = prod * m
        product_ok = prod == IDENTITY
    return RigidityReport(config, word_length, classes, len(sols), forced, group_order, product_ok)


def dumps_configurations(configs: list[FibreConfiguration]) -> str:
    return json.dumps([c.as_json_list() for c in configs], indent=2)
