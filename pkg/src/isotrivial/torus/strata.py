"""Singular strata of a torus quotient E^d / G.

Points are handled in bulk as integer rows over a common denominator, so a
stabilizer test against every group element is one numpy product per element.
"""

from __future__ import annotations

import math
from collections import Counter, deque
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from .action import FiniteActionGroup, TorusAutomorphism, TorusPoint, fixed_locus
from .cmfield import CMNumber, units
from .forms import exterior_traces, preserves_symplectic
from .lattice import rank

OBSTRUCTED = "OBSTRUCTED"
RESOLVABLE = "RESOLVABLE"
UNDECIDED = "UNDECIDED-BY-THIS-TOOL"


class NonSymplecticAction(ValueError):
    pass


def _row_point(row, den: int) -> TorusPoint:
    return TorusPoint([Fraction(int(x), den) for x in row])


def _complex_corank(mats: list[np.ndarray], n: int) -> int:
    """Complex dimension of the common kernel of the stacked integer matrices."""
    if not mats:
        return n // 2
    stacked = np.concatenate(mats, axis=0)
    return (n - rank(stacked.tolist())) // 2


def eigenvalue_multiplicities(g: TorusAutomorphism) -> dict[str, int]:
    """Multiplicities of the field's roots of unity as eigenvalues of the holomorphic part.

    Finite-order maps are diagonalizable, so the kernel dimension of A - u is
    the multiplicity.  Eigenvalues outside the field are lumped under "other".
    """
    n = g.real_dimension
    d = g.complex_dimension
    out: dict[str, int] = {}
    seen = 0
    for u in units(g.kind):
        block = np.array(u.matrix(), dtype=np.int64)
        shift = np.kron(np.eye(d, dtype=np.int64), block)
        mult = (n - rank((g.linear_array - shift).tolist())) // 2
        if mult:
            out[str(u)] = mult
            seen += mult
    if seen < d:
        out["other"] = d - seen
    return out


def _transverse(g: TorusAutomorphism) -> dict:
    eig = eigenvalue_multiplicities(g)
    moving = {k: v for k, v in eig.items() if k != "1"}
    codim = sum(moving.values())
    label = f"{next(iter(moving))} on C^{codim}" if len(moving) == 1 and "other" not in moving else None
    return {"codimension": codim, "eigenvalues": moving, "scalar": label}


def _is_cyclic(group: FiniteActionGroup, members: list[int]) -> bool:
    size = len(members)
    return any(group.elements[i].order(size) == size for i in members)


def _common_denominator(group: FiniteActionGroup, extra: int = 1) -> int:
    return math.lcm(extra, *(g.translation_denominator for g in group.elements))


class _PointTable:
    """Integer rows over a fixed denominator, deduplicated in insertion order."""

    def __init__(self, den: int, n: int):
        self.den = den
        self.rows: list[tuple[int, ...]] = []
        self.index: dict[tuple[int, ...], int] = {}
        self.n = n

    def add(self, arr: np.ndarray) -> None:
        for row in map(tuple, arr.tolist()):
            if row not in self.index:
                self.index[row] = len(self.rows)
                self.rows.append(row)

    def array(self) -> np.ndarray:
        if not self.rows:
            return np.zeros((0, self.n), dtype=np.int64)
        return np.array(self.rows, dtype=np.int64)


def _rescale(den_from: int, arr: np.ndarray, den_to: int) -> np.ndarray:
    return arr * (den_to // den_from)


@dataclass
class PointOrbit:
    representative: TorusPoint
    size: int
    stabilizer_order: int
    stabilizer: list[str]
    cyclic: bool
    label: str | None

    def as_dict(self) -> dict:
        return {
            "representative": self.representative.as_list(),
            "orbit_size": self.size,
            "stabilizer_order": self.stabilizer_order,
            "stabilizer": self.stabilizer,
            "cyclic": self.cyclic,
            "label": self.label,
        }


@dataclass
class PositiveStratum:
    element: str
    class_size: int
    dimension: int
    component_count: int
    transverse: dict

    def as_dict(self) -> dict:
        return {
            "element": self.element,
            "conjugacy_class_size": self.class_size,
            "dimension": self.dimension,
            "component_count": self.component_count,
            "transverse": self.transverse,
        }


@dataclass
class SingularityInventory:
    group: str
    order: int
    orbits: list[PointOrbit]
    strata: list[PositiveStratum]
    points_by_stabilizer_order: dict[int, int] = field(default_factory=dict)
    orbits_by_stabilizer_order: dict[int, int] = field(default_factory=dict)
    orbits_by_label: dict[str, int] = field(default_factory=dict)

    def as_dict(self) -> dict:
        return {
            "group": self.group,
            "order": self.order,
            "points_by_stabilizer_order": {str(k): v for k, v in self.points_by_stabilizer_order.items()},
            "orbits_by_stabilizer_order": {str(k): v for k, v in self.orbits_by_stabilizer_order.items()},
            "orbits_by_label": dict(self.orbits_by_label),
            "label_convention": "A_{j-1} for a cyclic stabilizer of order j acting as diag(a, a^-1) "
                                "on a 2-dimensional slice",
            "orbits": [o.as_dict() for o in self.orbits],
            "positive_dimensional_strata": [s.as_dict() for s in self.strata],
        }


def conjugacy_classes(group: FiniteActionGroup) -> list[list[int]]:
    """Classes as index lists; classes and members in breadth-first order."""
    seen: dict[int, int] = {}
    classes: list[list[int]] = []
    inverses = [group.index[_inverse(group, g)] for g in group.generators]
    for i in range(group.order):
        if i in seen:
            continue
        members = [i]
        seen[i] = len(classes)
        queue = deque([i])
        while queue:
            j = queue.popleft()
            for gen, inv_idx in zip(group.generators, inverses):
                conj = gen * group.elements[j] * group.elements[inv_idx]
                k = group.index[conj]
                if k not in seen:
                    seen[k] = len(classes)
                    members.append(k)
                    queue.append(k)
        classes.append(sorted(members))
    return classes


def _inverse(group: FiniteActionGroup, g: TorusAutomorphism) -> TorusAutomorphism:
    power = g
    while True:
        nxt = power * g
        if nxt.is_identity():
            return power
        power = nxt


def _isolated_points(group: FiniteActionGroup) -> tuple[int, np.ndarray]:
    loci = [fixed_locus(g) for g in group.elements[1:]]
    isolated = [loc for loc in loci if loc.is_isolated]
    den = _common_denominator(group, math.lcm(1, *(loc.sample_array()[0] for loc in isolated)))
    table = _PointTable(den, 2 * group.complex_dimension)
    for loc in isolated:
        d0, arr = loc.sample_array()
        table.add(_rescale(d0, arr, den))
    return den, table.array()


def _stabilizer_masks(group: FiniteActionGroup, pts: np.ndarray, den: int,
                      candidates: list[int] | None = None) -> np.ndarray:
    """Boolean matrix (points x elements): element fixes point."""
    idx = range(group.order) if candidates is None else candidates
    cols = [np.all(group.elements[i].apply_array(pts, den) == pts, axis=1) for i in idx]
    if not cols:
        return np.zeros((pts.shape[0], 0), dtype=bool)
    return np.stack(cols, axis=1)


def _slice_label(group: FiniteActionGroup, members: list[int]) -> str | None:
    """A_{j-1} when the stabilizer is cyclic of order j in SL(2) on a 2-dimensional slice."""
    j = len(members)
    if j < 2 or not _is_cyclic(group, members):
        return None
    mats = [group.elements[i].linear_array - np.eye(group.elements[0].real_dimension, dtype=np.int64)
            for i in members]
    slice_dim = group.complex_dimension - _complex_corank(mats, 2 * group.complex_dimension)
    if slice_dim != 2:
        return None
    gen = next(group.elements[i] for i in members if group.elements[i].order(j) == j)
    det = _holomorphic_determinant(gen)
    if det != 1:
        return None
    return f"A{j - 1}"


def _holomorphic_determinant(g: TorusAutomorphism) -> CMNumber:
    return exterior_traces(g.holomorphic_matrix(), g.kind)[g.complex_dimension]


def singularity_inventory(group: FiniteActionGroup) -> SingularityInventory:
    den, pts = _isolated_points(group)
    masks = _stabilizer_masks(group, pts, den)
    gens = [group.index[g] for g in group.generators]
    lookup = {tuple(row): k for k, row in enumerate(pts.tolist())}
    orbit_of = [-1] * len(pts)
    orbits: list[PointOrbit] = []
    for start in range(len(pts)):
        if orbit_of[start] >= 0:
            continue
        members = [start]
        orbit_of[start] = len(orbits)
        queue = deque([start])
        while queue:
            k = queue.popleft()
            for gi in gens:
                img = group.elements[gi].apply_array(pts[k:k + 1], den)[0]
                m = lookup[tuple(img.tolist())]
                if orbit_of[m] < 0:
                    orbit_of[m] = len(orbits)
                    members.append(m)
                    queue.append(m)
        stab = [int(i) for i in np.nonzero(masks[start])[0]]
        rep = _row_point(pts[start], den)
        orbits.append(PointOrbit(
            representative=rep,
            size=len(members),
            stabilizer_order=len(stab),
            stabilizer=[group.element_name(i) for i in stab],
            cyclic=_is_cyclic(group, stab),
            label=_slice_label(group, stab),
        ))
    points_by = Counter()
    orbits_by = Counter()
    labels = Counter()
    for o in orbits:
        points_by[o.stabilizer_order] += o.size
        orbits_by[o.stabilizer_order] += 1
        if o.label:
            labels[o.label] += 1
    strata = []
    for cls in conjugacy_classes(group):
        rep = group.elements[cls[0]]
        if cls[0] == 0:
            continue
        loc = fixed_locus(rep)
        if loc.solvable and loc.dimension > 0:
            strata.append(PositiveStratum(group.element_name(cls[0]), len(cls), loc.dimension,
                                          loc.component_count, _transverse(rep)))
    return SingularityInventory(
        group=group.name,
        order=group.order,
        orbits=orbits,
        strata=strata,
        points_by_stabilizer_order=dict(sorted(points_by.items(), reverse=True)),
        orbits_by_stabilizer_order=dict(sorted(orbits_by.items(), reverse=True)),
        orbits_by_label=dict(sorted(labels.items())),
    )


# -- obstruction -----------------------------------------------------------------


@dataclass
class StratumWitness:
    element: str
    stratum_dimension: int
    slice_dimension: int
    stabilizer: list[str]
    reflection_subgroup_order: int
    sample: TorusPoint
    transverse: dict

    @property
    def local_model(self) -> str:
        rest = self.stratum_dimension
        base = f"(C^{self.slice_dimension}/G)"
        return f"{base} x C^{rest}" if rest else base

    def as_dict(self) -> dict:
        return {
            "element": self.element,
            "stratum_dimension": self.stratum_dimension,
            "slice_dimension": self.slice_dimension,
            "local_model": self.local_model,
            "stabilizer_order": len(self.stabilizer),
            "stabilizer": self.stabilizer,
            "reflection_subgroup_order": self.reflection_subgroup_order,
            "sample": self.sample.as_list(),
            "transverse": self.transverse,
        }


@dataclass
class ObstructionReport:
    group: str
    verdict: str
    witness: StratumWitness | None
    strata_examined: int
    reason: str

    def as_dict(self) -> dict:
        return {
            "group": self.group,
            "verdict": self.verdict,
            "reason": self.reason,
            "strata_examined": self.strata_examined,
            "witness": self.witness.as_dict() if self.witness else None,
        }


def _generated_order(group: FiniteActionGroup, members: list[int]) -> int:
    if not members:
        return 1
    closure = {0}
    frontier = [0]
    while frontier:
        nxt = []
        for i in frontier:
            for j in members:
                k = group.index[group.elements[i] * group.elements[j]]
                if k not in closure:
                    closure.add(k)
                    nxt.append(k)
        frontier = nxt
    return len(closure)


def desingularization_obstruction(group: FiniteActionGroup) -> ObstructionReport:
    """Decide whether E^d/G visibly fails to have a symplectic resolution.

    Every component C of every fixed locus is examined through its pointwise
    stabilizer H, which acts on the normal slice.  A quotient C^{2m}/H with a
    symplectic resolution needs H generated by symplectic reflections
    (elements fixing a codimension-2 subspace of the slice), so a slice of
    dimension 4 or more without that property is an obstruction.  When every
    slice is 2-dimensional with cyclic H the singularities are of type A and
    resolve crepantly.
    """
    if not preserves_symplectic(group):
        raise NonSymplecticAction(f"{group.name or 'group'} does not preserve the symplectic form")
    n = 2 * group.complex_dimension
    eye = np.eye(n, dtype=np.int64)
    minus_one = [group.elements[i].linear_array - eye for i in range(group.order)]
    codim = [group.complex_dimension - _complex_corank([m], n) for m in minus_one]
    examined = 0
    all_simple = True
    for cls in conjugacy_classes(group):
        if cls[0] == 0:
            continue
        g = group.elements[cls[0]]
        loc = fixed_locus(g)
        if not loc.solvable:
            continue
        dirs = np.array(loc.directions, dtype=np.int64).reshape(-1, n).T
        candidates = [i for i in range(group.order) if not dirs.size or not np.any(minus_one[i] @ dirs)]
        den, samples = loc.sample_array()
        den = math.lcm(den, *(group.elements[i].translation_denominator for i in candidates))
        samples = samples * (den // loc.sample_array()[0])
        masks = _stabilizer_masks(group, samples, den, candidates)
        groups: dict[tuple[bool, ...], int] = {}
        for k, row in enumerate(masks):
            groups.setdefault(tuple(row.tolist()), k)
        for key, k in groups.items():
            examined += 1
            stab = [c for c, hit in zip(candidates, key) if hit]
            slice_dim = group.complex_dimension - _complex_corank([minus_one[i] for i in stab], n)
            reflections = [i for i in stab if codim[i] == 2]
            if slice_dim == 2 and _is_cyclic(group, stab):
                continue
            all_simple = False
            if slice_dim >= 4:
                sub = _generated_order(group, reflections)
                if sub < len(stab):
                    witness = StratumWitness(
                        element=group.element_name(cls[0]),
                        stratum_dimension=group.complex_dimension - slice_dim,
                        slice_dimension=slice_dim,
                        stabilizer=[group.element_name(i) for i in stab],
                        reflection_subgroup_order=sub,
                        sample=_row_point(samples[k], den),
                        transverse=_transverse(g),
                    )
                    return ObstructionReport(
                        group.name, OBSTRUCTED, witness, examined,
                        f"stabilizer of order {len(stab)} on a {slice_dim}-dimensional slice is not "
                        f"generated by symplectic reflections (they generate order {sub})",
                    )
    if all_simple:
        return ObstructionReport(group.name, RESOLVABLE, None, examined,
                                 "every slice is 2-dimensional with cyclic stabilizer")
    return ObstructionReport(group.name, UNDECIDED, None, examined,
                             "some slice has a non-cyclic or higher-dimensional stabilizer generated by reflections")
