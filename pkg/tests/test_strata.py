import itertools
import math
from collections import Counter

import numpy as np
import pytest

from isotrivial.torus import (
    OBSTRUCTED,
    RESOLVABLE,
    UNDECIDED,
    FiniteActionGroup,
    NonSymplecticAction,
    cyclic_surface,
    desingularization_obstruction,
    from_holomorphic,
    hilbert,
    matsushita,
    singularity_inventory,
    translated,
)
from isotrivial.torus.builtins import TWO_TORSION
from isotrivial.torus.cmfield import CMNumber
from isotrivial.torus.strata import conjugacy_classes, eigenvalue_multiplicities


def brute_inventory(group, grid=12):
    """Oracle: stabilizer orders of every grid point, and orbit counts, by direct enumeration."""
    n = 2 * group.complex_dimension
    den = math.lcm(grid, *(g.translation_denominator for g in group.elements))
    pts = np.array(list(itertools.product(range(grid), repeat=n)), dtype=np.int64) * (den // grid)
    fixed = np.stack([np.all(g.apply_array(pts, den) == pts, axis=1) for g in group.elements], axis=1)
    stab = fixed.sum(axis=1)
    points = Counter(int(s) for s in stab if s > 1)
    orbits = Counter({k: v * k // group.order for k, v in points.items()})
    return dict(points), dict(orbits)


@pytest.mark.parametrize("k", [2, 3, 4, 6])
def test_inventory_against_brute_force(k):
    inv = singularity_inventory(cyclic_surface(k))
    points, orbits = brute_inventory(cyclic_surface(k))
    assert inv.points_by_stabilizer_order == points
    assert inv.orbits_by_stabilizer_order == orbits


def test_inventory_values():
    inv = singularity_inventory(cyclic_surface(4))
    assert inv.points_by_stabilizer_order == {4: 4, 2: 12}
    assert inv.orbits_by_stabilizer_order == {4: 4, 2: 6}
    assert inv.orbits_by_label == {"A3": 4, "A1": 6}
    inv = singularity_inventory(cyclic_surface(6))
    assert inv.points_by_stabilizer_order == {6: 1, 3: 8, 2: 15}
    assert inv.orbits_by_stabilizer_order == {6: 1, 3: 4, 2: 5}
    assert inv.orbits_by_label == {"A5": 1, "A2": 4, "A1": 5}
    assert singularity_inventory(cyclic_surface(2)).orbits_by_label == {"A1": 16}
    assert singularity_inventory(cyclic_surface(3)).orbits_by_label == {"A2": 9}


def test_no_label_outside_sl2():
    zeta = CMNumber(0, 1, "eisenstein")
    g = from_holomorphic([[zeta, 0], [0, zeta]], "eisenstein")
    inv = singularity_inventory(FiniteActionGroup([g]))
    # the stabilizer {1, -1} lies in SL(2), larger ones do not
    assert {o.stabilizer_order: o.label for o in inv.orbits} == {6: None, 3: None, 2: "A1"}


def test_positive_dimensional_strata_reported():
    inv = singularity_inventory(translated(3))
    strata = {s.element: s for s in inv.strata}
    s = strata["gamma1*gamma2"]
    assert s.dimension == 2 and s.transverse["scalar"] == "-1 on C^4"
    assert sum(x.class_size for x in inv.strata) <= translated(3).order


def test_conjugacy_classes_partition_group():
    group = hilbert(3, 2)
    classes = conjugacy_classes(group)
    flat = [i for c in classes for i in c]
    assert sorted(flat) == list(range(group.order))
    # class sizes divide the group order
    assert all(group.order % len(c) == 0 for c in classes)


def test_eigenvalues():
    g = matsushita(6, 3).element("h1")
    eig = eigenvalue_multiplicities(g)
    assert eig == {"1": 2, "zeta": 2, "1-zeta": 2}


@pytest.mark.parametrize("n", [3, 4])
def test_translated_obstructed(n):
    rep = desingularization_obstruction(translated(n))
    assert rep.verdict == OBSTRUCTED
    w = rep.witness
    assert w.element == "gamma1*gamma2"
    assert w.slice_dimension == 4 and w.transverse["scalar"] == "-1 on C^4"
    assert w.local_model == f"(C^4/G) x C^{2 * n - 4}"


@pytest.mark.parametrize("torsion", TWO_TORSION)
def test_obstruction_independent_of_torsion(torsion):
    assert desingularization_obstruction(translated(3, torsion)).verdict == OBSTRUCTED


def test_matsushita_obstructed():
    rep = desingularization_obstruction(matsushita(6, 3))
    assert rep.verdict == OBSTRUCTED
    assert rep.witness.local_model == "(C^4/G) x C^2"
    assert rep.witness.reflection_subgroup_order < len(rep.witness.stabilizer)


@pytest.mark.parametrize("k", [2, 3, 4, 6])
def test_cyclic_surfaces_resolvable(k):
    assert desingularization_obstruction(cyclic_surface(k)).verdict == RESOLVABLE


def test_hilbert_not_obstructed():
    # stabilizers there are generated by symplectic reflections
    assert desingularization_obstruction(hilbert(2, 2)).verdict == UNDECIDED


def test_non_symplectic_rejected():
    zeta = CMNumber(0, 1, "eisenstein")
    g = from_holomorphic([[zeta, 0], [0, zeta]], "eisenstein")
    with pytest.raises(NonSymplecticAction):
        desingularization_obstruction(FiniteActionGroup([g]))


def test_report_json_shape():
    d = desingularization_obstruction(translated(3)).as_dict()
    assert list(d) == ["group", "verdict", "reason", "strata_examined", "witness"]
    assert singularity_inventory(cyclic_surface(4)).as_dict()["orbits_by_label"] == {"A1": 6, "A3": 4}
