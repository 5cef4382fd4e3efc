import itertools
import json
import math
import random
from fractions import Fraction

import numpy as np
import pytest
import sympy
from hypothesis import given, settings
from hypothesis import strategies as st

from isotrivial.torus import (
    FiniteActionGroup,
    GroupOrderExceeded,
    TorusAutomorphism,
    TorusPoint,
    builtin_action,
    cyclic_surface,
    fixed_locus,
    from_holomorphic,
    group_from_json,
    hilbert,
    matsushita,
    random_automorphism,
    splitting_test,
    translated,
)
from isotrivial.torus.builtins import TWO_TORSION
from isotrivial.torus.cmfield import CMNumber


def brute_fixed_count(g, grid):
    """Oracle: count fixed points among all points with coordinates in (1/grid) Z / Z."""
    n = g.real_dimension
    pts = np.array(list(itertools.product(range(grid), repeat=n)), dtype=np.int64)
    den = math.lcm(grid, g.translation_denominator)
    pts = pts * (den // grid)
    return int(np.sum(np.all(g.apply_array(pts, den) == pts, axis=1)))


@pytest.mark.parametrize("k,count", [(2, 16), (3, 9), (4, 4), (6, 1)])
def test_cyclic_surface_fixed_points(k, count):
    g = cyclic_surface(k).generators[0]
    loc = fixed_locus(g)
    n = g.real_dimension
    det = sympy.Matrix((g.linear_array - np.eye(n, dtype=np.int64)).tolist()).det()
    assert len(loc.isolated_points) == count == abs(det) == brute_fixed_count(g, 12)
    assert not loc.components and all(loc.contains(p) for p in loc.isolated_points)


def test_minus_one_fixes_two_torsion():
    pts = {p.coords for p in fixed_locus(cyclic_surface(2).generators[0]).isolated_points}
    assert pts == set(itertools.product((0, Fraction(1, 2)), repeat=4))


def test_cyclic_generators():
    g = cyclic_surface(3).generators[0]
    z = CMNumber(0, 1, "eisenstein")
    assert g.holomorphic_matrix() == [[z**2, 0], [0, z**-2]]
    assert cyclic_surface(3).order == 3


def test_group_orders():
    assert translated(3).order == 48
    assert matsushita(6, 3).order == 108
    for k, n in [(2, 2), (3, 2), (4, 2), (6, 2), (2, 3), (3, 3)]:
        assert hilbert(k, n).order == k**n * math.factorial(n)


@pytest.mark.parametrize("group", [translated(2), matsushita(4, 3), hilbert(3, 2)], ids=lambda g: g.name)
def test_group_axioms(group):
    assert group.elements[0].is_identity()
    elems = set(group.elements)
    for g in group.elements:
        assert any((g * h).is_identity() for h in elems)
    rng = random.Random(0)
    for _ in range(50):
        a, b = rng.choice(group.elements), rng.choice(group.elements)
        assert a * b in elems


def test_order_cap():
    with pytest.raises(GroupOrderExceeded):
        hilbert(6, 3, order_cap=100)


def test_field_forced_by_k():
    assert cyclic_surface(4).kind == "gauss" and cyclic_surface(6).kind == "eisenstein"
    assert cyclic_surface(2, "eisenstein").kind == "eisenstein"
    with pytest.raises(ValueError):
        cyclic_surface(3, "gauss")
    with pytest.raises(ValueError):
        builtin_action("nonsense")


def test_translated_gammas():
    group = translated(3)
    for i in range(3):
        assert not fixed_locus(group.element(f"gamma{i + 1}")).solvable
    loc = fixed_locus(group.element("gamma1*gamma2"))
    assert loc.dimension == 2
    assert loc.contains(TorusPoint.from_complex(["1/4", 0, "3/4", 0, 0, 0]))
    assert not loc.contains(TorusPoint.from_complex(["1/3", 0, "3/4", 0, 0, 0]))


@pytest.mark.parametrize("torsion", TWO_TORSION)
def test_torsion_choice_does_not_change_counts(torsion):
    group = translated(3, torsion)
    assert group.order == 48
    assert [fixed_locus(group.element(f"gamma{i}")).solvable for i in (1, 2, 3)] == [False] * 3
    loc = fixed_locus(group.element("gamma1*gamma2"))
    assert (loc.dimension, loc.component_count) == (2, 256)


def test_translated_rejects_non_torsion():
    with pytest.raises(ValueError):
        translated(3, (Fraction(1, 3), 0))
    with pytest.raises(ValueError):
        translated(3, (0, 0))


def test_holomorphy_and_determinant_enforced():
    with pytest.raises(ValueError):
        TorusAutomorphism([[1, 1], [0, 1]], kind="gauss")
    with pytest.raises(ValueError):
        TorusAutomorphism([[2, 0], [0, 2]], kind="gauss")


def test_splitting_test():
    assert splitting_test((0, 0))
    assert not splitting_test((Fraction(1, 2), 0))
    assert splitting_test((3, -2))


def test_json_round_trip():
    group = translated(2)
    again = group_from_json(group.to_json())
    assert again.order == group.order and set(again.elements) == set(group.elements)
    assert json.loads(again.to_json()) == json.loads(group.to_json())


def test_element_lookup():
    group = translated(3)
    assert group.element("gamma1*gamma2") == group.generators[0] * group.generators[1]
    idx = group.index_of(group.element("gamma1*gamma2"))
    assert group.element(group.element_name(idx)) == group.elements[idx]
    with pytest.raises(KeyError):
        group.element("delta")


coords = st.lists(st.fractions(min_value=-3, max_value=3, max_denominator=6), min_size=4, max_size=4)


@settings(max_examples=80, deadline=None)
@given(coords, st.lists(st.integers(-4, 4), min_size=4, max_size=4), st.integers(0, 2**31))
def test_reduction_commutes_with_action(xs, shifts, seed):
    g = random_automorphism(random.Random(seed), 2, "gauss")
    p = TorusPoint(xs)
    shifted = [Fraction(x) + s for x, s in zip(xs, shifts)]
    # exact image of the unreduced representative, reduced afterwards
    raw = [sum(int(a) * b for a, b in zip(row, shifted)) + t for row, t in zip(g.linear_array, g.translation)]
    assert TorusPoint(raw) == g(p)


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 2**31), st.sampled_from(["gauss", "eisenstein", "rational"]))
def test_random_fixed_counts_against_grid(seed, kind):
    rng = random.Random(seed)
    g = random_automorphism(rng, 1, kind, steps=4, coefficient_bound=2)
    det = abs(int(sympy.Matrix((g.linear_array - np.eye(2, dtype=np.int64)).tolist()).det()))
    loc = fixed_locus(g)
    if det == 0:
        assert loc.dimension != 0
        return
    grid = det * g.translation_denominator
    assert loc.component_count == len(loc.isolated_points) == det == brute_fixed_count(g, grid)


def test_positive_dimensional_components_are_fixed():
    group = matsushita(6, 3)
    loc = fixed_locus(group.element("h1"))
    assert loc.dimension == 2
    for comp in loc.components[:20]:
        for direction in comp.directions:
            step = [c + Fraction(dx, 7) for c, dx in zip(comp.sample.coords, direction)]
            assert loc.contains(TorusPoint(step))
        assert len(comp.directions) == 2 * comp.dimension == 4
