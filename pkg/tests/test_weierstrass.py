import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from isotrivial.polynomial import RationalPolynomial
from isotrivial.sl2z import ALPHA, BETA, IDENTITY
from isotrivial.weierstrass import (
    JConstancy,
    NotRationalDoublePoint,
    WeierstrassError,
    WrongJCase,
    ZeroProfile,
    classify_surface,
    classify_zero,
    generic_report,
    j_invariant_constancy,
    j_value,
    multiplicity_profile,
    normalize_j_case,
)

P = RationalPolynomial


def test_profile_examples():
    prof = multiplicity_profile(P.from_roots(range(12)), 12)
    assert prof.finite_zeros == ((1, 12),) and prof.infinity_multiplicity == 0
    prof = multiplicity_profile(P([1]), 12)
    assert prof.finite_zeros == () and prof.infinity_multiplicity == 12
    prof = multiplicity_profile(P.from_roots([0] * 5 + [1] * 4 + [2] * 2 + [3]), 12)
    assert dict(prof.finite_zeros) == {5: 1, 4: 1, 2: 1, 1: 1}


def test_profile_errors():
    with pytest.raises(WrongJCase):
        multiplicity_profile(P([]), 12)
    with pytest.raises(WeierstrassError):
        multiplicity_profile(P.from_roots(range(9)), 8)
    with pytest.raises(ValueError):
        ZeroProfile(((1, 3),), 0, 12)


def cluster_profile(roots, bundle):
    """Oracle: count equal roots directly."""
    counts = {}
    for r in roots:
        counts[r] = counts.get(r, 0) + 1
    mults = {}
    for m in counts.values():
        mults[m] = mults.get(m, 0) + 1
    return mults, bundle - len(roots)


@settings(max_examples=100, deadline=None)
@given(st.lists(st.fractions(min_value=-4, max_value=4, max_denominator=2), max_size=12),
       st.fractions(min_value=-3, max_value=3).filter(lambda x: x != 0))
def test_profile_matches_root_clustering(roots, lead):
    p = P.from_roots(roots, lead)
    prof = multiplicity_profile(p, 12)
    mults, inf = cluster_profile(roots, 12)
    assert dict(prof.finite_zeros) == mults and prof.infinity_multiplicity == inf


ZERO_TABLE = {1: ("II", 2, "smooth"), 2: ("IV", 4, "A2"), 3: ("I0star", 6, "D4"), 4: ("IVstar", 8, "E6"),
              5: ("IIstar", 10, "E8")}
TABLE_1728 = {1: ("III", 3, "A1"), 2: ("I0star", 6, "D4"), 3: ("IIIstar", 9, "E7")}


@pytest.mark.parametrize("m", range(1, 6))
def test_classify_zero_j0(m):
    zc = classify_zero("zero", m)
    assert (zc.kind, zc.euler, zc.singularity) == ZERO_TABLE[m]
    assert zc.monodromy_exponent == m and zc.generator == "alpha"


@pytest.mark.parametrize("m", range(1, 4))
def test_classify_zero_j1728(m):
    zc = classify_zero("1728", m)
    assert (zc.kind, zc.euler, zc.singularity) == TABLE_1728[m]
    assert zc.monodromy_exponent == m and zc.generator == "beta"


@pytest.mark.parametrize("j,m", [("zero", 6), ("zero", 9), ("1728", 4), ("1728", 8)])
def test_classify_zero_bound(j, m):
    with pytest.raises(NotRationalDoublePoint, match="worse than a rational double point"):
        classify_zero(j, m)


def test_normalize_j_case():
    assert normalize_j_case(0) == normalize_j_case("0") == "zero"
    assert normalize_j_case("1728") == "1728"
    with pytest.raises(WeierstrassError):
        normalize_j_case("17")


def test_twelve_simple_zeros():
    rep = classify_surface("zero", P.from_roots(range(12)))
    assert rep.fibre_counts() == {"II": 12} and rep.euler_total == 24 and rep.valid_k3
    assert rep.local_singularities == ()


def test_two_iiistar_one_i0star():
    rep = classify_surface("1728", P.from_roots([0, 0, 0, 5, 5, 5, Fraction(1, 2), Fraction(1, 2)]))
    assert rep.fibre_counts() == {"IIIstar": 2, "I0star": 1} and rep.euler_total == 24 and rep.valid_k3
    assert dict(rep.local_singularities) == {"E7": 2, "D4": 1}


def test_t_to_the_seventh():
    rep = classify_surface("zero", P.from_roots([0] * 7))
    assert not rep.valid_k3
    assert any("order 7 at t=0" in r for r in rep.reasons)
    # the remaining order 5 sits at infinity and is fine on its own
    assert [(z.location, z.multiplicity, z.kind) for z in rep.zeros] == [("t=0", 7, None), ("t=infinity", 5, "IIstar")]


def test_degree_deficit_and_bad_input_never_raise():
    rep = classify_surface("zero", P([1]))
    assert not rep.valid_k3 and rep.zeros[0].location == "t=infinity" and rep.zeros[0].multiplicity == 12
    assert not classify_surface("zero", P([])).valid_k3
    assert not classify_surface("zero", P.from_roots(range(13))).valid_k3
    assert not classify_surface("nonsense", P([1])).valid_k3


def test_irreducible_factor_location():
    rep = classify_surface("zero", P([1, 0, 1]) * P.from_roots(range(10)))
    assert rep.valid_k3 and rep.fibre_counts() == {"II": 12}
    # all simple roots share one square-free factor, so they form one record
    assert [(z.multiplicity, z.count) for z in rep.zeros] == [(1, 12)]
    assert rep.zeros[0].location.startswith("roots of")
    rep = classify_surface("zero", P([1, 0, 1]) ** 2 * P.from_roots(range(8)))
    assert [(z.multiplicity, z.count, z.location[:8]) for z in rep.zeros] == [(2, 2, "roots of"), (1, 8, "roots of")]


def test_generic_report():
    rep = generic_report()
    assert rep.fibre_counts() == {"I0star": 4} and rep.euler_total == 24 and rep.valid_k3
    assert classify_surface("generic") == rep


def random_admissible(rng, bundle, largest):
    parts = []
    left = bundle
    while left:
        m = rng.randint(1, min(largest, left))
        parts.append(m)
        left -= m
    return parts


@pytest.mark.parametrize("j,bundle,largest,gen,mod", [("zero", 12, 5, ALPHA, 6), ("1728", 8, 3, BETA, 4)])
def test_euler_and_monodromy_product(j, bundle, largest, gen, mod):
    rng = random.Random(11)
    for _ in range(200):
        parts = random_admissible(rng, bundle, largest)
        inf = parts.pop() if rng.random() < 0.5 else 0
        roots = [idx for idx, m in enumerate(parts) for _ in range(m)]
        rep = classify_surface(j, P.from_roots(roots))
        assert rep.valid_k3 and rep.euler_total == 24
        total = sum(z.multiplicity * z.count for z in rep.zeros)
        assert total == bundle and total % mod == 0
        prod = IDENTITY
        for z in rep.zeros:
            for _ in range(z.count):
                prod = prod * gen ** z.multiplicity
        assert prod == IDENTITY


def test_j_constancy():
    assert j_invariant_constancy(P([]), P([1, 2, 3])) == JConstancy.CONSTANT_0
    assert j_invariant_constancy(P([0, 1]), P([])) == JConstancy.CONSTANT_1728
    assert j_invariant_constancy(P([1]), P([0, 1])) == JConstancy.NON_CONSTANT
    # a = c^2 s, b = c^3 s' style: a = t^2, b = t^3 gives a constant j
    assert j_invariant_constancy(P([0, 0, 1]), P([0, 0, 0, 1])) == JConstancy.CONSTANT_OTHER
    with pytest.raises(WeierstrassError):
        j_invariant_constancy(P([]), P([]))


def test_j_value_oracle_for_non_constant():
    a, b = P([1]), P([0, 1])
    assert j_value(a, b, 1) != j_value(a, b, 2)
    a, b = P([0, 0, 1]), P([0, 0, 0, 1])
    assert j_value(a, b, 1) == j_value(a, b, 3)
