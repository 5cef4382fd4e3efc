import json
from functools import lru_cache

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from isotrivial.configs import (
    FibreConfiguration,
    UnsupportedConfiguration,
    configuration_from_json,
    dumps_configurations,
    enumerate_profiles,
    enumerate_starred,
    necessary_conditions,
    partitions,
    profile_configuration,
    realize_profile,
    rigid_configuration_check,
)
from isotrivial.kodaira import TABLE
from isotrivial.sl2z import ALPHA, BETA, IDENTITY, MINUS_IDENTITY
from isotrivial.weierstrass import classify_surface


@lru_cache(maxsize=None)
def dp_count(total, largest):
    """Oracle: partitions of ``total`` into parts <= ``largest`` by recursion on the largest part."""
    if total == 0:
        return 1
    if largest == 0:
        return 0
    return dp_count(total, largest - 1) + (dp_count(total - largest, largest) if total >= largest else 0)


def test_dp_oracle_values():
    assert dp_count(12, 5) == 47
    assert dp_count(8, 3) == 10


def test_profile_counts_match_oracle():
    assert len(enumerate_profiles("zero")) == dp_count(12, 5)
    assert len(enumerate_profiles("1728")) == dp_count(8, 3)


@pytest.mark.parametrize("total,parts", [(24, (6, 8, 9, 10)), (10, (1, 2, 3)), (7, (2,)), (0, (1,))])
def test_partitions_are_distinct_and_sum(total, parts):
    found = list(partitions(total, parts))
    assert len(found) == len(set(found))
    for p in found:
        assert sum(p) == total and list(p) == sorted(p, reverse=True) and set(p) <= set(parts)


def test_starred():
    configs = enumerate_starred()
    assert [c.euler_ledger() for c in configs] == ["6+6+6+6 = 24", "8+8+8 = 24", "9+9+6 = 24", "10+8+6 = 24"]
    assert all(c.all_starred and c.euler_sum == 24 for c in configs)
    assert configs[3].fibres == (("IIstar", 1), ("IVstar", 1), ("I0star", 1))


def test_starred_monodromy_products():
    forced = {
        (("I0star", 4),): [MINUS_IDENTITY] * 4,
        (("IVstar", 3),): [ALPHA**4] * 3,
        (("IIIstar", 2), ("I0star", 1)): [BETA**3, BETA**2, BETA**3],
        (("IIstar", 1), ("IVstar", 1), ("I0star", 1)): [ALPHA**5, ALPHA**3, ALPHA**4],
    }
    for cfg in enumerate_starred():
        prod = IDENTITY
        for m in forced[cfg.fibres]:
            prod = prod * m
        assert prod == IDENTITY


def test_profile_examples():
    profiles = enumerate_profiles("zero")
    assert [5, 4, 2, 1] in [p.multiplicities() for p in profiles]
    cfg = profile_configuration("zero", next(p for p in profiles if p.multiplicities() == [5, 4, 2, 1]))
    assert cfg.euler_ledger() == "10+8+4+2 = 24"


@pytest.mark.parametrize("j", ["zero", "1728"])
def test_every_profile_realises_euler_24(j):
    for prof in enumerate_profiles(j):
        cfg = profile_configuration(j, prof)
        assert cfg.euler_sum == 24
        rep = classify_surface(j, realize_profile(prof))
        assert rep.valid_k3 and rep.euler_total == 24
        assert dict(rep.fibres) == dict(cfg.fibres)


def test_output_is_canonical():
    kinds = ["I0star", "IIstar", "IVstar"]
    assert FibreConfiguration.from_kinds(kinds) == FibreConfiguration.from_kinds(reversed(kinds))
    cfg = configuration_from_json([{"type": "IVstar", "count": 3}])
    assert cfg.as_json_list() == [{"type": "IVstar", "count": 3}]
    assert json.loads(dumps_configurations([cfg])) == [[{"type": "IVstar", "count": 3}]]


def test_j_case_inference():
    assert FibreConfiguration.from_kinds(["IIIstar", "IIIstar", "I0star"]).j_case == "1728"
    assert FibreConfiguration.from_kinds(["I0star"] * 4).j_case == "generic"
    assert FibreConfiguration.from_kinds(["II", "III"]).j_case == "mixed"


def test_rejects_infinite_monodromy():
    with pytest.raises(UnsupportedConfiguration):
        FibreConfiguration.from_kinds(["I1"] * 24)


def test_necessary_conditions():
    assert necessary_conditions(FibreConfiguration.from_kinds(["II"] * 12)).status == "necessary conditions pass"
    ok = necessary_conditions(FibreConfiguration.from_kinds(["II"] * 6 + ["IV"] * 3))
    # exponent sum is Euler/2 here, so Euler 24 already forces it to vanish mod 6
    assert ok.passed and ok.exponent_sum == 12
    bad = necessary_conditions(FibreConfiguration.from_kinds(["II"] * 11))
    assert bad.euler_sum == 22 and not bad.passed
    assert not necessary_conditions(FibreConfiguration.from_kinds(["I0star"] * 3)).passed
    assert not necessary_conditions(FibreConfiguration.from_kinds(["II", "III"])).passed


EXPECTED_RIGID = {
    (("I0star", 4),): ([MINUS_IDENTITY] * 4, 2),
    (("IVstar", 3),): ([ALPHA**4] * 3, 3),
    (("IIIstar", 2), ("I0star", 1)): ([BETA**3, BETA**3, BETA**2], 4),
    (("IIstar", 1), ("IVstar", 1), ("I0star", 1)): ([ALPHA**5, ALPHA**4, ALPHA**3], 6),
}


def test_rigidity_reports():
    for cfg in enumerate_starred():
        rep = rigid_configuration_check(cfg)
        mats, gorder = EXPECTED_RIGID[cfg.fibres]
        assert rep.rigid and [m for _, m in rep.forced] == mats and rep.group_order == gorder
        assert rep.product_is_identity
        assert rep.as_dict()["rigid"] is True


def test_rigidity_rejects_other_configs():
    with pytest.raises(UnsupportedConfiguration):
        rigid_configuration_check(FibreConfiguration.from_kinds(["II"] * 12))


@settings(max_examples=60, deadline=None)
@given(st.data())
def test_random_profiles_sum_to_24(data):
    j = data.draw(st.sampled_from(["zero", "1728"]))
    prof = data.draw(st.sampled_from(enumerate_profiles(j)))
    cfg = profile_configuration(j, prof)
    assert sum(TABLE[k].euler for k in cfg.kinds()) == 24
