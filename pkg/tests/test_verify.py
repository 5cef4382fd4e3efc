import dataclasses

import pytest

from isotrivial import kodaira
from isotrivial.verify import build_checks, det_vs_snf_mismatches, partition_count, run_checks


@pytest.fixture(scope="module")
def report():
    return run_checks()


def test_every_check_passes(report):
    failing = [(c.id, c.expected, c.computed) for c in report.checks if not c.passed]
    assert failing == []
    assert report.ok and report.failed == 0


def test_ids_unique_and_stable():
    first = [c[0] for c in build_checks()]
    assert len(first) == len(set(first))
    assert first == [c[0] for c in build_checks()]


def test_every_check_has_a_location(report):
    assert all(c.location for c in report.checks)


def test_only_filter():
    rep = run_checks({"starred-partitions", "profile-counts"})
    assert [c.id for c in rep.checks] == ["starred-partitions", "profile-counts"]


def test_tampered_euler_number_is_caught(monkeypatch):
    bad = dict(kodaira.TABLE)
    bad["IVstar"] = dataclasses.replace(bad["IVstar"], euler=7)
    monkeypatch.setattr(kodaira, "TABLE", bad)
    rep = run_checks({"fibre-table-IVstar", "fibre-table-IIIstar"})
    assert not rep.get("fibre-table-IVstar").passed
    assert rep.get("fibre-table-IIIstar").passed
    assert not rep.ok


def test_json_summary(report):
    d = report.as_dict()
    assert d["summary"] == {"total": len(report.checks), "passed": len(report.checks), "failed": 0}
    assert report.to_json() == report.to_json()


def test_partition_count_small():
    # partitions of 5 with parts <= 2: 2+2+1, 2+1+1+1, 1*5
    assert partition_count(5, 2) == 3
    assert partition_count(0, 3) == 1


def test_det_vs_snf_small_sample():
    assert det_vs_snf_mismatches(samples=40, seed=7) == []
