import pytest

from tanglekit import sweeps
from tanglekit.sweeps import SUITES, distinct_systems, rooted_classes, run_suite

SMALL = {"max_n": 4, "max_v": 3}


@pytest.mark.parametrize("name", sorted(SUITES))
def test_every_suite_passes_on_a_small_scope(name):
    res = run_suite(name, **SMALL)
    assert res.passed, res.violations
    assert res.checked > 0


def test_failures_are_recorded_with_witnesses(monkeypatch):
    monkeypatch.setattr(sweeps, "check_bc_inequality", lambda M, A, B, e: A != 0)
    res = run_suite("bc-ineq", max_n=4)
    assert not res.passed
    assert res.violation_count > 0 and "instance" in res.violations[0]
    body = res.to_json()
    assert body["status"] == "fail" and "elapsed_s" not in body


def test_distinct_systems_keeps_one_per_isomorphism_class():
    names = [name for name, _ in distinct_systems(0, 3)]
    # graphs on ≤3 vertices up to cut-rank isomorphism: 1 + 2 + 3 (empty, one edge, connected)
    assert len(names) == 6


def test_rooted_class_counts():
    assert [len(rooted_classes(n)) for n in range(1, 5)] == [12, 39, 150, 630]
