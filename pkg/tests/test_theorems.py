"""Verification-suite plumbing: registry, determinism, coverage, report shape."""

import json

import pytest

from mannheim import theorems as th
from mannheim.surface_io import theorem_report_json

EXPECTED_IDS = [
    "lemma-2.1", "thm-3.1", "frame-5", "frame-7", "thm-4.1",
    "thm-5.1-i", "thm-5.1-ii", "thm-6.1", "eq-25", "thm-5.2",
    "thm-6.2", "cor-5.3", "cor-5.4",
]


def test_registry_order_and_size():
    assert list(th.REGISTRY) == EXPECTED_IDS


def test_default_suite_all_pass():
    reports = th.run_suite()
    assert len(reports) == 13
    assert [r.id for r in reports] == EXPECTED_IDS
    for r in reports:
        assert r.passed, (r.id, r.max_residual, r.params)
        assert 0.0 <= r.max_residual <= th.REGISTRY[r.id].tolerance


def test_suite_deterministic():
    a = th.run_suite(filter="lemma")
    b = th.run_suite(filter="lemma")
    assert a[0].max_residual == b[0].max_residual
    assert a[0].argmax_s == b[0].argmax_s


def test_seed_changes_lemma_samples():
    a = th.run_case("lemma-2.1", seed=0)
    b = th.run_case("lemma-2.1", seed=12345)
    assert a.passed and b.passed
    assert a.max_residual != b.max_residual  # different sample clouds


def test_filter_substring():
    reports = th.run_suite(filter="5.1")
    assert [r.id for r in reports] == ["thm-5.1-i", "thm-5.1-ii"]
    assert th.run_suite(filter="no-such-case") == []


def test_pointer_ids_rejected():
    with pytest.raises(ValueError, match="cor-5.3"):
        th.run_case("cor-6.3")
    with pytest.raises(ValueError, match="cor-5.4"):
        th.run_case("cor-6.4")


def test_unknown_id_rejected():
    with pytest.raises(ValueError, match="lemma-2.1"):
        th.run_case("thm-9.9")


def test_coverage_spans_full_scope():
    covered = set()
    for tokens in th.COVERAGE.values():
        covered.update(tokens)
    assert covered == set(th.FULL_SCOPE)
    assert len(th.FULL_SCOPE) == 15


def test_report_json_schema():
    reports = th.run_suite(filter="thm-3.1", seed=3)
    doc = json.loads(theorem_report_json(reports, 3, th.SUITE_VERSION))
    assert doc["suite_version"] == th.SUITE_VERSION
    assert doc["seed"] == 3
    assert len(doc["cases"]) == 1
    case = doc["cases"][0]
    assert set(case) == {"id", "verdict", "max_residual", "argmax_s",
                         "excluded_intervals", "params"}
    assert case["verdict"] == "pass"
    assert isinstance(case["max_residual"], float)


def test_case_tolerances_documented():
    # the registry carries the acceptance tolerances the runners enforce
    assert th.REGISTRY["lemma-2.1"].tolerance == 1e-12
    assert th.REGISTRY["frame-5"].tolerance == 1e-7
    assert th.REGISTRY["thm-3.1"].tolerance <= 1e-8
    for case in th.REGISTRY.values():
        assert case.title
        assert 0.0 < case.tolerance <= 1e-5
