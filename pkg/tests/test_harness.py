import pytest

from knotproj import harness
from knotproj.harness import CatalogIncomplete, resolve_suites, run_suite


@pytest.mark.parametrize("suite", sorted(harness.SUITES))
def test_every_suite_passes_small(suite, catalog5):
    rep = run_suite(suite, 5, catalog5)
    assert rep.passed, rep.counterexamples[:3]
    assert rep.n_max == 5


def test_reports_are_deterministic(catalog5):
    a = run_suite("T5", 5, catalog5).payload()
    b = run_suite("T5", 5, catalog5).payload()
    assert a == b
    assert "wall_time" not in a


def test_empty_range_is_vacuous(catalog5):
    assert run_suite("T2", 0, catalog5).instances == 0
    assert run_suite("T1b", 0, catalog5).instances == 1
    assert run_suite("T10", 0, catalog5).instances == 1


def test_incomplete_catalog(catalog5):
    with pytest.raises(CatalogIncomplete):
        run_suite("T3", 6, catalog5)


def test_plain_record_list(catalog5):
    rep = run_suite("T7", 4, catalog5.records)
    assert rep.passed


def test_counterexample_is_reported(catalog5):
    """A deliberately wrong predicate surfaces as a failing report."""
    bad = harness.Suite("TX", "every curve is the circle", 2, lambda recs, ctx: (
        len(recs),
        [harness._cx(r, "not the circle") for r in recs if r.n],
        {},
    ))
    harness.SUITES["TX"] = bad
    try:
        rep = run_suite("TX", 2, catalog5)
    finally:
        del harness.SUITES["TX"]
    assert not rep.passed and len(rep.counterexamples) == 3
    assert rep.summary().startswith("FAIL")


def test_resolve_suites():
    assert resolve_suites("all") == list(harness.ACCEPTANCE_SUITES)
    assert "T4" not in harness.ACCEPTANCE_SUITES
    assert resolve_suites("t1b,T2") == ["T1b", "T2"]
    with pytest.raises(KeyError):
        resolve_suites("T99")


def test_cached_catalog(tmp_path):
    cat = harness.cached_catalog(2, cache_dir=tmp_path)
    assert (tmp_path / "catalog-n2.jsonl").exists()
    again = harness.cached_catalog(1, cache_dir=tmp_path)
    assert again.n_max == 2 and len(again.records) == len(cat.records)
