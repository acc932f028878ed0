import pytest

from tropci.search import (
    RunReport,
    SearchConfig,
    _aggregate,
    generate_instance,
    structural_checks,
    run_search,
)
from tropci.curve import intersection_curve
from tropci.trop_core import full_support, standard_plane

CFG = SearchConfig(seed=5, attempts=6, style="concave")


@pytest.fixture(scope="module")
def report():
    return run_search(CFG)


def test_config_validation():
    for bad in (dict(attempts=0), dict(attempts=-1), dict(bound=0), dict(style="gauss"),
                dict(require="any"), dict(quota=0), dict(style="rational", denominator=10)):
        with pytest.raises(ValueError):
            SearchConfig(seed=0, **{"attempts": 1, **bad})


def test_generation_is_seeded():
    for style in ("integer", "rational", "concave"):
        cfg = SearchConfig(seed=3, attempts=1, style=style)
        g = generate_instance(cfg, 4)
        assert g == generate_instance(cfg, 4) and g != generate_instance(cfg, 5)
        assert set(g.terms) == set(full_support(3, 4))
    ints = generate_instance(SearchConfig(seed=1, attempts=1), 0)
    assert all(c.denominator == 1 and abs(c) <= 30 for c in ints.terms.values())
    rat = generate_instance(SearchConfig(seed=1, attempts=1, style="rational"), 0)
    assert len({c - c.numerator // c.denominator for c in rat.terms.values()}) == 35


def test_determinism_byte_identical(report):
    again = run_search(CFG)
    assert report.dumps() == again.dumps()


def test_report_roundtrip(report):
    assert RunReport.loads(report.dumps()) == report
    assert report.schema_version == 1


def test_certified_records_carry_full_check_vector(report):
    certified = [r for r in report.records if r.get("certified")]
    assert certified
    keys = set(certified[0]["checks"])
    for r in certified:
        assert set(r["checks"]) == keys and all(r["checks"].values())
        assert r["counts"] == [20, 22, 16] and r["genus"] == 3
        assert r["skeleton_class"] != "Lollipop"
    for r in report.records:
        if not r.get("certified"):
            assert r["verdict"] != "Smooth"
    agg = report.aggregate
    assert agg["attempts_run"] == 6 and agg["zero_lollipops"] and agg["finding"] is None
    assert agg["all_checks_pass"]


def test_quota_stops_early():
    r = run_search(SearchConfig(seed=5, attempts=50, style="concave", quota=2))
    assert r.aggregate["certified"] == 2
    assert r.records[-1]["certified"]


def test_workers_do_not_change_report():
    cfg = SearchConfig(seed=11, attempts=4, style="concave", quota=2)
    assert run_search(cfg, workers=2).dumps() == run_search(cfg).dumps()


def test_lollipop_is_a_finding():
    records = [
        {"offset": 0, "verdict": "Smooth", "certified": True, "skeleton_class": "K4", "checks": {"a": True}},
        {"offset": 1, "verdict": "Smooth", "certified": True, "skeleton_class": "Lollipop", "checks": {"a": True}},
        {"offset": 2, "verdict": "NotWeaklySmooth", "certified": False},
    ]
    agg = _aggregate(records)
    assert agg["lollipop_offsets"] == [1] and not agg["zero_lollipops"]
    assert agg["finding"].startswith("FINDING")
    assert agg["acceptance_rate"] == "2/3"
    assert agg["class_histogram"] == {"K4": 1, "Lollipop": 1}


def test_structural_checks_on_frozen_instance(smooth_g):
    checks, info = structural_checks(smooth_g, intersection_curve(standard_plane(), smooth_g))
    assert all(checks.values())
    assert (info["s"], info["t"], info["interior_points"]) == (7, 1, 1)
    assert sum(info["ray_counts"].values()) == 4
