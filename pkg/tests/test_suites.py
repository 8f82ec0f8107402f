import pytest

from torsors.suites import (COVER_NAMES, SUITES, gamma_group_keys, named_cover, named_group,
                            run_suites, suite_names)


def test_suite_names():
    assert suite_names("all") == list(SUITES)
    assert suite_names("h1") == ["h1"]
    with pytest.raises(KeyError, match="unknown suite"):
        suite_names("nope")


def test_named_groups_have_expected_orders():
    assert [named_group(n).order for n in ("1", "Z2", "V4", "S3", "D4", "Q8")] == [1, 2, 4, 6, 8, 8]


def test_keys_skip_missing_nontrivial_actions():
    # Z3 has no nontrivial action on Z2
    assert gamma_group_keys(["Z3"], ["Z2"]) == [("Z3", "Z2", 0)]
    assert ("Z2", "Z3", 1) in gamma_group_keys(["Z2"], ["Z3"])


def test_covers_validate():
    for name in COVER_NAMES:
        assert named_cover(name).name == name


def test_order_cap_drops_units():
    full = {r.claim: r.instances for r in run_suites("selftwist")}
    capped = {r.claim: r.instances for r in run_suites("selftwist", max_order=6)}
    assert capped["self-twist"] < full["self-twist"]
    assert run_suites("selftwist", max_order=2) == []


def test_reports_merge_in_first_seen_order():
    reps = run_suites("specialization", max_order=6)
    assert [r.claim for r in reps] == ["twisting-lemma", "twisted-cover-fibers", "star-invariance",
                                       "conjugate-sections", "double-point"]
    assert all(r.passing for r in reps)
