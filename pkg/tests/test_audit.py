import itertools

import pytest
from hypothesis import given, strategies as st

from agshare import audit, instances

labels = st.lists(st.sampled_from(["A", "B", "C", "D", "E"]), min_size=1, max_size=3,
                  unique=True)


@given(st.lists(labels, max_size=8), st.lists(labels, max_size=8))
def test_diff_partitions_both_lists(derived, paper):
    r = audit.DiscrepancyReport("x", derived, paper)
    assert len(r.matched) + len(r.paper_only) == len(r.paper)
    assert len(r.matched) + len(r.derived_only) == len(r.derived)
    assert len(r.paper) + len(r.duplicates) == len(paper)
    assert (r.discrepancies == 0) == ({tuple(sorted(e)) for e in derived}
                                       == {tuple(sorted(e)) for e in paper}
                                       and not r.duplicates)


def test_order_insensitive_entries():
    r = audit.DiscrepancyReport("x", [["B", "A"]], [["A", "B"], ["B", "A"]])
    assert r.matched == [("A", "B")] and r.duplicates == [("A", "B")]
    assert r.discrepancies == 1


@pytest.fixture(scope="module")
def audits():
    return audit.paper_verify()


def test_example1_clean(audits):
    a = audits["example1"]
    assert a.discrepancies == 0
    assert a.checks["minimal_qualified_total"] == 15
    assert a.checks["derived_satisfy_theorem5"]


def test_example2_four_sets_flagged(audits):
    r = audits["example2"].report("size 4")
    assert r.paper_only and len(r.derived) == 5
    for note in r.notes.values():
        assert note["group_sum"] != [0, 0] and note["theorem_holds"] is False


def test_example3_size4_circuits(audits):
    a = audits["example3"]
    r = a.report("circuits of size 4")
    assert (len(r.derived), len(r.paper)) == (10, 8)
    assert r.paper_only == [("P0", "P1", "P2", "P4")]
    assert r.notes["{P0,P1,P2,P4}"] == {"not_in_D": ["P4"]}
    assert a.checks["derived_satisfy_theorem6"]


def test_example4_duplicate_entry(audits):
    a = audits["example4"]
    assert a.checks["derived_satisfy_theorem6"]
    r = a.report("circuits of size 5")
    assert r.duplicates == [("P02", "P12", "P22")]


def test_klein_descriptions(audits, klein):
    a = audits["proposition3"]
    assert a.checks["line_rule_holds"] and not a.checks["literal_rule_holds"]
    lit = audit.klein_literal_description(klein)
    assert len(lit) == 28 and a.report("literal rule").derived_only


def test_klein_lines_independently():
    # lines of PG(2, 8) have 9 points and every pair of points lies on exactly one
    K = instances.klein_curve()
    pts = K.participant_points()
    lines = K.lines()
    assert len(lines) == 73
    for P, Q in itertools.combinations(pts[:6], 2):
        assert sum(K.on_line(L, P) and K.on_line(L, Q) for L in lines) == 1
