import json
from fractions import Fraction

import numpy as np
import pytest

from tracelab import Module, Submodule, Subspace, check_left_exactness, load_ring_doc, preset_algebra, run_suite
from tracelab.errors import UnknownSuite
from tracelab.report import SCHEMA_VERSION, Case, Report, jsonable, render_report, report_from_dict
from tracelab.suites import SuiteParams, suite_names


@pytest.fixture
def forced_failure(monkeypatch):
    """A trace-two-sided run in which the right-absorption check is forced to fail."""
    import tracelab.suites as suites

    monkeypatch.setattr(suites, "check_two_sidedness", lambda s: False)
    return run_suite("trace-two-sided", load_ring_doc("dual_numbers:2"))


def test_empty_report_counts_zero():
    r = Report("tracebasic", "none", {"seed": 3})
    assert r.summary == {"pass": 0, "fail": 0, "inconclusive": 0, "total": 0}
    assert r.exit_code == 0 and r.seed == 3
    text = render_report(r)
    assert "summary: 0 pass, 0 fail, 0 inconclusive of 0" in text
    assert json.loads(render_report(r, "json"))["summary"]["total"] == 0


def test_case_rejects_bad_verdict():
    with pytest.raises(ValueError):
        Case("x", "y", "maybe")


def test_exit_codes():
    r = Report("s", "r", {})
    r.add(Case("a", "", "pass"))
    assert r.exit_code == 0
    r.add(Case("b", "", "inconclusive"))
    assert r.exit_code == 3
    r.add(Case("c", "", "fail"))
    assert r.exit_code == 1
    assert [c.index for c in r.cases] == [0, 1, 2]


def test_jsonable():
    assert jsonable(np.array([[1, 2]], dtype=np.int64)) == [[1, 2]]
    assert jsonable(Fraction(3, 4)) == "3/4" and jsonable(Fraction(4, 2)) == 2
    assert jsonable({1: (np.int64(2), np.bool_(True))}) == {"1": [2, True]}


def test_forced_failure_carries_basis_rows(forced_failure):
    r = forced_failure
    fails = r.failures()
    assert fails and r.exit_code == 1
    assert all("subspace_basis" in c.counterexample and "ambient_action" in c.counterexample for c in fails)
    rows = next(c.counterexample["subspace_basis"] for c in fails if c.counterexample["subspace_basis"])
    assert rows == [[0, 1]]  # the ideal (x)
    text = render_report(r)
    assert "[        FAIL]" in text


def test_json_roundtrip_through_schema(forced_failure):
    d = json.loads(render_report(forced_failure, "json"))
    assert d["schema_version"] == SCHEMA_VERSION
    assert set(d) == {"schema_version", "suite", "ring", "seed", "params", "cases", "summary", "notes", "wall_time"}
    for c in d["cases"]:
        assert set(c) == {"index", "name", "inputs", "verdict", "details", "counterexample"}
    again = report_from_dict(d)
    assert again.to_dict() == d


def test_report_from_dict_checks():
    d = Report("s", "r", {}).to_dict()
    d["schema_version"] = 99
    with pytest.raises(ValueError, match="schema_version"):
        report_from_dict(d)
    d = Report("s", "r", {}).to_dict()
    d["summary"]["pass"] = 1
    with pytest.raises(ValueError, match="summary"):
        report_from_dict(d)


def test_render_rejects_unknown_format():
    with pytest.raises(ValueError):
        render_report(Report("s", "r", {}), "xml")


def test_real_counterexample_reverifies_from_json():
    # left-exactness fails over fat_point; rebuild the failing triple from the report alone
    r = run_suite("left-exact", load_ring_doc("fat_point:2"), {"max_dim": 3})
    d = json.loads(render_report(r, "json"))
    fails = [c for c in d["cases"] if c["verdict"] == "fail"]
    assert fails
    cex = fails[0]["counterexample"]
    a = preset_algebra(d["ring"])
    y = Module(a, cex["ambient_action"])
    x = Submodule(y, Subspace.span(a.field, y.dim, np.array(cex["subspace_basis"], dtype=np.int64)))
    m = Module(a, cex["test_action"])
    res = check_left_exactness(m, x, y)
    assert not res.holds
    assert res.trace_x.dim == len(cex["trace_x"]) < len(cex["trace_y_meet_x"])


def test_reports_are_reproducible():
    doc = load_ring_doc("fat_point:2")
    p = SuiteParams(max_dim=3, seed=5)
    a = run_suite("qi-trace", doc, p).to_dict()
    b = run_suite("qi-trace", load_ring_doc("fat_point:2"), p).to_dict()
    a.pop("wall_time"), b.pop("wall_time")
    assert a == b


def test_unknown_suite():
    with pytest.raises(UnknownSuite):
        run_suite("nope", load_ring_doc("ss2:2"))
    assert "tracebasic" in suite_names() and len(suite_names()) == 11
