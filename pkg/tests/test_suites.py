import pytest

from tracelab import load_ring_doc, run_suite, suite_names

SPECS = ["dual_numbers:2", "fat_point:2", "mat2:2", "dual_numbers:3", "ss2:Q"]

# verdicts other than pass that are genuine outcomes at max_dim 3
EXPECTED = {
    ("left-exact", "fat_point:2"): {"fail": 1},
    ("inj-char", "mat2:2"): {"fail": 3},  # minimal left ideals of M_2 are not trace
    ("inj-char", "ss2:Q"): {"inconclusive": 1},  # no finite ideal lattice over Q
    ("x-reflexive-invariant", "mat2:2"): {"inconclusive": 1},  # Hom is not a module
    ("gor-dim1", "mat2:2"): {"inconclusive": 1},
}


@pytest.mark.parametrize("spec", SPECS)
@pytest.mark.parametrize("suite", suite_names())
def test_suite_smoke(suite, spec):
    r = run_suite(suite, load_ring_doc(spec), {"max_dim": 3})
    want = EXPECTED.get((suite, spec), {})
    assert r.summary["fail"] == want.get("fail", 0), [c.name for c in r.failures()]
    assert r.summary["inconclusive"] == want.get("inconclusive", 0)
    assert r.summary["total"] > 0
    assert [c.index for c in r.cases] == list(range(len(r.cases)))


def test_rational_runs_note_the_missing_lattice():
    r = run_suite("tracebasic", load_ring_doc("ss2:Q"), {"max_dim": 3})
    assert any("needs a finite field" in n for n in r.notes)


def test_mat2_inj_char_failures_are_left_ideals():
    r = run_suite("inj-char", load_ring_doc("mat2:2"))
    fails = r.failures()
    assert len(fails) == 3
    for c in fails:
        assert len(c.counterexample["subspace_basis"]) == 2


def test_left_exact_counterexamples_over_local_rings():
    for spec in ("fat_point:2", "ci4:2"):
        r = run_suite("left-exact", load_ring_doc(spec), {"max_dim": 3})
        assert r.exit_code == 1
        for c in r.failures():
            cex = c.counterexample
            assert len(cex["trace_x"]) < len(cex["trace_y_meet_x"])


def test_noncommutative_hom_module_is_inconclusive():
    r = run_suite("gor-dim1", load_ring_doc("mat2:2"))
    assert r.exit_code == 3


@pytest.mark.slow
def test_tracebasic_gf3_ss2():
    r = run_suite("tracebasic", load_ring_doc("ss2:3"))
    assert r.exit_code == 0
