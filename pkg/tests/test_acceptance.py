"""Acceptance criteria, one test each. Every test logs a pass/fail line with its runtime."""

import time

from tracelab import (
    builtin_presets,
    injective_envelope,
    is_injective_module,
    load_ring_doc,
    preset_algebra,
    run_suite,
    suite_names,
)
from tracelab.corpus import build_corpus

from oracles import run_oracle_sweep

SIX = ["dual_numbers:2", "jordan3:2", "fat_point:2", "ci4:2", "ss2:2", "mat2:2"]
_REPORTS: dict = {}


def report(suite, spec, max_dim=6):
    key = (suite, spec, max_dim)
    if key not in _REPORTS:
        _REPORTS[key] = run_suite(suite, load_ring_doc(spec), {"max_dim": max_dim})
    return _REPORTS[key]


def cases(r, name):
    return [c for c in r.cases if c.name == name]


def only(r, name):
    (c,) = cases(r, name)
    return c


class Criterion:
    def __init__(self, log, number, title, bound):
        self.log, self.number, self.title, self.bound = log, number, title, bound

    def __enter__(self):
        self.start = time.perf_counter()
        return self

    def __exit__(self, exc_type, exc, tb):
        self.elapsed = time.perf_counter() - self.start
        ok = exc_type is None and self.elapsed < self.bound
        self.log.append(
            f"[{'PASS' if ok else 'FAIL'}] criterion {self.number}: {self.title} ({self.elapsed:.1f} s, bound {self.bound} s)"
        )
        print(self.log[-1])
        if exc_type is None:
            assert self.elapsed < self.bound, f"runtime {self.elapsed:.1f} s exceeds {self.bound} s"
        return False


def test_criterion_1_tracebasic(acceptance_log):
    with Criterion(acceptance_log, 1, "tracebasic on six presets, max_dim 6", 30):
        for spec in SIX:
            r = report("tracebasic", spec)
            assert r.summary["fail"] == 0 and r.summary["inconclusive"] == 0, (spec, r.failures())
            assert r.summary["total"] > 0


def test_criterion_2_inj_char(acceptance_log):
    with Criterion(acceptance_log, 2, "inj-char ideal counts and the fat point witness", 5):
        r = report("inj-char", "jordan3:2")
        assert only(r, "ideal count").details["count"] == 4
        assert only(r, "two-sided trace ideals").details["checked"] == 4  # all four are trace
        r = report("inj-char", "dual_numbers:2")
        assert only(r, "ideal count").details["count"] == 3
        assert only(r, "two-sided trace ideals").details["checked"] == 3
        for spec in ("jordan3:2", "dual_numbers:2"):
            assert report("inj-char", spec).exit_code == 0
        r = report("inj-char", "fat_point:2")
        c = only(r, "ideal (x) not trace, closure = socle")
        assert c.verdict == "pass"
        assert c.details == {"trace": False, "closure_dim": 2, "closure_is_socle": True}


def test_criterion_3_qi_trace(acceptance_log):
    with Criterion(acceptance_log, 3, "qi-trace over dual numbers, corpus dim <= 4", 30):
        r = report("qi-trace", "dual_numbers:2", 4)
        assert r.exit_code == 0 and r.summary["total"] == 8
        for c in r.cases:
            if c.name.startswith("qi vs trace"):
                assert c.details["quasi_injective"] == c.details["trace_via_envelope"]
        for name, expected in [("S0", True), ("R", True), ("S0 ⊕ R", False)]:
            d = only(r, f"qi vs trace {name}").details
            assert d["quasi_injective"] is expected and d["trace_via_envelope"] is expected


def test_criterion_4_ss_char(acceptance_log):
    with Criterion(acceptance_log, 4, "ss-char on ss2 and mat2, dual numbers witness", 30):
        for spec in ("ss2:2", "mat2:2"):
            r = report("ss-char", spec)
            assert r.exit_code == 0 and r.summary["total"] > 0
        r = report("ss-char", "dual_numbers:2")
        c = only(r, "witness S ⊕ R not trace in its envelope")
        assert c.verdict == "pass"
        assert c.details["trace_via_envelope"] is False and c.details["trace_up_to_iso"] == "no"
        assert c.details["envelope_dim"] == 4 and c.details["closure_dim"] == 4


def test_criterion_5_gor_dim1(acceptance_log):
    with Criterion(acceptance_log, 5, "gor-dim1 reflexivity and the fat point bidual", 60):
        for spec in ("jordan3:2", "ci4:2"):
            r = report("gor-dim1", spec)
            assert r.exit_code == 0
            torsionless = [c for c in r.cases if c.name.startswith("bidual") and c.details["torsionless"]]
            assert torsionless
            for c in torsionless:
                d = c.details
                assert d["reflexive"] and d["trace_via_eval"]
                assert d["eval_rank"] == d["bidual_dim"]  # the evaluation map is an isomorphism
        c = only(report("gor-dim1", "fat_point:2"), "maximal ideal torsionless, not reflexive")
        assert c.verdict == "pass"
        assert c.details["eval_rank"] == 2 and c.details["bidual_dim"] == 8
        assert c.details["reflexive"] is False and c.details["trace_via_eval"] is False


def test_criterion_6_envelopes(acceptance_log):
    with Criterion(acceptance_log, 6, "envelope properties on every preset", 60):
        for spec in builtin_presets():
            r = report("envelope-props", spec)
            assert r.exit_code == 0, (spec, r.failures())
            for c in r.cases:
                if c.name.startswith("E("):
                    d = c.details
                    assert d["injective"] and d["embedding_injective"] and d["essential"] and d["envelope"]
                    assert d["seeds_agree"] == "yes"
        assert only(report("envelope-props", "dual_numbers:2"), "dim E(S0) = 2").verdict == "pass"
        assert only(report("envelope-props", "fat_point:2"), "dim E(S0) = 3").verdict == "pass"
        assert only(report("envelope-props", "dual_numbers:2"), "E(S0)").details["envelope_dim"] == 2
        assert only(report("envelope-props", "fat_point:2"), "E(S0)").details["envelope_dim"] == 3
        a = preset_algebra("mat2:2")
        for m, _ in build_corpus(a, max_dim=6).modules:
            env = injective_envelope(m)
            assert is_injective_module(m)
            assert env.envelope.dim == m.dim and env.embedding.is_surjective


def test_criterion_7_left_exact(acceptance_log):
    with Criterion(acceptance_log, 7, "left-exact over dual numbers and the right exactness witness", 5):
        r = report("left-exact", "dual_numbers:2")
        assert r.exit_code == 0
        c = only(r, "right exactness fails for I=(x)")
        assert c.details["left_exact"] is True and c.details["surjective"] is False


def test_criterion_8_oracles(acceptance_log):
    with Criterion(acceptance_log, 8, "oracle equivalences, >= 1000 instances", 120):
        out = run_oracle_sweep()
        assert out["instances"] >= 1000
        assert out["mismatches"] == 0


def test_criterion_9_two_sided(acceptance_log):
    with Criterion(acceptance_log, 9, "trace ideals are two-sided in every suite run", 60):
        for s in suite_names():
            report(s, "mat2:2")
        for spec in SIX:
            report("trace-two-sided", spec)
        seen = [(key, c) for key, r in _REPORTS.items() for c in cases(r, "two-sided trace ideals")]
        assert {key[1] for key, _ in seen} >= set(SIX)
        bad = [(key, c.details) for key, c in seen if c.verdict != "pass"]
        assert not bad
