"""Named verification suites: each runs a family of checks and returns a Report."""

from __future__ import annotations

import time
from dataclasses import asdict, dataclass
from typing import Callable

import numpy as np

from .algebra import (
    Module,
    Submodule,
    conjugate,
    direct_sum,
    enumerate_submodules,
    radical_space,
    regular_module,
    socle,
    submodule_generated,
)
from .corpus import Corpus, build_corpus, ideal_name
from .envelopes import (
    check_envelope,
    check_preenvelope,
    injective_envelope,
    injective_indecomposables,
    is_essential,
    is_injective_module,
    simple_modules,
)
from .errors import FieldNotFinite, InternalError, NotCommutative, Overflow, UnknownSuite
from .hom import evaluation_map, hom_as_module, hom_space, is_isomorphic, precompose_map, restriction_rank
from .linalg import Subspace, column_space, image_of, inverse, subspace_intersect, vectors_in
from .report import Case, Report
from .ringdoc import RingDoc
from .trace import (
    check_left_exactness,
    check_reflexive_criterion,
    check_two_sidedness,
    is_fully_invariant,
    is_trace_submodule,
    is_trace_up_to_iso,
    is_trace_via,
    is_X_reflexive_then_fully_invariant,
    lifting_property,
    trace_submodule,
)


@dataclass
class SuiteParams:
    max_dim: int = 6
    cap: int = 4096  # largest submodule lattice enumerated per module
    seed: int = 0
    trials: int = 32


class _Ctx:
    """Shared state for one suite run: corpus, lattices, and the report."""

    def __init__(self, name: str, doc: RingDoc, params: SuiteParams):
        self.doc = doc
        self.algebra = doc.algebra
        self.field = doc.algebra.field
        self.params = params
        self.report = Report(name, doc.name, asdict(params))
        self._corpus: Corpus | None = None
        self._lattices: dict[int, list[Submodule] | None] = {}
        self.trace_ideals: dict[Subspace, Submodule] = {}
        self.excluded: list[str] = []

    @property
    def regular(self) -> Module:
        return regular_module(self.algebra)

    @property
    def corpus(self) -> Corpus:
        if self._corpus is None:
            p = self.params
            self._corpus = build_corpus(self.algebra, p.max_dim, p.cap, p.seed, p.trials)
            self.report.notes.extend(self._corpus.notes)
        return self._corpus

    def modules(self, max_dim: int | None = None) -> list[Module]:
        """Corpus modules, plus named modules of a ring file, up to ``max_dim``."""
        bound = self.params.max_dim if max_dim is None else max_dim
        out = [m for m, _ in self.corpus.modules if m.dim <= bound]
        if self.doc.preset is None:
            seen = {m.name for m in out}
            out += [m for n, m in self.doc.modules.items() if n not in seen and n != "R" and m.dim <= bound]
        return out

    def lattice(self, m: Module) -> list[Submodule] | None:
        """All submodules of ``m``; ``None`` (and a note) past the cap.

        Over an infinite field only ``0``, ``m`` and named submodules are used.
        """
        key = id(m)
        if key in self._lattices:
            return self._lattices[key]
        try:
            subs = enumerate_submodules(m, self.params.cap)
        except Overflow:
            self.excluded.append(m.name)
            subs = None
        except FieldNotFinite:
            f = self.field
            subs = [Submodule(m, Subspace.zero(f, m.dim), check=False)]
            subs += [s for s in self.doc.submodules.values() if s.ambient is m and 0 < s.dim < m.dim]
            if m.dim:
                subs.append(Submodule(m, Subspace.full(f, m.dim), check=False))
        self._lattices[key] = subs
        return subs

    def is_regular(self, m: Module) -> bool:
        r = self.regular
        return m is r or (m.dim == r.dim and all(np.array_equal(x, y) for x, y in zip(m.action, r.action)))

    def note_trace_ideal(self, s: Submodule) -> None:
        if self.is_regular(s.ambient):
            self.trace_ideals.setdefault(s.space, Submodule(self.regular, s.space, check=False))

    def case(self, name: str, inputs: str, fn: Callable[[], tuple]) -> Case:
        """Run ``fn`` -> ``(ok, details[, counterexample])``; ``ok`` None means inconclusive."""
        try:
            out = fn()
            ok, details = out[0], out[1]
            cex = out[2] if len(out) > 2 else None
        except InternalError as exc:
            ok, details, cex = False, {"reason": f"internal check failed: {exc}"}, None
        except Exception as exc:  # upstream errors never pass silently
            ok, details, cex = None, {"reason": f"{type(exc).__name__}: {exc}"}, None
        verdict = "inconclusive" if ok is None else ("pass" if ok else "fail")
        if verdict == "fail" and cex is None:
            cex = {"reason": details.get("reason", "see details")}
        return self.report.add(Case(name, inputs, verdict, details, cex if verdict == "fail" else None))

    def finish(self) -> None:
        if self.trace_ideals:
            self.case(
                "two-sided trace ideals",
                f"{len(self.trace_ideals)} trace ideals of R met in this run",
                lambda: _two_sided(self, list(self.trace_ideals.values())),
            )
        if self.excluded:
            self.report.notes.append(
                f"{len(self.excluded)} module(s) skipped: more than {self.params.cap} submodules "
                f"({', '.join(self.excluded[:6])}{', ...' if len(self.excluded) > 6 else ''})"
            )


def _sub_cex(s: Submodule, **extra) -> dict:
    out = {"ambient": s.ambient.name, "ambient_action": list(s.ambient.action), "subspace_basis": s.space.basis}
    out.update(extra)
    return out


def _two_sided(ctx: _Ctx, ideals: list[Submodule]) -> tuple:
    bad = [s for s in ideals if not check_two_sidedness(s)]
    details = {"checked": len(ideals), "ideals": [ideal_name(s, ctx.algebra.basis_names) for s in ideals]}
    if bad:
        return False, details, _sub_cex(bad[0], reason="trace ideal not closed under right multiplication")
    return True, details


def _random_invertible(f, n: int, rng: np.random.Generator):
    for _ in range(1000):
        p = f.random(rng, (n, n))
        q = inverse(p, f)
        if q is not None:
            return p, q
    raise InternalError("no invertible matrix found")


def _sample(items: list, k: int) -> list:
    if len(items) <= k:
        return list(items)
    idx = np.linspace(0, len(items) - 1, k).round().astype(int)
    return [items[i] for i in dict.fromkeys(idx.tolist())]


def _restrict(s: Submodule, y: Submodule) -> Submodule:
    """``s`` as a submodule of the module ``y`` (requires ``s ⊆ y``)."""
    ym = y.as_module()
    f = ym.field
    coords = np.vstack([y.space.coordinates(v) for v in s.space.basis]) if s.dim else f.zeros(0, y.dim)
    space = Subspace.span(f, y.dim, coords) if s.dim else Subspace.zero(f, y.dim)
    return Submodule(ym, space, check=False)


# -- tracebasic ------------------------------------------------------------


def _tracebasic_ambient(ctx: _Ctx, x: Module, subs: list[Submodule]) -> tuple:
    f = x.field
    rng = np.random.default_rng([ctx.params.seed, x.dim, len(subs)])
    verdicts = {}
    for s in subs:
        try:
            verdicts[s.space] = is_trace_submodule(s)
        except InternalError as exc:
            return False, {"reason": str(exc)}, _sub_cex(s, reason="criteria (ii) and (iii) disagree")
    trace_subs = [s for s in subs if verdicts[s.space].is_trace]
    for s in trace_subs:
        ctx.note_trace_ideal(s)
    # the closure Tr_S(X) contains S and is itself trace
    for s in subs:
        t = verdicts[s.space].trace_submodule
        if not t.space.contains_all(s.space.basis):
            return False, {"reason": "trace closure misses S"}, _sub_cex(s)
        vt = verdicts.get(t.space)
        if vt is None or not vt.is_trace:
            return False, {"reason": "trace closure is not a trace submodule"}, _sub_cex(t, source=s.space.basis)
    # hereditary: S trace in X stays trace in every X' between S and X
    hereditary = 0
    for s in trace_subs:
        mids = [y for y in subs if s.dim < y.dim < x.dim and y.space.contains_all(s.space.basis)]
        for y in _sample(mids, 4):
            hereditary += 1
            if not is_trace_submodule(_restrict(s, y)).is_trace:
                return False, {"reason": "trace property not inherited"}, _sub_cex(s, intermediate=y.space.basis)
    # isomorphism stability: conjugated ambient and isomorphic copies of S
    iso_checks = 0
    if x.dim:
        p, q = _random_invertible(f, x.dim, rng)
        xc, _ = conjugate(x, p, q)
        for s in _sample(subs, 8):
            iso_checks += 1
            img = Subspace.span(f, x.dim, f.matmul(s.space.basis, p.T)) if s.dim else Subspace.zero(f, x.dim)
            if is_trace_submodule(Submodule(xc, img, check=False)).is_trace != verdicts[s.space].is_trace:
                return False, {"reason": "verdict changed under an isomorphism of X"}, _sub_cex(s, conjugator=p)
            sm = s.as_module()
            if sm.dim:
                ps, qs = _random_invertible(f, sm.dim, rng)
                copy, _ = conjugate(sm, ps, qs)
                if trace_submodule(copy, x).space != verdicts[s.space].trace_submodule.space:
                    return False, {"reason": "Tr_S(X) differs from Tr_S'(X) for S' ≅ S"}, _sub_cex(s, conjugator=ps)
    # two different trace submodules cannot be isomorphic (both equal the common trace)
    pairs = 0
    for i, s in enumerate(trace_subs):
        for t in trace_subs[i + 1 :]:
            if s.dim != t.dim or s.dim == 0 or pairs >= 200:
                continue
            pairs += 1
            v = is_isomorphic(s.as_module(), t.as_module(), ctx.params.seed, ctx.params.trials)
            if v.yes:
                return False, {"reason": "two distinct isomorphic trace submodules"}, _sub_cex(s, other=t.space.basis)
    details = {
        "submodules": len(subs),
        "trace": len(trace_subs),
        "criteria_disagreements": 0,
        "hereditary_checks": hereditary,
        "iso_checks": iso_checks,
        "iso_pairs": pairs,
    }
    return True, details


def suite_tracebasic(ctx: _Ctx) -> None:
    for x in ctx.modules():
        subs = ctx.lattice(x)
        if subs is None:
            continue
        ctx.case(f"tracebasic {x.name}", f"{len(subs)} submodules, dim {x.dim}", lambda x=x, subs=subs: _tracebasic_ambient(ctx, x, subs))
    for name, s in ctx.doc.submodules.items():
        ctx.case(f"named {name}", f"{name} in {s.ambient.name}", lambda s=s: (_named_trace(ctx, s)))


def _named_trace(ctx: _Ctx, s: Submodule) -> tuple:
    v = is_trace_submodule(s)
    if v.is_trace:
        ctx.note_trace_ideal(s)
    return True, {"trace": v.is_trace, "closure_dim": v.trace_submodule.dim, "hom_dims": list(v.hom_dims)}


# -- trace-two-sided --------------------------------------------------------


def suite_two_sided(ctx: _Ctx) -> None:
    r = ctx.regular
    subs = ctx.lattice(r)
    names = ctx.algebra.basis_names
    if subs is None:
        ctx.case("ideal lattice", "left ideals of R", lambda: (None, {"reason": "lattice exceeds cap"}))
        subs = []
    found: dict[Subspace, tuple[str, Submodule]] = {}
    for s in subs:
        if is_trace_submodule(s).is_trace:
            found.setdefault(s.space, (f"trace ideal {ideal_name(s, names)}", s))
    for m in ctx.corpus.indecomposables:
        t = trace_submodule(m, r)
        found.setdefault(t.space, (f"Tr_{m.name}(R) = {ideal_name(t, names)}", t))
    for label, s in found.values():
        ctx.note_trace_ideal(s)
        ctx.case(label, f"dim {s.dim}", lambda s=s: (check_two_sidedness(s), {"dim": s.dim}, _sub_cex(s)))


# -- left-exact --------------------------------------------------------------

_LEFT_EXACT_WITNESS = {"dual_numbers": "(x)"}


def _left_exact_ambient(ctx: _Ctx, y: Module, subs: list[Submodule], tests: list[Module]) -> tuple:
    """``Tr_M(X) = X ∩ Tr_M(Y)`` for every submodule ``X`` of ``y`` and test module ``M``."""
    triples = 0
    failing: list[str] = []
    cex = None
    for m in tests:
        ty = trace_submodule(m, y).space
        for x in subs:
            triples += 1
            tx = image_of(x.inclusion().matrix, trace_submodule(m, x.as_module()).space)
            meet = subspace_intersect(ty, x.space)
            if tx != meet:
                failing.append(m.name)
                if cex is None:
                    cex = _sub_cex(x, test_module=m.name, test_action=list(m.action), trace_x=tx.basis, trace_y_meet_x=meet.basis)
                break
    d = {"triples": triples, "test_modules": [m.name for m in tests]}
    if failing:
        d["reason"] = f"Tr_M(X) != X ∩ Tr_M(Y) for M in {failing}"
        d["failing_test_modules"] = failing
        return False, d, cex
    return True, d


def suite_left_exact(ctx: _Ctx) -> None:
    tests = list(ctx.corpus.indecomposables)
    for y in ctx.modules():
        subs = ctx.lattice(y)
        if subs is None:
            continue
        ctx.case(f"left exact {y.name}", f"{len(subs)} sequences x {len(tests)} test modules", lambda y=y, subs=subs: _left_exact_ambient(ctx, y, subs, tests))
    ideal = _LEFT_EXACT_WITNESS.get(ctx.doc.preset or "")
    if ideal and ideal in ctx.doc.submodules:
        i = ctx.doc.submodules[ideal]

        def witness():
            le = check_left_exactness(i.as_module(), i, ctx.regular)
            d = {"left_exact": le.holds, "surjective": le.surjective, "image_dim": le.image_in_z.dim, "trace_quotient_dim": le.trace_z.dim}
            return le.holds and not le.surjective, d, _sub_cex(i, image=le.image_in_z.basis, trace_quotient=le.trace_z.basis)

        ctx.case(f"right exactness fails for I={ideal}", f"Tr_I(R) -> Tr_I(R/I), I={ideal}", witness)


# -- qi-trace ------------------------------------------------------------------


def _qi_on_lattice(m: Module, subs: list[Submodule]) -> Submodule | None:
    for sub in subs:
        if 0 < sub.dim < m.dim:
            r, d = restriction_rank(sub, m)
            if r != d:
                return sub
    return None


def _qi_trace_case(ctx: _Ctx, m: Module, subs: list[Submodule]) -> tuple:
    p = ctx.params
    bad = _qi_on_lattice(m, subs)
    qi = bad is None
    env = injective_envelope(m, p.seed, p.trials)
    via = is_trace_via(env.embedding)
    upto = is_trace_up_to_iso(m, env.envelope, p.seed, p.trials)
    details = {"quasi_injective": qi, "trace_via_envelope": via.is_trace, "trace_up_to_iso": upto.status, "envelope_dim": env.envelope.dim, "closure_dim": via.trace_submodule.dim}
    ok = qi == via.is_trace and (not via.is_trace or upto.status == "yes")
    cex = None
    if not ok:
        cex = {"module_action": list(m.action), "embedding": env.embedding.matrix}
        if bad is not None:
            cex["non_extending_submodule"] = bad.space.basis
    return ok, details, cex


def suite_qi_trace(ctx: _Ctx) -> None:
    for m in ctx.modules():
        subs = ctx.lattice(m)
        if subs is None:
            continue
        ctx.case(f"qi vs trace {m.name}", f"dim {m.dim}", lambda m=m, subs=subs: _qi_trace_case(ctx, m, subs))


# -- fully-invariant -----------------------------------------------------------


def _fully_invariant_ambient(ctx: _Ctx, x: Module, subs: list[Submodule]) -> tuple:
    n_trace = n_fi = 0
    for s in subs:
        tr = is_trace_submodule(s).is_trace
        fi = is_fully_invariant(s)
        n_trace += tr
        n_fi += fi
        if tr:
            ctx.note_trace_ideal(s)
        if tr and not fi:
            return False, {"reason": "trace submodule is not fully invariant"}, _sub_cex(s)
        if fi and not tr and lifting_property(s):
            return False, {"reason": "fully invariant with lifting but not trace"}, _sub_cex(s)
    return True, {"submodules": len(subs), "trace": n_trace, "fully_invariant": n_fi}


def _envelope_invariance(ctx: _Ctx, m: Module) -> tuple:
    env = injective_envelope(m, ctx.params.seed, ctx.params.trials)
    img = Submodule(env.envelope, column_space(env.embedding.matrix, m.field), check=False)
    tr = is_trace_submodule(img).is_trace
    fi = is_fully_invariant(img)
    return tr == fi, {"trace_via_envelope": tr, "fully_invariant": fi}, _sub_cex(img)


def suite_fully_invariant(ctx: _Ctx) -> None:
    for x in ctx.modules():
        subs = ctx.lattice(x)
        if subs is not None:
            ctx.case(f"trace => fully invariant in {x.name}", f"{len(subs)} submodules", lambda x=x, subs=subs: _fully_invariant_ambient(ctx, x, subs))
    for m in ctx.modules():
        ctx.case(f"envelope of {m.name}: trace <=> fully invariant", f"dim {m.dim}", lambda m=m: _envelope_invariance(ctx, m))


# -- reflexive-criterion -------------------------------------------------------


def _reflexive_ambient(ctx: _Ctx, x: Module, subs: list[Submodule]) -> tuple:
    applies = 0
    for s in subs:
        c = check_reflexive_criterion(s)
        if c.applies:
            applies += 1
            if not c.trace_confirmed:
                return False, {"reason": "criterion applies but S is not trace"}, _sub_cex(s)
            ctx.note_trace_ideal(s)
    return True, {"submodules": len(subs), "criterion_applies": applies, "homothety_surjective": c.homothety_surjective if subs else None}


def suite_reflexive_criterion(ctx: _Ctx) -> None:
    ambients = [ctx.regular]
    try:
        ambients += [e.module for e in injective_indecomposables(ctx.algebra, 0, ctx.params.trials)]
    except Exception as exc:
        ctx.report.notes.append(f"injective indecomposables unavailable: {exc}")
    for x in ambients:
        subs = ctx.lattice(x)
        if subs is None:
            continue
        ctx.case(f"homothety criterion in {x.name}", f"{len(subs)} submodules", lambda x=x, subs=subs: _reflexive_ambient(ctx, x, subs))


# -- x-reflexive-invariant -----------------------------------------------------


def _x_reflexive_ambient(ctx: _Ctx, x: Module, subs: list[Submodule]) -> tuple:
    refl = 0
    for s in subs:
        v = is_X_reflexive_then_fully_invariant(s)
        refl += v.x_reflexive
        if not v.implication_holds:
            return False, {"reason": "X-reflexive submodule not fully invariant"}, _sub_cex(s)
    return True, {"submodules": len(subs), "x_reflexive": refl}


def suite_x_reflexive(ctx: _Ctx) -> None:
    if not ctx.algebra.is_commutative:
        ctx.case(
            "X-reflexive => fully invariant",
            ctx.algebra.name,
            lambda: (None, {"reason": "Hom(M, X) is only a vector space over a noncommutative ring; the evaluation map is not defined here"}),
        )
        return
    ambients = [ctx.regular] + [m for m in ctx.corpus.indecomposables if not ctx.is_regular(m)]
    for x in ambients + [m for m in ctx.modules(min(ctx.params.max_dim, 4)) if m not in ambients]:
        subs = ctx.lattice(x)
        if subs is None:
            continue
        ctx.case(f"X-reflexive => fully invariant in {x.name}", f"{len(subs)} submodules", lambda x=x, subs=subs: _x_reflexive_ambient(ctx, x, subs))


# -- ss-char -------------------------------------------------------------------


def _ss_positive(ctx: _Ctx, m: Module) -> tuple:
    p = ctx.params
    env = injective_envelope(m, p.seed, p.trials)
    via = is_trace_via(env.embedding).is_trace
    upto = is_trace_up_to_iso(m, env.envelope, p.seed, p.trials).status
    subs = ctx.lattice(m)
    qi = None if subs is None else _qi_on_lattice(m, subs) is None
    details = {"trace_via_envelope": via, "trace_up_to_iso": upto, "envelope_is_iso": env.embedding.is_surjective, "quasi_injective": qi}
    ok = via and upto == "yes" and env.embedding.is_surjective and qi is not False
    return ok, details, {"module_action": list(m.action), "embedding": env.embedding.matrix}


def _ss_witness(ctx: _Ctx) -> tuple:
    p = ctx.params
    simples = simple_modules(ctx.algebra, 0, p.trials)
    s = next((s for s in simples if not is_injective_module(s)), None)
    if s is None:
        return False, {"reason": "ring is not semisimple but every simple module is injective"}
    m = direct_sum(s, ctx.regular.renamed("R")).module
    env = injective_envelope(m, p.seed, p.trials)
    v = is_trace_via(env.embedding)
    upto = is_trace_up_to_iso(m, env.envelope, p.seed, p.trials)
    subs = ctx.lattice(m)
    qi = None if subs is None else _qi_on_lattice(m, subs) is None
    closure_full = v.trace_submodule.dim == env.envelope.dim
    details = {
        "module": m.name,
        "envelope_dim": env.envelope.dim,
        "closure_dim": v.trace_submodule.dim,
        "trace_via_envelope": v.is_trace,
        "trace_up_to_iso": upto.status,
        "quasi_injective": qi,
    }
    ok = not v.is_trace and closure_full and upto.status == "no" and qi is not True
    return ok, details, {"module_action": list(m.action), "embedding": env.embedding.matrix, "closure": v.trace_submodule.space.basis}


def suite_ss_char(ctx: _Ctx) -> None:
    semisimple = radical_space(ctx.algebra).dim == 0
    if semisimple:
        for m in ctx.modules():
            ctx.case(f"trace in E({m.name})", f"dim {m.dim}", lambda m=m: _ss_positive(ctx, m))
    else:
        ctx.case("witness S ⊕ R not trace in its envelope", "first non-injective simple S", lambda: _ss_witness(ctx))


# -- inj-char ------------------------------------------------------------------

_NON_TRACE_IDEAL = {"fat_point": "(x)"}


def _is_principal(s: Submodule) -> bool:
    if s.dim == 0:
        return True
    f = s.ambient.field
    if f.p is None or f.p**s.dim > 4096:
        return any(submodule_generated(s.ambient, v).space == s.space for v in s.space.basis)
    for c in vectors_in(f, s.dim):
        v = f.matmul(c.reshape(1, -1), s.space.basis)
        if submodule_generated(s.ambient, v).space == s.space:
            return True
    return False


def suite_inj_char(ctx: _Ctx) -> None:
    p = ctx.params
    r = ctx.regular
    names = ctx.algebra.basis_names
    subs = ctx.lattice(r)
    if subs is None or ctx.field.p is None:
        ctx.case("ideal lattice", "left ideals of R", lambda: (None, {"reason": "ideal lattice not enumerable here"}))
        return
    ctx.case("ideal count", "left ideals of R", lambda: (True, {"count": len(subs), "ideals": [ideal_name(s, names) for s in subs]}))
    self_inj = is_injective_module(r)
    ctx.case("self-injectivity", "Ext^1(S, R) for all simples", lambda: (True, {"self_injective": self_inj}))
    upto_all, upto_principal = [], []
    for s in subs:
        label = ideal_name(s, names)

        def one(s=s):
            v = is_trace_submodule(s)
            if v.is_trace:
                ctx.note_trace_ideal(s)
            upto = "yes"
            if s.dim:
                env = injective_envelope(s.as_module(), p.seed, p.trials)
                upto = is_trace_up_to_iso(s.as_module(), env.envelope, p.seed, p.trials).status
            principal = _is_principal(s)
            upto_all.append(upto)
            if principal:
                upto_principal.append(upto)
            d = {"trace": v.is_trace, "closure_dim": v.trace_submodule.dim, "principal": principal, "trace_in_envelope_up_to_iso": upto}
            ok = (v.is_trace and upto == "yes") if self_inj else True
            if not ok:
                d["reason"] = "R is self-injective but this left ideal is not a trace ideal" if upto == "yes" else "not trace in its envelope up to isomorphism"
            return ok, d, _sub_cex(s, closure=v.trace_submodule.space.basis)

        ctx.case(f"ideal {label}", f"dim {s.dim}", one)

    def equivalence():
        if "inconclusive" in upto_all:
            return None, {"reason": "an up-to-isomorphism test was inconclusive"}
        all_ok = all(u == "yes" for u in upto_all)
        principal_ok = all(u == "yes" for u in upto_principal)
        d = {"self_injective": self_inj, "every_ideal": all_ok, "every_principal_ideal": principal_ok}
        return self_inj == all_ok == principal_ok, d

    ctx.case("self-injective <=> ideals trace in envelopes", f"{len(subs)} ideals", equivalence)
    if not self_inj and ctx.algebra.is_commutative:

        def exists():
            bad = [s for s in subs if not is_trace_submodule(s).is_trace]
            return bool(bad), {"non_trace_ideals": [ideal_name(s, names) for s in bad]}

        ctx.case("non-trace ideal exists", "commutative, not self-injective", exists)
    ideal = _NON_TRACE_IDEAL.get(ctx.doc.preset or "")
    if ideal and ideal in ctx.doc.submodules:
        i = ctx.doc.submodules[ideal]

        def witness():
            v = is_trace_submodule(i)
            soc = socle(r)
            d = {"trace": v.is_trace, "closure_dim": v.trace_submodule.dim, "closure_is_socle": v.trace_submodule.space == soc.space}
            return (not v.is_trace) and d["closure_is_socle"], d, _sub_cex(i, closure=v.trace_submodule.space.basis)

        ctx.case(f"ideal {ideal} not trace, closure = socle", ideal, witness)


# -- gor-dim1 ------------------------------------------------------------------

_MAXIMAL_IDEAL_WITNESS = {"fat_point": "rad"}


def _bidual_case(ctx: _Ctx, m: Module, self_inj: bool) -> tuple:
    ev = evaluation_map(m, ctx.regular)
    torsionless = ev.is_injective
    reflexive = torsionless and ev.target.dim == m.dim
    via = is_trace_via(ev).is_trace if torsionless else None
    d = {"torsionless": torsionless, "reflexive": reflexive, "trace_via_eval": via, "bidual_dim": ev.target.dim, "eval_rank": ev.rank}
    ok = True
    if reflexive and not via:
        ok = False
    if self_inj and torsionless and not (reflexive and via):
        ok = False
    return ok, d, {"module_action": list(m.action), "evaluation": ev.matrix}


def _non_reflexive_witness(ctx: _Ctx, m: Module) -> tuple:
    """``M`` torsionless, not reflexive; then ``M ⊕ R`` is not trace in its bidual."""
    ev = evaluation_map(m, ctx.regular)
    big = direct_sum(m, ctx.regular.renamed("R")).module
    ev_big = evaluation_map(big, ctx.regular)
    via_m = is_trace_via(ev).is_trace
    via_big = is_trace_via(ev_big).is_trace
    d = {
        "module": m.name,
        "eval_rank": ev.rank,
        "bidual_dim": ev.target.dim,
        "reflexive": ev.is_injective and ev.target.dim == m.dim,
        "trace_via_eval": via_m,
        "sum_with_R_trace_via_eval": via_big,
    }
    ok = ev.is_injective and ev.target.dim > m.dim and not via_big
    return ok, d, {"module_action": list(m.action), "evaluation": ev.matrix}


def _naturality(ctx: _Ctx, m: Module, n: Module) -> tuple:
    r = ctx.regular
    em, en = evaluation_map(m, r), evaluation_map(n, r)
    f = m.field
    squares = 0
    for g in hom_space(m, n).basis:
        gstar = precompose_map(g, r, hom_as_module(n, r), hom_as_module(m, r))
        gss = precompose_map(gstar, r, em.target, en.target)
        lhs = f.matmul(gss.matrix, em.matrix)
        rhs = f.matmul(en.matrix, g.matrix)
        squares += 1
        if not np.array_equal(f.reduce(lhs), f.reduce(rhs)):
            return False, {"reason": "g** eps_M != eps_N g"}, {"map": g.matrix, "lhs": lhs, "rhs": rhs}
    return True, {"squares": squares}


def suite_gor_dim1(ctx: _Ctx) -> None:
    if not ctx.algebra.is_commutative:
        ctx.case("double dual", ctx.algebra.name, lambda: (None, {"reason": "the double dual needs a commutative ring here"}))
        return
    self_inj = is_injective_module(ctx.regular)
    mods = ctx.modules()
    ctx.case("Gorenstein (self-injective)", ctx.algebra.name, lambda: (True, {"self_injective": self_inj}))
    results = {}
    for m in mods:

        def one(m=m):
            out = _bidual_case(ctx, m, self_inj)
            results[m.name] = out[1]
            return out

        ctx.case(f"bidual {m.name}", f"dim {m.dim}", one)
    if not self_inj:
        cand = next((m for m in mods if results.get(m.name, {}).get("torsionless") and not results[m.name]["reflexive"]), None)
        if cand is None:
            ctx.case("torsionless, not reflexive witness", "corpus", lambda: (False, {"reason": "no torsionless non-reflexive module in the corpus"}))
        else:
            ctx.case(f"torsionless, not reflexive: {cand.name}", f"{cand.name} ⊕ R", lambda: _non_reflexive_witness(ctx, cand))
    key = _MAXIMAL_IDEAL_WITNESS.get(ctx.doc.preset or "")
    if key and key in ctx.doc.submodules:
        mi = ctx.doc.submodules[key].as_module().renamed("m")

        def witness():
            ok, d, cex = _non_reflexive_witness(ctx, mi)
            return ok and not d["trace_via_eval"], d, cex

        ctx.case("maximal ideal torsionless, not reflexive", "m = rad R", witness)
    inds = ctx.corpus.indecomposables
    for i, m in enumerate(inds):
        for n in inds[i:]:
            ctx.case(f"naturality {m.name} -> {n.name}", "g** eps = eps g", lambda m=m, n=n: _naturality(ctx, m, n))


# -- envelope-props ------------------------------------------------------------

_ENVELOPE_DIMS = {"dual_numbers": {"S0": 2}, "fat_point": {"S0": 3}}


def _envelope_case(ctx: _Ctx, m: Module) -> tuple:
    p = ctx.params
    env = injective_envelope(m, p.seed, p.trials)
    env2 = injective_envelope(m, p.seed + 1, p.trials)
    e = env.envelope
    img = Submodule(e, column_space(env.embedding.matrix, m.field), check=False)
    injs = [x.module for x in injective_indecomposables(ctx.algebra, 0, p.trials)]
    m_inj = is_injective_module(m)
    d = {
        "envelope_dim": e.dim,
        "injective": is_injective_module(e),
        "embedding_injective": env.embedding.is_injective,
        "essential": is_essential(img),
        "preenvelope": check_preenvelope(env.embedding, injs),
        "envelope": check_envelope(env.embedding, p.cap, p.seed, 2 * p.trials),
        "seeds_agree": is_isomorphic(e, env2.envelope, p.seed, p.trials).status,
        "module_injective": m_inj,
    }
    ok = d["injective"] and d["embedding_injective"] and d["essential"] and d["preenvelope"]
    ok = ok and d["envelope"] is not False and d["seeds_agree"] == "yes"
    ok = ok and e.dim >= m.dim and ((e.dim == m.dim) == m_inj)
    if ok and (d["envelope"] is None or d["seeds_agree"] != "yes"):
        return None, dict(d, reason="envelope minimality or seed comparison undecided")
    return ok, d, {"module_action": list(m.action), "embedding": env.embedding.matrix}


def suite_envelope_props(ctx: _Ctx) -> None:
    for m in ctx.modules():
        ctx.case(f"E({m.name})", f"dim {m.dim}", lambda m=m: _envelope_case(ctx, m))
    for name, dim in _ENVELOPE_DIMS.get(ctx.doc.preset or "", {}).items():
        if name in ctx.doc.modules:
            s = ctx.doc.modules[name]

            def fixed(s=s, dim=dim):
                e = injective_envelope(s, ctx.params.seed, ctx.params.trials).envelope
                return e.dim == dim, {"envelope_dim": e.dim, "expected": dim}

            ctx.case(f"dim E({name}) = {dim}", name, fixed)


# -- registry ------------------------------------------------------------------

SUITES: dict[str, tuple[Callable[[_Ctx], None], str]] = {
    "tracebasic": (suite_tracebasic, "trace criteria agree; hereditary and isomorphism-stable"),
    "trace-two-sided": (suite_two_sided, "trace ideals are two-sided"),
    "left-exact": (suite_left_exact, "Tr_M is left exact but not right exact"),
    "qi-trace": (suite_qi_trace, "quasi-injective iff trace in the injective envelope"),
    "fully-invariant": (suite_fully_invariant, "trace implies fully invariant; equivalence on envelopes"),
    "reflexive-criterion": (suite_reflexive_criterion, "homothety plus lifting forces trace"),
    "x-reflexive-invariant": (suite_x_reflexive, "X-reflexive submodules are fully invariant"),
    "ss-char": (suite_ss_char, "semisimple iff every module is trace in its envelope"),
    "inj-char": (suite_inj_char, "self-injective iff ideals are trace in their envelopes"),
    "gor-dim1": (suite_gor_dim1, "torsionless modules and the double dual"),
    "envelope-props": (suite_envelope_props, "computed injective envelopes are envelopes"),
}


def suite_names() -> list[str]:
    return list(SUITES)


def run_suite(name: str, ring: RingDoc, params: SuiteParams | dict | None = None) -> Report:
    if name not in SUITES:
        raise UnknownSuite(f"unknown suite {name!r} (known: {', '.join(SUITES)})")
    if params is None:
        params = SuiteParams()
    elif isinstance(params, dict):
        params = SuiteParams(**params)
    ctx = _Ctx(name, ring, params)
    start = time.perf_counter()
    SUITES[name][0](ctx)
    ctx.finish()
    ctx.report.wall_time = time.perf_counter() - start
    return ctx.report
