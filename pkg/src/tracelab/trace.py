"""Trace submodules and the predicates built on them."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .algebra import Module, ModuleMap, Submodule, enumerate_submodules, quotient_module, regular_module
from .errors import InternalError
from .hom import (
    IsoVerdict,
    evaluation_map,
    hom_space,
    is_isomorphic,
    restriction_rank,
)
from .linalg import Subspace, column_space, image_of, subspace_intersect


def trace_submodule(m: Module, x: Module) -> Submodule:
    """``Tr_m(x)``: the sum of the images of all homomorphisms ``m -> x``."""
    f = x.field
    h = hom_space(m, x)
    if h.dim == 0:
        return Submodule(x, Subspace.zero(f, x.dim), check=False)
    cols = np.hstack(h.matrices)
    return Submodule(x, column_space(cols, f), check=False)  # a sum of images is a submodule


@dataclass
class TraceVerdict:
    subject: Submodule
    ambient: Module
    is_trace: bool
    criterion_ii: bool  # Tr_S(X) == S
    criterion_iii: bool  # dim Hom(S, S) == dim Hom(S, X)
    trace_submodule: Submodule
    hom_dims: tuple[int, int]


def is_trace_submodule(s: Submodule) -> TraceVerdict:
    """Decide whether ``s`` is a trace submodule by two independent routes.

    (ii) compares the trace closure ``Tr_s(X)`` with ``s``.  (iii) compares
    ``dim Hom(s, s)`` with ``dim Hom(s, X)``: post-composition with the
    inclusion is injective, so it is an isomorphism iff the dimensions agree.
    A disagreement raises :class:`InternalError`.
    """
    sm = s.as_module()
    closure = trace_submodule(sm, s.ambient)
    crit_ii = closure.space == s.space
    d_end = hom_space(sm, sm).dim
    d_hom = hom_space(sm, s.ambient).dim
    crit_iii = d_end == d_hom
    if crit_ii != crit_iii:
        raise InternalError(
            f"trace criteria disagree: Tr_S(X)==S is {crit_ii} but dim End(S)={d_end}, dim Hom(S,X)={d_hom}"
        )
    return TraceVerdict(s, s.ambient, crit_ii, crit_ii, crit_iii, closure, (d_end, d_hom))


def is_fully_invariant(s: Submodule) -> bool:
    """Every endomorphism of the ambient module maps ``s`` into itself."""
    f = s.ambient.field
    if s.dim == 0 or s.dim == s.ambient.dim:
        return True
    for phi in hom_space(s.ambient, s.ambient).matrices:
        if not s.space.contains_all(f.matmul(s.space.basis, phi.T)):
            return False
    return True


@dataclass
class UpToIsoVerdict:
    status: str  # "yes" | "no" | "inconclusive"
    trace: Submodule
    iso: IsoVerdict
    embedding: ModuleMap | None = None


def is_trace_up_to_iso(m: Module, x: Module, seed: int = 0, trials: int = 32) -> UpToIsoVerdict:
    """Whether ``m ≅ Tr_m(x)``; a ``yes`` carries the embedding ``m ≅ T ⊆ x``."""
    t = trace_submodule(m, x)
    v = is_isomorphic(m, t.as_module(), seed, trials)
    if v.yes:
        emb = t.inclusion() @ v.witness
        return UpToIsoVerdict("yes", t, v, emb)
    return UpToIsoVerdict("no" if v.certified else "inconclusive", t, v)


def is_trace_via(embedding: ModuleMap) -> TraceVerdict:
    """Whether the image of an injective map is a trace submodule of its target."""
    img = Submodule(embedding.target, column_space(embedding.matrix, embedding.source.field), check=False)
    return is_trace_submodule(img)


def is_quasi_injective(m: Module, cap: int = 4096) -> bool:
    """Every map from a submodule ``L`` into ``m`` extends to an endomorphism.

    Checked over the whole submodule lattice as surjectivity of the
    restriction ``End(m) -> Hom(L, m)``.
    """
    for sub in enumerate_submodules(m, cap):
        if sub.dim == 0 or sub.dim == m.dim:
            continue
        r, d = restriction_rank(sub, m)
        if r != d:
            return False
    return True


def quasi_injectivity_witness(m: Module, cap: int = 4096) -> tuple[Submodule, int, int] | None:
    for sub in enumerate_submodules(m, cap):
        if sub.dim == 0 or sub.dim == m.dim:
            continue
        r, d = restriction_rank(sub, m)
        if r != d:
            return sub, r, d
    return None


def is_torsionless(m: Module) -> bool:
    return evaluation_map(m, regular_module(m.algebra)).is_injective


def is_reflexive(m: Module) -> bool:
    ev = evaluation_map(m, regular_module(m.algebra))
    return ev.target.dim == m.dim and ev.is_injective


def homothety_is_surjective(x: Module) -> bool:
    """Every endomorphism of ``x`` is multiplication by an algebra element."""
    f = x.field
    end = hom_space(x, x)
    if end.dim == 0:
        return True
    acts = Subspace.span(f, x.dim * x.dim, np.vstack([a.reshape(1, -1) for a in x.action]))
    return acts.contains_all(end.space.basis)


@dataclass
class ReflexiveCriterion:
    applies: bool
    homothety_surjective: bool
    restriction_surjective: bool
    trace_confirmed: bool | None


def check_reflexive_criterion(s: Submodule) -> ReflexiveCriterion:
    """Homothety onto ``End(X)`` plus lifting of ``Hom(S, X)`` forces ``S`` to be trace."""
    homo = homothety_is_surjective(s.ambient)
    r, d = restriction_rank(s, s.ambient)
    lift = r == d
    applies = homo and lift
    confirmed = is_trace_submodule(s).is_trace if applies else None
    return ReflexiveCriterion(applies, homo, lift, confirmed)


def check_two_sidedness(t: Submodule) -> bool:
    """Right absorption ``t e_j ⊆ t`` for an ideal of the regular module."""
    a = t.ambient.algebra
    f = a.field
    if t.dim == 0:
        return True
    return all(t.space.contains_all(f.matmul(t.space.basis, r.T)) for r in a.right_mult)


@dataclass
class LeftExactness:
    holds: bool  # Tr_m(X) == Tr_m(Y) ∩ X inside Y
    surjective: bool  # Tr_m(Y) -> Tr_m(Y/X) onto
    trace_x: Subspace
    trace_y: Subspace
    trace_z: Subspace
    image_in_z: Subspace


def check_left_exactness(m: Module, x: Submodule, y: Module) -> LeftExactness:
    f = y.field
    if x.ambient is not y:
        raise ValueError("x must be a submodule of y")
    tx = trace_submodule(m, x.as_module())
    tx_in_y = image_of(x.inclusion().matrix, tx.space)
    ty = trace_submodule(m, y).space
    holds = tx_in_y == subspace_intersect(ty, x.space)
    q = quotient_module(y, x)
    tz = trace_submodule(m, q.module).space
    img = image_of(q.projection.matrix, ty)
    return LeftExactness(holds, img == tz, tx_in_y, ty, tz, img)


@dataclass
class XReflexiveInvariance:
    x_reflexive: bool
    fully_invariant: bool

    @property
    def implication_holds(self) -> bool:
        return self.fully_invariant or not self.x_reflexive


def is_X_reflexive_then_fully_invariant(s: Submodule) -> XReflexiveInvariance:
    ev = evaluation_map(s.as_module(), s.ambient)
    refl = ev.target.dim == s.dim and ev.is_injective
    return XReflexiveInvariance(refl, is_fully_invariant(s))


def lifting_property(s: Submodule) -> bool:
    """Every map ``S -> X`` extends along the inclusion to an endomorphism of ``X``."""
    r, d = restriction_rank(s, s.ambient)
    return r == d

