"""Finite module corpora built from the indecomposables of a preset ring."""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations_with_replacement

from .algebra import (
    Algebra,
    Module,
    Submodule,
    direct_sum,
    enumerate_submodules,
    quotient_module,
    radical,
    regular_module,
    socle,
)
from .envelopes import indecomposable_summands, injective_indecomposables, simple_modules
from .errors import FieldNotFinite, Inconclusive, MatchFailure, Overflow, RadicalUnsupported
from .hom import is_isomorphic
from .linalg import Field


def format_vector(v, names: list[str], f: Field) -> str:
    terms = []
    for c, n in zip(v, names):
        c = f.scalar(c)
        if c == 0:
            continue
        s = f.format_scalar(c)
        terms.append(n if str(s) == "1" else f"{s}{n}")
    return "+".join(terms) or "0"


def ideal_name(s: Submodule, names: list[str]) -> str:
    """Readable name for a left ideal: ``0``, ``R``, or ``(g1,g2)`` from its reduced basis."""
    if s.dim == 0:
        return "0"
    if s.dim == s.ambient.dim:
        return "R"
    f = s.ambient.field
    return "(" + ",".join(format_vector(row, names, f) for row in s.space.basis) + ")"


@dataclass
class Corpus:
    algebra: Algebra
    max_dim: int
    ideals: list[Submodule] | None
    indecomposables: list[Module]
    modules: list[tuple[Module, tuple[int, ...]]]
    notes: list[str] = field(default_factory=list)


def _add_unique(pool: list[Module], m: Module, seed: int, trials: int, notes: list[str]) -> None:
    if m.dim == 0:
        return
    for other in pool:
        if other.dim != m.dim:
            continue
        v = is_isomorphic(m, other, seed, trials)
        if v.yes:
            return
        if not v.certified:
            notes.append(f"{m.name} vs {other.name}: isomorphism undecided, kept both")
    pool.append(m)


def _summands(m: Module, seed: int, trials: int, notes: list[str]) -> list[Module]:
    try:
        dec = indecomposable_summands(m, seed, trials)
    except Inconclusive as exc:
        notes.append(f"decomposition of {m.name} inconclusive: {exc}")
        return []
    out = []
    for k, s in enumerate(dec.summands):
        mod = s.module
        out.append(mod.renamed(m.name if len(dec.summands) == 1 else f"{m.name}[{k}]"))
    return out


def build_corpus(a: Algebra, max_dim: int = 6, cap: int = 4096, seed: int = 0, trials: int = 32) -> Corpus:
    """Indecomposables of ``a`` reachable from the regular module, and their direct sums.

    Sources: summands of every left ideal and every cyclic quotient ``R/I``,
    the simples, and the injective indecomposables.  Over an infinite field
    only radical, socle and their quotients are used.  Direct sums are all
    multisets of indecomposables with total dimension at most ``max_dim``.
    """
    notes: list[str] = []
    r = regular_module(a)
    names = a.basis_names
    try:
        ideals = enumerate_submodules(r, cap)
    except (FieldNotFinite, Overflow) as exc:
        notes.append(f"ideal lattice not enumerated: {exc}")
        ideals = None
        subs = []
        try:
            subs = [radical(a), socle(r)]
        except RadicalUnsupported as exc2:
            notes.append(str(exc2))
    else:
        subs = ideals
    sources: list[Module] = []
    for s in subs:
        if 0 < s.dim:
            sources.append(s.as_module().renamed(ideal_name(s, names)))
        if 0 < s.dim < r.dim:
            q = quotient_module(r, s).module
            sources.append(q.renamed(f"R/{ideal_name(s, names)}"))
    pool: list[Module] = []
    simples, injs = [], []
    try:
        simples = [s.renamed(f"S{i}") for i, s in enumerate(simple_modules(a, 0, trials))]
        injs = [inj.module for inj in injective_indecomposables(a, 0, trials)]
    except (RadicalUnsupported, Inconclusive, MatchFailure) as exc:
        notes.append(f"simples/injectives unavailable: {exc}")
    # naming priority: simples, then R (or its summands), injectives, the rest
    for m in simples + _summands(r.renamed("R"), seed, trials, notes) + injs:
        _add_unique(pool, m, seed, trials, notes)
    for m in sorted(sources, key=lambda m: m.dim):
        for piece in _summands(m, seed, trials, notes):
            _add_unique(pool, piece, seed, trials, notes)
    pool.sort(key=lambda m: m.dim)
    modules = []
    for n in range(1, max_dim + 1):
        for combo in combinations_with_replacement(range(len(pool)), n):
            if sum(pool[i].dim for i in combo) > max_dim:
                continue
            modules.append(combo)
    modules.sort(key=lambda c: (sum(pool[i].dim for i in c), c))
    built = []
    for combo in modules:
        if len(combo) == 1:
            built.append((pool[combo[0]], combo))
        else:
            built.append((direct_sum(*(pool[i] for i in combo)).module, combo))
    return Corpus(a, max_dim, ideals, pool, built, notes)
