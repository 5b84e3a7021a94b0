"""Hom-spaces, endomorphism algebras, isomorphism tests, Ext^1 and double duals."""

from __future__ import annotations

from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from .algebra import (
    Algebra,
    Module,
    ModuleMap,
    Submodule,
    _same_algebra,
    annihilator_ideal,
    direct_sum,
    kernel_basis,
    regular_module,
    socle,
    submodule_generated,
    zero_module,
)
from .errors import NotCommutative, RadicalUnsupported
from .linalg import Field, Subspace, column_space, inverse, rank, subspace_sum


class HomSpace:
    """Basis of ``Hom_A(source, target)``, stored as a canonical subspace of
    row-major vectorised ``target.dim x source.dim`` matrices."""

    def __init__(self, source: Module, target: Module, space: Subspace):
        self.source, self.target, self.space = source, target, space

    @property
    def dim(self) -> int:
        return self.space.dim

    @property
    def field(self) -> Field:
        return self.source.field

    @property
    def shape(self) -> tuple[int, int]:
        return (self.target.dim, self.source.dim)

    @property
    def matrices(self) -> list[np.ndarray]:
        return [row.reshape(self.shape) for row in self.space.basis]

    @property
    def basis(self) -> list[ModuleMap]:
        return [ModuleMap(self.source, self.target, m, check=False) for m in self.matrices]

    def element(self, coeffs) -> np.ndarray:
        f = self.field
        coeffs = np.asarray(coeffs, dtype=f.dtype)
        if self.dim == 0:
            return f.zeros(*self.shape)
        return f.matmul(coeffs.reshape(1, -1), self.space.basis).reshape(self.shape)

    def coordinates(self, matrix: np.ndarray) -> np.ndarray:
        return self.space.coordinates(np.asarray(matrix).reshape(-1))

    def contains(self, matrix: np.ndarray) -> bool:
        return self.space.contains(np.asarray(matrix).reshape(-1))

    def random(self, rng: np.random.Generator) -> np.ndarray:
        return self.element(self.field.random(rng, self.dim))

    def __repr__(self) -> str:
        return f"HomSpace({self.source!r} -> {self.target!r}, dim {self.dim})"


def intertwining_system(m: Module, n: Module) -> np.ndarray:
    """Rows of ``vec(F A_g - B_g F) = 0`` for each algebra generator ``g``."""
    f = m.field
    s, t = m.dim, n.dim
    blocks = []
    it, is_ = np.eye(t, dtype=f.dtype), np.eye(s, dtype=f.dtype)
    for g in m.algebra.generators:
        a, b = m.action[g], n.action[g]
        # kron(I_t, A^T) - kron(B, I_s), built by broadcasting
        left = (it[:, None, :, None] * a.T[None, :, None, :]).reshape(s * t, s * t)
        right = (b[:, None, :, None] * is_[None, :, None, :]).reshape(s * t, s * t)
        blocks.append(f.reduce(left - right))
    if not blocks:
        return f.zeros(0, s * t)
    return np.vstack(blocks)


_HOM_CACHE_LIMIT = 50000


def _action_key(m: Module) -> tuple:
    return (m.dim,) + tuple(m.action[g].tobytes() if m.field.p is not None else repr(m.action[g].tolist()) for g in m.algebra.generators)


def hom_space(m: Module, n: Module) -> HomSpace:
    """``Hom_A(m, n)``; solutions are memoised on the generator action data."""
    _same_algebra(m.algebra, n.algebra)
    f = m.field
    if m.dim == 0 or n.dim == 0:
        return HomSpace(m, n, Subspace.zero(f, m.dim * n.dim))
    cache = m.algebra.cache.setdefault("hom", {})
    key = (_action_key(m), _action_key(n))
    space = cache.get(key)
    if space is None:
        space = kernel_basis(intertwining_system(m, n), f)
        if len(cache) >= _HOM_CACHE_LIMIT:
            cache.clear()
        cache[key] = space
    return HomSpace(m, n, space)


def hom_dim(m: Module, n: Module) -> int:
    return hom_space(m, n).dim


@dataclass
class EndAlgebra:
    module: Module
    hom: HomSpace
    algebra: Algebra | None  # None for the zero module

    @property
    def dim(self) -> int:
        return self.hom.dim


def end_algebra(m: Module) -> EndAlgebra:
    """``End(m)`` with composition ``b_i b_j`` as structure constants."""
    h = hom_space(m, m)
    f = m.field
    if h.dim == 0:
        return EndAlgebra(m, h, None)
    mats = h.matrices
    d = h.dim
    c = f.zeros(d, d, d)
    for i, bi in enumerate(mats):
        for j, bj in enumerate(mats):
            c[i, j] = h.coordinates(f.matmul(bi, bj))
    unit = h.coordinates(f.eye(m.dim))
    alg = Algebra(f, c, unit, [f"phi{i}" for i in range(d)], name=f"End({m.name})")
    return EndAlgebra(m, h, alg)


def image_of_map(fm: ModuleMap) -> Submodule:
    return Submodule(fm.target, column_space(fm.matrix, fm.source.field), check=False)


def kernel_of_map(fm: ModuleMap) -> Submodule:
    return Submodule(fm.source, kernel_basis(fm.matrix, fm.source.field), check=False)


# -- isomorphism ---------------------------------------------------------------


@dataclass
class IsoVerdict:
    status: str  # "yes" | "no" | "probably_no"
    witness: ModuleMap | None = None
    reason: str = ""

    @property
    def yes(self) -> bool:
        return self.status == "yes"

    @property
    def certified(self) -> bool:
        return self.status != "probably_no"


ENUMERATION_LIMIT = 2**16


def _invariants_differ(m: Module, n: Module) -> str | None:
    if m.dim != n.dim:
        return f"dimensions differ ({m.dim} vs {n.dim})"
    if m.dim == 0:
        return None
    try:
        sm, sn = socle(m).dim, socle(n).dim
        if sm != sn:
            return f"socle dimensions differ ({sm} vs {sn})"
    except RadicalUnsupported:
        pass
    if annihilator_ideal(m).space != annihilator_ideal(n).space:
        return "annihilator ideals differ"
    return None


def is_isomorphic(m: Module, n: Module, seed: int = 0, trials: int = 32) -> IsoVerdict:
    """Randomised search for an invertible intertwiner, with certified negatives.

    A ``yes`` always carries an exactly verified isomorphism.  ``no`` is
    certified by a differing invariant or by exhausting ``Hom(m, n)``.
    """
    _same_algebra(m.algebra, n.algebra)
    f = m.field
    why = _invariants_differ(m, n)
    if why:
        return IsoVerdict("no", reason=why)
    if m.dim == 0:
        return IsoVerdict("yes", ModuleMap(m, n, f.zeros(0, 0), check=False), "both zero")
    h = hom_space(m, n)
    e_m = hom_space(m, m).dim
    if h.dim != e_m:
        return IsoVerdict("no", reason=f"dim Hom(M,N)={h.dim} but dim End(M)={e_m}")
    back = hom_space(n, m).dim
    if back != e_m:
        return IsoVerdict("no", reason=f"dim Hom(N,M)={back} but dim End(M)={e_m}")
    e_n = hom_space(n, n).dim
    if e_n != e_m:
        return IsoVerdict("no", reason=f"dim End differs ({e_m} vs {e_n})")
    for mat in h.matrices:
        if rank(mat, f) == m.dim:
            return IsoVerdict("yes", ModuleMap(m, n, mat), "basis element invertible")
    rng = np.random.default_rng(seed)
    for _ in range(trials):
        mat = h.random(rng)
        if rank(mat, f) == m.dim:
            return IsoVerdict("yes", ModuleMap(m, n, mat), "random element invertible")
    if f.p is not None and f.p ** h.dim <= ENUMERATION_LIMIT:
        import itertools

        for coeffs in itertools.product(range(f.p), repeat=h.dim):
            mat = h.element(np.array(coeffs, dtype=np.int64))
            if rank(mat, f) == m.dim:
                return IsoVerdict("yes", ModuleMap(m, n, mat), "found by enumeration")
        return IsoVerdict("no", reason=f"all {f.p ** h.dim} elements of Hom(M,N) are singular")
    return IsoVerdict("probably_no", reason=f"no invertible element in {trials} random trials")


# -- free presentations and Ext^1 ------------------------------------------------


class FreeCover(NamedTuple):
    free: Module
    rank: int
    map: ModuleMap
    generators: tuple[np.ndarray, ...]


def free_module(a: Algebra, r: int) -> Module:
    if r == 0:
        return zero_module(a)
    reg = regular_module(a)
    if r == 1:
        return reg
    return direct_sum(*([reg] * r)).module.renamed(f"R^{r}")


def free_cover(m: Module, seed: int | None = None) -> FreeCover:
    """``R^g -> m`` from greedily chosen generators.

    With ``seed=None`` the candidates are the standard basis vectors in order;
    otherwise they are seeded random vectors, giving an independent cover.
    """
    a, f = m.algebra, m.field
    if seed is None:
        candidates = list(f.eye(m.dim))
    else:
        rng = np.random.default_rng(seed)
        candidates = [f.random(rng, m.dim) for _ in range(4 * m.dim + 4)] + list(f.eye(m.dim))
    gens: list[np.ndarray] = []
    span = Subspace.zero(f, m.dim)
    for v in candidates:
        if span.dim == m.dim:
            break
        if span.contains(v):
            continue
        gens.append(v)
        span = submodule_generated(m, np.vstack(gens)).space
    free = free_module(a, len(gens))
    if gens:
        # column (j, i) is e_i acting on generator j
        cols = [f.matmul(m.action[i], g.reshape(-1, 1)).reshape(-1) for g in gens for i in range(a.dim)]
        mat = f.reduce(np.stack(cols, axis=1))
    else:
        mat = f.zeros(m.dim, 0)
    return FreeCover(free, len(gens), ModuleMap(free, m, mat, check=False), tuple(gens))


class FreePresentation(NamedTuple):
    f1: Module
    f0: Module
    d1: ModuleMap  # F1 -> F0, image = ker(d0)
    d0: ModuleMap  # F0 -> M, surjective
    rank0: int
    rank1: int


def _cover_kernel(d: ModuleMap, seed: int | None) -> FreeCover:
    ker = kernel_of_map(d)
    cov = free_cover(ker.as_module(), seed)
    inc = ker.inclusion()
    return FreeCover(cov.free, cov.rank, ModuleMap(cov.free, d.source, d.source.field.matmul(inc.matrix, cov.map.matrix), check=False), cov.generators)


def free_presentation(m: Module, seed: int | None = None) -> FreePresentation:
    c0 = free_cover(m, seed)
    c1 = _cover_kernel(c0.map, None if seed is None else seed + 1)
    return FreePresentation(c1.free, c0.free, c1.map, c0.map, c0.rank, c1.rank)


def _pullback_on_free(d: ModuleMap, g_src: int, g_tgt: int, n: Module) -> np.ndarray:
    """Matrix of ``Hom(R^g_tgt, n) -> Hom(R^g_src, n)``, ``phi -> phi ∘ d``, for ``d: R^g_src -> R^g_tgt``.

    ``Hom(R^g, n)`` is identified with ``n^g`` by evaluating at the units.
    """
    a, f = n.algebra, n.field
    k = a.dim
    out = f.zeros(g_src * n.dim, g_tgt * n.dim)
    for j in range(g_src):
        image = f.matmul(d.matrix[:, j * k : (j + 1) * k], a.unit.reshape(k, 1)).reshape(-1)
        for i in range(g_tgt):
            r = image[i * k : (i + 1) * k]
            out[j * n.dim : (j + 1) * n.dim, i * n.dim : (i + 1) * n.dim] = n.act(r)
    return out


@dataclass
class Ext1Result:
    dim: int
    cocycles: list[np.ndarray]  # representatives in n^{rank1} = Hom(F1, n)
    presentation: FreePresentation


def ext1(m: Module, n: Module, seed: int | None = None) -> Ext1Result:
    """``dim Ext^1(m, n)`` from a free presentation extended one step to ``F2``."""
    _same_algebra(m.algebra, n.algebra)
    f = m.field
    pres = free_presentation(m, seed)
    c2 = _cover_kernel(pres.d1, None if seed is None else seed + 2)
    g0, g1, g2 = pres.rank0, pres.rank1, c2.rank
    if g1 == 0 or n.dim == 0:
        return Ext1Result(0, [], pres)
    delta1 = _pullback_on_free(pres.d1, g1, g0, n)  # n^g0 -> n^g1
    if g2:
        delta2 = _pullback_on_free(c2.map, g2, g1, n)
        cycles = kernel_basis(delta2, f)
    else:
        cycles = Subspace.full(f, g1 * n.dim)
    bounds = column_space(delta1, f) if g0 else Subspace.zero(f, g1 * n.dim)
    reps = []
    span = bounds
    for z in cycles.basis:
        if not span.contains(z):
            reps.append(z)
            span = subspace_sum(span, Subspace.span(f, span.ambient_dim, z.reshape(1, -1)))
    return Ext1Result(cycles.dim - bounds.dim, reps, pres)


# -- Hom as a module, evaluation maps ---------------------------------------------


class HomModule(Module):
    """``Hom_A(m, x)`` with ``(a f)(v) = a f(v)``; only for commutative algebras."""

    hom: HomSpace


def hom_as_module(m: Module, x: Module) -> HomModule:
    a, f = m.algebra, m.field
    if not a.is_commutative:
        raise NotCommutative(f"Hom is only a module over a commutative algebra; {a.name} is not")
    h = hom_space(m, x)
    action = []
    for i in range(a.dim):
        if h.dim == 0:
            action.append(f.zeros(0, 0))
            continue
        cols = [h.coordinates(f.matmul(x.action[i], b)) for b in h.matrices]
        action.append(np.stack(cols, axis=1))
    hm = HomModule(a, action, name=f"Hom({m.name},{x.name})")
    hm.hom = h
    return hm


def evaluation_map(m: Module, x: Module) -> ModuleMap:
    """``v -> (f -> f(v))`` from ``m`` into ``Hom(Hom(m, x), x)``."""
    f = m.field
    h = hom_as_module(m, x)
    hh = hom_as_module(h, x)
    if hh.dim == 0:
        return ModuleMap(m, hh, f.zeros(0, m.dim), check=False)
    mats = h.hom.matrices
    cols = []
    for j in range(m.dim):
        ev = np.stack([b[:, j] for b in mats], axis=1) if mats else f.zeros(x.dim, 0)
        cols.append(hh.hom.coordinates(ev))
    mat = np.stack(cols, axis=1) if cols else f.zeros(hh.dim, 0)
    return ModuleMap(m, hh, mat)


def precompose_map(g: ModuleMap, x: Module, src: HomModule | None = None, tgt: HomModule | None = None) -> ModuleMap:
    """``g^*: Hom(g.target, x) -> Hom(g.source, x)``, ``phi -> phi ∘ g``."""
    f = g.source.field
    src = src or hom_as_module(g.target, x)
    tgt = tgt or hom_as_module(g.source, x)
    if src.dim == 0 or tgt.dim == 0:
        return ModuleMap(src, tgt, f.zeros(tgt.dim, src.dim), check=False)
    cols = [tgt.hom.coordinates(f.matmul(phi, g.matrix)) for phi in src.hom.matrices]
    return ModuleMap(src, tgt, np.stack(cols, axis=1))


def restriction_rank(sub: Submodule, x: Module) -> tuple[int, int]:
    """Rank of ``Hom(ambient, x) -> Hom(sub, x)`` and ``dim Hom(sub, x)``."""
    f = x.field
    big = hom_space(sub.ambient, x)
    small = hom_space(sub.as_module(), x)
    if big.dim == 0 or small.dim == 0:
        return 0, small.dim
    inc = sub.inclusion().matrix
    rows = [f.matmul(b, inc).reshape(-1) for b in big.matrices]
    return rank(np.vstack(rows), f), small.dim


def invert_map(fm: ModuleMap) -> ModuleMap | None:
    inv = inverse(fm.matrix, fm.source.field) if fm.source.dim == fm.target.dim else None
    if inv is None:
        return None
    return ModuleMap(fm.target, fm.source, inv, check=False)
