"""Indecomposable decompositions, simples, injective indecomposables and envelopes."""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field as dc_field
from typing import Sequence

import numpy as np
import sympy

from .algebra import (
    Algebra,
    Module,
    ModuleMap,
    Submodule,
    direct_sum,
    dual_module,
    quotient_algebra,
    quotient_module,
    radical,
    radical_space,
    regular_module,
    socle,
    zero_module,
)
from .errors import Inconclusive, InternalError, MatchFailure, RadicalUnsupported
from .hom import end_algebra, ext1, hom_space, is_isomorphic
from .linalg import (
    Field,
    Subspace,
    column_space,
    inverse,
    kernel_basis,
    matrix_power,
    rank,
    solve_linear,
    subspace_sum,
)

LOCAL_ENUMERATION_LIMIT = 2**10


# -- polynomials of matrices ---------------------------------------------------


def minimal_polynomial(mat: np.ndarray, f: Field) -> list:
    """Monic minimal polynomial of a square matrix, coefficients low degree first."""
    n = mat.shape[0]
    powers = [f.eye(n).reshape(-1)]
    cur = f.eye(n)
    for k in range(1, n + 2):
        cur = f.matmul(cur, mat)
        vec = cur.reshape(-1)
        sol = solve_linear(np.stack(powers, axis=1), vec, f)
        if sol is not None:
            return [f.reduce(-c) if f.p is not None else -c for c in sol] + [1]
        powers.append(vec)
    raise InternalError("minimal polynomial degree exceeded the matrix size")


def irreducible_factors(coeffs: Sequence, f: Field) -> list[list]:
    """Distinct monic irreducible factors, coefficients low degree first."""
    t = sympy.Symbol("t")
    high_first = [int(c) if f.p is not None else sympy.Rational(c.numerator, c.denominator) for c in reversed(coeffs)]
    if f.p is not None:
        poly = sympy.Poly(high_first, t, modulus=f.p)
    else:
        poly = sympy.Poly(high_first, t, domain=sympy.QQ)
    out = []
    for fac, _ in poly.factor_list()[1]:
        cs = fac.all_coeffs()
        if f.p is not None:
            cs = [int(c) % f.p for c in cs]
            lead_inv = pow(cs[0], -1, f.p)
            cs = [(c * lead_inv) % f.p for c in cs]
        else:
            from fractions import Fraction

            cs = [Fraction(int(sympy.Rational(c).p), int(sympy.Rational(c).q)) for c in cs]
            cs = [c / cs[0] for c in cs]
        out.append(list(reversed(cs)))
    return out


def poly_at(coeffs: Sequence, mat: np.ndarray, f: Field) -> np.ndarray:
    n = mat.shape[0]
    out = f.zeros(n, n)
    for c in reversed(coeffs):
        out = f.reduce(f.matmul(out, mat) + f.eye(n) * c)
    return out


def is_nilpotent(mat: np.ndarray, f: Field) -> bool:
    return f.is_zero(matrix_power(f, mat, mat.shape[0])) if mat.size else True


# -- decompositions --------------------------------------------------------------


@dataclass
class Summand:
    module: Module
    inclusion: ModuleMap
    projection: ModuleMap
    space: Subspace
    certified: bool = True


@dataclass
class Decomposition:
    module: Module
    summands: list[Summand]
    idempotents: list[np.ndarray] = dc_field(default_factory=list)

    def validate(self) -> list[str]:
        f = self.module.field
        n = self.module.dim
        out = []
        total = f.zeros(n, n)
        for i, e in enumerate(self.idempotents):
            if np.any(f.matmul(e, e) != e):
                out.append(f"idempotent {i} is not idempotent")
            if not ModuleMap(self.module, self.module, e, check=False).intertwines():
                out.append(f"idempotent {i} is not a module endomorphism")
            for j, e2 in enumerate(self.idempotents):
                if i != j and not f.is_zero(f.matmul(e, e2)):
                    out.append(f"idempotents {i} and {j} are not orthogonal")
            total = f.reduce(total + e)
        if np.any(total != f.eye(n)):
            out.append("idempotents do not sum to the identity")
        if sum(s.module.dim for s in self.summands) != n:
            out.append("summand dimensions do not add up")
        for i, (s, e) in enumerate(zip(self.summands, self.idempotents)):
            if column_space(e, f) != s.space:
                out.append(f"summand {i} is not the image of its idempotent")
        return out


def decomposition_from_spaces(m: Module, spaces: Sequence[Subspace], certified: Sequence[bool] | None = None) -> Decomposition:
    """Decomposition of ``m`` along submodule spaces whose direct sum is ``m``."""
    f = m.field
    certified = list(certified) if certified is not None else [True] * len(spaces)
    p = np.hstack([s.basis.T for s in spaces]) if spaces else f.zeros(m.dim, 0)
    pinv = inverse(p, f)
    if pinv is None:
        raise InternalError("summands do not form a direct sum decomposition")
    summands, idems = [], []
    off = 0
    for s, cert in zip(spaces, certified):
        d = s.dim
        sub = Submodule(m, s, check=False)
        mod = sub.as_module()
        rows = pinv[off : off + d, :]
        proj = ModuleMap(m, mod, rows, check=False)
        summands.append(Summand(mod, sub.inclusion(), proj, s, cert))
        idems.append(f.matmul(s.basis.T, rows))
        off += d
    return Decomposition(m, summands, idems)


def fitting_split(m: Module, endo: np.ndarray) -> Decomposition | None:
    """Split ``m`` into the stable kernel and stable image of ``endo``; ``None`` if trivial."""
    f = m.field
    if m.dim == 0:
        return None
    power = matrix_power(f, endo, m.dim)
    ker = kernel_basis(power, f)
    img = column_space(power, f)
    if ker.dim == 0 or img.dim == 0:
        return None
    return decomposition_from_spaces(m, [ker, img])


def _split_element(mat: np.ndarray, f: Field) -> np.ndarray | None:
    """A polynomial in ``mat`` that is neither nilpotent nor invertible, if one exists."""
    n = mat.shape[0]
    if rank(mat, f) < n and not is_nilpotent(mat, f):
        return mat
    mp = minimal_polynomial(mat, f)
    facs = irreducible_factors(mp, f)
    if len(facs) < 2:
        return None
    return poly_at(facs[0], mat, f)


def _find_split(m: Module, rng: np.random.Generator, trials: int) -> tuple[str, np.ndarray | None]:
    """``("split", endo)``, ``("local", None)`` when End(m) is certified local, or ``("unknown", None)``."""
    f = m.field
    h = hom_space(m, m)
    if h.dim <= 1:
        return "local", None
    for b in h.matrices:
        g = _split_element(b, f)
        if g is not None:
            return "split", g
    if f.p is not None and f.p**h.dim <= LOCAL_ENUMERATION_LIMIT:
        for coeffs in itertools.product(range(f.p), repeat=h.dim):
            e = h.element(np.array(coeffs, dtype=np.int64))
            if rank(e, f) < m.dim and not is_nilpotent(e, f):
                return "split", e
        return "local", None
    for _ in range(trials):
        g = _split_element(h.random(rng), f)
        if g is not None:
            return "split", g
    if _end_is_local(m, rng, trials):
        return "local", None
    return "unknown", None


def _end_is_local(m: Module, rng: np.random.Generator, trials: int) -> bool:
    """Certify that ``End(m)/J`` is a field via an element of full-degree irreducible minimal polynomial."""
    end = end_algebra(m).algebra
    if end is None:
        return False
    try:
        rad = radical_space(end)
    except RadicalUnsupported:
        return False
    top = quotient_algebra(end, rad) if rad.dim else end
    if not top.is_commutative:
        return False
    f = top.field
    d = top.dim
    for _ in range(trials):
        u = f.random(rng, d)
        mp = minimal_polynomial(top.left_mult_of(u), f)
        if len(mp) - 1 == d and _is_irreducible(mp, f):
            return True
    return False


def _is_irreducible(coeffs: Sequence, f: Field) -> bool:
    facs = irreducible_factors(coeffs, f)
    return len(facs) == 1 and len(facs[0]) == len(coeffs)


def indecomposable_summands(m: Module, seed: int = 0, trials: int = 32) -> Decomposition:
    """Recursive Fitting decomposition into indecomposable summands.

    Raises :class:`Inconclusive` when a summand can neither be split nor
    certified indecomposable within the trial budget.
    """
    f = m.field
    rng = np.random.default_rng(seed)
    if m.dim == 0:
        return Decomposition(m, [], [])
    leaves: list[Subspace] = []
    pending = [Subspace.full(f, m.dim)]
    while pending:
        space = pending.pop()
        sub = Submodule(m, space, check=False).as_module()
        verdict, endo = _find_split(sub, rng, trials)
        if verdict == "unknown":
            raise Inconclusive(f"could not split or certify a dim-{space.dim} summand of {m.name}")
        if verdict == "local":
            leaves.append(space)
            continue
        split = fitting_split(sub, endo)
        if split is None:
            raise InternalError("splitting element produced a trivial Fitting decomposition")
        for part in split.summands:
            pending.append(Subspace.span(f, m.dim, f.matmul(part.space.basis, space.basis)))
    leaves.sort(key=lambda s: (s.pivots, s.basis.ravel().tolist()))
    return decomposition_from_spaces(m, leaves)


# -- simples and injectives ------------------------------------------------------


def simple_modules(a: Algebra, seed: int = 0, trials: int = 32) -> list[Module]:
    """Pairwise non-isomorphic simple modules, read off from ``A/J``."""
    key = ("simples", seed)
    if key in a.cache:
        return a.cache[key]
    top = quotient_module(regular_module(a), radical(a)).module
    reps: list[Module] = []
    for s in indecomposable_summands(top, seed, trials).summands:
        verdicts = [is_isomorphic(s.module, r, seed, trials) for r in reps]
        if any(v.status == "probably_no" for v in verdicts):
            raise Inconclusive("could not separate two simple modules")
        if not any(v.yes for v in verdicts):
            reps.append(s.module.renamed(f"S{len(reps)}"))
    a.cache[key] = reps
    return reps


@dataclass
class InjectiveIndecomposable:
    simple_index: int
    module: Module
    socle_embedding: ModuleMap  # simple -> module, onto the socle


def injective_cogenerator(a: Algebra) -> Module:
    """``D(A_A)``: the dual of the regular module of the opposite algebra."""
    return dual_module(regular_module(a.opposite())).renamed("D(A)")


def injective_indecomposables(a: Algebra, seed: int = 0, trials: int = 32) -> list[InjectiveIndecomposable]:
    key = ("injectives", seed)
    if key in a.cache:
        return a.cache[key]
    simples = simple_modules(a, 0, trials)
    cog = injective_cogenerator(a)
    found: dict[int, InjectiveIndecomposable] = {}
    for s in indecomposable_summands(cog, seed, trials).summands:
        soc = socle(s.module)
        soc_mod = soc.as_module()
        match = None
        for i, simple in enumerate(simples):
            v = is_isomorphic(simple, soc_mod, seed, trials)
            if v.status == "probably_no":
                raise Inconclusive("could not match an injective socle to a simple module")
            if v.yes:
                match = (i, v.witness)
                break
        if match is None:
            raise MatchFailure(f"socle of a summand of D(A) (dim {soc.dim}) matches no simple module")
        i, iso = match
        if i not in found:
            env = s.module.renamed(f"E{i}")
            emb = ModuleMap(simples[i], env, (soc.inclusion() @ iso).matrix, check=False)
            found[i] = InjectiveIndecomposable(i, env, emb)
    if sorted(found) != list(range(len(simples))):
        raise MatchFailure("some simple module has no injective envelope among the summands of D(A)")
    out = [found[i] for i in range(len(simples))]
    a.cache[key] = out
    return out


@dataclass
class EnvelopeResult:
    module: Module
    envelope: Module
    embedding: ModuleMap
    socle_multiplicities: dict[int, int]
    summand_indices: list[int]


def injective_envelope(m: Module, seed: int = 0, trials: int = 32) -> EnvelopeResult:
    """Socle-first injective envelope ``m -> E(m)`` with an explicit embedding."""
    a, f = m.algebra, m.field
    simples = simple_modules(a, 0, trials)
    injs = injective_indecomposables(a, seed, trials)
    if m.dim == 0:
        z = zero_module(a)
        return EnvelopeResult(m, z, ModuleMap(m, z, f.zeros(0, 0), check=False), {}, [])
    rng = np.random.default_rng(seed)
    soc = socle(m)
    copies: list[tuple[int, np.ndarray]] = []
    current = Subspace.zero(f, m.dim)
    for i, s in enumerate(simples):
        h = hom_space(s, m)
        candidates = h.matrices
        if seed:
            candidates = [h.random(rng) for _ in range(2 * h.dim)] + candidates
        for fm in candidates:
            img = column_space(fm, f)
            if img.dim != s.dim:
                continue
            bigger = subspace_sum(current, img)
            if bigger.dim == current.dim + s.dim:
                copies.append((i, fm))
                current = bigger
    if current != soc.space:
        raise InternalError("simple copies do not exhaust the socle")
    parts = [injs[i].module for i, _ in copies]
    ds = direct_sum(*parts)
    env = ds.module.renamed(f"E({m.name})")
    h = hom_space(m, env)
    cols, rhs = [], []
    for (i, fm), inc in zip(copies, ds.inclusions):
        target = f.matmul(inc.matrix, injs[i].socle_embedding.matrix)
        rhs.append(target.reshape(-1))
    for g in h.matrices:
        cols.append(np.concatenate([f.matmul(g, fm).reshape(-1) for _, fm in copies]))
    if not cols:
        raise InternalError("Hom(M, E) is zero for a nonzero module")
    sol = solve_linear(np.stack(cols, axis=1), np.concatenate(rhs), f)
    if sol is None:
        raise InternalError("socle embedding does not extend; envelope summand is not injective")
    emb = ModuleMap(m, env, h.element(sol))
    if not emb.is_injective:
        raise InternalError("envelope embedding is not injective")
    mult: dict[int, int] = {}
    for i, _ in copies:
        mult[i] = mult.get(i, 0) + 1
    return EnvelopeResult(m, env, emb, mult, [i for i, _ in copies])


def is_injective_module(m: Module, seed: int = 0, trials: int = 32) -> bool:
    """Baer-style test: ``Ext^1(S, m) = 0`` for every simple ``S``."""
    return all(ext1(s, m).dim == 0 for s in simple_modules(m.algebra, seed, trials))


def is_essential(s: Submodule) -> bool:
    return s.space.contains_all(socle(s.ambient).space.basis)


def check_preenvelope(fm: ModuleMap, class_sample: Sequence[Module]) -> bool:
    """Every map ``source -> V`` factors through ``fm`` for each ``V`` in the sample."""
    f = fm.source.field
    for v in class_sample:
        small = hom_space(fm.source, v)
        if small.dim == 0:
            continue
        big = hom_space(fm.target, v)
        if big.dim == 0:
            return False
        rows = [f.matmul(b, fm.matrix).reshape(-1) for b in big.matrices]
        if rank(np.vstack(rows), f) != small.dim:
            return False
    return True


def _nilpotent_left_ideal(mats: list[np.ndarray], f: Field, n: int, budget: int = 20000) -> bool:
    """Whether the products of the span of ``mats`` (closed under left products) reach zero."""
    cur = mats
    for _ in range(n + 1):
        if not cur:
            return True
        if len(mats) * len(cur) > budget:
            return False
        rows = np.vstack([f.matmul(b, c).reshape(1, -1) for b in mats for c in cur])
        nxt = Subspace.span(f, n * n, rows) if rows.size else Subspace.zero(f, n * n)
        if nxt.dim == len(cur):
            return False  # the chain stopped shrinking above zero
        cur = [row.reshape(n, n) for row in nxt.basis]
    return not cur


def check_envelope(fm: ModuleMap, cap: int = 4096, seed: int = 0, trials: int = 64) -> bool | None:
    """Whether every ``alpha`` with ``alpha ∘ fm = fm`` is invertible; ``None`` if undecided."""
    f = fm.source.field
    t = fm.target
    end = hom_space(t, t)
    if t.dim == 0:
        return True
    if fm.source.dim == 0:
        homog = end.space
    else:
        cols = np.stack([f.matmul(b, fm.matrix).reshape(-1) for b in end.matrices], axis=1)
        coeffs = kernel_basis(cols, f)
        homog = Subspace.span(f, end.space.ambient_dim, f.matmul(coeffs.basis, end.space.basis)) if coeffs.dim else Subspace.zero(f, end.space.ambient_dim)
    ident = f.eye(t.dim)
    mats = [row.reshape(t.dim, t.dim) for row in homog.basis]
    if homog.dim == 0:
        return True
    for b in mats:
        if rank(f.reduce(ident + b), f) < t.dim:
            return False
    # B = {b : b fm = 0} is a left ideal of End(target); nilpotent powers
    # mean every 1 + b is invertible
    if _nilpotent_left_ideal(mats, f, t.dim):
        return True
    if f.p is not None and f.p**homog.dim <= cap:
        for coeffs in itertools.product(range(f.p), repeat=homog.dim):
            alpha = ident.copy()
            for c, b in zip(coeffs, mats):
                if c:
                    alpha = alpha + b * c
            if rank(f.reduce(alpha), f) < t.dim:
                return False
        return True
    rng = np.random.default_rng(seed)
    for _ in range(trials):
        cs = f.random(rng, homog.dim)
        alpha = f.reduce(ident + f.matmul(cs.reshape(1, -1), homog.basis).reshape(t.dim, t.dim))
        if rank(alpha, f) < t.dim:
            return False
    return None
