"""Brute-force oracles and random instance generators shared by the tests.

Each oracle enumerates every candidate over a small prime field and filters by
the defining property, so it shares no code path with the library routine it
checks beyond the field arithmetic.
"""

from __future__ import annotations

import itertools

import numpy as np

from tracelab import (
    Subspace,
    direct_sum,
    enumerate_submodules,
    hom_space,
    kernel_basis,
    preset_algebra,
)
from tracelab.algebra import Module, all_invariant_subspaces, conjugate, validate_module
from tracelab.corpus import build_corpus
from tracelab.linalg import inverse

ORACLE_PRESETS = ["dual_numbers:2", "jordan3:2", "fat_point:2", "ci4:2", "ss2:2", "mat2:2"]


def all_matrices(p: int, rows: int, cols: int) -> np.ndarray:
    """Every ``rows x cols`` matrix over GF(p), stacked on axis 0."""
    if rows * cols == 0:
        return np.zeros((1, rows, cols), dtype=np.int64)
    grid = np.array(list(itertools.product(range(p), repeat=rows * cols)), dtype=np.int64)
    return grid.reshape(-1, rows, cols)


def brute_hom(m: Module, n: Module) -> np.ndarray:
    """All intertwiners ``m -> n`` found by testing every matrix against every basis element."""
    p = m.field.p
    cands = all_matrices(p, n.dim, m.dim)
    ok = np.ones(len(cands), dtype=bool)
    for am, an in zip(m.action, n.action):
        lhs = np.einsum("ij,njk->nik", an, cands) % p
        rhs = np.einsum("nij,jk->nik", cands, am) % p
        ok &= np.all((lhs == rhs).reshape(len(cands), -1), axis=1)
    return cands[ok]


def hom_matches_oracle(m: Module, n: Module) -> bool:
    p = m.field.p
    found = brute_hom(m, n)
    h = hom_space(m, n)
    if len(found) != p**h.dim:
        return False
    if h.dim == 0:
        return True
    flat = found.reshape(len(found), -1)
    return all(h.space.contains(v) for v in flat)


def submodules_match_oracle(m: Module) -> bool:
    lib = {s.space for s in enumerate_submodules(m, cap=10**6)}
    brute = set(all_invariant_subspaces(m))
    return lib == brute


def brute_kernel(mat: np.ndarray, p: int) -> list[np.ndarray]:
    n = mat.shape[1]
    vecs = np.array(list(itertools.product(range(p), repeat=n)), dtype=np.int64)
    return [v for v in vecs if not np.any((mat @ v) % p)]


def kernel_matches_oracle(mat: np.ndarray, p: int) -> bool:
    from tracelab import Field

    f = Field.prime(p)
    k = kernel_basis(mat, f)
    found = brute_kernel(mat, p)
    if len(found) != p**k.dim:
        return False
    # the library basis is annihilated and spans exactly the enumerated vectors
    if k.dim and np.any(f.matmul(mat, k.basis.T)):
        return False
    return all(k.contains(v) for v in found)


def brute_ext1_dim(m: Module, n: Module, limit: int = 2**14) -> int | None:
    """``dim Ext^1(m, n)`` by counting extension actions ``[[n_i, c_i], [0, m_i]]``.

    Cocycles are the families ``c`` making the block matrices a module;
    coboundaries are ``c_i = n_i h - h m_i``.  ``None`` when the search is too large.
    """
    a, p = m.algebra, m.field.p
    d = a.dim * n.dim * m.dim
    if p**d > limit:
        return None
    if d == 0:
        return 0
    total = n.dim + m.dim
    cocycles = 0
    for flat in itertools.product(range(p), repeat=d):
        c = np.array(flat, dtype=np.int64).reshape(a.dim, n.dim, m.dim)
        acts = []
        for i in range(a.dim):
            blk = np.zeros((total, total), dtype=np.int64)
            blk[: n.dim, : n.dim] = n.action[i]
            blk[: n.dim, n.dim :] = c[i]
            blk[n.dim :, n.dim :] = m.action[i]
            acts.append(blk)
        cocycles += not validate_module(Module(a, acts))
    bounds = set()
    for h in all_matrices(p, n.dim, m.dim):
        b = np.stack([(n.action[i] @ h - h @ m.action[i]) % p for i in range(a.dim)])
        bounds.add(b.tobytes())
    return round(np.log(cocycles) / np.log(p)) - round(np.log(len(bounds)) / np.log(p))


# -- random instances --------------------------------------------------------------


def random_invertible(f, n: int, rng: np.random.Generator) -> tuple[np.ndarray, np.ndarray]:
    while True:
        p = f.random(rng, (n, n))
        q = inverse(p, f)
        if q is not None:
            return p, q


_POOLS: dict[str, list[Module]] = {}


def indecomposable_pool(spec: str) -> list[Module]:
    """Indecomposables of a preset, built once per process."""
    if spec not in _POOLS:
        a = preset_algebra(spec)
        _POOLS[spec] = build_corpus(a, max_dim=1).indecomposables
    return _POOLS[spec]


def random_module(rng: np.random.Generator, max_dim: int, spec: str | None = None) -> Module:
    """A randomly conjugated direct sum of preset indecomposables of total dim in ``1..max_dim``."""
    spec = spec or ORACLE_PRESETS[rng.integers(len(ORACLE_PRESETS))]
    pool = [m for m in indecomposable_pool(spec) if m.dim <= max_dim]
    parts: list[Module] = []
    budget = int(rng.integers(1, max_dim + 1))
    while True:
        fits = [m for m in pool if m.dim <= budget - sum(x.dim for x in parts)]
        if not fits or (parts and rng.random() < 0.3):
            break
        parts.append(fits[rng.integers(len(fits))])
    if not parts:
        parts = [min(pool, key=lambda m: m.dim)]
    m = parts[0] if len(parts) == 1 else direct_sum(*parts).module
    p, q = random_invertible(m.field, m.dim, rng)
    copy, _ = conjugate(m, p, q)
    return copy


def random_pair(rng: np.random.Generator, max_dim: int) -> tuple[Module, Module]:
    spec = ORACLE_PRESETS[rng.integers(len(ORACLE_PRESETS))]
    return random_module(rng, max_dim, spec), random_module(rng, max_dim, spec)


def random_matrix(rng: np.random.Generator, p: int, max_rows: int = 5, max_cols: int = 6) -> np.ndarray:
    r = int(rng.integers(1, max_rows + 1))
    c = int(rng.integers(1, max_cols + 1))
    mat = rng.integers(0, p, size=(r, c), dtype=np.int64)
    if rng.random() < 0.3 and r > 1:
        mat[-1] = (mat[0] * int(rng.integers(0, p))) % p  # force a dependency now and then
    return mat


def run_oracle_sweep(seed: int = 20240531, hom_n: int = 400, sub_n: int = 300, ker_n: int = 400) -> dict[str, int]:
    """Randomised comparison of Hom, submodule lattices and kernels against brute force."""
    rng = np.random.default_rng(seed)
    out = {"hom": 0, "submodules": 0, "kernel": 0, "mismatches": 0}
    for _ in range(hom_n):
        m, n = random_pair(rng, 3)
        out["hom"] += 1
        out["mismatches"] += not hom_matches_oracle(m, n)
    for _ in range(sub_n):
        m = random_module(rng, 4)
        out["submodules"] += 1
        out["mismatches"] += not submodules_match_oracle(m)
    for _ in range(ker_n):
        p = [2, 3, 5][rng.integers(3)]
        mat = random_matrix(rng, p, max_cols=6 if p == 2 else 4)
        out["kernel"] += 1
        out["mismatches"] += not kernel_matches_oracle(mat, p)
    out["instances"] = out["hom"] + out["submodules"] + out["kernel"]
    return out


def upper_triangular(p: int) -> Algebra:
    """Upper triangular 2x2 matrices on the basis E11, E12, E22."""
    from tracelab import Algebra, Field

    f = Field.prime(p)
    names = ["E11", "E12", "E22"]
    units = [(0, 0), (0, 1), (1, 1)]
    c = np.zeros((3, 3, 3), dtype=np.int64)
    for i, (a, b) in enumerate(units):
        for j, (cc, d) in enumerate(units):
            if b == cc:
                c[i, j, units.index((a, d))] = 1
    return Algebra(f, c, [1, 0, 1], names, name=f"T2:{p}")


def subspace_of(f, n: int, rows) -> Subspace:
    return Subspace.span(f, n, f.array(rows).reshape(-1, n)) if len(rows) else Subspace.zero(f, n)
