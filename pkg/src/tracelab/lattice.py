"""Plain-Python submodule lattices over small prime fields.

Vectors over GF(2) are packed into integers (coordinate 0 is the top bit);
other primes use tuples.  A subspace is keyed by its reduced echelon rows,
so two keys are equal exactly when the subspaces are.
"""

from __future__ import annotations

import itertools
from typing import Sequence

import numpy as np


class _Bits:
    """GF(2)^n with vectors as ints."""

    def __init__(self, n: int, actions: Sequence[np.ndarray]):
        self.n = n
        # image of basis vector j under each generator, packed
        self.cols = [[self.pack(a[:, j]) for j in range(n)] for a in actions]

    def pack(self, v) -> int:
        out = 0
        for x in v:
            out = (out << 1) | (int(x) & 1)
        return out

    def unpack(self, w: int) -> tuple[int, ...]:
        return tuple((w >> (self.n - 1 - i)) & 1 for i in range(self.n))

    def apply(self, g: int, w: int) -> int:
        out = 0
        cols = self.cols[g]
        j = self.n - 1
        while w:
            if w & 1:
                out ^= cols[j]
            w >>= 1
            j -= 1
        return out

    @staticmethod
    def insert(basis: list[int], w: int) -> bool:
        for b in basis:
            top = b.bit_length() - 1
            if (w >> top) & 1:
                w ^= b
        if not w:
            return False
        top = w.bit_length() - 1
        for i, b in enumerate(basis):
            if (b >> top) & 1:
                basis[i] = b ^ w
        basis.append(w)
        return True

    @staticmethod
    def key(basis: list[int]) -> tuple:
        return tuple(sorted(basis, reverse=True))

    def rows(self, key: tuple) -> tuple[tuple[int, ...], ...]:
        return tuple(self.unpack(w) for w in key)

    def points(self):
        return range(1, 1 << self.n)  # over GF(2) every nonzero vector is a point


class _Tuples:
    """GF(p)^n with vectors as tuples."""

    def __init__(self, n: int, p: int, actions: Sequence[np.ndarray]):
        self.n, self.p = n, p
        self.mats = [[[int(x) % p for x in row] for row in a] for a in actions]

    def apply(self, g: int, w: tuple) -> tuple:
        p = self.p
        return tuple(sum(a * b for a, b in zip(row, w)) % p for row in self.mats[g])

    def insert(self, basis: list[tuple], w: tuple) -> bool:
        p = self.p
        v = list(w)
        for b in basis:
            lead = next(i for i, x in enumerate(b) if x)
            if v[lead]:
                k = v[lead]
                v = [(x - k * y) % p for x, y in zip(v, b)]
        lead = next((i for i, x in enumerate(v) if x), None)
        if lead is None:
            return False
        inv = pow(v[lead], p - 2, p)
        v = [(x * inv) % p for x in v]
        for i, b in enumerate(basis):
            if b[lead]:
                k = b[lead]
                basis[i] = tuple((x - k * y) % p for x, y in zip(b, v))
        basis.append(tuple(v))
        return True

    @staticmethod
    def key(basis: list[tuple]) -> tuple:
        return tuple(sorted(basis, reverse=True))

    def rows(self, key: tuple) -> tuple:
        return key

    def points(self):
        n, p = self.n, self.p
        for lead in range(n):
            for tail in itertools.product(range(p), repeat=n - lead - 1):
                yield (0,) * lead + (1,) + tail


class LatticeOverflow(Exception):
    pass


def submodule_keys(actions: Sequence[np.ndarray], n: int, p: int, cap: int) -> list[tuple[tuple[int, ...], ...]]:
    """RREF row tuples of every subspace invariant under ``actions``.

    Cyclic submodules come from one vector per projective point; the lattice
    is their closure under sums.  Raises :class:`LatticeOverflow` past ``cap``.
    """
    sp = _Bits(n, actions) if p == 2 else _Tuples(n, p, actions)
    gens = range(len(actions))
    cyclic: dict[tuple, None] = {}
    for v in sp.points():
        basis: list = []
        queue = [v]
        while queue:
            w = queue.pop()
            if sp.insert(basis, w):
                queue.extend(sp.apply(g, basis[-1]) for g in gens)
        cyclic.setdefault(sp.key(basis), None)
    found: dict[tuple, None] = {(): None}
    for c in cyclic:
        additions = []
        for s in found:
            basis = list(s)
            changed = False
            for w in c:
                changed |= sp.insert(basis, w)
            if changed:
                t = sp.key(basis)
                if t not in found:
                    additions.append(t)
        for t in additions:
            found.setdefault(t, None)
        if len(found) > cap:
            raise LatticeOverflow(len(found))
    return [sp.rows(k) for k in found]
