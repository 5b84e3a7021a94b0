"""Built-in witness rings, pre-expanded to structure constants."""

from __future__ import annotations

import itertools
from typing import Callable

from .algebra import Algebra
from .linalg import Field


def _monomial_algebra(field: Field, monomials: list[tuple[int, ...]], names: list[str], name: str) -> Algebra:
    """Commutative monomial quotient of k[x_1..x_r] whose standard monomials are ``monomials``.

    A product of two basis monomials is the sum of exponents when that is
    again a basis monomial, and zero otherwise (the ideal is monomial).
    """
    n = len(monomials)
    index = {m: i for i, m in enumerate(monomials)}
    c = [[[0] * n for _ in range(n)] for _ in range(n)]
    for (i, a), (j, b) in itertools.product(enumerate(monomials), repeat=2):
        prod = tuple(x + y for x, y in zip(a, b))
        if prod in index:
            c[i][j][index[prod]] = 1
    unit = [1 if m == tuple(0 for _ in m) else 0 for m in monomials]
    return Algebra(field, c, unit, names, name=name)


def dual_numbers(field: Field) -> Algebra:
    return _monomial_algebra(field, [(0,), (1,)], ["1", "x"], f"dual_numbers:{_tag(field)}")


def jordan3(field: Field) -> Algebra:
    return _monomial_algebra(field, [(0,), (1,), (2,)], ["1", "x", "x2"], f"jordan3:{_tag(field)}")


def fat_point(field: Field) -> Algebra:
    return _monomial_algebra(field, [(0, 0), (1, 0), (0, 1)], ["1", "x", "y"], f"fat_point:{_tag(field)}")


def ci4(field: Field) -> Algebra:
    return _monomial_algebra(
        field, [(0, 0), (1, 0), (0, 1), (1, 1)], ["1", "x", "y", "xy"], f"ci4:{_tag(field)}"
    )


def ss2(field: Field) -> Algebra:
    # orthogonal idempotents e1, e2 with e1 + e2 = 1
    c = [[[1, 0], [0, 0]], [[0, 0], [0, 1]]]
    return Algebra(field, c, [1, 1], ["e1", "e2"], name=f"ss2:{_tag(field)}")


def mat2(field: Field) -> Algebra:
    # matrix units E11, E12, E21, E22: E_ab E_cd = [b == c] E_ad
    units = [(0, 0), (0, 1), (1, 0), (1, 1)]
    c = [[[0] * 4 for _ in range(4)] for _ in range(4)]
    for i, (a, b) in enumerate(units):
        for j, (cc, d) in enumerate(units):
            if b == cc:
                c[i][j][units.index((a, d))] = 1
    return Algebra(
        field, c, [1, 0, 0, 1], ["E11", "E12", "E21", "E22"], supplied_radical=[], name=f"mat2:{_tag(field)}"
    )


def _tag(field: Field) -> str:
    return "Q" if field.p is None else str(field.p)


PRESET_BUILDERS: dict[str, tuple[Callable[[Field], Algebra], str]] = {
    "dual_numbers": (dual_numbers, "k[x]/(x^2)"),
    "jordan3": (jordan3, "k[x]/(x^3)"),
    "fat_point": (fat_point, "k[x,y]/(x,y)^2"),
    "ci4": (ci4, "k[x,y]/(x^2,y^2)"),
    "ss2": (ss2, "k x k"),
    "mat2": (mat2, "M_2(k), radical supplied as zero"),
}

LISTED_PRESETS = [f"{family}:{p}" for family in PRESET_BUILDERS for p in (2, 3)] + ["dual_numbers:Q"]


def builtin_presets() -> list[str]:
    """Named presets; any ``family:p`` for prime ``p`` or ``family:Q`` also resolves."""
    return list(LISTED_PRESETS)


def preset_algebra(spec: str) -> Algebra:
    family, _, tag = spec.partition(":")
    if family not in PRESET_BUILDERS:
        raise KeyError(f"unknown preset family {family!r}")
    if tag in ("", "Q", "q"):
        field = Field.rational() if tag else Field.prime(2)
    else:
        field = Field.prime(int(tag))
    return PRESET_BUILDERS[family][0](field)
