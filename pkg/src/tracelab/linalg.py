"""Exact dense linear algebra over GF(p) and the rationals.

Matrices are plain numpy arrays paired with a :class:`Field`.  Prime-field
arrays use ``int64`` holding canonical residues in ``[0, p)``; rational
arrays use ``dtype=object`` holding :class:`fractions.Fraction` values.
No floating point is ever involved.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from fractions import Fraction
from typing import Iterable, Sequence

import numpy as np

from .errors import AmbientMismatch, ShapeMismatch

_INT64_LIMIT = 2**62


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    d = 3
    while d * d <= n:
        if n % d == 0:
            return False
        d += 2
    return True


class Field:
    """Either GF(p) for a prime ``p < 2**31`` or the rationals (``p=None``)."""

    __slots__ = ("p",)

    def __init__(self, p: int | None = None):
        if p is not None:
            p = int(p)
            if p >= 2**31 or not _is_prime(p):
                raise ValueError(f"GF(p) requires a prime p < 2^31, got {p}")
        self.p = p

    @classmethod
    def prime(cls, p: int) -> "Field":
        return cls(p)

    @classmethod
    def rational(cls) -> "Field":
        return cls(None)

    @property
    def is_finite(self) -> bool:
        return self.p is not None

    @property
    def dtype(self):
        return np.int64 if self.p is not None else object

    @property
    def name(self) -> str:
        return f"GF({self.p})" if self.p is not None else "Q"

    def __eq__(self, other) -> bool:
        return isinstance(other, Field) and other.p == self.p

    def __hash__(self) -> int:
        return hash(("Field", self.p))

    def __repr__(self) -> str:
        return f"Field({self.name})"

    # -- scalars -----------------------------------------------------------

    def scalar(self, x):
        if self.p is not None:
            if isinstance(x, Fraction):
                return (x.numerator * pow(x.denominator, -1, self.p)) % self.p
            return int(x) % self.p
        if isinstance(x, str):
            return Fraction(x)
        return Fraction(x)

    def inv(self, x):
        if self.p is not None:
            return pow(int(x), -1, self.p)
        return 1 / Fraction(x)

    def parse_scalar(self, obj):
        """Integers for prime fields; integers or ``"a/b"`` strings for Q."""
        if isinstance(obj, bool):
            raise ValueError(f"not a scalar: {obj!r}")
        if self.p is not None:
            if isinstance(obj, int):
                return obj % self.p
            if isinstance(obj, str):
                return self.scalar(Fraction(obj))
            raise ValueError(f"not a GF({self.p}) scalar: {obj!r}")
        if isinstance(obj, (int, str)):
            return Fraction(obj)
        raise ValueError(f"not a rational scalar: {obj!r}")

    def format_scalar(self, x):
        if self.p is not None:
            return int(x)
        x = Fraction(x)
        return int(x) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"

    # -- arrays ------------------------------------------------------------

    def array(self, data, shape: tuple[int, ...] | None = None) -> np.ndarray:
        if self.p is not None:
            a = np.array(data, dtype=object if _has_fraction(data) else None)
            if a.dtype == object:
                a = np.vectorize(self.scalar, otypes=[np.int64])(a) if a.size else a.astype(np.int64)
            a = np.asarray(a, dtype=np.int64) % self.p
        else:
            a = np.array(data, dtype=object)
            if a.size:
                a = np.vectorize(Fraction, otypes=[object])(a)
        if shape is not None:
            a = a.reshape(shape)
        return a

    def zeros(self, *shape: int) -> np.ndarray:
        if self.p is not None:
            return np.zeros(shape, dtype=np.int64)
        a = np.empty(shape, dtype=object)
        a.fill(Fraction(0))
        return a

    def eye(self, n: int) -> np.ndarray:
        a = self.zeros(n, n)
        for i in range(n):
            a[i, i] = 1 if self.p is not None else Fraction(1)
        return a

    def reduce(self, a: np.ndarray) -> np.ndarray:
        if self.p is not None:
            return a % self.p
        return a

    def matmul(self, a: np.ndarray, b: np.ndarray) -> np.ndarray:
        if self.p is None:
            if a.shape[-1] == 0:
                return self.zeros(a.shape[0], *b.shape[1:])
            return a @ b
        k = a.shape[-1]
        if k * (self.p - 1) ** 2 < _INT64_LIMIT:
            return (a @ b) % self.p
        return ((a.astype(object) @ b.astype(object)) % self.p).astype(np.int64)

    def random(self, rng: np.random.Generator, shape, bound: int = 10) -> np.ndarray:
        """Uniform residues over GF(p); small integers in ``[-bound, bound]`` over Q."""
        if self.p is not None:
            return rng.integers(0, self.p, size=shape, dtype=np.int64)
        vals = rng.integers(-bound, bound + 1, size=shape)
        out = np.empty(vals.shape, dtype=object)
        out.flat[:] = [Fraction(int(v)) for v in vals.flat]
        return out

    def is_zero(self, a: np.ndarray) -> bool:
        return not np.any(a != 0) if a.size else True


def _has_fraction(data) -> bool:
    if isinstance(data, Fraction):
        return True
    if isinstance(data, np.ndarray):
        return data.dtype == object
    if isinstance(data, (list, tuple)):
        return any(_has_fraction(x) for x in data)
    return False


def matrix_power(f: Field, a: np.ndarray, k: int) -> np.ndarray:
    result = f.eye(a.shape[0])
    base = a
    while k:
        if k & 1:
            result = f.matmul(result, base)
        base = f.matmul(base, base)
        k >>= 1
    return result


# -- elimination -------------------------------------------------------------


def rref(m: np.ndarray, f: Field) -> tuple[np.ndarray, list[int], int]:
    """Reduced row-echelon form; returns ``(reduced, pivot_columns, rank)``.

    ``reduced`` has the same shape as ``m`` (zero rows at the bottom).
    """
    a = f.reduce(np.array(m, dtype=f.dtype, copy=True))
    if a.ndim == 2 and a.shape[0] > a.shape[1]:
        # drop zero rows up front; they only cost time
        nonzero = np.flatnonzero(np.any(a != 0, axis=1))
        if nonzero.size < a.shape[0]:
            out, pivots, r = rref(a[nonzero], f)
            full = f.zeros(*a.shape)
            full[: out.shape[0]] = out
            return full, pivots, r
    rows, cols = a.shape
    pivots: list[int] = []
    r = 0
    for c in range(cols):
        if r == rows:
            break
        nz = np.flatnonzero(a[r:, c])
        if nz.size == 0:
            continue
        i = r + int(nz[0])
        if i != r:
            a[[r, i]] = a[[i, r]]
        piv = a[r, c]
        if piv != 1:
            a[r] = f.reduce(a[r] * f.inv(piv))
        col = a[:, c].copy()
        col[r] = 0
        others = np.flatnonzero(col)
        if others.size:
            a[others] = f.reduce(a[others] - np.outer(col[others], a[r]))
        pivots.append(c)
        r += 1
    return a, pivots, r


def rank(m: np.ndarray, f: Field) -> int:
    if m.size == 0:
        return 0
    return rref(m, f)[2]


def kernel_basis(m: np.ndarray, f: Field) -> "Subspace":
    """Null space ``{v : m v = 0}`` in canonical form."""
    rows, cols = m.shape
    if rows == 0:
        return Subspace.full(f, cols)
    red, pivots, r = rref(m, f)
    free = [c for c in range(cols) if c not in set(pivots)]
    if not free:
        return Subspace.zero(f, cols)
    basis = f.zeros(len(free), cols)
    for k, fc in enumerate(free):
        basis[k, fc] = 1
        for i, pc in enumerate(pivots):
            basis[k, pc] = f.reduce(-red[i, fc]) if f.p is not None else -red[i, fc]
    return Subspace.span(f, cols, basis)


def solve_linear(a: np.ndarray, b: np.ndarray, f: Field) -> np.ndarray | None:
    """Some ``x`` with ``a x = b``, free variables set to zero; ``None`` if inconsistent."""
    b = np.asarray(b)
    if b.ndim != 1 or a.shape[0] != b.shape[0]:
        raise ShapeMismatch(f"cannot solve {a.shape} system against rhs of shape {b.shape}")
    rows, cols = a.shape
    aug = f.zeros(rows, cols + 1)
    if rows:
        aug[:, :cols] = a
        aug[:, cols] = b
    red, pivots, r = rref(aug, f)
    if pivots and pivots[-1] == cols:
        return None
    x = f.zeros(cols)
    for i, pc in enumerate(pivots):
        x[pc] = red[i, cols]
    return x


def inverse(a: np.ndarray, f: Field) -> np.ndarray | None:
    n = a.shape[0]
    if a.shape != (n, n):
        raise ShapeMismatch(f"inverse of non-square {a.shape} matrix")
    aug = f.zeros(n, 2 * n)
    aug[:, :n] = a
    aug[:, n:] = f.eye(n)
    if n == 0:
        return f.zeros(0, 0)
    red, pivots, r = rref(aug, f)
    if pivots[n - 1] != n - 1:
        return None
    return red[:, n:]


# -- subspaces ---------------------------------------------------------------


@dataclass(frozen=True, eq=False)
class Subspace:
    """A subspace of ``field^ambient_dim`` stored by its canonical RREF basis.

    Two subspaces are equal exactly when their basis arrays are equal.
    """

    field: Field
    ambient_dim: int
    basis: np.ndarray
    pivots: tuple[int, ...] = dc_field(default=())

    @classmethod
    def span(cls, f: Field, n: int, vectors) -> "Subspace":
        vecs = np.asarray(vectors, dtype=f.dtype) if not isinstance(vectors, np.ndarray) else vectors
        if vecs.size == 0:
            return cls.zero(f, n)
        vecs = vecs.reshape(-1, n)
        red, pivots, r = rref(vecs, f)
        basis = red[:r].copy()
        basis.flags.writeable = False
        return cls(f, n, basis, tuple(pivots))

    @classmethod
    def zero(cls, f: Field, n: int) -> "Subspace":
        b = f.zeros(0, n)
        b.flags.writeable = False
        return cls(f, n, b, ())

    @classmethod
    def full(cls, f: Field, n: int) -> "Subspace":
        b = f.eye(n)
        b.flags.writeable = False
        return cls(f, n, b, tuple(range(n)))

    @property
    def dim(self) -> int:
        return self.basis.shape[0]

    def __eq__(self, other) -> bool:
        if not isinstance(other, Subspace):
            return NotImplemented
        return (
            self.field == other.field
            and self.ambient_dim == other.ambient_dim
            and self.basis.shape == other.basis.shape
            and bool(np.all(self.basis == other.basis))
        )

    def __hash__(self) -> int:
        return hash((self.ambient_dim, self.pivots, tuple(self.basis.ravel().tolist())))

    def __repr__(self) -> str:
        rows = [[self.field.format_scalar(x) for x in row] for row in self.basis]
        return f"Subspace(dim={self.dim}/{self.ambient_dim}, {rows})"

    def residual(self, v: np.ndarray) -> np.ndarray:
        """``v`` minus its projection along the canonical basis."""
        v = np.asarray(v, dtype=self.field.dtype)
        if self.dim == 0:
            return self.field.reduce(v.copy())
        coeffs = v[..., list(self.pivots)]
        return self.field.reduce(v - self.field.matmul(coeffs, self.basis))

    def contains(self, v: np.ndarray) -> bool:
        return self.field.is_zero(self.residual(v))

    def contains_all(self, vectors: np.ndarray) -> bool:
        if vectors.size == 0:
            return True
        return self.field.is_zero(self.residual(vectors))

    def coordinates(self, v: np.ndarray) -> np.ndarray:
        """Coordinates of ``v`` (or of each row of ``v``) in the canonical basis."""
        v = np.asarray(v, dtype=self.field.dtype)
        if not self.contains_all(v.reshape(-1, self.ambient_dim)):
            raise ValueError("vector is not in the subspace")
        return v[..., list(self.pivots)]

    def to_lists(self) -> list[list]:
        return [[self.field.format_scalar(x) for x in row] for row in self.basis]


def _check_ambient(u: Subspace, v: Subspace) -> None:
    if u.ambient_dim != v.ambient_dim or u.field != v.field:
        raise AmbientMismatch(
            f"subspaces live in {u.field.name}^{u.ambient_dim} and {v.field.name}^{v.ambient_dim}"
        )


def subspace_sum(u: Subspace, v: Subspace) -> Subspace:
    _check_ambient(u, v)
    if u.dim == 0:
        return v
    if v.dim == 0:
        return u
    return Subspace.span(u.field, u.ambient_dim, np.vstack([u.basis, v.basis]))


def subspace_sum_intersect(u: Subspace, v: Subspace) -> tuple[Subspace, Subspace]:
    """Zassenhaus: reduce ``[[u, u], [v, 0]]``; rows with a zero left half span the intersection."""
    _check_ambient(u, v)
    f, n = u.field, u.ambient_dim
    if u.dim == 0 or v.dim == 0:
        return (v if u.dim == 0 else u), Subspace.zero(f, n)
    block = f.zeros(u.dim + v.dim, 2 * n)
    block[: u.dim, :n] = u.basis
    block[: u.dim, n:] = u.basis
    block[u.dim :, :n] = v.basis
    red, pivots, r = rref(block, f)
    sum_rows = [i for i in range(r) if pivots[i] < n]
    int_rows = [i for i in range(r) if pivots[i] >= n]
    total = Subspace.span(f, n, red[sum_rows, :n]) if sum_rows else Subspace.zero(f, n)
    inter = Subspace.span(f, n, red[int_rows, n:]) if int_rows else Subspace.zero(f, n)
    return total, inter


def subspace_intersect(u: Subspace, v: Subspace) -> Subspace:
    return subspace_sum_intersect(u, v)[1]


def subspace_compare(u: Subspace, v: Subspace) -> str:
    """One of ``"equal"``, ``"u_inside_v"``, ``"v_inside_u"``, ``"incomparable"``."""
    _check_ambient(u, v)
    u_in_v = v.contains_all(u.basis)
    v_in_u = u.contains_all(v.basis)
    if u_in_v and v_in_u:
        return "equal"
    if u_in_v:
        return "u_inside_v"
    if v_in_u:
        return "v_inside_u"
    return "incomparable"


def column_space(m: np.ndarray, f: Field) -> Subspace:
    return Subspace.span(f, m.shape[0], m.T) if m.shape[1] else Subspace.zero(f, m.shape[0])


def image_of(m: np.ndarray, s: Subspace) -> Subspace:
    """Image of the subspace ``s`` under the linear map ``m``."""
    f = s.field
    if s.dim == 0:
        return Subspace.zero(f, m.shape[0])
    return Subspace.span(f, m.shape[0], f.matmul(s.basis, m.T))


def vectors_in(f: Field, n: int) -> Iterable[np.ndarray]:
    """Every vector of ``GF(p)^n`` (oracle helper; finite fields only)."""
    import itertools

    if f.p is None:
        raise ValueError("cannot enumerate vectors over Q")
    for t in itertools.product(range(f.p), repeat=n):
        yield np.array(t, dtype=np.int64)


def stack_rows(f: Field, rows: Sequence[np.ndarray], width: int) -> np.ndarray:
    if not rows:
        return f.zeros(0, width)
    return np.vstack(rows)


def subspace_from_rref_rows(f: Field, n: int, rows: tuple[tuple[int, ...], ...]) -> Subspace:
    """Wrap rows already in canonical RREF without re-reducing them."""
    if not rows:
        return Subspace.zero(f, n)
    basis = np.array(rows, dtype=np.int64).reshape(-1, n)
    basis.flags.writeable = False
    pivots = tuple(next(i for i, x in enumerate(r) if x) for r in rows)
    return Subspace(f, n, basis, pivots)
