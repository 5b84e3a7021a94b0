"""Finite-dimensional algebras given by structure constants, and their modules."""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import NamedTuple, Sequence

import numpy as np

from .errors import (
    AlgebraMismatch,
    FieldNotFinite,
    NotSubmodule,
    Overflow,
    RadicalUnsupported,
)
from .lattice import LatticeOverflow, submodule_keys
from .linalg import (
    Field,
    Subspace,
    kernel_basis,
    subspace_from_rref_rows,
    matrix_power,
    rank,
    subspace_sum,
)


class Algebra:
    """Associative unital algebra ``A`` with basis ``e_0..e_{n-1}``.

    ``constants[i, j, k]`` is the coefficient of ``e_k`` in ``e_i e_j``.
    """

    def __init__(
        self,
        field: Field,
        constants,
        unit,
        basis_names: Sequence[str] | None = None,
        supplied_radical: Sequence | None = None,
        name: str | None = None,
    ):
        self.field = field
        c = field.array(constants)
        n = c.shape[0] if c.ndim == 3 else 0
        if c.shape != (n, n, n):
            raise ValueError(f"structure constants must be n x n x n, got shape {c.shape}")
        c.flags.writeable = False
        self.constants = c
        self.dim = n
        u = field.array(unit).reshape(n)
        u.flags.writeable = False
        self.unit = u
        self.basis_names = list(basis_names) if basis_names is not None else [f"e{i}" for i in range(n)]
        if len(self.basis_names) != n:
            raise ValueError("basis_names length differs from dimension")
        self.supplied_radical = None
        if supplied_radical is not None:
            rows = field.array(supplied_radical).reshape(-1, n) if len(supplied_radical) else field.zeros(0, n)
            self.supplied_radical = Subspace.span(field, n, rows)
        self.name = name or f"algebra[{field.name}, dim {n}]"
        self._opposite: Algebra | None = None
        self.cache: dict = {}

    def __repr__(self) -> str:
        return f"Algebra({self.name})"

    def __eq__(self, other) -> bool:
        if self is other:
            return True
        if not isinstance(other, Algebra):
            return NotImplemented
        return (
            self.field == other.field
            and self.dim == other.dim
            and bool(np.all(self.constants == other.constants))
            and bool(np.all(self.unit == other.unit))
        )

    __hash__ = object.__hash__

    # -- multiplication ----------------------------------------------------

    @cached_property
    def left_mult(self) -> tuple[np.ndarray, ...]:
        # L_i[k, j] = c[i, j, k]
        return tuple(np.ascontiguousarray(self.constants[i].T) for i in range(self.dim))

    @cached_property
    def right_mult(self) -> tuple[np.ndarray, ...]:
        # R_j[k, i] = c[i, j, k]
        return tuple(np.ascontiguousarray(self.constants[:, j, :].T) for j in range(self.dim))

    def multiply(self, a, b) -> np.ndarray:
        f = self.field
        a = f.array(a) if not isinstance(a, np.ndarray) else a
        b = f.array(b) if not isinstance(b, np.ndarray) else b
        out = f.zeros(self.dim)
        for i in np.flatnonzero(a):
            out = f.reduce(out + f.matmul(self.left_mult[i], b) * a[i])
        return out

    def basis_vector(self, i: int) -> np.ndarray:
        v = self.field.zeros(self.dim)
        v[i] = 1
        return v

    def left_mult_of(self, a: np.ndarray) -> np.ndarray:
        f = self.field
        out = f.zeros(self.dim, self.dim)
        for i in np.flatnonzero(a):
            out = out + self.left_mult[i] * a[i]
        return f.reduce(out)

    def power(self, a: np.ndarray, k: int) -> np.ndarray:
        v = self.unit.copy()
        for _ in range(k):
            v = self.multiply(v, a)
        return v

    @cached_property
    def is_commutative(self) -> bool:
        return bool(np.all(self.constants == self.constants.transpose(1, 0, 2)))

    @cached_property
    def generators(self) -> tuple[int, ...]:
        """Basis indices generating ``A`` as a unital algebra (greedy, deterministic).

        A linear map commutes with all of ``A`` iff it commutes with these.
        """
        f, n = self.field, self.dim
        gens: list[int] = []
        span = Subspace.span(f, n, self.unit.reshape(1, n))
        for i in range(n):
            if span.contains(self.basis_vector(i)):
                continue
            gens.append(i)
            span = _close_under(f, span, [self.left_mult[g] for g in gens])
        return tuple(gens)

    def opposite(self) -> "Algebra":
        if self._opposite is None:
            op = Algebra(
                self.field,
                self.constants.transpose(1, 0, 2),
                self.unit,
                self.basis_names,
                None,
                name=f"{self.name}^op",
            )
            if self.supplied_radical is not None:
                op.supplied_radical = self.supplied_radical
            op._opposite = self
            self._opposite = op
        return self._opposite


def _close_under(f: Field, space: Subspace, mats: Sequence[np.ndarray]) -> Subspace:
    """Smallest subspace containing ``space`` and stable under every matrix in ``mats``."""
    while True:
        if space.dim == 0 or not mats:
            return space
        images = np.vstack([f.matmul(space.basis, m.T) for m in mats])
        new = subspace_sum(space, Subspace.span(f, space.ambient_dim, images))
        if new.dim == space.dim:
            return space
        space = new


def validate_algebra(a: Algebra) -> list[str]:
    """Every violated algebra axiom, one message per failure; empty when valid."""
    f, n, c = a.field, a.dim, a.constants
    violations: list[str] = []
    for i in range(n):
        for j in range(n):
            eij = c[i, j]
            for k in range(n):
                # (e_i e_j) e_k vs e_i (e_j e_k)
                lhs = f.reduce(f.matmul(eij.reshape(1, n), c[:, k, :]).reshape(n))
                rhs = f.reduce(f.matmul(c[j, k].reshape(1, n), c[i, :, :]).reshape(n))
                if np.any(lhs != rhs):
                    violations.append(
                        f"associativity fails on ({a.basis_names[i]}, {a.basis_names[j]}, {a.basis_names[k]})"
                    )
    for i in range(n):
        ei = a.basis_vector(i)
        if np.any(a.multiply(a.unit, ei) != ei):
            violations.append(f"unit fails on the left of {a.basis_names[i]}")
        if np.any(a.multiply(ei, a.unit) != ei):
            violations.append(f"unit fails on the right of {a.basis_names[i]}")
    if a.supplied_radical is not None:
        violations.extend(_radical_violations(a, a.supplied_radical))
    return violations


def _radical_violations(a: Algebra, rad: Subspace) -> list[str]:
    f, n = a.field, a.dim
    out: list[str] = []
    if rad.dim == 0:
        return out
    for j in range(n):
        if not rad.contains_all(f.matmul(rad.basis, a.left_mult[j].T)):
            out.append(f"supplied radical not closed under left multiplication by {a.basis_names[j]}")
        if not rad.contains_all(f.matmul(rad.basis, a.right_mult[j].T)):
            out.append(f"supplied radical not closed under right multiplication by {a.basis_names[j]}")
    if out:
        return out
    power = rad
    for _ in range(n + 1):
        if power.dim == 0:
            break
        prods = [a.multiply(u, v) for u in power.basis for v in rad.basis]
        power = Subspace.span(f, n, np.vstack(prods))
    if power.dim:
        out.append("supplied radical is not nilpotent")
        return out
    q = n - rad.dim
    if q and (f.p is None or f.p > q):
        quot = quotient_algebra(a, rad)
        if _trace_form_radical(quot).dim:
            out.append("quotient by supplied radical is not semisimple (degenerate trace form)")
    return out


# -- modules -----------------------------------------------------------------


class Module:
    """Left module over ``algebra``: ``action[i]`` is the matrix of ``e_i``."""

    def __init__(self, algebra: Algebra, action: Sequence, name: str | None = None):
        self.algebra = algebra
        f = algebra.field
        mats = []
        for m in action:
            arr = m if isinstance(m, np.ndarray) and m.dtype == f.dtype else f.array(m)
            arr = np.array(arr, dtype=f.dtype)
            if arr.size == 0:
                arr = arr.reshape(0, 0)
            mats.append(arr)
        if len(mats) != algebra.dim:
            raise ValueError(f"need {algebra.dim} action matrices, got {len(mats)}")
        dim = mats[0].shape[0] if mats and mats[0].ndim == 2 else 0
        for m in mats:
            if m.shape != (dim, dim):
                raise ValueError(f"action matrices must all be {dim}x{dim}")
            m.flags.writeable = False
        self.action = tuple(mats)
        self.dim = dim
        self.name = name

    @property
    def field(self) -> Field:
        return self.algebra.field

    def __repr__(self) -> str:
        return f"Module({self.name or '?'}, dim {self.dim})"

    def act(self, a: np.ndarray) -> np.ndarray:
        """Matrix of the algebra element with coefficient vector ``a``."""
        f = self.field
        out = f.zeros(self.dim, self.dim)
        for i in np.flatnonzero(a):
            out = out + self.action[i] * a[i]
        return f.reduce(out)

    @property
    def generator_action(self) -> tuple[np.ndarray, ...]:
        return tuple(self.action[g] for g in self.algebra.generators)

    def renamed(self, name: str) -> "Module":
        m = Module.__new__(Module)
        m.algebra, m.action, m.dim, m.name = self.algebra, self.action, self.dim, name
        return m


def _same_algebra(a: Algebra, b: Algebra) -> None:
    if not (a is b or a == b):
        raise AlgebraMismatch(f"{a!r} vs {b!r}")


class ModuleMap:
    """A linear map ``matrix`` (target.dim x source.dim) commuting with both actions."""

    __slots__ = ("source", "target", "matrix")

    def __init__(self, source: Module, target: Module, matrix: np.ndarray, check: bool = True):
        _same_algebra(source.algebra, target.algebra)
        f = source.field
        matrix = np.array(matrix, dtype=f.dtype).reshape(target.dim, source.dim)
        matrix.flags.writeable = False
        self.source, self.target, self.matrix = source, target, matrix
        if check and not self.intertwines():
            raise ValueError("matrix does not commute with the module actions")

    def intertwines(self, all_basis: bool = False) -> bool:
        f = self.source.field
        idx = range(self.source.algebra.dim) if all_basis else self.source.algebra.generators
        for i in idx:
            lhs = f.matmul(self.matrix, self.source.action[i])
            rhs = f.matmul(self.target.action[i], self.matrix)
            if np.any(lhs != rhs):
                return False
        return True

    def __matmul__(self, other: "ModuleMap") -> "ModuleMap":
        """Composition ``self ∘ other``."""
        return ModuleMap(other.source, self.target, self.source.field.matmul(self.matrix, other.matrix), check=False)

    def __repr__(self) -> str:
        return f"ModuleMap({self.source!r} -> {self.target!r})"

    @property
    def rank(self) -> int:
        return rank(self.matrix, self.source.field)

    @property
    def is_injective(self) -> bool:
        return self.rank == self.source.dim

    @property
    def is_surjective(self) -> bool:
        return self.rank == self.target.dim

    @classmethod
    def identity(cls, m: Module) -> "ModuleMap":
        return cls(m, m, m.field.eye(m.dim), check=False)

    @classmethod
    def zero(cls, source: Module, target: Module) -> "ModuleMap":
        return cls(source, target, source.field.zeros(target.dim, source.dim), check=False)


class Submodule:
    """An action-invariant subspace of ``ambient``."""

    __slots__ = ("ambient", "space", "_module")

    def __init__(self, ambient: Module, space: Subspace, check: bool = True):
        if space.ambient_dim != ambient.dim:
            raise NotSubmodule(f"subspace of dim-{space.ambient_dim} space inside dim-{ambient.dim} module")
        self.ambient, self.space, self._module = ambient, space, None
        if check and not is_invariant(ambient, space):
            raise NotSubmodule("subspace is not invariant under the module action")

    @property
    def dim(self) -> int:
        return self.space.dim

    def __eq__(self, other) -> bool:
        if not isinstance(other, Submodule):
            return NotImplemented
        return self.ambient is other.ambient and self.space == other.space

    def __hash__(self) -> int:
        return hash((id(self.ambient), self.space))

    def __repr__(self) -> str:
        return f"Submodule(dim {self.dim} of {self.ambient!r})"

    def as_module(self) -> Module:
        """The submodule as a module in the coordinates of its canonical basis."""
        if self._module is None:
            f = self.ambient.field
            piv = list(self.space.pivots)
            b = self.space.basis
            action = [f.matmul(a, b.T)[piv, :] if self.dim else f.zeros(0, 0) for a in self.ambient.action]
            self._module = Module(self.ambient.algebra, action, name=f"sub{self.dim}")
        return self._module

    def inclusion(self) -> ModuleMap:
        return ModuleMap(self.as_module(), self.ambient, self.space.basis.T, check=False)

    def contains(self, other: "Submodule") -> bool:
        return self.space.contains_all(other.space.basis)


def is_invariant(m: Module, space: Subspace) -> bool:
    f = m.field
    if space.dim == 0:
        return True
    return all(space.contains_all(f.matmul(space.basis, a.T)) for a in m.generator_action)


def validate_module(m: Module) -> list[str]:
    a = m.algebra
    f = a.field
    out: list[str] = []
    for i, mat in enumerate(m.action):
        if mat.shape != (m.dim, m.dim):
            out.append(f"action of {a.basis_names[i]} has shape {mat.shape}")
    if out:
        return out
    if np.any(m.act(a.unit) != f.eye(m.dim)):
        out.append("the unit does not act as the identity")
    for i in range(a.dim):
        for j in range(a.dim):
            lhs = f.matmul(m.action[i], m.action[j])
            rhs = m.act(a.constants[i, j])
            if np.any(lhs != rhs):
                out.append(f"action({a.basis_names[i]})·action({a.basis_names[j]}) != action of their product")
    return out


def regular_module(a: Algebra) -> Module:
    cached = a.cache.get("regular")
    if cached is None:
        cached = Module(a, a.left_mult, name="R")
        a.cache["regular"] = cached
    return cached


def zero_module(a: Algebra) -> Module:
    return Module(a, [a.field.zeros(0, 0) for _ in range(a.dim)], name="0")


def opposite_algebra(a: Algebra) -> Algebra:
    return a.opposite()


class DirectSum(NamedTuple):
    module: Module
    inclusions: tuple[ModuleMap, ...]
    projections: tuple[ModuleMap, ...]


def direct_sum(*modules: Module) -> DirectSum:
    """Block-diagonal direct sum with its canonical inclusions and projections."""
    if not modules:
        raise ValueError("direct_sum needs at least one module")
    alg = modules[0].algebra
    for m in modules[1:]:
        _same_algebra(alg, m.algebra)
    f = alg.field
    total = sum(m.dim for m in modules)
    action = []
    for i in range(alg.dim):
        block = f.zeros(total, total)
        off = 0
        for m in modules:
            block[off : off + m.dim, off : off + m.dim] = m.action[i]
            off += m.dim
        action.append(block)
    name = " ⊕ ".join(m.name or "?" for m in modules)
    s = Module(alg, action, name=name)
    incs, projs = [], []
    off = 0
    for m in modules:
        inc = f.zeros(total, m.dim)
        inc[off : off + m.dim, :] = f.eye(m.dim)
        incs.append(ModuleMap(m, s, inc, check=False))
        projs.append(ModuleMap(s, m, inc.T.copy(), check=False))
        off += m.dim
    return DirectSum(s, tuple(incs), tuple(projs))


def conjugate(m: Module, p: np.ndarray, q: np.ndarray) -> tuple[Module, ModuleMap]:
    """The isomorphic copy with action ``p A q`` (``q = p^-1``) and the iso ``m -> copy``."""
    f = m.field
    copy = Module(m.algebra, [f.matmul(f.matmul(p, a), q) for a in m.action], name=f"{m.name}'")
    return copy, ModuleMap(m, copy, p)


def submodule_generated(x: Module, vectors) -> Submodule:
    f = x.field
    vecs = np.asarray(vectors, dtype=f.dtype).reshape(-1, x.dim) if np.size(vectors) else f.zeros(0, x.dim)
    start = Subspace.span(f, x.dim, vecs) if vecs.shape[0] else Subspace.zero(f, x.dim)
    return Submodule(x, _close_under(f, start, x.generator_action), check=False)


class Quotient(NamedTuple):
    module: Module
    projection: ModuleMap
    complement: tuple[int, ...]


def quotient_module(x: Module, s: Submodule) -> Quotient:
    """``x / s`` in the coordinates of the non-pivot columns of ``s``'s canonical basis."""
    if s.ambient is not x and not (s.ambient.dim == x.dim and is_invariant(x, s.space)):
        raise NotSubmodule("submodule does not belong to this module")
    f = x.field
    piv = set(s.space.pivots)
    comp = [j for j in range(x.dim) if j not in piv]
    proj = f.zeros(len(comp), x.dim)
    for r, j in enumerate(comp):
        proj[r, j] = 1
    for i, pc in enumerate(s.space.pivots):
        proj[:, pc] = f.reduce(-s.space.basis[i, comp]) if comp else proj[:, pc]
    lift = f.zeros(x.dim, len(comp))
    for r, j in enumerate(comp):
        lift[j, r] = 1
    action = [f.matmul(f.matmul(proj, a), lift) for a in x.action]
    q = Module(x.algebra, action, name=f"{x.name}/{s.dim}")
    return Quotient(q, ModuleMap(x, q, proj, check=False), tuple(comp))


def quotient_algebra(a: Algebra, ideal: Subspace) -> Algebra:
    """``A / I`` for a two-sided ideal ``I``, on the non-pivot coordinates of ``I``."""
    f, n = a.field, a.dim
    piv = set(ideal.pivots)
    comp = [j for j in range(n) if j not in piv]
    proj = f.zeros(len(comp), n)
    for r, j in enumerate(comp):
        proj[r, j] = 1
    for i, pc in enumerate(ideal.pivots):
        proj[:, pc] = f.reduce(-ideal.basis[i, comp]) if comp else proj[:, pc]
    q = len(comp)
    c = f.zeros(q, q, q)
    for r, i in enumerate(comp):
        for s, j in enumerate(comp):
            c[r, s] = f.matmul(proj, a.constants[i, j].reshape(n, 1)).reshape(q)
    unit = f.matmul(proj, a.unit.reshape(n, 1)).reshape(q)
    return Algebra(f, c, unit, [a.basis_names[j] for j in comp], name=f"{a.name}/I")


# -- radical and socle ---------------------------------------------------------


def _trace_form_radical(a: Algebra) -> Subspace:
    f, n = a.field, a.dim
    gram = f.zeros(n, n)
    for i in range(n):
        for j in range(n):
            prod = f.matmul(a.left_mult[i], a.left_mult[j])
            gram[i, j] = f.reduce(np.trace(prod)) if f.p is not None else np.trace(prod)
    return kernel_basis(gram.T.copy(), f)


def _frobenius_radical(a: Algebra) -> Subspace:
    f, n = a.field, a.dim
    p = f.p
    q = p
    while q < n:
        q *= p
    # x -> x^q is GF(p)-linear in a commutative algebra of characteristic p
    cols = [a.power(a.basis_vector(i), q) for i in range(n)]
    frob = np.stack(cols, axis=1) if n else f.zeros(0, 0)
    return kernel_basis(frob, f)


def radical_method(a: Algebra) -> str:
    if a.supplied_radical is not None:
        return "supplied"
    if a.field.p is None:
        return "trace-form"
    if a.field.p > a.dim:
        return "trace-form"
    if a.is_commutative:
        return "frobenius"
    raise RadicalUnsupported(
        f"no radical method for noncommutative {a.name} over {a.field.name} without a supplied radical"
    )


def radical_space(a: Algebra) -> Subspace:
    cached = a.cache.get("radical")
    if cached is not None:
        return cached
    method = radical_method(a)
    if method == "supplied":
        rad = a.supplied_radical
    elif method == "trace-form":
        rad = _trace_form_radical(a)
    else:
        rad = _frobenius_radical(a)
    a.cache["radical"] = rad
    return rad


def radical(a: Algebra) -> Submodule:
    """The Jacobson radical as a submodule (two-sided ideal) of the regular module."""
    return Submodule(regular_module(a), radical_space(a), check=False)


def socle(m: Module) -> Submodule:
    """``{v : J v = 0}``; the largest semisimple submodule."""
    f = m.field
    rad = radical_space(m.algebra)
    if rad.dim == 0 or m.dim == 0:
        return Submodule(m, Subspace.full(f, m.dim), check=False)
    stacked = np.vstack([m.act(r) for r in rad.basis])
    return Submodule(m, kernel_basis(stacked, f), check=False)


def radical_of_module(m: Module) -> Submodule:
    """``J m``: span of the radical's action on ``m``."""
    f = m.field
    rad = radical_space(m.algebra)
    if rad.dim == 0 or m.dim == 0:
        return Submodule(m, Subspace.zero(f, m.dim), check=False)
    cols = np.hstack([m.act(r) for r in rad.basis])
    return Submodule(m, Subspace.span(f, m.dim, cols.T), check=False)


def is_nilpotent_ideal(a: Algebra, space: Subspace) -> bool:
    f, n = a.field, a.dim
    power = space
    for _ in range(n + 1):
        if power.dim == 0:
            return True
        prods = [a.multiply(u, v) for u in power.basis for v in space.basis]
        power = Subspace.span(f, n, np.vstack(prods))
    return power.dim == 0


def dual_module(m: Module) -> Module:
    """The k-linear dual, a module over the opposite algebra via transposed actions."""
    return Module(m.algebra.opposite(), [a.T.copy() for a in m.action], name=f"D({m.name})")


def annihilator_ideal(m: Module) -> Submodule:
    f, a = m.field, m.algebra
    if m.dim == 0:
        return Submodule(regular_module(a), Subspace.full(f, a.dim), check=False)
    cols = np.stack([mat.reshape(-1) for mat in m.action], axis=1)
    return Submodule(regular_module(a), kernel_basis(cols, f), check=False)


def enumerate_submodules(m: Module, cap: int = 4096) -> list[Submodule]:
    """Every submodule of ``m`` (finite fields only).

    Cyclic submodules are generated from one vector per projective point, and
    the family is then closed under sums one cyclic generator at a time.
    """
    f = m.field
    if f.p is None:
        raise FieldNotFinite("submodule enumeration needs a finite field")
    zero = Subspace.zero(f, m.dim)
    if m.dim == 0:
        return [Submodule(m, zero, check=False)]
    try:
        keys = submodule_keys(m.generator_action, m.dim, f.p, cap)
    except LatticeOverflow:
        raise Overflow(cap, "submodules") from None
    keys.sort(key=lambda k: (len(k), k))
    return [Submodule(m, subspace_from_rref_rows(f, m.dim, k), check=False) for k in keys]


def _projective_points(p: int, n: int):
    """One nonzero vector per line of ``GF(p)^n``: leading nonzero entry equal to 1."""
    import itertools

    for lead in range(n):
        for tail in itertools.product(range(p), repeat=n - lead - 1):
            v = np.zeros(n, dtype=np.int64)
            v[lead] = 1
            v[lead + 1 :] = tail
            yield v


def all_invariant_subspaces(m: Module) -> list[Subspace]:
    """Naive oracle: filter every subspace of ``GF(p)^dim`` by invariance."""
    import itertools

    f = m.field
    n = m.dim
    seen: set[Subspace] = set()
    vecs = [v for v in _projective_points(f.p, n)] if n else []
    seen.add(Subspace.zero(f, n))
    for k in range(1, n + 1):
        for combo in itertools.combinations(vecs, k):
            s = Subspace.span(f, n, np.vstack(combo))
            if s.dim == k:
                seen.add(s)
    return [s for s in seen if is_invariant(m, s)]


def nilpotency_ok(f: Field, mat: np.ndarray) -> bool:
    return f.is_zero(matrix_power(f, mat, mat.shape[0])) if mat.size else True
