"""Ring documents: JSON files or built-in presets resolved to validated objects.

JSON layout::

    {
      "field": 2 | "GF(3)" | "Q",
      "algebra": {"dim": n, "basis_names": [...], "structure_constants": c[n][n][n],
                  "unit": [...], "radical": [[...], ...]},          # radical optional
      "modules": {"M": {"dim": d, "action": [d x d matrix per basis element]}},
      "submodules": {"S": {"ambient": "M", "vectors": [[...], ...]}}
    }

Scalars are integers (residues mod p) or strings ``"a/b"`` over Q.  The
regular module is always available as ``R``.  Preset documents also name the
simples ``S<i>``, injective indecomposables ``E<i>``, and the submodules
``rad``, ``soc`` and ``(<basis name>)`` of ``R``.
"""

from __future__ import annotations

import json
import os
import re
from dataclasses import dataclass, field
from typing import Any

import numpy as np

from .algebra import (
    Algebra,
    Module,
    Submodule,
    is_invariant,
    radical,
    regular_module,
    socle,
    submodule_generated,
    validate_algebra,
    validate_module,
)
from .errors import Inconclusive, MatchFailure, ParseError, RadicalUnsupported, ValidationError
from .linalg import Field, Subspace
from .presets import PRESET_BUILDERS, preset_algebra


@dataclass
class RingDoc:
    name: str
    algebra: Algebra
    modules: dict[str, Module] = field(default_factory=dict)
    submodules: dict[str, Submodule] = field(default_factory=dict)
    preset: str | None = None  # preset family when built in
    notes: list[str] = field(default_factory=list)

    @property
    def field(self) -> Field:
        return self.algebra.field

    def module(self, name: str) -> Module:
        if name in self.modules:
            return self.modules[name]
        if name in self.submodules:
            return self.submodules[name].as_module().renamed(name)
        raise KeyError(f"no module or submodule named {name!r} (known: {', '.join(self.names())})")

    def submodule(self, name: str) -> Submodule:
        if name not in self.submodules:
            raise KeyError(f"no submodule named {name!r} (known: {', '.join(self.submodules)})")
        return self.submodules[name]

    def names(self) -> list[str]:
        return list(self.modules) + list(self.submodules)


# -- parsing -----------------------------------------------------------------


def parse_field(obj: Any, where: str = "field") -> Field:
    if isinstance(obj, bool):
        raise ParseError(f"{where}: expected a prime, 'GF(p)' or 'Q', got {obj!r}")
    if isinstance(obj, int):
        p = obj
    elif isinstance(obj, str):
        s = obj.strip()
        if s.upper() in ("Q", "QQ"):
            return Field.rational()
        m = re.fullmatch(r"(?:GF|F)\(?(\d+)\)?|(\d+)", s, flags=re.IGNORECASE)
        if not m:
            raise ParseError(f"{where}: cannot read field {obj!r}")
        p = int(m.group(1) or m.group(2))
    else:
        raise ParseError(f"{where}: expected a prime, 'GF(p)' or 'Q', got {obj!r}")
    try:
        return Field.prime(p)
    except ValueError as exc:
        raise ParseError(f"{where}: {exc}") from None


def _scalar(f: Field, obj: Any, where: str):
    if isinstance(obj, bool) or not isinstance(obj, (int, str)):
        raise ParseError(f"{where}: scalar must be an integer or 'a/b' string, got {obj!r}")
    try:
        return f.parse_scalar(obj)
    except (ValueError, ZeroDivisionError) as exc:
        raise ParseError(f"{where}: {exc}") from None


def _tensor(f: Field, obj: Any, shape: tuple[int, ...], where: str) -> np.ndarray:
    """Read a nested list of exactly ``shape``, reporting the first bad index."""

    def walk(o, depth, loc):
        if depth == len(shape):
            return _scalar(f, o, loc)
        if not isinstance(o, list):
            raise ParseError(f"{loc}: expected a list of length {shape[depth]}, got {type(o).__name__}")
        if len(o) != shape[depth]:
            raise ParseError(f"{loc}: expected {shape[depth]} entries, got {len(o)}")
        return [walk(x, depth + 1, f"{loc}[{i}]") for i, x in enumerate(o)]

    data = walk(obj, 0, where)
    out = f.zeros(*shape)
    if out.size:
        out[...] = np.array(data, dtype=f.dtype).reshape(shape)
    return out


def _rows(f: Field, obj: Any, n: int, where: str) -> np.ndarray:
    if not isinstance(obj, list):
        raise ParseError(f"{where}: expected a list of vectors")
    return _tensor(f, obj, (len(obj), n), where)


def _require(d: dict, key: str, where: str):
    if not isinstance(d, dict):
        raise ParseError(f"{where}: expected an object")
    if key not in d:
        raise ParseError(f"{where}: missing key {key!r}")
    return d[key]


def parse_ring_doc(data: Any, name: str = "ring") -> RingDoc:
    """Build a :class:`RingDoc` from decoded JSON; see the module docstring for the layout."""
    if not isinstance(data, dict):
        raise ParseError("top level: expected an object")
    unknown = set(data) - {"field", "algebra", "modules", "submodules", "name"}
    if unknown:
        raise ParseError(f"top level: unknown keys {sorted(unknown)}")
    f = parse_field(_require(data, "field", "top level"))
    alg = _require(data, "algebra", "top level")
    n = _require(alg, "dim", "algebra")
    if isinstance(n, bool) or not isinstance(n, int) or n < 1:
        raise ParseError(f"algebra.dim: expected a positive integer, got {n!r}")
    names = alg.get("basis_names", [f"e{i}" for i in range(n)])
    if not isinstance(names, list) or len(names) != n or not all(isinstance(s, str) for s in names):
        raise ParseError(f"algebra.basis_names: expected {n} strings")
    if len(set(names)) != n:
        raise ParseError("algebra.basis_names: names must be distinct")
    c = _tensor(f, _require(alg, "structure_constants", "algebra"), (n, n, n), "algebra.structure_constants")
    unit = _tensor(f, _require(alg, "unit", "algebra"), (n,), "algebra.unit")
    rad = None
    if "radical" in alg:
        rad = _rows(f, alg["radical"], n, "algebra.radical")
    a = Algebra(f, c, unit, names, supplied_radical=rad, name=data.get("name", name))
    violations = [f"algebra: {v}" for v in validate_algebra(a)]
    if violations:
        raise ValidationError(violations)
    doc = RingDoc(a.name, a)
    doc.modules["R"] = regular_module(a)
    mods = data.get("modules", {})
    if not isinstance(mods, dict):
        raise ParseError("modules: expected an object")
    for mname, spec in mods.items():
        where = f"modules.{mname}"
        if mname == "R":
            raise ParseError(f"{where}: the name R is reserved for the regular module")
        d = _require(spec, "dim", where)
        if isinstance(d, bool) or not isinstance(d, int) or d < 0:
            raise ParseError(f"{where}.dim: expected a non-negative integer")
        acts = _tensor(f, _require(spec, "action", where), (n, d, d), f"{where}.action")
        m = Module(a, list(acts), name=mname)
        violations += [f"{where}: {v}" for v in validate_module(m)]
        doc.modules[mname] = m
    subs = data.get("submodules", {})
    if not isinstance(subs, dict):
        raise ParseError("submodules: expected an object")
    for sname, spec in subs.items():
        where = f"submodules.{sname}"
        if sname in doc.modules:
            raise ParseError(f"{where}: name clashes with a module")
        amb = _require(spec, "ambient", where)
        if amb not in doc.modules:
            violations.append(f"{where}.ambient: unknown module {amb!r}")
            continue
        x = doc.modules[amb]
        vecs = _rows(f, _require(spec, "vectors", where), x.dim, f"{where}.vectors")
        space = Subspace.span(f, x.dim, vecs) if vecs.shape[0] else Subspace.zero(f, x.dim)
        if not is_invariant(x, space):
            violations.append(f"{where}: span of the given vectors is not a submodule of {amb}")
            continue
        doc.submodules[sname] = Submodule(x, space, check=False)
    if violations:
        raise ValidationError(violations)
    return doc


# -- presets -----------------------------------------------------------------


def preset_doc(spec: str) -> RingDoc:
    """Document for a built-in preset with its named modules and submodules."""
    a = preset_algebra(spec)
    family = spec.partition(":")[0]
    doc = RingDoc(a.name, a, preset=family)
    r = regular_module(a)
    doc.modules["R"] = r
    try:
        from .envelopes import injective_indecomposables, simple_modules

        for i, s in enumerate(simple_modules(a)):
            doc.modules[f"S{i}"] = s.renamed(f"S{i}")
        for i, e in enumerate(injective_indecomposables(a)):
            doc.modules[f"E{i}"] = e.module.renamed(f"E{i}")
    except (RadicalUnsupported, Inconclusive, MatchFailure) as exc:
        doc.notes.append(f"simples/injectives unavailable: {exc}")
    try:
        doc.submodules["rad"] = radical(a)
        doc.submodules["soc"] = socle(r)
    except RadicalUnsupported as exc:
        doc.notes.append(str(exc))
    for i, bname in enumerate(a.basis_names):
        doc.submodules[f"({bname})"] = submodule_generated(r, a.basis_vector(i))
    return doc


def is_preset_name(name: str) -> bool:
    family, sep, tag = name.partition(":")
    return family in PRESET_BUILDERS and (not sep or tag.upper() == "Q" or tag.isdigit())


def load_ring_doc(source: str) -> RingDoc:
    """Load a ring from a JSON file path or a preset name such as ``fat_point:2``."""
    if os.path.isfile(source):
        try:
            with open(source, encoding="utf-8") as fh:
                data = json.load(fh)
        except json.JSONDecodeError as exc:
            raise ParseError(f"{source}: invalid JSON at line {exc.lineno} column {exc.colno}: {exc.msg}") from None
        except OSError as exc:
            raise ParseError(f"{source}: {exc}") from None
        return parse_ring_doc(data, name=os.path.splitext(os.path.basename(source))[0])
    if is_preset_name(source):
        try:
            return preset_doc(source)
        except ValueError as exc:
            raise ParseError(f"{source}: {exc}") from None
    raise ParseError(f"{source}: no such file and not a preset name")


def dump_ring_doc(doc: RingDoc) -> dict:
    """JSON-ready form of a document; named submodules of derived modules are skipped."""
    a = doc.algebra
    f = a.field
    fmt = lambda arr: np.vectorize(f.format_scalar, otypes=[object])(arr).tolist() if arr.size else arr.tolist()
    out: dict[str, Any] = {
        "field": "Q" if f.p is None else f.p,
        "algebra": {
            "dim": a.dim,
            "basis_names": list(a.basis_names),
            "structure_constants": fmt(a.constants),
            "unit": fmt(a.unit),
        },
        "modules": {},
        "submodules": {},
    }
    if a.supplied_radical is not None:
        out["algebra"]["radical"] = fmt(a.supplied_radical.basis) if a.supplied_radical.dim else []
    for name, m in doc.modules.items():
        if name == "R":
            continue
        out["modules"][name] = {"dim": m.dim, "action": [fmt(x) for x in m.action]}
    for name, s in doc.submodules.items():
        amb = next((k for k, m in doc.modules.items() if m is s.ambient), None)
        if amb is None:
            continue
        out["submodules"][name] = {"ambient": amb, "vectors": fmt(s.space.basis) if s.dim else []}
    return out
