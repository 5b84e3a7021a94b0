"""Command-line front end: ``tracelab <command> ...``.

Exit codes: 0 all pass (or the query ran), 1 a suite case failed, 2 usage,
parse or validation error, 3 inconclusive cases but no failure.
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import Sequence

import numpy as np

from .algebra import radical_method, radical_space
from .envelopes import injective_envelope
from .errors import ParseError, RadicalUnsupported, TracelabError, UnknownSuite, ValidationError
from .hom import hom_space
from .presets import PRESET_BUILDERS, builtin_presets
from .report import jsonable, render_report
from .ringdoc import RingDoc, is_preset_name, load_ring_doc
from .suites import SUITES, SuiteParams, run_suite
from .trace import is_trace_submodule, trace_submodule

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_INCONCLUSIVE = 0, 1, 2, 3


class _UsageError(Exception):
    pass


def _fmt(f, mat: np.ndarray) -> list[list]:
    return [[f.format_scalar(x) for x in row] for row in mat]


def _matrix_text(f, mat: np.ndarray, indent: str = "    ") -> str:
    rows = _fmt(f, mat)
    if not rows:
        return indent + "(empty)"
    width = max((len(str(x)) for row in rows for x in row), default=1)
    return "\n".join(indent + " ".join(f"{str(x):>{width}}" for x in row) for row in rows)


def _emit(args, payload: dict, text: str) -> None:
    if getattr(args, "json", False):
        print(json.dumps(jsonable(payload), indent=2, ensure_ascii=False))
    else:
        print(text)


def _lookup(doc: RingDoc, name: str, what: str):
    try:
        return doc.module(name) if what == "module" else doc.submodule(name)
    except KeyError as exc:
        raise _UsageError(exc.args[0]) from None


# -- commands ------------------------------------------------------------------


def cmd_validate(args) -> int:
    doc = load_ring_doc(args.ring)
    a = doc.algebra
    try:
        rad = f"{radical_space(a).dim} (via {radical_method(a)})"
    except RadicalUnsupported as exc:
        rad = f"unavailable: {exc}"
    payload = {
        "ring": doc.name,
        "field": a.field.name,
        "dim": a.dim,
        "basis_names": a.basis_names,
        "commutative": a.is_commutative,
        "radical_dim": rad,
        "modules": {k: m.dim for k, m in doc.modules.items()},
        "submodules": {k: s.dim for k, s in doc.submodules.items()},
        "notes": doc.notes,
    }
    lines = [
        f"{doc.name}: valid algebra of dim {a.dim} over {a.field.name}",
        f"  basis: {', '.join(a.basis_names)}",
        f"  commutative: {'yes' if a.is_commutative else 'no'}",
        f"  radical dim: {rad}",
        "  modules: " + ", ".join(f"{k} (dim {m.dim})" for k, m in doc.modules.items()),
    ]
    if doc.submodules:
        lines.append("  submodules: " + ", ".join(f"{k} (dim {s.dim})" for k, s in doc.submodules.items()))
    lines += [f"  note: {n}" for n in doc.notes]
    _emit(args, payload, "\n".join(lines))
    return EXIT_OK


def cmd_hom(args) -> int:
    doc = load_ring_doc(args.ring)
    m, n = _lookup(doc, args.source, "module"), _lookup(doc, args.target, "module")
    h = hom_space(m, n)
    f = doc.field
    payload = {"from": args.source, "to": args.target, "dim": h.dim, "basis": [_fmt(f, x) for x in h.matrices]}
    lines = [f"dim Hom({args.source}, {args.target}) = {h.dim}"]
    for k, x in enumerate(h.matrices):
        lines.append(f"  basis map {k}:")
        lines.append(_matrix_text(f, x))
    _emit(args, payload, "\n".join(lines))
    return EXIT_OK


def cmd_trace(args) -> int:
    doc = load_ring_doc(args.ring)
    m, x = _lookup(doc, args.of, "module"), _lookup(doc, args.inside, "module")
    t = trace_submodule(m, x)
    f = doc.field
    payload = {"of": args.of, "in": args.inside, "dim": t.dim, "ambient_dim": x.dim, "basis": _fmt(f, t.space.basis)}
    text = f"Tr_{args.of}({args.inside}): dim {t.dim} of {x.dim}\n" + _matrix_text(f, t.space.basis)
    _emit(args, payload, text)
    return EXIT_OK


def cmd_is_trace(args) -> int:
    doc = load_ring_doc(args.ring)
    s = _lookup(doc, args.sub, "submodule")
    v = is_trace_submodule(s)
    f = doc.field
    payload = {
        "submodule": args.sub,
        "is_trace": v.is_trace,
        "closure_equal": v.criterion_ii,
        "hom_dims_equal": v.criterion_iii,
        "dim_end": v.hom_dims[0],
        "dim_hom_into_ambient": v.hom_dims[1],
        "closure_basis": _fmt(f, v.trace_submodule.space.basis),
    }
    text = "\n".join(
        [
            f"{args.sub} is {'a trace submodule' if v.is_trace else 'not a trace submodule'}",
            f"  S = {args.sub} (dim {s.dim}) inside X of dim {s.ambient.dim}",
            f"  closure Tr_S(X) dim {v.trace_submodule.dim} vs dim S {s.dim}",
            f"  dim End(S) = {v.hom_dims[0]}, dim Hom(S, X) = {v.hom_dims[1]}",
        ]
    )
    _emit(args, payload, text)
    return EXIT_OK


def cmd_envelope(args) -> int:
    doc = load_ring_doc(args.ring)
    m = _lookup(doc, args.of, "module")
    env = injective_envelope(m, seed=args.seed, trials=args.trials)
    f = doc.field
    payload = {
        "of": args.of,
        "module_dim": m.dim,
        "envelope_dim": env.envelope.dim,
        "summands": [f"E{i}" for i in env.summand_indices],
        "socle_multiplicities": {f"S{i}": k for i, k in sorted(env.socle_multiplicities.items())},
        "embedding": _fmt(f, env.embedding.matrix),
    }
    summands = " ⊕ ".join(payload["summands"]) or "0"
    text = (
        f"E({args.of}) = {summands}, dim {env.envelope.dim} (module dim {m.dim})\n"
        f"  embedding:\n" + _matrix_text(f, env.embedding.matrix)
    )
    _emit(args, payload, text)
    return EXIT_OK


def cmd_verify(args) -> int:
    if args.preset:
        if not is_preset_name(args.preset):
            raise _UsageError(f"unknown preset {args.preset!r}; see `tracelab presets`")
        doc = load_ring_doc(args.preset)
    else:
        doc = load_ring_doc(args.ring_file)
    params = SuiteParams(max_dim=args.max_dim, cap=args.cap, seed=args.seed, trials=args.trials)
    report = run_suite(args.suite, doc, params)
    print(render_report(report, "json" if args.json else "text"))
    return report.exit_code


def cmd_presets(args) -> int:
    names = builtin_presets()
    payload = {"presets": names, "families": {k: v[1] for k, v in PRESET_BUILDERS.items()}}
    lines = [f"{n:<18} {PRESET_BUILDERS[n.partition(':')[0]][1]}" for n in names]
    lines.append("any family:p (prime p) or family:Q also resolves")
    _emit(args, payload, "\n".join(lines))
    return EXIT_OK


def cmd_suites(args) -> int:
    payload = {k: v[1] for k, v in SUITES.items()}
    _emit(args, payload, "\n".join(f"{k:<22} {d}" for k, d in payload.items()))
    return EXIT_OK


# -- parser --------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="tracelab", description="Exact trace-module computations and verification suites.")
    sub = p.add_subparsers(dest="command", required=True)

    def ring_cmd(name, help_, fn):
        sp = sub.add_parser(name, help=help_)
        sp.add_argument("ring", help="ring JSON file or preset name such as fat_point:2")
        sp.add_argument("--json", action="store_true", help="machine-readable output")
        sp.set_defaults(fn=fn)
        return sp

    ring_cmd("validate", "parse and validate a ring document", cmd_validate)
    sp = ring_cmd("hom", "basis of Hom(M, N)", cmd_hom)
    sp.add_argument("--from", dest="source", required=True, metavar="M")
    sp.add_argument("--to", dest="target", required=True, metavar="N")
    sp = ring_cmd("trace", "trace submodule Tr_M(X)", cmd_trace)
    sp.add_argument("--of", required=True, metavar="M")
    sp.add_argument("--in", dest="inside", required=True, metavar="X")
    sp = ring_cmd("is-trace", "decide whether a named submodule is a trace submodule", cmd_is_trace)
    sp.add_argument("--sub", required=True, metavar="S")
    sp = ring_cmd("envelope", "injective envelope of a module", cmd_envelope)
    sp.add_argument("--of", required=True, metavar="M")
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--trials", type=int, default=32)

    sp = sub.add_parser("verify", help="run a verification suite")
    sp.add_argument("suite", help="suite name; see `tracelab suites`")
    src = sp.add_mutually_exclusive_group(required=True)
    src.add_argument("--preset", metavar="NAME")
    src.add_argument("--ring", dest="ring_file", metavar="FILE")
    d = SuiteParams()
    sp.add_argument("--max-dim", type=int, default=d.max_dim)
    sp.add_argument("--cap", type=int, default=d.cap)
    sp.add_argument("--seed", type=int, default=d.seed)
    sp.add_argument("--trials", type=int, default=d.trials)
    sp.add_argument("--json", action="store_true")
    sp.set_defaults(fn=cmd_verify)

    sp = sub.add_parser("presets", help="list built-in presets")
    sp.add_argument("--json", action="store_true")
    sp.set_defaults(fn=cmd_presets)
    sp = sub.add_parser("suites", help="list verification suites")
    sp.add_argument("--json", action="store_true")
    sp.set_defaults(fn=cmd_suites)
    return p


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:  # argparse exits 2 on usage errors, 0 on --help
        return int(exc.code or 0)
    try:
        return args.fn(args)
    except ValidationError as exc:
        print("validation failed:", file=sys.stderr)
        for v in exc.violations:
            print(f"  {v}", file=sys.stderr)
        return EXIT_USAGE
    except (ParseError, UnknownSuite, _UsageError) as exc:
        msg = exc.args[0] if exc.args else str(exc)
        print(f"error: {msg}", file=sys.stderr)
        return EXIT_USAGE
    except TracelabError as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_INCONCLUSIVE


if __name__ == "__main__":
    sys.exit(main())
