"""Exact module theory over finite-dimensional algebras: Hom, trace modules,
injective envelopes, and theorem-verification suites."""

from .algebra import (
    Algebra,
    Module,
    ModuleMap,
    Submodule,
    direct_sum,
    enumerate_submodules,
    quotient_module,
    radical,
    regular_module,
    socle,
    submodule_generated,
    validate_algebra,
    validate_module,
)
from .envelopes import (
    check_envelope,
    check_preenvelope,
    indecomposable_summands,
    injective_envelope,
    injective_indecomposables,
    is_essential,
    is_injective_module,
    simple_modules,
)
from .errors import *  # noqa: F401,F403
from .hom import end_algebra, evaluation_map, ext1, hom_as_module, hom_space, is_isomorphic
from .linalg import Field, Subspace, kernel_basis, rank, rref
from .presets import builtin_presets, preset_algebra
from .report import Case, Report, render_report
from .ringdoc import RingDoc, load_ring_doc, parse_ring_doc
from .suites import SuiteParams, run_suite, suite_names
from .trace import (
    check_left_exactness,
    check_reflexive_criterion,
    check_two_sidedness,
    is_fully_invariant,
    is_quasi_injective,
    is_reflexive,
    is_torsionless,
    is_trace_submodule,
    is_trace_up_to_iso,
    is_trace_via,
    trace_submodule,
)

__version__ = "0.1.0"
