"""The brute-force oracles themselves, checked on small cases with known answers."""

import numpy as np

from tracelab import Field, preset_algebra, regular_module, simple_modules

from oracles import (
    all_matrices,
    brute_ext1_dim,
    brute_hom,
    brute_kernel,
    indecomposable_pool,
    run_oracle_sweep,
)


def test_all_matrices_counts():
    assert len(all_matrices(2, 2, 2)) == 16
    assert len(all_matrices(3, 1, 2)) == 9


def test_brute_hom_known_dims():
    a = preset_algebra("dual_numbers:2")
    r, (k,) = regular_module(a), simple_modules(a)
    assert len(brute_hom(r, r)) == 4  # 2-dim space over GF(2)
    assert len(brute_hom(k, r)) == 2
    assert len(brute_hom(r, k)) == 2


def test_brute_kernel():
    mat = np.array([[1, 1, 0]], dtype=np.int64)
    assert len(brute_kernel(mat, 2)) == 4


def test_brute_ext1():
    a = preset_algebra("dual_numbers:2")
    (k,) = simple_modules(a)
    assert brute_ext1_dim(k, k) == 1
    a = preset_algebra("ss2:2")
    s0, s1 = simple_modules(a)
    assert brute_ext1_dim(s0, s1) == 0


def test_indecomposable_pool():
    assert len(indecomposable_pool("fat_point:2")) >= 2


def test_small_sweep_is_clean():
    out = run_oracle_sweep(seed=7, hom_n=40, sub_n=30, ker_n=40)
    assert out["instances"] == 110 and out["mismatches"] == 0
