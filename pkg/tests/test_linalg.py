from __future__ import annotations

import numpy as np
import sympy
from hypothesis import given, strategies as st

from skeinrt.cyclotomic import CyclotomicField, ModularEmbedding
from skeinrt.linalg import exact_nullspace, exact_rank, modular_rank, numeric_rank

Q = CyclotomicField(1)
small_matrices = st.integers(1, 5).flatmap(
    lambda m: st.integers(1, 5).flatmap(
        lambda n: st.lists(st.lists(st.integers(-3, 3), min_size=n, max_size=n), min_size=m, max_size=m)))


@given(small_matrices)
def test_ranks_agree_with_sympy(rows):
    ref = sympy.Matrix(rows).rank()
    q = ModularEmbedding(12).q
    assert modular_rank(rows, q) == ref
    assert exact_rank([[Q.from_int(x) for x in r] for r in rows]) == ref
    assert numeric_rank(np.array(rows, dtype=float)) == ref


@given(small_matrices)
def test_nullspace(rows):
    n = len(rows[0])
    ex = [[Q.from_int(x) for x in r] for r in rows]
    basis = exact_nullspace(ex, n, Q.zero(), Q.one())
    assert len(basis) == n - sympy.Matrix(rows).rank()
    for v in basis:
        for r in ex:
            acc = Q.zero()
            for a, b in zip(r, v):
                acc = acc + a * b
            assert acc.is_zero()


def test_numeric_rank_is_relative():
    m = np.diag([1.0, 1e-12])
    assert numeric_rank(m) == 1
    assert numeric_rank(m * 1e-20) == 1
    assert numeric_rank(np.zeros((2, 2))) == 0
