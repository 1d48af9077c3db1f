from __future__ import annotations

import numpy as np
import pytest

from skeinrt.cyclotomic import ctx_new
from skeinrt.genericity import special_color_x
from skeinrt.genus1 import (RepMatrix, commutant_dim, commutant_dim_numeric, commutant_exact, crt_split, decompose,
                            krylov_analysis, krylov_cyclic, krylov_dim_numeric, modular_relations, predicted_cyclic,
                            projection_witnesses, psi_equivalence, psi_involution, rt_generators, rt_S, rt_T,
                            vacuum, weil_minus, weil_S, weil_T)


@pytest.mark.parametrize("p", [6, 8, 12, 18, 30])
def test_rt_matrices(p):
    ctx = ctx_new(p)
    S, T = rt_S(ctx), rt_T(ctx)
    assert S.dim == T.dim == (p - 2) // 2
    rel = modular_relations(S.data, T.data)
    assert all(rel.values()), rel
    # the exact part is S / eta with entries in Z[A]
    emb = np.array([[x.embed() for x in row] for row in S.exact])
    assert np.allclose(emb * S.scale, S.data)


@pytest.mark.parametrize("p", [6, 8, 10, 12])
def test_weil_relations(p):
    ctx = ctx_new(p)
    assert all(modular_relations(weil_S(ctx).data, weil_T(ctx).data).values())
    # the literal exponent -xy does not give a representation
    assert not all(modular_relations(weil_S(ctx, literal=True).data, weil_T(ctx).data).values())
    Sm, Tm = weil_minus(ctx)
    assert Sm.dim == p // 2 - 1
    assert all(modular_relations(Sm.data, Tm.data).values())


def test_repmatrix_validates_shape():
    with pytest.raises(ValueError):
        RepMatrix(np.zeros((2, 3)), "rt", 8)


@pytest.mark.parametrize("p", [6, 10, 14, 18])
def test_psi_equivalence(p):
    rep = psi_equivalence(ctx_new(p))
    assert rep.found
    assert abs(abs(rep.c_S) - 1) < 1e-9 and abs(abs(rep.c_T) - 1) < 1e-9
    d = rep.to_dict()
    # the T scalar carries an extra A^(r^2) relative to (-1)^(r-1) A^-1
    assert d["c_T_matches_corrected"]


def test_crt_split():
    s = crt_split(ctx_new(30), 6, 5)
    assert s.ok and s.mapping[7] == (1, 2)
    assert crt_split(ctx_new(12), 4, 3).ok
    with pytest.raises(ValueError):
        crt_split(ctx_new(24), 4, 6)


@pytest.mark.parametrize("p,expected", [(10, True), (16, False), (18, True), (12, True), (24, False),
                                        (30, True), (36, False), (20, True), (50, True)])
def test_predicted_cyclic(p, expected):
    assert predicted_cyclic(p) is expected


@pytest.mark.parametrize("p", [10, 12, 16, 18, 24, 32])
def test_krylov_exact_matches_prediction(p):
    ctx = ctx_new(p)
    gens = rt_generators(ctx)
    res = krylov_analysis(gens, [1] + [0] * ctx.max_color)
    assert res.cyclic == predicted_cyclic(p)
    assert res.method in ("modular-certificate", "exact")
    assert res.numeric_dim == res.dim
    assert krylov_cyclic(gens, vacuum(ctx))[0] == res.cyclic


def test_krylov_noncyclic_dimensions():
    dims = {}
    for p in (16, 24, 32):
        ctx = ctx_new(p)
        dims[p] = krylov_analysis(rt_generators(ctx), [1] + [0] * ctx.max_color).dim
    assert dims == {16: 6, 24: 9, 32: 12}


def test_krylov_numeric_on_diagonal():
    T = np.diag([1.0, 2.0, 3.0])
    assert krylov_dim_numeric([T], np.array([1.0, 1.0, 0.0])) == 2


def test_projection_witnesses():
    for p in (12, 20):
        w = projection_witnesses(p)
        assert w["U4-_Ur+"] > 0.5 and w["U4+_Ur-"] > 0.5
        assert w["crt_residual"] < 1e-9
    for p in (16, 32):
        w = projection_witnesses(p)
        assert w["subspace_leak"] < 1e-9
        assert w[f"U{p // 4}-"] < 1e-12


@pytest.mark.parametrize("p,dim", [(8, 1), (12, 2), (18, 1), (20, 2), (24, 3), (30, 2)])
def test_commutant_exact_and_numeric(p, dim):
    gens = rt_generators(ctx_new(p))
    assert commutant_exact(gens) == dim
    assert commutant_dim_numeric([g.data for g in gens]) == dim
    assert commutant_dim(gens) == dim


@pytest.mark.parametrize("p,dims", [(12, [2, 3]), (30, [6, 8]), (18, [8])])
def test_decompose(p, dims):
    rep = decompose(ctx_new(p))
    assert rep.subspace_dims == dims
    assert sum(dims) == (p - 2) // 2


@pytest.mark.parametrize("p,r1,r2", [(30, 3, 5), (42, 3, 7), (66, 3, 11)])
def test_psi_involution(p, r1, r2):
    ctx = ctx_new(p)
    psi = psi_involution(ctx, r1, r2)
    P = psi.data
    assert np.array_equal(P @ P, np.eye(psi.dim))
    for g in (rt_S(ctx).data, rt_T(ctx).data):
        assert np.linalg.norm(P @ g - g @ P) < 1e-9
    img = np.nonzero(P[:, 0])[0]
    assert len(img) == 1 and abs(P[img[0], 0]) == 1


def test_psi_involution_sends_vacuum_to_special_color():
    ctx = ctx_new(42)
    P = psi_involution(ctx, 3, 7).data
    assert np.nonzero(P[:, 0])[0][0] == special_color_x(3, 7)


def test_psi_involution_rejects_bad_input():
    with pytest.raises(ValueError):
        psi_involution(ctx_new(30), 3, 3)
    with pytest.raises(ValueError):
        psi_involution(ctx_new(30), 3, 7)
