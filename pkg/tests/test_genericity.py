from __future__ import annotations

import cmath
import math

import pytest

from skeinrt.cyclotomic import ctx_new
from skeinrt.genericity import (CHECKED_ROOT_PAIRS, TYPE_I, TYPE_II, PPolynomial, classify_zero, eval_P,
                                eval_P_roots, family_members, ga_excluded_cases, lemmaGA_D, lemmaGA_reconcile,
                                scan_level, special_color_x)
from skeinrt.qnum import exact_constants
from skeinrt.recoupling import tet_value, wheel_to_edges


def test_level_10_has_no_zeros():
    rep = scan_level(ctx_new(10))
    assert rep.generic and not rep.zeros and rep.colorings > 0


def test_level_8_families_are_empty_and_scan_is_clean():
    ctx = ctx_new(8)
    assert all(not v for v in family_members(ctx).values())
    assert scan_level(ctx).generic


def test_inadmissible_coloring_is_rejected():
    # (1,1,1;1,1,0) fails the vertex parity at level 8
    with pytest.raises(ValueError):
        classify_zero(ctx_new(8), (1, 1, 1, 1, 1, 0))


@pytest.mark.parametrize("p", [12, 16, 20])
def test_scan_modes_agree(p):
    ctx = ctx_new(p)
    reps = [scan_level(ctx, m) for m in ("certified", "exact", "numeric-first")]
    zs = [sorted(tuple(z["coloring"]) for z in r.zeros) for r in reps]
    assert zs[0] == zs[1] == zs[2]
    assert all(r.generic for r in reps)


def test_scan_mode_is_validated():
    with pytest.raises(ValueError):
        scan_level(ctx_new(8), "fast")


def test_classification():
    ctx = ctx_new(20)
    assert classify_zero(ctx, (4, 3, 5, 3, 4, 3)) == TYPE_II
    ctx12 = ctx_new(12)
    # the only level-12 member of either family lies in both; Type I takes precedence
    assert family_members(ctx12)[TYPE_II] == [(2, 2, 2, 2, 2, 2)]
    assert classify_zero(ctx12, (2, 2, 2, 2, 2, 2)) == TYPE_I
    with pytest.raises(ValueError):
        classify_zero(ctx_new(10), (0, 0, 0, 0, 0, 0))


@pytest.mark.parametrize("p", [12, 16, 20])
def test_family_members_vanish(p):
    ctx = ctx_new(p)
    qc = exact_constants(ctx)
    for members in family_members(ctx).values():
        for w in members:
            assert tet_value(qc, wheel_to_edges(*w)).is_zero()


@pytest.mark.parametrize("pair,x", [((3, 5), 10), ((5, 7), 28), ((3, 11), 22), ((5, 13), 50), ((3, 7), 12)])
def test_special_color(pair, x):
    assert special_color_x(*pair) == x
    assert special_color_x(*reversed(pair)) == x


def test_excluded_cases_are_not_admissible():
    cases = {(c["r1"], c["r2"]): c for c in ga_excluded_cases()}
    for pair in [(3, 5), (5, 7), (3, 11), (5, 13)]:
        assert not cases[pair]["admissible"]
    assert all(c["r1"] * c["r2"] <= 108 for c in cases.values())
    with pytest.raises(ValueError):
        lemmaGA_D(ctx_new(30), 10)


def test_P_integrity():
    P = PPolynomial()
    assert P.verify()
    assert len(P.terms) == 88
    assert eval_P_roots(1, 1)[0].is_zero()  # P(1, 1) = 0
    bad = P.corrupted(0)
    assert not bad.verify()
    assert bad.checksum() != P.checksum()


@pytest.mark.parametrize("pair", CHECKED_ROOT_PAIRS)
def test_P_nonzero_at_listed_pairs(pair):
    val, z = eval_P_roots(*pair)
    assert not val.is_zero()
    assert abs(z) > 1e-6
    z1, z2 = (cmath.exp(2j * math.pi / n) for n in pair)
    assert abs(eval_P(z1, z2) - z) < 1e-8 * max(1.0, abs(z))


def test_lemma_GA_witness():
    ctx = ctx_new(42)
    assert not lemmaGA_D(ctx, 12).is_zero()


def test_lemma_GA_reconciliation_is_reported():
    rec = lemmaGA_reconcile(ctx_new(42), 12, 3, 7)
    d = rec.to_dict()
    assert d["D_exact_nonzero"]
    assert d["candidates"] > 0
    assert math.isfinite(d["best_relative_residual"])
    # the displayed factorization does not reproduce D under any root convention tried
    assert not rec.matches
