from __future__ import annotations

import cmath
import math

import pytest
from hypothesis import given, strategies as st

from skeinrt.cyclotomic import ctx_new
from skeinrt.qnum import QConstants, eta_scalar, exact_constants, make_arithmetic

LEVELS = [6, 8, 10, 12, 18, 24, 30]


@pytest.mark.parametrize("p", LEVELS)
def test_quantum_integer_vanishing(p):
    qc = exact_constants(ctx_new(p))
    for n in range(1, p + 1):
        assert qc.qint(n).is_zero() == ((2 * n) % p == 0)


@pytest.mark.parametrize("p", LEVELS)
def test_quantum_integer_closed_form(p):
    ctx = ctx_new(p)
    qc = exact_constants(ctx)
    a2 = ctx.A(2) - ctx.A(-2)
    for n in range(p + 1):
        assert qc.qint(n) * a2 == ctx.A(2 * n) - ctx.A(-2 * n)


@given(st.sampled_from(LEVELS), st.integers(0, 40), st.integers(0, 40))
def test_quantum_integer_addition_rule(p, m, n):
    # [m+n] = [m] A^(2n) + [n] A^(-2m)
    ctx = ctx_new(p)
    qc = exact_constants(ctx)
    assert qc.qint(m + n) == qc.qint(m) * ctx.A(2 * n) + qc.qint(n) * ctx.A(-2 * m)


@pytest.mark.parametrize("p", LEVELS)
def test_factorial_invertible_below_r(p):
    ctx = ctx_new(p)
    qc = exact_constants(ctx)
    for n in range(ctx.r):
        assert qc.qfact(n) * qc.inv_qfact(n) == ctx.one()
    with pytest.raises(ZeroDivisionError):
        qc.inv_qfact(ctx.r)


@pytest.mark.parametrize("p", LEVELS)
def test_loop_twist_lambda(p):
    ctx = ctx_new(p)
    qc = exact_constants(ctx)
    for i in range(ctx.max_color + 1):
        assert qc.loop_value(i) == ctx.const((-1) ** i) * qc.qint(i + 1)
        assert qc.twist_mu(i) == ctx.const((-1) ** i) * ctx.A(i * (i + 2))
        assert qc.lambda_scalar(i) == -(ctx.A(2 * i + 2) + ctx.A(-2 * i - 2))
    with pytest.raises(ValueError):
        qc.loop_value(ctx.max_color + 1)


@pytest.mark.parametrize("p", [6, 12, 18])
def test_three_arithmetics_agree(p):
    ctx = ctx_new(p)
    ex = exact_constants(ctx)
    nu = QConstants(ctx, make_arithmetic(ctx, "numeric"))
    md = QConstants(ctx, make_arithmetic(ctx, "modular"))
    for n in range(p + 1):
        assert abs(ex.qint(n).embed() - nu.qint(n)) < 1e-10
        assert md.qint(n).is_zero() == ex.qint(n).is_zero()


@pytest.mark.parametrize("p", LEVELS)
def test_eta_modulus(p):
    a = cmath.exp(1j * math.pi / p)
    assert abs(abs(eta_scalar(ctx_new(p))) - abs(a * a - a ** -2) / math.sqrt(p)) < 1e-12


def test_unknown_arithmetic():
    with pytest.raises(ValueError):
        make_arithmetic(ctx_new(8), "float128")
