"""Quantum integers, factorials and the scalar constants at level p.

Conventions (A a primitive 2p-th root of unity):

* ``[n] = (A^(2n) - A^(-2n)) / (A^2 - A^(-2))``, expanded as a sum of powers
* ``<n> = (-1)^n [n+1]`` (value of the n-colored unknot)
* ``mu_n = (-1)^n A^(n(n+2))`` (twist eigenvalue)
* ``lambda_n = -(A^(2(n+1)) + A^(-2(n+1)))`` (encircling scalar)

The tables can be built over three arithmetics sharing one interface:
exact cyclotomic elements, residues in a finite field, or complex doubles.
"""
from __future__ import annotations

import cmath
import math
from typing import Any

from .cyclotomic import CycloElement, LevelContext, ModularEmbedding


class ModInt:
    """Residue modulo a prime; supports the ring operations used in formulas."""

    __slots__ = ("v", "q")

    def __init__(self, v: int, q: int):
        self.v = v % q
        self.q = q

    def _val(self, other) -> int:
        if isinstance(other, ModInt):
            return other.v
        return other

    def __add__(self, other):
        return ModInt(self.v + self._val(other), self.q)

    __radd__ = __add__

    def __sub__(self, other):
        return ModInt(self.v - self._val(other), self.q)

    def __rsub__(self, other):
        return ModInt(self._val(other) - self.v, self.q)

    def __neg__(self):
        return ModInt(-self.v, self.q)

    def __mul__(self, other):
        return ModInt(self.v * self._val(other), self.q)

    __rmul__ = __mul__

    def inv(self) -> ModInt:
        if self.v == 0:
            raise ZeroDivisionError("zero residue")
        return ModInt(pow(self.v, -1, self.q), self.q)

    def __truediv__(self, other):
        o = other if isinstance(other, ModInt) else ModInt(other, self.q)
        return self * o.inv()

    def __eq__(self, other) -> bool:
        return self.v == (self._val(other) % self.q)

    def __hash__(self) -> int:
        return hash(self.v)

    def is_zero(self) -> bool:
        return self.v == 0

    def __repr__(self) -> str:
        return f"ModInt({self.v} mod {self.q})"


class ExactArithmetic:
    kind = "exact"

    def __init__(self, ctx: LevelContext):
        self.ctx = ctx

    def A(self, n: int) -> CycloElement:
        return self.ctx.field.power(n)

    def const(self, n: int) -> CycloElement:
        return self.ctx.field.from_int(n)

    def inv(self, x: CycloElement) -> CycloElement:
        return x.inv()

    def is_zero(self, x: CycloElement) -> bool:
        return x.is_zero()


class ModularArithmetic:
    kind = "modular"

    def __init__(self, ctx: LevelContext, embedding: ModularEmbedding | None = None):
        self.ctx = ctx
        self.embedding = embedding or ModularEmbedding(2 * ctx.p)
        self.q = self.embedding.q

    def A(self, n: int) -> ModInt:
        return ModInt(self.embedding.power(n), self.q)

    def const(self, n: int) -> ModInt:
        return ModInt(n, self.q)

    def inv(self, x: ModInt) -> ModInt:
        return x.inv()

    def is_zero(self, x: ModInt) -> bool:
        return x.v == 0


class NumericArithmetic:
    kind = "numeric"

    def __init__(self, ctx: LevelContext, power: int = 1):
        self.ctx = ctx
        self.power = power
        self._root = cmath.exp(1j * math.pi * power / ctx.p)

    def A(self, n: int) -> complex:
        n %= 2 * self.ctx.p
        return cmath.exp(1j * math.pi * self.power * n / self.ctx.p)

    def const(self, n: int) -> complex:
        return complex(n)

    def inv(self, x: complex) -> complex:
        return 1 / x

    def is_zero(self, x: complex, tol: float = 1e-9) -> bool:
        return abs(x) < tol


def make_arithmetic(ctx: LevelContext, kind: str = "exact", **kw):
    if kind == "exact":
        return ExactArithmetic(ctx)
    if kind == "modular":
        return ModularArithmetic(ctx, **kw)
    if kind == "numeric":
        return NumericArithmetic(ctx, **kw)
    raise ValueError(f"unknown arithmetic {kind!r}")


class QConstants:
    """Memo tables of the level-p scalars over a chosen arithmetic.

    Tables are filled eagerly; afterwards the object is read-only.
    """

    def __init__(self, ctx: LevelContext, arith: Any = None):
        self.ctx = ctx
        self.arith = arith if arith is not None else ExactArithmetic(ctx)
        p = ctx.p
        ar = self.arith
        zero, one = ar.const(0), ar.const(1)
        self._qint = [zero]
        for n in range(1, p + 1):
            acc = zero
            for j in range(n):
                acc = acc + ar.A(2 * (n - 1 - 2 * j))
            self._qint.append(acc)
        self._qfact = [one]
        for n in range(1, p + 1):
            self._qfact.append(self._qfact[-1] * self._qint[n])
        # [n]! is invertible exactly for n < r
        inv = [one] * ctx.r
        inv[-1] = ar.inv(self._qfact[ctx.r - 1])
        for n in range(ctx.r - 1, 0, -1):
            inv[n - 1] = inv[n] * self._qint[n]
        self._inv_qfact = inv
        m = ctx.max_color
        self._loop = [self._qint[n + 1] if n % 2 == 0 else -self._qint[n + 1] for n in range(m + 1)]
        self._mu = [self.mu_any(n) for n in range(m + 1)]
        self._lam = [-(ar.A(2 * (n + 1)) + ar.A(-2 * (n + 1))) for n in range(m + 1)]

    def qint(self, n: int):
        if n < 0:
            return -self._qint[-n] if -n <= self.ctx.p else self._raw_qint(n)
        if n <= self.ctx.p:
            return self._qint[n]
        return self._raw_qint(n)

    def _raw_qint(self, n: int):
        ar = self.arith
        num = ar.A(2 * n) - ar.A(-2 * n)
        return num * ar.inv(ar.A(2) - ar.A(-2))

    def qfact(self, n: int):
        if not 0 <= n <= self.ctx.p:
            raise ValueError(f"factorial index {n} outside 0..{self.ctx.p}")
        return self._qfact[n]

    def inv_qfact(self, n: int):
        if not 0 <= n < self.ctx.r:
            raise ZeroDivisionError(f"[{n}]! vanishes or is out of range at level {self.ctx.p}")
        return self._inv_qfact[n]

    def _check_color(self, n: int) -> None:
        if not 0 <= n <= self.ctx.max_color:
            raise ValueError(f"color {n} outside 0..{self.ctx.max_color} at level {self.ctx.p}")

    def loop_value(self, n: int):
        self._check_color(n)
        return self._loop[n]

    def twist_mu(self, i: int):
        if 0 <= i <= self.ctx.max_color:
            return self._mu[i]
        return self.mu_any(i)

    def mu_any(self, i: int):
        """mu_i for any integer i (index experiments outside the color range)."""
        v = self.arith.A(i * (i + 2))
        return -v if i % 2 else v

    def lambda_scalar(self, i: int):
        self._check_color(i)
        return self._lam[i]


def qint(ctx: LevelContext, n: int) -> CycloElement:
    return exact_constants(ctx).qint(n)


def qfact(ctx: LevelContext, n: int) -> CycloElement:
    return exact_constants(ctx).qfact(n)


def loop_value(ctx: LevelContext, n: int) -> CycloElement:
    return exact_constants(ctx).loop_value(n)


def twist_mu(ctx: LevelContext, i: int) -> CycloElement:
    return exact_constants(ctx).twist_mu(i)


def lambda_scalar(ctx: LevelContext, i: int) -> CycloElement:
    return exact_constants(ctx).lambda_scalar(i)


def eta_scalar(ctx: LevelContext) -> complex:
    """Normalization of the genus-1 S-matrix: eta = (A^2 - A^-2) / sqrt(p).

    Its modulus is |A^2 - A^-2| / sqrt(p); with the Hopf-pairing entries
    (-1)^(i+j) [(i+1)(j+1)] this phase makes S a unitary matrix (a scaled
    discrete sine transform).
    """
    a2 = ctx.embedding_root ** 2
    return (a2 - 1 / a2) / math.sqrt(ctx.p)


_EXACT_CACHE: dict[int, QConstants] = {}


def exact_constants(ctx: LevelContext) -> QConstants:
    qc = _EXACT_CACHE.get(ctx.p)
    if qc is None:
        qc = QConstants(ctx)
        _EXACT_CACHE[ctx.p] = qc
    return qc
