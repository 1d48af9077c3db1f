"""Exact arithmetic in cyclotomic fields Q(A), A a primitive n-th root of unity.

Elements are stored as an integer numerator vector over the power basis
1, A, ..., A^(phi-1) together with a positive integer denominator, always
reduced modulo the n-th cyclotomic polynomial.  Two elements are equal iff
their stored data are equal.

A level context wraps the field of order 2p used throughout the quantum
computations.  A finite-field embedding (``ModularEmbedding``) sends A to a
primitive n-th root of unity in F_q for a prime q = 1 (mod n); it is a ring
homomorphism, so a nonzero residue certifies that an element is nonzero.
"""
from __future__ import annotations

import cmath
import math
import random
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Sequence

import sympy


def totient(n: int) -> int:
    return int(sympy.totient(n))


def _poly_divmod_int(num: list[int], den: list[int]) -> tuple[list[int], list[int]]:
    """Divide integer polynomials (low degree first); ``den`` must be monic."""
    num = list(num)
    dn = len(den) - 1
    if den[-1] != 1:
        raise ValueError("divisor must be monic")
    if len(num) - 1 < dn:
        return [0], num
    quot = [0] * (len(num) - dn)
    for i in range(len(num) - 1, dn - 1, -1):
        c = num[i]
        if c:
            quot[i - dn] = c
            for j in range(dn + 1):
                num[i - dn + j] -= c * den[j]
    rem = num[:dn] or [0]
    return quot, rem


@lru_cache(maxsize=None)
def cyclotomic_poly(n: int) -> tuple[int, ...]:
    """Phi_n as integer coefficients, lowest degree first.

    Computed by dividing x^n - 1 by Phi_d for every proper divisor d of n.
    """
    if n < 1:
        raise ValueError("order must be positive")
    poly = [-1] + [0] * (n - 1) + [1]
    for d in sympy.divisors(n)[:-1]:
        q, r = _poly_divmod_int(poly, list(cyclotomic_poly(d)))
        if any(r):
            raise ArithmeticError(f"Phi_{d} does not divide x^{n}-1")
        poly = q
    return tuple(poly)


def _normalize(num: list[int], den: int) -> tuple[tuple[int, ...], int]:
    if den < 0:
        num = [-c for c in num]
        den = -den
    g = den
    for c in num:
        if g == 1:
            break
        g = math.gcd(g, c)
    if g > 1:
        num = [c // g for c in num]
        den //= g
    return tuple(num), den


def _kronecker_mul(a: Sequence[int], b: Sequence[int]) -> list[int]:
    """Product of integer polynomials via a single big-integer multiplication."""
    ma = max((abs(c) for c in a), default=0)
    mb = max((abs(c) for c in b), default=0)
    if ma == 0 or mb == 0:
        return [0] * (len(a) + len(b) - 1)
    bits = ma.bit_length() + mb.bit_length() + min(len(a), len(b)).bit_length() + 2
    pa = 0
    for c in reversed(a):
        pa = (pa << bits) + c
    pb = 0
    for c in reversed(b):
        pb = (pb << bits) + c
    prod = pa * pb
    out = []
    mask = (1 << bits) - 1
    half = 1 << (bits - 1)
    full = 1 << bits
    for _ in range(len(a) + len(b) - 1):
        c = prod & mask
        prod >>= bits
        if c >= half:
            c -= full
            prod += 1
        out.append(c)
    return out


class CyclotomicField:
    """The field Q(A) with A a primitive ``order``-th root of unity."""

    def __init__(self, order: int):
        if order < 1:
            raise ValueError("order must be positive")
        self.order = order
        self.modulus = cyclotomic_poly(order)
        self.degree = len(self.modulus) - 1
        # x^half = sign holds in Q(A): A^(n/2) = -1 for even n, A^n = 1 otherwise
        if order % 2 == 0:
            self._cycle, self._cycle_sign = order // 2, -1
        else:
            self._cycle, self._cycle_sign = order, 1
        # rows A^degree .. A^(cycle-1) reduced modulo Phi
        self._fold: list[tuple[int, ...]] = []
        cur = [-c for c in self.modulus[:-1]]
        for _ in range(max(self._cycle - self.degree, 0)):
            self._fold.append(tuple(cur))
            top = cur[-1]
            cur = [0] + cur[:-1]
            if top:
                for j in range(self.degree):
                    cur[j] -= top * self.modulus[j]
        self._powers: dict[int, CycloElement] = {}
        self._zero = CycloElement(self, (0,) * self.degree, 1)
        self._one = CycloElement(self, (1,) + (0,) * (self.degree - 1), 1)

    def __repr__(self) -> str:
        return f"CyclotomicField({self.order})"

    def __eq__(self, other: object) -> bool:
        return isinstance(other, CyclotomicField) and other.order == self.order

    def __hash__(self) -> int:
        return hash(("CyclotomicField", self.order))

    def reduce(self, coeffs: Sequence[int]) -> list[int]:
        """Reduce an integer coefficient list modulo the cyclotomic polynomial."""
        d, m = self.degree, self._cycle
        if len(coeffs) > m:
            acc = list(coeffs[:m])
            sgn = self._cycle_sign
            for start in range(m, len(coeffs), m):
                chunk = coeffs[start:start + m]
                if sgn < 0:
                    for i, c in enumerate(chunk):
                        acc[i] -= c
                else:
                    for i, c in enumerate(chunk):
                        acc[i] += c
                sgn *= self._cycle_sign
            coeffs = acc
        out = list(coeffs[:d]) + [0] * max(0, d - len(coeffs))
        for c, row in zip(coeffs[d:], self._fold):
            if c:
                for j, rj in enumerate(row):
                    if rj:
                        out[j] += c * rj
        return out

    def zero(self) -> CycloElement:
        return self._zero

    def one(self) -> CycloElement:
        return self._one

    def from_int(self, n: int | Fraction) -> CycloElement:
        n = Fraction(n)
        num = [n.numerator] + [0] * (self.degree - 1)
        return CycloElement(self, tuple(num), n.denominator)

    def from_coeffs(self, coeffs: Iterable[int | Fraction]) -> CycloElement:
        """Element sum_i coeffs[i] A^i; any length, reduced on construction."""
        fr = [Fraction(c) for c in coeffs]
        den = 1
        for c in fr:
            den = den * c.denominator // math.gcd(den, c.denominator)
        ints = [int(c * den) for c in fr]
        red = self.reduce(ints) if len(ints) > self.degree else ints + [0] * (self.degree - len(ints))
        num, den = _normalize(red, den)
        return CycloElement(self, num, den)

    def power(self, n: int) -> CycloElement:
        """Canonical form of A^n; negative n handled through n mod order."""
        e = n % self.order
        cached = self._powers.get(e)
        if cached is None:
            vec = [0] * (e + 1)
            vec[e] = 1
            cached = CycloElement(self, tuple(self.reduce(vec)), 1)
            self._powers[e] = cached
        return cached

    def gen(self) -> CycloElement:
        return self.power(1)


class CycloElement:
    """An exact element of a cyclotomic field."""

    __slots__ = ("field", "num", "den", "_hash")

    def __init__(self, field: CyclotomicField, num: tuple[int, ...], den: int):
        self.field = field
        self.num = num
        self.den = den
        self._hash = None

    # construction helpers -------------------------------------------------
    def _coerce(self, other) -> CycloElement:
        if isinstance(other, CycloElement):
            if other.field.order != self.field.order:
                raise ValueError("elements live in different cyclotomic fields")
            return other
        if isinstance(other, (int, Fraction)):
            return self.field.from_int(other)
        return NotImplemented

    @property
    def coeffs(self) -> tuple[Fraction, ...]:
        return tuple(Fraction(c, self.den) for c in self.num)

    def is_zero(self) -> bool:
        return not any(self.num)

    def __bool__(self) -> bool:
        return not self.is_zero()

    def __eq__(self, other) -> bool:
        if isinstance(other, (int, Fraction)):
            other = self.field.from_int(other)
        if not isinstance(other, CycloElement):
            return NotImplemented
        return self.field.order == other.field.order and self.den == other.den and self.num == other.num

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.field.order, self.num, self.den))
        return self._hash

    def __repr__(self) -> str:
        terms = []
        for i, c in enumerate(self.coeffs):
            if c:
                terms.append(f"{c}*A^{i}" if i else f"{c}")
        return "CycloElement(" + (" + ".join(terms) or "0") + f"; order={self.field.order})"

    # arithmetic -------------------------------------------------------------
    def __add__(self, other) -> CycloElement:
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        if self.den == other.den:
            num = [a + b for a, b in zip(self.num, other.num)]
            den = self.den
        else:
            num = [a * other.den + b * self.den for a, b in zip(self.num, other.num)]
            den = self.den * other.den
        n, d = _normalize(num, den)
        return CycloElement(self.field, n, d)

    __radd__ = __add__

    def __neg__(self) -> CycloElement:
        return CycloElement(self.field, tuple(-c for c in self.num), self.den)

    def __sub__(self, other) -> CycloElement:
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other) -> CycloElement:
        return (-self) + other

    def __mul__(self, other) -> CycloElement:
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        if self.is_zero() or other.is_zero():
            return self.field.zero()
        prod = _kronecker_mul(self.num, other.num)
        red = self.field.reduce(prod)
        n, d = _normalize(red, self.den * other.den)
        return CycloElement(self.field, n, d)

    __rmul__ = __mul__

    def inv(self) -> CycloElement:
        """Multiplicative inverse through the extended Euclidean algorithm."""
        if self.is_zero():
            raise ZeroDivisionError("inverse of zero in a cyclotomic field")
        r0 = [Fraction(c) for c in self.field.modulus]
        r1 = _trim([Fraction(c) for c in self.num])
        s0: list[Fraction] = [Fraction(0)]
        s1: list[Fraction] = [Fraction(1)]
        # invariant: s_i * self.num == r_i  (mod Phi)
        while len(r1) > 1 or r1[0] == 0:
            q, r = _fraction_divmod(r0, r1)
            r0, r1 = r1, r
            s0, s1 = s1, _trim(_poly_sub(s0, _poly_mul(q, s1)))
        c = r1[0]
        inv_num = [x / c * self.den for x in s1]
        return self.field.from_coeffs(inv_num)

    def __truediv__(self, other) -> CycloElement:
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self * other.inv()

    def __rtruediv__(self, other) -> CycloElement:
        return self._coerce(other) * self.inv()

    def __pow__(self, n: int) -> CycloElement:
        if n < 0:
            return self.inv() ** (-n)
        result = self.field.one()
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def galois(self, j: int) -> CycloElement:
        """Image under the automorphism A -> A^j (j coprime to the order)."""
        if math.gcd(j, self.field.order) != 1:
            raise ValueError("Galois exponent must be coprime to the order")
        n = self.field.order
        acc = [0] * n
        for i, c in enumerate(self.num):
            if c:
                acc[(i * j) % n] += c
        red = self.field.reduce(acc)
        num, den = _normalize(red, self.den)
        return CycloElement(self.field, num, den)

    def conj(self) -> CycloElement:
        return self.galois(-1 % self.field.order)

    def embed(self, power: int = 1) -> complex:
        """Numeric value at exp(2*pi*i*power/order)."""
        z = cmath.exp(2j * cmath.pi * power / self.field.order)
        acc = 0j
        for c in reversed(self.num):
            acc = acc * z + c
        return acc / self.den

    def is_rational(self) -> bool:
        return not any(self.num[1:])


def _trim(p: list[Fraction]) -> list[Fraction]:
    while len(p) > 1 and p[-1] == 0:
        p.pop()
    return p


def _poly_mul(a: list[Fraction], b: list[Fraction]) -> list[Fraction]:
    out = [Fraction(0)] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return out


def _poly_sub(a: list[Fraction], b: list[Fraction]) -> list[Fraction]:
    n = max(len(a), len(b))
    return [(a[i] if i < len(a) else 0) - (b[i] if i < len(b) else 0) for i in range(n)]


def _fraction_divmod(a: list[Fraction], b: list[Fraction]) -> tuple[list[Fraction], list[Fraction]]:
    a = list(a)
    db = len(b) - 1
    lead = b[-1]
    if len(a) - 1 < db:
        return [Fraction(0)], _trim(a)
    q = [Fraction(0)] * (len(a) - db)
    for i in range(len(a) - 1, db - 1, -1):
        c = a[i] / lead
        if c:
            q[i - db] = c
            for j in range(db + 1):
                a[i - db + j] -= c * b[j]
    return _trim(q), _trim(a[:db] or [Fraction(0)])


@dataclass(frozen=True)
class LevelContext:
    """Level p data: r = p/2, k = p/2 - 2 and the field Q(A), A^(2p) = 1 primitive."""

    p: int
    field: CyclotomicField = field(repr=False, compare=False)

    @property
    def r(self) -> int:
        return self.p // 2

    @property
    def k(self) -> int:
        return self.p // 2 - 2

    @property
    def max_color(self) -> int:
        return (self.p - 4) // 2

    @property
    def cyclotomic_poly(self) -> tuple[int, ...]:
        return self.field.modulus

    @property
    def embedding_root(self) -> complex:
        return cmath.exp(1j * cmath.pi / self.p)

    def A(self, n: int = 1) -> CycloElement:
        return self.field.power(n)

    def one(self) -> CycloElement:
        return self.field.one()

    def zero(self) -> CycloElement:
        return self.field.zero()

    def const(self, n: int | Fraction) -> CycloElement:
        return self.field.from_int(n)


@lru_cache(maxsize=None)
def ctx_new(p: int) -> LevelContext:
    """Level context for an even level p >= 6."""
    if not isinstance(p, int) or isinstance(p, bool):
        raise TypeError("level must be an integer")
    if p % 2:
        raise ValueError(f"level p must be even, got {p}")
    if p < 6:
        raise ValueError(f"level p must be at least 6, got {p}")
    return LevelContext(p, CyclotomicField(2 * p))


def power_A(ctx: LevelContext, n: int) -> CycloElement:
    return ctx.field.power(n)


def conj_A(a: CycloElement) -> CycloElement:
    return a.conj()


def embed(a: CycloElement, power: int = 1) -> complex:
    return a.embed(power)


class ModularEmbedding:
    """Ring homomorphism Z[A][1/den] -> F_q sending A to a primitive root omega.

    ``q`` is a prime with q = 1 (mod order), so F_q contains all order-th
    roots of unity.  Residues are plain Python ints in [0, q).
    """

    def __init__(self, order: int, bits: int = 61, seed: int = 0):
        self.order = order
        t = (1 << bits) // order + 1
        while not sympy.isprime(order * t + 1):
            t += 1
        self.q = q = order * t + 1
        rng = random.Random(seed)
        primes = list(sympy.primefactors(order))
        while True:
            h = rng.randrange(2, q - 1)
            w = pow(h, (q - 1) // order, q)
            if all(pow(w, order // ell, q) != 1 for ell in primes):
                break
        self.omega = w
        self._powers = [pow(w, e, q) for e in range(order)]

    def power(self, n: int) -> int:
        return self._powers[n % self.order]

    def inv(self, x: int) -> int:
        if x % self.q == 0:
            raise ZeroDivisionError("residue is zero")
        return pow(x, -1, self.q)

    def image(self, a: CycloElement) -> int:
        if a.field.order != self.order:
            raise ValueError("field order mismatch")
        acc = 0
        for i, c in enumerate(a.num):
            if c:
                acc += c * self._powers[i]
        return acc * self.inv(a.den) % self.q
