"""The group algebra of H_1(Sigma_g; Z/2) with coefficients in Q(sqrt 2).

A character x_1^a1 y_1^b1 ... x_g^ag y_g^bg is stored as a bitmask: bit i-1
for x_i and bit g+i-1 for y_i, so multiplication is XOR.  Symplectic maps
act by relabeling characters; the generators used are transvections
h -> h + (h.c) c and handle swaps.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable

NORMALIZATIONS = ("sqrt2", "half")
MAX_EXHAUSTIVE_GENUS = 3


@dataclass(frozen=True)
class QSqrt2:
    """a + b sqrt(2) with rational a, b."""

    a: Fraction = Fraction(0)
    b: Fraction = Fraction(0)

    @staticmethod
    def of(x) -> QSqrt2:
        return x if isinstance(x, QSqrt2) else QSqrt2(Fraction(x))

    def __add__(self, o) -> QSqrt2:
        o = QSqrt2.of(o)
        return QSqrt2(self.a + o.a, self.b + o.b)

    __radd__ = __add__

    def __neg__(self) -> QSqrt2:
        return QSqrt2(-self.a, -self.b)

    def __sub__(self, o) -> QSqrt2:
        return self + (-QSqrt2.of(o))

    def __mul__(self, o) -> QSqrt2:
        o = QSqrt2.of(o)
        return QSqrt2(self.a * o.a + 2 * self.b * o.b, self.a * o.b + self.b * o.a)

    __rmul__ = __mul__

    def __bool__(self) -> bool:
        return bool(self.a or self.b)

    def __str__(self) -> str:
        if not self.b:
            return str(self.a)
        if not self.a:
            return f"{self.b}*sqrt2"
        return f"({self.a} + {self.b}*sqrt2)"


SQRT2 = QSqrt2(Fraction(0), Fraction(1))
INV_SQRT2 = QSqrt2(Fraction(0), Fraction(1, 2))


class Mod2AlgebraElement:
    __slots__ = ("g", "terms")

    def __init__(self, g: int, terms: dict[int, QSqrt2] | None = None):
        self.g = g
        self.terms = {h: c for h, c in (terms or {}).items() if c}

    # construction
    @classmethod
    def one(cls, g: int) -> Mod2AlgebraElement:
        return cls(g, {0: QSqrt2.of(1)})

    @classmethod
    def char(cls, g: int, xs: Iterable[int] = (), ys: Iterable[int] = (), coef=1) -> Mod2AlgebraElement:
        h = 0
        for i in xs:
            h ^= 1 << (i - 1)
        for i in ys:
            h ^= 1 << (g + i - 1)
        return cls(g, {h: QSqrt2.of(coef)})

    def _check(self, o: Mod2AlgebraElement) -> None:
        if o.g != self.g:
            raise ValueError("genus mismatch")

    def __add__(self, o) -> Mod2AlgebraElement:
        if not isinstance(o, Mod2AlgebraElement):
            o = Mod2AlgebraElement.one(self.g) * o
        self._check(o)
        out = dict(self.terms)
        for h, c in o.terms.items():
            out[h] = out.get(h, QSqrt2()) + c
        return Mod2AlgebraElement(self.g, out)

    __radd__ = __add__

    def __neg__(self) -> Mod2AlgebraElement:
        return Mod2AlgebraElement(self.g, {h: -c for h, c in self.terms.items()})

    def __sub__(self, o) -> Mod2AlgebraElement:
        return self + (-o)

    def __rsub__(self, o) -> Mod2AlgebraElement:
        return (-self) + o

    def __mul__(self, o) -> Mod2AlgebraElement:
        if not isinstance(o, Mod2AlgebraElement):
            s = QSqrt2.of(o)
            return Mod2AlgebraElement(self.g, {h: c * s for h, c in self.terms.items()})
        self._check(o)
        out: dict[int, QSqrt2] = {}
        for h1, c1 in self.terms.items():
            for h2, c2 in o.terms.items():
                h = h1 ^ h2
                out[h] = out.get(h, QSqrt2()) + c1 * c2
        return Mod2AlgebraElement(self.g, out)

    __rmul__ = __mul__

    def __eq__(self, o) -> bool:
        if not isinstance(o, Mod2AlgebraElement):
            o = Mod2AlgebraElement.one(self.g) * o
        return self.g == o.g and self.terms == o.terms

    def is_zero(self) -> bool:
        return not self.terms

    def coefficient(self, h: int) -> QSqrt2:
        return self.terms.get(h, QSqrt2())

    def __repr__(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for h in sorted(self.terms):
            parts.append(f"{self.terms[h]}*{char_name(self.g, h)}")
        return " + ".join(parts)


def char_name(g: int, h: int) -> str:
    names = [f"x{i + 1}" for i in range(g) if h >> i & 1] + [f"y{i + 1}" for i in range(g) if h >> (g + i) & 1]
    return "".join(names) or "1"


# symplectic generators

def symplectic_form(g: int, h: int, c: int) -> int:
    mask = (1 << g) - 1
    hx, hy = h & mask, h >> g
    cx, cy = c & mask, c >> g
    return bin((hx & cy) ^ (hy & cx)).count("1") & 1


@dataclass(frozen=True)
class Transvection:
    g: int
    c: int
    name: str = ""

    def __call__(self, h: int) -> int:
        return h ^ self.c if symplectic_form(self.g, h, self.c) else h


@dataclass(frozen=True)
class HandleSwap:
    g: int
    i: int
    j: int

    @property
    def name(self) -> str:
        return f"swap{self.i},{self.j}"

    def __call__(self, h: int) -> int:
        out = h
        for off in (0, self.g):
            a, b = off + self.i - 1, off + self.j - 1
            ba, bb = h >> a & 1, h >> b & 1
            if ba != bb:
                out ^= (1 << a) | (1 << b)
        return out


def X(g: int, i: int) -> Transvection:
    return Transvection(g, 1 << (i - 1), f"X{i}")


def Y(g: int, i: int) -> Transvection:
    return Transvection(g, 1 << (g + i - 1), f"Y{i}")


def Z(g: int, i: int, j: int) -> Transvection:
    """The transvection along x_i + x_j."""
    return Transvection(g, (1 << (i - 1)) | (1 << (j - 1)), f"Z{i},{j}")


def generators(g: int, swaps: bool = True) -> list:
    gens: list = [X(g, i) for i in range(1, g + 1)] + [Y(g, i) for i in range(1, g + 1)]
    gens += [Z(g, i, j) for i, j in itertools.combinations(range(1, g + 1), 2)]
    if swaps:
        gens += [HandleSwap(g, i, j) for i, j in itertools.combinations(range(1, g + 1), 2)]
    return gens


def sp_generator_action(gen, w: Mod2AlgebraElement) -> Mod2AlgebraElement:
    out: dict[int, QSqrt2] = {}
    for h, c in w.terms.items():
        k = gen(h)
        out[k] = out.get(k, QSqrt2()) + c
    return Mod2AlgebraElement(w.g, out)


# the displayed elements

def theta_element(g: int, i: int, norm: str = "sqrt2") -> Mod2AlgebraElement:
    if not 1 <= i <= g:
        raise ValueError(f"handle index {i} outside 1..{g}")
    if norm not in NORMALIZATIONS:
        raise ValueError(f"unknown normalization {norm!r}")
    C = Mod2AlgebraElement.char
    w = -Mod2AlgebraElement.one(g) + C(g, [i]) + C(g, [], [i]) + C(g, [i], [i])
    return w * (INV_SQRT2 if norm == "sqrt2" else QSqrt2(Fraction(1, 2)))


def projector_P(g: int) -> Mod2AlgebraElement:
    if g < 1:
        raise ValueError("genus must be positive")
    s = Mod2AlgebraElement(g)
    for i in range(1, g + 1):
        s = s + theta_element(g, i)
    return (s * SQRT2 + (g + 1)) * QSqrt2(Fraction(1, 2 ** g))


def quotient_image(w: Mod2AlgebraElement) -> Mod2AlgebraElement:
    """Image under x_i -> 1 for every i."""
    mask = ((1 << w.g) - 1) << w.g
    out: dict[int, QSqrt2] = {}
    for h, c in w.terms.items():
        k = h & mask
        out[k] = out.get(k, QSqrt2()) + c
    return Mod2AlgebraElement(w.g, out)


def ideal_membership(w: Mod2AlgebraElement) -> bool:
    return quotient_image(w).is_zero()


def preserves_ideal(gen, g: int) -> bool:
    """phi(I) is inside I iff every phi(x_i) maps to 1 in the quotient."""
    return all(ideal_membership(sp_generator_action(gen, Mod2AlgebraElement.char(g, [i])) - 1)
               for i in range(1, g + 1))


def displayed_identities() -> list[dict]:
    """The three identities for Z_{1,2} in genus 2, left side against the displayed right side."""
    g = 2
    C = lambda xs=(), ys=(): Mod2AlgebraElement.char(g, xs, ys)
    one = Mod2AlgebraElement.one(g)
    z = Z(g, 1, 2)
    t1, t2 = theta_element(g, 1), theta_element(g, 2)
    lhs = [
        sp_generator_action(z, t1) - t1,
        sp_generator_action(z, t2) - t2,
        sp_generator_action(z, t1 * t2) - t1 * t2,
    ]
    y1x1 = C([1], [1]) + C([], [1])
    y2x2 = C([2], [2]) + C([], [2])
    rhs = [
        y1x1 * (C([2]) - one) * INV_SQRT2,
        y2x2 * (C([1]) - one) * INV_SQRT2,
        ((C([1, 2]) - one) * y1x1 * y2x2
         + (C([2]) - one) * y1x1 * (C([2]) - one)
         + (C([1]) - one) * y2x2 * (C([1]) - one)) * QSqrt2(Fraction(1, 2)),
    ]
    names = ["Z12.Theta1 - Theta1", "Z12.Theta2 - Theta2", "Z12.(Theta1 Theta2) - Theta1 Theta2"]
    out = []
    for n, l, r in zip(names, lhs, rhs):
        out.append({"identity": n, "equals_display": l == r, "in_ideal": ideal_membership(l),
                    "display_in_ideal": ideal_membership(r)})
    return out


# fixed vectors and the symmetric-function check

@dataclass
class FixedSubspace:
    g: int
    dim: int
    orbits: list[list[int]]

    def basis(self) -> list[Mod2AlgebraElement]:
        return [Mod2AlgebraElement(self.g, {h: QSqrt2.of(1) for h in orb}) for orb in self.orbits]

    def contains(self, w: Mod2AlgebraElement) -> bool:
        """w is fixed iff its coefficients are constant on each orbit."""
        for orb in self.orbits:
            vals = {w.coefficient(h) for h in orb}
            if len(vals) > 1:
                return False
        return True


def sp_fixed_subspace(g: int) -> FixedSubspace:
    if g > MAX_EXHAUSTIVE_GENUS:
        raise ValueError(f"exhaustive orbit computation limited to genus <= {MAX_EXHAUSTIVE_GENUS}")
    n = 1 << (2 * g)
    parent = list(range(n))

    def find(a):
        while parent[a] != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        return a

    for gen in generators(g):
        for h in range(n):
            a, b = find(h), find(gen(h))
            if a != b:
                parent[a] = b
    groups: dict[int, list[int]] = {}
    for h in range(n):
        groups.setdefault(find(h), []).append(h)
    orbits = sorted(groups.values(), key=lambda o: (len(o), o))
    return FixedSubspace(g, len(orbits), orbits)


def elementary_symmetric(g: int, k: int, norm: str = "sqrt2") -> Mod2AlgebraElement:
    thetas = [theta_element(g, i, norm) for i in range(1, g + 1)]
    out = Mod2AlgebraElement(g)
    for combo in itertools.combinations(thetas, k):
        term = Mod2AlgebraElement.one(g)
        for t in combo:
            term = term * t
        out = out + term
    return out


@dataclass
class Item2Report:
    g: int
    checks: list[dict]

    @property
    def passes(self) -> bool:
        return all(c["in_ideal"] for c in self.checks)

    @property
    def failures(self) -> list[dict]:
        return [c for c in self.checks if not c["in_ideal"]]


def lemma_item2_check(g: int, max_degree: int | None = None) -> Item2Report:
    if g not in (2, 3):
        raise ValueError("the check is defined for genus 2 and 3")
    top = g if max_degree is None else max_degree
    checks = []
    for k in range(top + 1):
        w = elementary_symmetric(g, k)
        for gen in generators(g):
            d = sp_generator_action(gen, w) - w
            checks.append({"degree": k, "generator": gen.name, "in_ideal": ideal_membership(d),
                           "invariant": d.is_zero()})
    return Item2Report(g, checks)


def normalization_report(g: int = 2) -> dict:
    """Squares of Theta_i and P^2 - P under both normalizations."""
    out = {}
    for norm in NORMALIZATIONS:
        t = theta_element(g, 1, norm)
        sq = t * t
        out[norm] = {"theta_squared": repr(sq)}
    P = projector_P(g)
    out["P_idempotent"] = (P * P - P).is_zero()
    out["P_squared_minus_P"] = repr(P * P - P)
    out["P_sp_fixed"] = sp_fixed_subspace(g).contains(P) if g <= MAX_EXHAUSTIVE_GENUS else None
    return out
