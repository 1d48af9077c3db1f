"""Genericity scans of tetrahedron coefficients, zero classification, the
special color x with mu_x = 1, and the two-variable polynomial P.

Scan modes:

* ``certified`` (default): every distinct tetrahedron value is reduced into a
  large prime field; a nonzero residue is a proof of nonvanishing and only
  residues equal to zero are re-evaluated exactly in Q(A).
* ``exact``: every distinct value is computed in Q(A).
* ``numeric-first``: complex evaluation, exact re-evaluation of near-zeros.
  Nonzero verdicts in this mode are floating-point estimates, not proofs.
"""
from __future__ import annotations

import cmath
import hashlib
import math
import time
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Iterable, Sequence

from .cyclotomic import CyclotomicField, CycloElement, LevelContext, ctx_new
from .graphs import iter_colorings, mu_exponent, tetrahedron_graph
from .qnum import NumericArithmetic, QConstants, exact_constants
from .recoupling import (FastModularTet, RecouplingTable, edges_to_wheel, graph_tet_edges,
                         tet_admissible, tet_key, tet_symmetries, tet_value, wheel_to_edges)

TYPE_I = "TypeI"
TYPE_II = "TypeII"
UNEXPECTED = "Unexpected"


@dataclass
class GenericityReport:
    p: int
    mode: str
    colorings: int = 0
    distinct_values: int = 0
    zeros: list[dict[str, Any]] = field(default_factory=list)
    exact_evaluations: int = 0
    seconds: float = 0.0

    @property
    def counts(self) -> dict[str, int]:
        out = {TYPE_I: 0, TYPE_II: 0, UNEXPECTED: 0}
        for z in self.zeros:
            out[z["type"]] += 1
        return out

    @property
    def generic(self) -> bool:
        if self.p % 4:
            return not self.zeros
        return self.counts[UNEXPECTED] == 0

    def to_dict(self) -> dict[str, Any]:
        return {
            "p": self.p, "mode": self.mode, "colorings": self.colorings,
            "distinct_values": self.distinct_values, "exact_evaluations": self.exact_evaluations,
            "zero_count": len(self.zeros), "zero_types": self.counts, "generic": self.generic,
            "zeros": self.zeros, "timing": {"seconds": round(self.seconds, 3)},
        }


def _wheel_types(ctx: LevelContext, w: Sequence[int]) -> set[str]:
    k = ctx.k
    h = k // 2
    t, l, rr, la, bs, ra = w
    out = set()
    if t == l == rr == h and (la + bs + ra) % 4 == 2:
        out.add(TYPE_I)
    if t == h and rr == k - l and la == ra and (l + (bs + k) // 2) % 2 == 1:
        out.add(TYPE_II)
    return out


def family_types(ctx: LevelContext, edges: Sequence[int]) -> set[str]:
    """Families the K4 edge coloring belongs to, up to tetrahedral symmetry."""
    out: set[str] = set()
    for img in tet_symmetries(edges):
        out |= _wheel_types(ctx, edges_to_wheel(img))
    return out


def classify_zero(ctx: LevelContext, coloring: Sequence[int], edges: bool = False,
                  check_value: bool = True) -> str:
    """TypeI, TypeII or Unexpected for a vanishing tetrahedron coloring.

    ``coloring`` is a wheel 6-tuple unless ``edges`` is set (K4 edge order).
    """
    if ctx.p % 4:
        raise ValueError("zero classification is defined for levels divisible by 4")
    e = tuple(coloring) if edges else wheel_to_edges(*coloring)
    if not tet_admissible(ctx.p, e):
        raise ValueError(f"{tuple(coloring)} is not an admissible tetrahedron coloring at level {ctx.p}")
    if check_value and not tet_value(exact_constants(ctx), e).is_zero():
        raise ValueError(f"{tuple(coloring)} has a nonzero tetrahedron coefficient")
    types = family_types(ctx, e)
    if TYPE_I in types:
        return TYPE_I
    if TYPE_II in types:
        return TYPE_II
    return UNEXPECTED


def family_members(ctx: LevelContext) -> dict[str, list[tuple[int, ...]]]:
    """Admissible wheel tuples of both families in their displayed frame."""
    k, p = ctx.k, ctx.p
    h = k // 2
    rng = range(k + 1)
    I = [(h, h, h, a, b, c) for a in rng for b in rng for c in rng if (a + b + c) % 4 == 2]
    II = [(h, a, k - a, b, c, b) for a in rng for b in rng for c in rng if (a + (c + k) // 2) % 2 == 1]
    keep = lambda ws: [w for w in ws if tet_admissible(p, wheel_to_edges(*w))]
    return {TYPE_I: keep(I), TYPE_II: keep(II)}


def scan_level(ctx: LevelContext, mode: str = "certified", graph=None) -> GenericityReport:
    if mode not in ("certified", "exact", "numeric-first"):
        raise ValueError(f"unknown scan mode {mode!r}")
    t0 = time.perf_counter()
    graph = graph or tetrahedron_graph()
    rep = GenericityReport(ctx.p, mode)
    qc = exact_constants(ctx)
    if mode == "certified":
        fast = FastModularTet(ctx)
        quick = lambda e: fast(e) != 0
    elif mode == "numeric-first":
        nqc = QConstants(ctx, NumericArithmetic(ctx))
        quick = lambda e: abs(tet_value(nqc, e)) > 1e-8
    else:
        quick = lambda e: False
    zero_of: dict[tuple, bool] = {}
    for col in iter_colorings(ctx, graph):
        rep.colorings += 1
        e = graph_tet_edges(graph, col)
        key = tet_key(e)
        z = zero_of.get(key)
        if z is None:
            if quick(e):
                z = False
            else:
                rep.exact_evaluations += 1
                z = tet_value(qc, e).is_zero()
            zero_of[key] = z
        if z:
            rep.zeros.append({"coloring": list(col), "wheel": list(edges_to_wheel(e)),
                              "type": _zero_type(ctx, e)})
    rep.distinct_values = len(zero_of)
    rep.seconds = time.perf_counter() - t0
    return rep


def _zero_type(ctx: LevelContext, e: Sequence[int]) -> str:
    if ctx.p % 4:
        return UNEXPECTED
    types = family_types(ctx, e)
    if TYPE_I in types:
        return TYPE_I
    if TYPE_II in types:
        return TYPE_II
    return UNEXPECTED


# The special color x

def special_color_x(r1: int, r2: int) -> int:
    """The unique x in 1..r1*r2-2 with mu_x = 1 at level 2*r1*r2."""
    from sympy import isprime

    if r1 == r2 or not (isprime(r1) and isprime(r2)) or 2 in (r1, r2):
        raise ValueError("r1, r2 must be distinct odd primes")
    ctx = ctx_new(2 * r1 * r2)
    hits = [x for x in range(1, r1 * r2 - 1) if mu_exponent(ctx, x) == 0]
    if len(hits) != 1:
        raise ArithmeticError(f"expected a unique x, found {hits}")
    x = hits[0]
    sys1 = (x + 2) % r1 == 0 and x % r2 == 0
    sys2 = x % r1 == 0 and (x + 2) % r2 == 0
    if x % 2 or not (sys1 or sys2):
        raise ArithmeticError(f"x={x} violates the congruence description")
    return x


# The polynomial P(x, y): (x exponent, y exponent, coefficient), leading term first.

P_TERMS: tuple[tuple[int, int, int], ...] = (
    (20, 16, 1), (17, 17, -1), (16, 18, -1), (19, 13, 1), (18, 14, -4), (17, 15, 3),
    (15, 17, 2), (19, 11, -1), (17, 13, -5), (15, 15, -4), (14, 16, 4), (13, 17, -2),
    (18, 10, -1), (17, 11, 2), (16, 12, 6), (15, 13, 2), (14, 14, -1), (13, 15, 2),
    (11, 17, 1), (15, 11, 2), (14, 12, 1), (13, 13, 1), (12, 14, -6), (10, 16, 1),
    (17, 7, 1), (16, 8, 4), (15, 9, -1), (14, 10, -4), (12, 12, 4), (15, 7, 1),
    (13, 9, 1), (12, 10, -4), (11, 11, 1), (10, 12, 4), (8, 14, -4), (7, 15, -1),
    (15, 5, -2), (14, 6, -6), (13, 7, -4), (12, 8, 2), (11, 9, -8), (10, 10, -6),
    (9, 11, -6), (7, 13, -1), (13, 5, 1), (11, 7, 6), (10, 8, 6), (9, 9, 8),
    (8, 10, -2), (7, 11, 4), (6, 12, 6), (5, 13, 2), (13, 3, 1), (12, 4, 4),
    (10, 6, -4), (9, 7, -1), (8, 8, 4), (7, 9, -1), (5, 11, -1), (8, 6, -4),
    (6, 8, 4), (5, 9, 1), (4, 10, -4), (3, 11, -1), (10, 2, -1), (8, 4, 6),
    (7, 5, -1), (6, 6, -1), (5, 7, -2), (9, 1, -1), (7, 3, -2), (6, 4, 1),
    (5, 5, -2), (4, 6, -6), (3, 7, -2), (2, 8, 1), (7, 1, 2), (6, 2, -4),
    (5, 3, 4), (3, 5, 5), (1, 7, 1), (5, 1, -2), (3, 3, -3), (2, 4, 4),
    (1, 5, -1), (4, 0, 1), (3, 1, 1), (0, 2, -1),
)


def p_checksum(terms: Iterable[tuple[int, int, int]] = P_TERMS) -> str:
    canon = ";".join(f"{a},{b},{c}" for a, b, c in sorted(terms))
    return hashlib.sha256(canon.encode()).hexdigest()[:16]


P_CHECKSUM = "8b18086439ff309c"


@dataclass(frozen=True)
class PPolynomial:
    terms: tuple[tuple[int, int, int], ...] = P_TERMS

    @property
    def degree(self) -> int:
        return max(a + b for a, b, _ in self.terms)

    def coefficient(self, a: int, b: int) -> int:
        return sum(c for x, y, c in self.terms if (x, y) == (a, b))

    def checksum(self) -> str:
        return p_checksum(self.terms)

    def verify(self) -> bool:
        return self.checksum() == P_CHECKSUM

    def corrupted(self, index: int = 0, delta: int = 1) -> PPolynomial:
        t = list(self.terms)
        a, b, c = t[index]
        t[index] = (a, b, c + delta)
        return PPolynomial(tuple(t))

    def __call__(self, z1, z2):
        return eval_P(z1, z2, self)


def eval_P(z1, z2, poly: PPolynomial | None = None):
    """P(z1, z2); exact for two elements of one cyclotomic field, else complex."""
    poly = poly or PPolynomial()
    ex1, ex2 = isinstance(z1, CycloElement), isinstance(z2, CycloElement)
    if ex1 != ex2:
        raise TypeError("mixed exact and numeric arguments")
    if ex1:
        if z1.field != z2.field:
            raise TypeError("exact arguments must live in one cyclotomic field")
        f = z1.field
        acc = f.zero()
        pw1 = {0: f.one()}
        pw2 = {0: f.one()}
        for a, b, c in poly.terms:
            if a not in pw1:
                pw1[a] = z1 ** a
            if b not in pw2:
                pw2[b] = z2 ** b
            acc = acc + pw1[a] * pw2[b] * c
        return acc
    z1, z2 = complex(z1), complex(z2)
    return sum(c * z1 ** a * z2 ** b for a, b, c in poly.terms)


def eval_P_roots(n1: int, n2: int, e1: int = 1, e2: int = 1,
                 poly: PPolynomial | None = None) -> tuple[CycloElement, complex]:
    """P(exp(2 i pi e1/n1), exp(2 i pi e2/n2)) exactly in Q(zeta_lcm), plus its value."""
    n = math.lcm(n1, n2)
    f = CyclotomicField(n)
    z1 = f.power(e1 * (n // n1))
    z2 = f.power(e2 * (n // n2))
    val = eval_P(z1, z2, poly)
    return val, val.embed(1)


CHECKED_ROOT_PAIRS = ((5, 11), (7, 11), (3, 13), (7, 13))


# Lemma GA: the 2x2 determinant of 6j symbols

def lemmaGA_D(ctx: LevelContext, x: int, tab: RecouplingTable | None = None):
    tab = tab or RecouplingTable(ctx)
    if not tab.admissible(x, x, x):
        raise ValueError(f"({x},{x},{x}) is not {ctx.p}-admissible")
    s = tab.sixj
    return s(x, x, 2, x, x, 0) * s(x, x, 4, x, x, x) - s(x, x, 4, x, x, 0) * s(x, x, 2, x, x, x)


def ga_prefactor(qc: QConstants, x: int):
    """Quantum-integer prefactor of the displayed factorization (without the
    (A^2-A^-2)^7 A1^10 A2^9 denominator)."""
    q, f = qc.qint, qc.qfact
    h = x // 2
    num = q(3) * f(5) * q(x) * f(3 * h + 1) * f(h) ** 3
    den = q(2) * f(x + 3) * f(x + 2) ** 2 * q(x + 3) * q(h + 1)
    val = num * qc.arith.inv(den)
    return -val if (h + 1) % 2 else val


def ga_bracket(qc: QConstants, x: int, middle: int | None = None):
    """The five-term bracket of the intermediate display; the middle factor
    is [3x/2+2] unless ``middle`` overrides its index."""
    q = qc.qint
    h = x // 2
    mid = q(3 * h + 2 if middle is None else middle)
    return (q(h - 1) ** 2 * q(h) ** 2 * q(h + 1)
            - q(2) ** 2 * q(h) ** 3 * mid * q(h + 1)
            + q(h - 1) * q(h) * q(h + 1) * q(h + 2) * q(h + 3)
            + q(x - 1) * q(x + 3) * q(h) ** 2 * q(h + 1)
            - q(x - 1) * q(3 * h + 2) * q(x + 3))


@dataclass
class GAReconciliation:
    p: int
    x: int
    D_exact_nonzero: bool
    D_numeric: complex
    best_residual: float
    best_convention: dict[str, Any]
    bracket_residual: float
    candidates: int

    @property
    def matches(self) -> bool:
        return self.best_residual < 1e-6

    def to_dict(self) -> dict[str, Any]:
        return {
            "p": self.p, "x": self.x, "D_exact_nonzero": self.D_exact_nonzero,
            "D_numeric": [self.D_numeric.real, self.D_numeric.imag],
            "best_relative_residual": self.best_residual, "best_convention": self.best_convention,
            "bracket_relative_residual": self.bracket_residual, "candidates": self.candidates,
            "matches": self.matches,
        }


def lemmaGA_reconcile(ctx: LevelContext, x: int, r1: int, r2: int,
                      poly: PPolynomial | None = None) -> GAReconciliation:
    """Compare D with prefactor * P(A1, A2) / ((A^2-A^-2)^7 A1^10 A2^9).

    Everything in D depends on A only through t = A^2.  The search runs over
    every t = exp(2 i pi u / p) with gcd(u, p/2) = 1 (this covers both t of
    order p, i.e. A a primitive 2p-th root, and t of order p/2, the literal
    reading t = A1 A2), every primitive pair (A1, A2), and the residual
    is taken relative to |D|.
    """
    if ctx.p != 2 * r1 * r2:
        raise ValueError("level must be 2*r1*r2")
    poly = poly or PPolynomial()
    D = lemmaGA_D(ctx, x)
    p = ctx.p
    best = (math.inf, {})
    bracket_best = math.inf
    n = 0
    D_num = None
    for u in range(1, p):
        if math.gcd(u, p // 2) != 1:
            continue
        # A = exp(i pi u / p): t = A^2 = exp(2 i pi u / p)
        nqc = QConstants(ctx, NumericArithmetic(ctx, power=u))
        tab = RecouplingTable(ctx, "numeric", power=u)
        Dn = lemmaGA_D(ctx, x, tab)
        if u == 1:
            D_num = Dn
        t = nqc.arith.A(2)
        pref = ga_prefactor(nqc, x)
        br = ga_bracket(nqc, x)
        bracket_best = min(bracket_best, abs(Dn - pref * br) / abs(Dn))
        for e1 in range(1, r1):
            for e2 in range(1, r2):
                z1 = cmath.exp(2j * math.pi * e1 / r1)
                z2 = cmath.exp(2j * math.pi * e2 / r2)
                val = pref * eval_P(z1, z2, poly) / ((t - 1 / t) ** 7 * z1 ** 10 * z2 ** 9)
                res = abs(Dn - val) / abs(Dn)
                n += 1
                if res < best[0]:
                    rel = z1 * z2 / t
                    best = (res, {"A_power": u, "A_order": 2 * p // math.gcd(u, 2 * p),
                                  "A1": f"exp(2i pi {e1}/{r1})", "A2": f"exp(2i pi {e2}/{r2})",
                                  "A1A2_over_A2": [round(rel.real, 12), round(rel.imag, 12)],
                                  "ratio": [(Dn / val).real, (Dn / val).imag]})
    return GAReconciliation(p, x, not D.is_zero(), D_num if D_num is not None else D.embed(),
                            best[0], best[1], bracket_best, n)


def ga_excluded_cases() -> list[dict[str, Any]]:
    """The prime pairs with r1*r2 <= 108 and whether (x,x,x) is admissible."""
    from sympy import primerange

    out = []
    primes = list(primerange(3, 109))
    for i, r1 in enumerate(primes):
        for r2 in primes[i + 1:]:
            if r1 * r2 > 108:
                continue
            x = special_color_x(r1, r2)
            p = 2 * r1 * r2
            out.append({"r1": r1, "r2": r2, "x": x, "admissible": 3 * x <= p - 4 and x <= p // 2 - 2})
    return out
