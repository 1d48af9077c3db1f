"""Genus-1 representations: RT matrices, Weil matrices, cyclicity and commutants.

The RT module V_{p,1} has basis u_0 .. u_{(p-4)/2}; the generators are the
twist T = diag(mu_i) and S = eta * ((-1)^(i+j) [(i+1)(j+1)]).  The Weil module
U_p has basis e_x, x in Z/p, with

    S = p^(-1/2) (A^(-2xy)),   T = diag(A^(x^2)).

``literal=True`` builds S with A^(-xy) on representatives 0..p-1 instead;
that matrix does not satisfy the modular relations and is kept only for the
comparison test.

Exact decisions use S/eta, whose entries lie in Z[A]: cyclic spans and
commutants do not see the scalar.
"""
from __future__ import annotations

import cmath
import itertools
import math
from dataclasses import dataclass, field
from typing import Any, Sequence

import numpy as np
import sympy

from .cyclotomic import CycloElement, LevelContext, ModularEmbedding, ctx_new
from .linalg import NUMERIC_TOL, ExactEchelon, ModEchelon, exact_nullspace, numeric_rank
from .qnum import eta_scalar, exact_constants

EXACT_LIMIT = 40
BASES = ("rt", "weil", "weil-minus", "other")


@dataclass
class RepMatrix:
    """A generator matrix; ``data = scale * embed(exact)`` when exact is present."""

    data: np.ndarray
    basis: str
    p: int
    exact: list[list[CycloElement]] | None = field(default=None, repr=False)
    scale: complex = 1.0

    def __post_init__(self):
        if self.basis not in BASES:
            raise ValueError(f"unknown basis tag {self.basis!r}")
        n = self.data.shape[0]
        if self.data.shape != (n, n):
            raise ValueError("generator must be square")
        want = {"rt": (self.p - 2) // 2, "weil-minus": (self.p - 2) // 2, "weil": self.p}.get(self.basis)
        if want is not None and n != want:
            raise ValueError(f"dimension {n} does not match basis {self.basis} at level {self.p}")

    @property
    def dim(self) -> int:
        return self.data.shape[0]

    def rescaled(self, c: complex) -> RepMatrix:
        return RepMatrix(self.data * c, self.basis, self.p, self.exact, self.scale * c)


def _embed_matrix(rows: Sequence[Sequence[CycloElement]]) -> np.ndarray:
    return np.array([[x.embed() for x in row] for row in rows], dtype=complex)


# -- RT matrices ------------------------------------------------------------

def rt_T(ctx: LevelContext) -> RepMatrix:
    qc = exact_constants(ctx)
    d = ctx.max_color + 1
    zero = ctx.zero()
    ex = [[qc.twist_mu(i) if i == j else zero for j in range(d)] for i in range(d)]
    return RepMatrix(_embed_matrix(ex), "rt", ctx.p, ex)


def rt_S_exact(ctx: LevelContext) -> list[list[CycloElement]]:
    """The Hopf pairing matrix (-1)^(i+j) [(i+1)(j+1)], before eta scaling."""
    qc = exact_constants(ctx)
    d = ctx.max_color + 1
    out = []
    for i in range(d):
        row = []
        for j in range(d):
            v = qc.qint((i + 1) * (j + 1))
            row.append(-v if (i + j) % 2 else v)
        out.append(row)
    return out


def rt_S(ctx: LevelContext) -> RepMatrix:
    ex = rt_S_exact(ctx)
    eta = eta_scalar(ctx)
    return RepMatrix(eta * _embed_matrix(ex), "rt", ctx.p, ex, eta)


def rt_generators(ctx: LevelContext) -> list[RepMatrix]:
    return [rt_S(ctx), rt_T(ctx)]


def vacuum(ctx: LevelContext) -> np.ndarray:
    v = np.zeros(ctx.max_color + 1, dtype=complex)
    v[0] = 1
    return v


# -- Weil matrices ----------------------------------------------------------

def weil_matrices(n: int, power: int = 1, literal: bool = False) -> tuple[np.ndarray, np.ndarray]:
    """Weil S and T on Z/n with root a = exp(i pi power / n).

    For odd n the power must be even so that T descends to Z/n.
    """
    a = cmath.exp(1j * math.pi * power / n)
    idx = np.arange(n)
    m = 1 if literal else 2
    S = np.array([[a ** (-(m * i * j) % (2 * n)) for j in idx] for i in idx]) / math.sqrt(n)
    T = np.diag([a ** ((i * i) % (2 * n)) for i in idx])
    return S, T


def weil_S(ctx: LevelContext, literal: bool = False) -> RepMatrix:
    return RepMatrix(weil_matrices(ctx.p, 1, literal)[0], "weil", ctx.p)


def weil_T(ctx: LevelContext) -> RepMatrix:
    f = ctx.field
    ex = [[f.power(i * i) if i == j else f.zero() for j in range(ctx.p)] for i in range(ctx.p)]
    return RepMatrix(weil_matrices(ctx.p)[1], "weil", ctx.p, ex)


def weil_minus(ctx: LevelContext, power: int = 1) -> tuple[RepMatrix, RepMatrix]:
    """S and T restricted to span{e_i - e_-i : 1 <= i <= (p-2)/2}, in that basis."""
    p = ctx.p
    S, T = weil_matrices(p, power)
    idx = range(1, p // 2)
    Sm = np.array([[S[i, j] - S[i, (-j) % p] for j in idx] for i in idx])
    Tm = np.diag([T[i, i] for i in idx])
    f = ctx.field
    exS, exT = None, None
    if power == 1:
        exS = [[f.power(-2 * i * j) - f.power(2 * i * j) for j in idx] for i in idx]
        exT = [[f.power(i * i) if i == j else f.zero() for j in idx] for i in idx]
        return (RepMatrix(Sm, "weil-minus", p, exS, 1 / math.sqrt(p)),
                RepMatrix(Tm, "weil-minus", p, exT))
    return RepMatrix(Sm, "weil-minus", p), RepMatrix(Tm, "weil-minus", p)


def modular_relations(S: np.ndarray, T: np.ndarray, tol: float = 1e-9) -> dict[str, bool]:
    """(ST)^3 and S^4 proportional to scalars of the right kind, as in PSL2 projectively."""
    def scalar_multiple(X, Y):
        k = np.unravel_index(np.argmax(np.abs(Y)), Y.shape)
        c = X[k] / Y[k]
        return abs(abs(c) - 1) < tol and np.linalg.norm(X - c * Y) < tol * max(1.0, np.linalg.norm(Y))

    ST = S @ T
    S2 = S @ S
    return {
        "st_cubed_prop_s2": bool(scalar_multiple(ST @ ST @ ST, S2)),
        "s4_scalar": bool(scalar_multiple(S2 @ S2, np.eye(S.shape[0]))),
        "s_unitary": bool(np.allclose(S @ S.conj().T, np.eye(S.shape[0]), atol=tol)),
    }


# -- the Weil / RT comparison ----------------------------------------------

@dataclass
class PsiReport:
    p: int
    found: bool
    index_map: str = ""
    signs: str = ""
    weil_power: int = 0
    c_S: complex = 0j
    c_T: complex = 0j
    residual: float = math.inf
    candidates_tried: int = 0

    def claimed_c_T(self, corrected: bool = False) -> complex:
        """(-1)^(r-1) A^-1, optionally times the A^(r^2) factor found by exponent arithmetic."""
        r = self.p // 2
        e = -1 + (r * r if corrected else 0)
        return (-1) ** (r - 1) * cmath.exp(1j * math.pi * e / self.p)

    def to_dict(self) -> dict:
        return {
            "p": self.p, "found": bool(self.found), "index_map": self.index_map, "signs": self.signs,
            "weil_power": self.weil_power,
            "c_S": [round(float(self.c_S.real), 12), round(float(self.c_S.imag), 12)],
            "c_T": [round(float(self.c_T.real), 12), round(float(self.c_T.imag), 12)],
            "abs_c_S": round(float(abs(self.c_S)), 12), "abs_c_T": round(float(abs(self.c_T)), 12),
            "c_T_matches_claim": bool(abs(self.c_T - self.claimed_c_T()) < 1e-9),
            "c_T_matches_corrected": bool(abs(self.c_T - self.claimed_c_T(True)) < 1e-9),
            "residual": float(f"{self.residual:.3e}"), "candidates_tried": self.candidates_tried,
        }


def _intertwining_scalar(X: np.ndarray, Y: np.ndarray) -> tuple[complex, float]:
    """Best c with X = c Y, and the relative residual."""
    k = np.unravel_index(np.argmax(np.abs(Y)), Y.shape)
    c = X[k] / Y[k]
    return c, float(np.linalg.norm(X - c * Y) / np.linalg.norm(Y))


def psi_equivalence(ctx: LevelContext, tol: float = 1e-9) -> PsiReport:
    """Search signed index bijections e_i^- -> +-u_j intertwining S and T projectively."""
    p, r = ctx.p, ctx.r
    if p < 6:
        raise ValueError("level too small")
    d = r - 1
    rtS, rtT = rt_S(ctx).data, rt_T(ctx).data
    maps = {
        "i -> r-1-i (reflection)": [r - 1 - i for i in range(1, r)],
        "i -> i-1 (shift)": [i - 1 for i in range(1, r)],
    }
    signs = {"+": [1] * d, "(-1)^i": [(-1) ** i for i in range(1, r)]}
    powers = [u for u in range(1, 2 * p) if math.gcd(u, 2 * p) == 1]
    tried = 0
    best = PsiReport(p, False)
    for u in powers:
        Sm, Tm = weil_minus(ctx, u)
        for (mname, perm), (sname, sg) in itertools.product(maps.items(), signs.items()):
            tried += 1
            Psi = np.zeros((d, d))
            for col, (row, s) in enumerate(zip(perm, sg)):
                Psi[row, col] = s
            # Psi is a signed permutation, so its inverse is its transpose
            cS, resS = _intertwining_scalar(Psi.T @ rtS @ Psi, Sm.data)
            cT, resT = _intertwining_scalar(Psi.T @ rtT @ Psi, Tm.data)
            res = max(resS, resT)
            ok = res < tol and abs(abs(cS) - 1) < tol and abs(abs(cT) - 1) < tol
            if res < best.residual or ok:
                best = PsiReport(p, bool(ok), mname, sname, u, complex(cS), complex(cT), res)
            if ok:
                best.candidates_tried = tried
                return best
    best.candidates_tried = tried
    return best


@dataclass
class CRTSplit:
    p: int
    a: int
    b: int
    mapping: dict[int, tuple[int, int]]
    power_a: int
    power_b: int
    c_S: complex
    c_T: complex
    residual: float

    @property
    def ok(self) -> bool:
        return self.residual < 1e-9 and abs(abs(self.c_S) - 1) < 1e-9 and abs(abs(self.c_T) - 1) < 1e-9


def crt_split(ctx: LevelContext, a: int, b: int) -> CRTSplit:
    """U_ab against U_a (x) U_b under e_x -> e_[x]_a (x) e_[x]_b.

    The factor roots are Galois twists fixed by x^2/(2ab) = u_a x^2/(2a) + u_b x^2/(2b)
    modulo 1 on the T side.
    """
    p = ctx.p
    if a * b != p or math.gcd(a, b) != 1:
        raise ValueError(f"need a coprime factorization of {p}, got {a} x {b}")
    # fix the parity so that the even factor comes first in the formulas
    even, odd = (a, b) if a % 2 == 0 else (b, a)
    ue = pow(odd, -1, 2 * even)
    uo = 2 * pow(2 * even, -1, odd) % (2 * odd)
    Se, Te = weil_matrices(even, ue)
    So, To = weil_matrices(odd, uo)
    if even == a:
        SS, TT = np.kron(Se, So), np.kron(Te, To)
        pa, pb = ue, uo
    else:
        SS, TT = np.kron(So, Se), np.kron(To, Te)
        pa, pb = uo, ue
    S, T = weil_matrices(p)
    mapping = {x: (x % a, x % b) for x in range(p)}
    P = np.zeros((p, p))
    for x, (xa, xb) in mapping.items():
        P[xa * b + xb, x] = 1
    cS, rS = _intertwining_scalar(P @ S @ P.T, SS)
    cT, rT = _intertwining_scalar(P @ T @ P.T, TT)
    return CRTSplit(p, a, b, mapping, pa, pb, cS, cT, max(rS, rT))


# -- cyclicity ----------------------------------------------------------------

def krylov_dim_numeric(gens: Sequence[np.ndarray], v: np.ndarray, tol: float = NUMERIC_TOL) -> int:
    """Dimension of the span of all words in ``gens`` applied to v (block closure)."""
    Q = (v / np.linalg.norm(v))[:, None]
    n = v.shape[0]
    while Q.shape[1] < n:
        W = np.hstack([g @ Q for g in gens])
        for _ in range(2):
            W = W - Q @ (Q.conj().T @ W)
        U, s, _ = np.linalg.svd(W, full_matrices=False)
        k = int(np.sum(s > tol))
        if k == 0:
            break
        Q = np.hstack([Q, U[:, :k]])
    return Q.shape[1]


def _exact_rows(g: RepMatrix) -> list[list[CycloElement]]:
    if g.exact is None:
        raise ValueError("generator has no exact entries")
    return g.exact


def krylov_dim_modular(gens: Sequence[RepMatrix], v: Sequence[int], order: int, seed: int = 0) -> int:
    """Krylov dimension after reduction modulo a prime; a lower bound on the exact one."""
    emb = ModularEmbedding(order, seed=seed)
    q = emb.q
    mats = [[[emb.image(x) for x in row] for row in _exact_rows(g)] for g in gens]
    ech = ModEchelon(q)
    queue = [[x % q for x in v]]
    while queue:
        w = queue.pop()
        if ech.add(w):
            for m in mats:
                queue.append([sum(a * b for a, b in zip(row, w)) % q for row in m])
    return ech.rank


def krylov_dim_exact(gens: Sequence[RepMatrix], v: Sequence[Any]) -> int:
    mats = [_exact_rows(g) for g in gens]
    ech = ExactEchelon()
    queue = [list(v)]
    zero = mats[0][0][0].field.zero()
    while queue:
        w = queue.pop()
        if ech.add(w):
            _, row = ech.rows[-1]
            for m in mats:
                out = []
                for mrow in m:
                    acc = zero
                    for a, b in zip(mrow, row):
                        if not a.is_zero() and not b.is_zero():
                            acc = acc + a * b
                    out.append(acc)
                queue.append(out)
    return ech.rank


@dataclass
class KrylovResult:
    cyclic: bool
    dim: int
    total: int
    numeric_dim: int
    method: str


def krylov_analysis(gens: Sequence[RepMatrix], v: Sequence[int] | np.ndarray,
                    tol: float = NUMERIC_TOL, exact_limit: int = EXACT_LIMIT) -> KrylovResult:
    """Numeric closure, arbitrated exactly when the matrices carry exact entries.

    A full modular rank proves cyclicity; otherwise the exact closure decides.
    """
    vv = np.asarray(v, dtype=complex)
    n = vv.shape[0]
    nd = krylov_dim_numeric([g.data for g in gens], vv, tol)
    exact_ok = all(g.exact is not None for g in gens) and n <= exact_limit
    ints = all(float(x).is_integer() for x in np.real(vv)) and not np.any(np.imag(vv))
    if not (exact_ok and ints):
        return KrylovResult(nd == n, nd, n, nd, "numeric")
    iv = [int(round(float(x.real))) for x in vv]
    order = gens[0].exact[0][0].field.order
    md = krylov_dim_modular(gens, iv, order)
    if md == n:
        return KrylovResult(True, n, n, nd, "modular-certificate")
    field_ = gens[0].exact[0][0].field
    ed = krylov_dim_exact(gens, [field_.from_int(x) for x in iv])
    return KrylovResult(ed == n, ed, n, nd, "exact")


def krylov_cyclic(generators: Sequence[RepMatrix], v: Sequence[int] | np.ndarray,
                  tol: float = NUMERIC_TOL) -> tuple[bool, int]:
    res = krylov_analysis(generators, v, tol)
    return res.cyclic, res.dim


def predicted_cyclic(p: int) -> bool:
    """The three cyclic cases: 2 r1..rk (distinct odd primes), 2 r^2, 4 r (r prime)."""
    if p % 2:
        raise ValueError("level must be even")
    f = sympy.factorint(p)
    if f.get(2) == 1 and all(e == 1 for e in f.values()):
        return True
    m = p // 2
    s = math.isqrt(m)
    if s * s == m and sympy.isprime(s):
        return True
    return p % 4 == 0 and sympy.isprime(p // 4)


def projection_witnesses(p: int) -> dict[str, float]:
    """Norms of the projections of v = e_{(p-2)/2} - e_{(p+2)/2} used in the cyclicity argument.

    p = 4r: the components in U_4^- (x) U_r^+ and U_4^+ (x) U_r^-.
    p = 2^n, n >= 3: the component in the copy of U_{p/4} made of
    p/2-periodic functions supported on even residues.
    """
    x = (p - 2) // 2
    v = np.zeros(p)
    v[x % p] += 1
    v[(-x) % p] -= 1
    out: dict[str, float] = {}
    f = sympy.factorint(p)
    if p % 4 == 0 and sympy.isprime(p // 4) and p // 4 > 2:
        r = p // 4
        ctx = ctx_new(p)
        P = np.zeros((p, p))
        for y in range(p):
            P[(y % 4) * r + y % r, y] = 1
        w = P @ v
        J4 = np.zeros((4, 4))
        for y in range(4):
            J4[(-y) % 4, y] = 1
        Jr = np.zeros((r, r))
        for y in range(r):
            Jr[(-y) % r, y] = 1
        I4, Ir = np.eye(4), np.eye(r)
        pm = np.kron((I4 - J4) / 2, (Ir + Jr) / 2)
        mp = np.kron((I4 + J4) / 2, (Ir - Jr) / 2)
        split = crt_split(ctx, 4, r)
        out["crt_residual"] = split.residual
        out["U4-_Ur+"] = float(np.linalg.norm(pm @ w))
        out["U4+_Ur-"] = float(np.linalg.norm(mp @ w))
    if list(f) == [2] and f[2] >= 3:
        half = p // 2
        basis = []
        for y in range(0, half, 2):
            b = np.zeros(p)
            b[y] = b[y + half] = 1
            basis.append(b / math.sqrt(2))
        B = np.array(basis).T
        S, T = weil_matrices(p)
        # invariance of the subspace under both generators
        leak = max(np.linalg.norm(G @ B - B @ (B.T @ G @ B)) for G in (S, T))
        out["subspace_leak"] = float(leak)
        out[f"U{p // 4}-"] = float(np.linalg.norm(B @ (B.T @ v)))
    return out


# -- commutant and decomposition ---------------------------------------------

def commutant_dim_numeric(gens: Sequence[np.ndarray], tol: float = NUMERIC_TOL) -> int:
    d = gens[0].shape[0]
    eye = np.eye(d)
    M = np.vstack([np.kron(eye, g) - np.kron(g.T, eye) for g in gens])
    return d * d - numeric_rank(M, tol)


def _diagonal_index(gens: Sequence[RepMatrix]) -> int | None:
    for k, g in enumerate(gens):
        if g.exact is None:
            continue
        if all(g.exact[i][j].is_zero() for i in range(g.dim) for j in range(g.dim) if i != j):
            return k
    return None


def commutant_exact(gens: Sequence[RepMatrix], max_unknowns: int = 400) -> int | None:
    """Exact commutant dimension via the eigenspace blocks of a diagonal generator.

    Returns None when no exact diagonal generator is available or the block
    system is too large.  The kernel is computed from rows independent modulo
    a prime and then verified against every equation exactly, which pins the
    dimension from both sides.
    """
    k = _diagonal_index(gens)
    if k is None or any(g.exact is None for g in gens):
        return None
    D = gens[k].exact
    d = gens[k].dim
    unknowns = [(i, j) for i in range(d) for j in range(d) if D[i][i] == D[j][j]]
    if len(unknowns) > max_unknowns:
        return None
    pos = {u: n for n, u in enumerate(unknowns)}
    fld = D[0][0].field
    zero, one = fld.zero(), fld.one()
    emb = ModularEmbedding(fld.order)
    rows_exact = []
    for g in (gens[t] for t in range(len(gens)) if t != k):
        G = g.exact
        for a in range(d):
            for b in range(d):
                row = [zero] * len(unknowns)
                touched = False
                # (X G - G X)_{ab}
                for c in range(d):
                    if (a, c) in pos and not G[c][b].is_zero():
                        row[pos[(a, c)]] = row[pos[(a, c)]] + G[c][b]
                        touched = True
                    if (c, b) in pos and not G[a][c].is_zero():
                        row[pos[(c, b)]] = row[pos[(c, b)]] - G[a][c]
                        touched = True
                if touched:
                    rows_exact.append(row)
    ech = ModEchelon(emb.q)
    chosen = []
    for row in rows_exact:
        if ech.add([emb.image(x) for x in row]):
            chosen.append(row)
    kernel = exact_nullspace(chosen, len(unknowns), zero, one)
    for vec in kernel:
        for row in rows_exact:
            acc = zero
            for a, b in zip(row, vec):
                if not a.is_zero() and not b.is_zero():
                    acc = acc + a * b
            if not acc.is_zero():
                raise ArithmeticError("modular row selection missed an exact relation")
    return len(kernel)


def commutant_dim(generators: Sequence[RepMatrix], tol: float = NUMERIC_TOL, exact: bool = True) -> int:
    if exact and generators[0].dim <= EXACT_LIMIT:
        ex = commutant_exact(generators)
        if ex is not None:
            return ex
    return commutant_dim_numeric([g.data for g in generators], tol)


def commutant_basis_numeric(gens: Sequence[np.ndarray], tol: float = NUMERIC_TOL) -> list[np.ndarray]:
    d = gens[0].shape[0]
    eye = np.eye(d)
    M = np.vstack([np.kron(eye, g) - np.kron(g.T, eye) for g in gens])
    _, s, vh = np.linalg.svd(M)
    rank = int(np.sum(s > tol * s[0]))
    # column-major vec convention of kron(I, g) - kron(g^T, I)
    return [vh[i].conj().reshape(d, d).T for i in range(rank, d * d)]


@dataclass
class SubmoduleReport:
    p: int
    subspace_dims: list[int]
    commutant_dim: int
    cyclic: bool
    method: str

    def to_dict(self) -> dict:
        return {"p": self.p, "subspace_dims": self.subspace_dims, "commutant_dim": self.commutant_dim,
                "cyclic": self.cyclic, "cyclicity_method": self.method}


def decompose(ctx: LevelContext, exact: bool = True, seed: int = 0) -> SubmoduleReport:
    """Invariant subspaces from the eigenspaces of a random Hermitian commutant element."""
    gens = rt_generators(ctx)
    mats = [g.data for g in gens]
    basis = commutant_basis_numeric(mats)
    rng = np.random.default_rng(seed)
    X = sum(rng.standard_normal() * (B + B.conj().T) for B in basis)
    w = np.sort(np.linalg.eigvalsh(X))
    dims = []
    run = 1
    for a, b in zip(w[:-1], w[1:]):
        if b - a < 1e-6 * max(1.0, abs(w).max()):
            run += 1
        else:
            dims.append(run)
            run = 1
    dims.append(run)
    cdim = commutant_dim(gens, exact=exact)
    kr = krylov_analysis(gens, [1] + [0] * (gens[0].dim - 1)) if exact else None
    cyclic = kr.cyclic if kr else krylov_dim_numeric(mats, vacuum(ctx)) == gens[0].dim
    return SubmoduleReport(ctx.p, sorted(dims), cdim, cyclic, kr.method if kr else "numeric")


# -- the involution at p = 2 r1 r2 -------------------------------------------

def psi_involution(ctx: LevelContext, r1: int, r2: int) -> RepMatrix:
    """Signed permutation u_i -> +u_j (j = i mod 2r1, j = -i-2 mod r2) or -u_j (roles swapped)."""
    if not (sympy.isprime(r1) and sympy.isprime(r2) and r1 != r2 and r1 % 2 and r2 % 2):
        raise ValueError("r1, r2 must be distinct odd primes")
    if ctx.p != 2 * r1 * r2:
        raise ValueError(f"level {ctx.p} is not 2*{r1}*{r2}")
    n = r1 * r2 - 1
    M = np.zeros((n, n))
    fld = ctx.field
    ex = [[fld.zero()] * n for _ in range(n)]
    for i in range(n):
        hits = []
        for j in range(n):
            if (j - i) % (2 * r1) == 0 and (j + i + 2) % r2 == 0:
                hits.append((j, 1))
            if (j - i) % (2 * r2) == 0 and (j + i + 2) % r1 == 0:
                hits.append((j, -1))
        if len(hits) != 1:
            raise ArithmeticError(f"index {i} has {len(hits)} images")
        j, s = hits[0]
        M[j, i] = s
        ex[j][i] = fld.from_int(s)
    return RepMatrix(M.astype(complex), "rt", ctx.p, ex)
