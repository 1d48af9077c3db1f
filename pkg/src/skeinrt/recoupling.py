"""Theta, tetrahedron and 6j coefficients at level p.

Normalizations are the Kauffman-Lins ones.  The tetrahedron is described by
its six edges on the complete graph K4 with vertices 1..4,
``(e12, e13, e14, e23, e24, e34)``.  With vertex half-sums a_u and 4-cycle
half-sums b_j (one per pair of opposite edges),

    Tet = prod_{u,j} [b_j - a_u]! / prod_e [e]!
          * sum_{s=max a}^{min b} (-1)^s [s+1]! / (prod_u [s-a_u]! prod_j [b_j-s]!)

Every denominator factorial has index below r = p/2, so the formula stays
valid at the root of unity.  The value depends only on the multisets of
a's, b's and edges; that triple is the memo key.

The 6j symbol {a b j; c d i} is the coefficient of the I-graph with middle
edge j in the expansion of the H-graph with middle edge i; the H-graph has
vertices (a,d,i), (b,c,i) and the I-graph (a,b,j), (c,d,j).
"""
from __future__ import annotations

import hashlib
import itertools
import json
import os
from pathlib import Path
from typing import Any, Sequence

from .cyclotomic import CycloElement, LevelContext, ModularEmbedding
from .graphs import TrivalentGraph, admissible_triple
from .qnum import ModInt, QConstants, exact_constants, make_arithmetic

FORMULA_VERSION = "kl-1"

# K4 bookkeeping: edge index -> vertex pair
K4_EDGES = ((1, 2), (1, 3), (1, 4), (2, 3), (2, 4), (3, 4))
_VERTEX_EDGES = {u: tuple(i for i, e in enumerate(K4_EDGES) if u in e) for u in (1, 2, 3, 4)}
_OPPOSITE = ((0, 5), (1, 4), (2, 3))
_PERMS = list(itertools.permutations((1, 2, 3, 4)))


def _edge_index(u: int, v: int) -> int:
    return K4_EDGES.index((min(u, v), max(u, v)))


def _perm_tables() -> list[tuple[int, ...]]:
    """For each vertex permutation, the induced permutation of edge slots."""
    out = []
    for perm in _PERMS:
        image = {u: perm[u - 1] for u in (1, 2, 3, 4)}
        out.append(tuple(_edge_index(image[u], image[v]) for u, v in K4_EDGES))
    return out


EDGE_PERMS = _perm_tables()


def tet_symmetries(edges: Sequence[int]) -> list[tuple[int, ...]]:
    """The 24 images of an edge coloring under the symmetries of the tetrahedron."""
    out = []
    for tab in EDGE_PERMS:
        img = [0] * 6
        for src, dst in enumerate(tab):
            img[dst] = edges[src]
        out.append(tuple(img))
    return out


def canonical_edges(edges: Sequence[int]) -> tuple[int, ...]:
    return min(tet_symmetries(edges))


def vertex_triples(edges: Sequence[int]) -> list[tuple[int, int, int]]:
    return [tuple(edges[i] for i in _VERTEX_EDGES[u]) for u in (1, 2, 3, 4)]


def tet_admissible(p: int, edges: Sequence[int]) -> bool:
    return all(admissible_triple(p, *t) for t in vertex_triples(edges))


def tet_sums(edges: Sequence[int]) -> tuple[list[int], list[int]]:
    tot = sum(edges)
    a = [sum(edges[i] for i in _VERTEX_EDGES[u]) // 2 for u in (1, 2, 3, 4)]
    b = [(tot - edges[i] - edges[j]) // 2 for i, j in _OPPOSITE]
    return a, b


def tet_key(edges: Sequence[int]) -> tuple:
    a, b = tet_sums(edges)
    return (tuple(sorted(a)), tuple(sorted(b)), tuple(sorted(edges)))


def wheel_to_edges(t: int, l: int, rr: int, la: int, bs: int, ra: int) -> tuple[int, ...]:
    """Tetrahedron drawn as a wheel: top arc, left spoke, right spoke,
    left arc, bottom spoke, right arc.

    Vertices: center (l, rr, bs), left (t, l, la), right (t, rr, ra),
    bottom (la, bs, ra).  Mapped to K4 as center=1, left=2, right=3, bottom=4.
    """
    return (l, rr, bs, t, la, ra)


def edges_to_wheel(edges: Sequence[int]) -> tuple[int, ...]:
    e12, e13, e14, e23, e24, e34 = edges
    return (e23, e12, e13, e24, e14, e34)


def sixj_edges(a: int, b: int, j: int, c: int, d: int, i: int) -> tuple[int, ...]:
    """Edge layout of the tetrahedron behind {a b j; c d i}."""
    # vertices 1=(a,d,i) 2=(b,c,i) 3=(a,b,j) 4=(c,d,j)
    return (i, a, d, b, c, j)


# Generic evaluation over any arithmetic carried by a QConstants table

def theta_value(qc: QConstants, a: int, b: int, c: int):
    x, y, z = (a + b - c) // 2, (b + c - a) // 2, (a + c - b) // 2
    s = x + y + z
    val = qc.qfact(s + 1) * qc.qfact(x) * qc.qfact(y) * qc.qfact(z)
    val = val * qc.inv_qfact(a) * qc.inv_qfact(b) * qc.inv_qfact(c)
    return -val if s % 2 else val


def tet_value(qc: QConstants, edges: Sequence[int]):
    a, b = tet_sums(edges)
    ar = qc.arith
    pref = ar.const(1)
    for bj in b:
        for au in a:
            pref = pref * qc.qfact(bj - au)
    for e in edges:
        pref = pref * qc.inv_qfact(e)
    acc = ar.const(0)
    for s in range(max(a), min(b) + 1):
        term = qc.qfact(s + 1)
        for au in a:
            term = term * qc.inv_qfact(s - au)
        for bj in b:
            term = term * qc.inv_qfact(bj - s)
        acc = acc - term if s % 2 else acc + term
    return pref * acc


class FastModularTet:
    """Tetrahedron values in F_q with plain integers (scanner hot path).

    A nonzero residue proves the exact value is nonzero, because reduction
    at a prime above q is a ring map on the subring the formula lives in.
    """

    def __init__(self, ctx: LevelContext, embedding: ModularEmbedding | None = None):
        self.ctx = ctx
        self.emb = embedding or ModularEmbedding(2 * ctx.p)
        q = self.q = self.emb.q
        p = ctx.p
        qint = [0]
        for n in range(1, p + 1):
            qint.append(sum(self.emb.power(2 * (n - 1 - 2 * j)) for j in range(n)) % q)
        fact = [1]
        for n in range(1, p + 1):
            fact.append(fact[-1] * qint[n] % q)
        r = ctx.r
        if any(fact[n] == 0 for n in range(r)):
            raise ArithmeticError("bad prime: a factorial below r reduces to zero")
        inv = [1] * r
        inv[-1] = pow(fact[r - 1], -1, q)
        for n in range(r - 1, 0, -1):
            inv[n - 1] = inv[n] * qint[n] % q
        self.fact, self.inv = fact, inv

    def __call__(self, edges: Sequence[int]) -> int:
        q, fact, inv = self.q, self.fact, self.inv
        a, b = tet_sums(edges)
        pref = 1
        for bj in b:
            for au in a:
                pref = pref * fact[bj - au] % q
        for e in edges:
            pref = pref * inv[e] % q
        acc = 0
        a1, a2, a3, a4 = a
        b1, b2, b3 = b
        for s in range(max(a), min(b) + 1):
            t = fact[s + 1] * inv[s - a1] % q * inv[s - a2] % q * inv[s - a3] % q * inv[s - a4] % q
            t = t * inv[b1 - s] % q * inv[b2 - s] % q * inv[b3 - s] % q
            acc = acc - t if s & 1 else acc + t
        return pref * acc % q


def cache_dir() -> Path:
    env = os.environ.get("SKEINRT_CACHE_DIR")
    if env:
        return Path(env)
    return Path.home() / ".cache" / "skeinrt"


def _header_hash(p: int) -> str:
    return hashlib.sha256(f"{p}:{FORMULA_VERSION}".encode()).hexdigest()[:16]


class RecouplingTable:
    """Memoized theta / tet / 6j values at one level.

    ``kind`` selects the arithmetic ("exact", "modular" or "numeric").
    ``norm_sign`` = -1 flips the sign of the forward 6j normalization
    <j>/(theta theta) (also used by the Lemma A ratio) but not of the reverse
    move.  It exists only as a negative control.
    Exact tet values can be spilled to a JSON file in :func:`cache_dir`.
    """

    def __init__(self, ctx: LevelContext, kind: str = "exact", norm_sign: int = 1,
                 use_disk: bool = False, **arith_kw: Any):
        self.ctx = ctx
        self.kind = kind
        self.norm_sign = norm_sign
        if kind == "exact" and not arith_kw:
            self.qc = exact_constants(ctx)
        else:
            self.qc = QConstants(ctx, make_arithmetic(ctx, kind, **arith_kw))
        self._tet: dict[tuple, Any] = {}
        self._theta: dict[tuple, Any] = {}
        self.use_disk = use_disk and kind == "exact"
        self._dirty = False
        if self.use_disk:
            self._load()

    @property
    def arith(self):
        return self.qc.arith

    def _check(self, *colors: int) -> None:
        m = self.ctx.max_color
        for c in colors:
            if not 0 <= c <= m:
                raise ValueError(f"color {c} outside 0..{m} at level {self.ctx.p}")

    def admissible(self, a: int, b: int, c: int) -> bool:
        self._check(a, b, c)
        return admissible_triple(self.ctx.p, a, b, c)

    def loop(self, n: int):
        return self.qc.loop_value(n)

    def _signed(self, v):
        return -v if self.norm_sign < 0 else v

    def theta(self, a: int, b: int, c: int):
        if not self.admissible(a, b, c):
            raise ValueError(f"({a},{b},{c}) is not {self.ctx.p}-admissible")
        key = tuple(sorted((a, b, c)))
        v = self._theta.get(key)
        if v is None:
            v = theta_value(self.qc, *key)
            self._theta[key] = v
        return v

    def tet_edges(self, edges: Sequence[int]):
        """Tetrahedron coefficient from K4 edge colors; zero if not admissible."""
        val, _ = self.tet_edges_flag(edges)
        return val

    def tet_edges_flag(self, edges: Sequence[int]):
        edges = tuple(edges)
        if len(edges) != 6:
            raise ValueError("a tetrahedron has six edges")
        self._check(*edges)
        if not tet_admissible(self.ctx.p, edges):
            return self.arith.const(0), False
        key = tet_key(edges)
        v = self._tet.get(key)
        if v is None:
            v = tet_value(self.qc, edges)
            self._tet[key] = v
            self._dirty = True
        return v, True

    def tet(self, colors: Sequence[int]):
        """Tetrahedron coefficient from the wheel 6-tuple (see wheel_to_edges)."""
        return self.tet_edges(wheel_to_edges(*colors))

    def sixj(self, a: int, b: int, j: int, c: int, d: int, i: int):
        """{a b j; c d i}, zero outside admissibility."""
        p = self.ctx.p
        self._check(a, b, c, d, i, j)
        if not (admissible_triple(p, a, d, i) and admissible_triple(p, b, c, i)
                and admissible_triple(p, a, b, j) and admissible_triple(p, c, d, j)):
            return self.arith.const(0)
        t = self.tet_edges(sixj_edges(a, b, j, c, d, i))
        den = self.theta(a, b, j) * self.theta(c, d, j)
        return self._signed(t * self.loop(j) * self.arith.inv(den))

    def sixj_reverse(self, a: int, b: int, j: int, c: int, d: int, i: int):
        """Coefficient of H-graph(i) in the expansion of I-graph(j)."""
        p = self.ctx.p
        self._check(a, b, c, d, i, j)
        if not (admissible_triple(p, a, d, i) and admissible_triple(p, b, c, i)
                and admissible_triple(p, a, b, j) and admissible_triple(p, c, d, j)):
            return self.arith.const(0)
        t = self.tet_edges(sixj_edges(a, b, j, c, d, i))
        den = self.theta(a, d, i) * self.theta(b, c, i)
        return t * self.loop(i) * self.arith.inv(den)

    def fusion_matrices(self, a: int, b: int, c: int, d: int):
        """(I-range, J-range, F, G) with F[j][i] = {a b j; c d i} and G the reverse move."""
        p, m = self.ctx.p, self.ctx.max_color
        I = [i for i in range(m + 1) if admissible_triple(p, a, d, i) and admissible_triple(p, b, c, i)]
        J = [j for j in range(m + 1) if admissible_triple(p, a, b, j) and admissible_triple(p, c, d, j)]
        F = [[self.sixj(a, b, j, c, d, i) for i in I] for j in J]
        G = [[self.sixj_reverse(a, b, j, c, d, i) for j in J] for i in I]
        return I, J, F, G

    # Lemma-specific quantities (4 | p)

    def _need_4p(self) -> int:
        if self.ctx.p % 4:
            raise ValueError("defined for levels divisible by 4")
        return self.ctx.k

    def lemmaA_tet_edges(self, a: int, b: int) -> tuple[int, ...]:
        k = self._need_4p()
        # vertices (k,a,k-a) twice and (a,k-a,b) twice; k opposite b
        return (k, a, k - a, k - a, a, b)

    def lemmaA_F(self, a: int, b: int):
        k = self._need_4p()
        if not self.admissible(a, k - a, b):
            raise ValueError(f"({a},{k - a},{b}) is not admissible")
        th = self.theta(k - a, a, b)
        if self.arith.is_zero(th):
            raise ZeroDivisionError("vanishing theta denominator")
        return self._signed(self.tet_edges(self.lemmaA_tet_edges(a, b)) * self.loop(a) * self.arith.inv(th))

    def lemmaB_tet_edges(self, a: int, b: int, c: int) -> tuple[int, ...]:
        k = self._need_4p()
        # vertices (a,b,c), (a,k,k-a), (b,k,k-b), (c,k-a,k-b)
        return (a, b, c, k, k - a, k - b)

    def lemmaB_product(self, a: int, b: int, c: int):
        k = self._need_4p()
        if not self.admissible(a, b, c):
            raise ValueError(f"({a},{b},{c}) is not admissible")
        t = self.tet_edges(self.lemmaB_tet_edges(a, b, c))
        d1 = self.theta(k - a, k - b, c)
        d2 = self.theta(a, b, c)
        if self.arith.is_zero(d1) or self.arith.is_zero(d2):
            raise ZeroDivisionError("vanishing theta denominator")
        return self.loop(k - a) * self.loop(k - b) * t * t * self.arith.inv(d1 * d2)

    # Disk spill for exact tet values

    def _cache_path(self) -> Path:
        return cache_dir() / f"tet_p{self.ctx.p}.json"

    def _load(self) -> None:
        path = self._cache_path()
        if not path.exists():
            return
        try:
            data = json.loads(path.read_text())
        except (OSError, ValueError):
            return
        if data.get("header") != _header_hash(self.ctx.p) or data.get("version") != FORMULA_VERSION:
            return
        field = self.ctx.field
        for row in data.get("tet", []):
            key = tuple(tuple(x) for x in row["key"])
            num = tuple(int(x) for x in row["num"])
            self._tet[key] = CycloElement(field, num, int(row["den"]))

    def save(self) -> Path | None:
        if not self.use_disk or not self._dirty:
            return None
        path = self._cache_path()
        path.parent.mkdir(parents=True, exist_ok=True)
        rows = [{"key": [list(x) for x in key], "num": [str(c) for c in v.num], "den": str(v.den)}
                for key, v in sorted(self._tet.items())]
        payload = {"version": FORMULA_VERSION, "p": self.ctx.p,
                   "header": _header_hash(self.ctx.p), "tet": rows}
        tmp = path.with_suffix(".tmp")
        tmp.write_text(json.dumps(payload, sort_keys=True))
        tmp.replace(path)
        self._dirty = False
        return path


_TABLES: dict[tuple[int, str, int], RecouplingTable] = {}


def table(ctx: LevelContext, kind: str = "exact", norm_sign: int = 1) -> RecouplingTable:
    key = (ctx.p, kind, norm_sign)
    t = _TABLES.get(key)
    if t is None:
        t = RecouplingTable(ctx, kind, norm_sign)
        _TABLES[key] = t
    return t


# Module-level convenience wrappers (exact)

def theta(ctx: LevelContext, a: int, b: int, c: int) -> CycloElement:
    return table(ctx).theta(a, b, c)


def tet(ctx: LevelContext, colors: Sequence[int]) -> CycloElement:
    return table(ctx).tet(colors)


def tet_with_flag(ctx: LevelContext, colors: Sequence[int]) -> tuple[CycloElement, bool]:
    return table(ctx).tet_edges_flag(wheel_to_edges(*colors))


def sixj(ctx: LevelContext, a: int, b: int, j: int, c: int, d: int, i: int) -> CycloElement:
    return table(ctx).sixj(a, b, j, c, d, i)


def lemmaA_F(ctx: LevelContext, a: int, b: int) -> CycloElement:
    return table(ctx).lemmaA_F(a, b)


def lemmaB_product(ctx: LevelContext, a: int, b: int, c: int) -> CycloElement:
    return table(ctx).lemmaB_product(a, b, c)


def graph_tet_edges(graph: TrivalentGraph, coloring: Sequence[int]) -> tuple[int, ...]:
    """K4 edge colors of a coloring of any tetrahedron-shaped graph."""
    verts = list(graph.vertices)
    if len(verts) != 4 or len(graph.edges) != 6:
        raise ValueError("not a tetrahedron graph")
    pos = {v: n + 1 for n, v in enumerate(verts)}
    out = [None] * 6
    for (u, v), c in zip(graph.edges, coloring):
        if u == v:
            raise ValueError("not a tetrahedron graph")
        out[_edge_index(pos[u], pos[v])] = c
    if any(x is None for x in out):
        raise ValueError("not a tetrahedron graph")
    return tuple(out)


def vacuum_pairing(ctx: LevelContext, graph: TrivalentGraph, coloring: Sequence[int],
                   tab: RecouplingTable | None = None):
    """Hopf pairing of u_sigma with the vacuum: theta value or tetrahedron value."""
    tab = tab or table(ctx)
    if graph.genus == 2 and len(set(graph.edges)) == 1:
        return tab.theta(*coloring)
    if graph.genus == 3:
        return tab.tet_edges(graph_tet_edges(graph, coloring))
    raise ValueError("vacuum pairing is implemented for the theta and tetrahedron graphs")


__all__ = [
    "RecouplingTable", "FastModularTet", "table", "theta", "tet", "tet_with_flag", "sixj",
    "lemmaA_F", "lemmaB_product", "vacuum_pairing", "wheel_to_edges", "edges_to_wheel",
    "tet_symmetries", "canonical_edges", "sixj_edges", "tet_key", "ModInt",
]
