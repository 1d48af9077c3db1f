"""Cyclicity certificates for higher genus.

For a twist class [s] (colorings sharing all edge twist eigenvalues) and a
finite family F of exponent functions f, the pairing system reads

    sum_{s' in [s]} (prod_e lambda_{s'(e)}^{f(e)}) alpha_{s'} (u_{s'}, v_0) = 0.

The class is certified when the matrix M of lambda products (rows f, columns
s') has full column rank; it is a row selection of a Kronecker product of
Vandermonde matrices in the lambda values of each omega-class.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Any, Iterator, Sequence

from .cyclotomic import CycloElement, LevelContext, ModularEmbedding
from .graphs import (TrivalentGraph, TwistClass, iter_colorings, level_shape, omega, theta_graph,
                     twist_classes)
from .linalg import ExactEchelon, ModEchelon
from .qnum import exact_constants
from .recoupling import FastModularTet, graph_tet_edges, table, tet_value


@dataclass(frozen=True)
class ExponentFamily:
    """All f: edges -> values; values {0,1} for 4r and 2r1r2, {0..(r-3)/2} for 2r^2."""

    shape: str
    n_edges: int
    values: tuple[int, ...]

    def __iter__(self) -> Iterator[tuple[int, ...]]:
        return itertools.product(self.values, repeat=self.n_edges)

    def __len__(self) -> int:
        return len(self.values) ** self.n_edges


def exponent_family(p: int, n_edges: int) -> ExponentFamily:
    shape = level_shape(p)
    if shape is None:
        raise ValueError(f"level {p} has none of the shapes 4r, 2r^2, 2r1r2")
    kind, rs = shape
    if kind == "2r2":
        return ExponentFamily(kind, n_edges, tuple(range((rs[0] - 3) // 2 + 1)))
    return ExponentFamily(kind, n_edges, (0, 1))


def build_M(ctx: LevelContext, twist_class: TwistClass | Sequence[Sequence[int]],
            F: ExponentFamily) -> list[list[CycloElement]]:
    members = twist_class.members if isinstance(twist_class, TwistClass) else list(twist_class)
    if not members:
        raise ValueError("empty class")
    qc = exact_constants(ctx)
    one = ctx.one()
    lam = [qc.lambda_scalar(i) for i in range(ctx.max_color + 1)]
    # powers of lambda are shared between rows
    pw: dict[tuple[int, int], CycloElement] = {}

    def lp(i: int, n: int) -> CycloElement:
        key = (i, n)
        if key not in pw:
            pw[key] = one if n == 0 else lp(i, n - 1) * lam[i]
        return pw[key]

    rows = []
    for f in F:
        row = []
        for s in members:
            v = one
            for c, n in zip(s, f):
                if n:
                    v = v * lp(c, n)
            row.append(v)
        rows.append(row)
    return rows


def vandermonde_N(ctx: LevelContext, i: int) -> list[list[CycloElement]]:
    """(lambda_j^n), j in omega(i) ascending, 0 <= n < #omega(i)."""
    qc = exact_constants(ctx)
    js = sorted(omega(ctx, i))
    rows = []
    for j in js:
        lam = qc.lambda_scalar(j)
        row, acc = [], ctx.one()
        for _ in js:
            row.append(acc)
            acc = acc * lam
        rows.append(row)
    return rows


def vandermonde_invertible(ctx: LevelContext, i: int) -> bool:
    N = vandermonde_N(ctx, i)
    ech = ExactEchelon()
    for row in N:
        ech.add(row)
    return ech.rank == len(N)


def lambda_injective_on_omega(ctx: LevelContext) -> bool:
    qc = exact_constants(ctx)
    for i in range(ctx.max_color + 1):
        vals = [qc.lambda_scalar(j) for j in sorted(omega(ctx, i))]
        if len(set(vals)) != len(vals):
            return False
    return True


def kron_rows(mats: Sequence[list[list[Any]]]) -> list[list[Any]]:
    out = [[None]]
    for m in mats:
        out = [[(a * b if a is not None else b) for a in ra for b in rb] for ra in out for rb in m]
    return out


def _column_rank(rows: list[list[CycloElement]], ncols: int) -> tuple[int, list[int]]:
    """Exact rank and a set of independent row indices (the witness)."""
    emb = ModularEmbedding(rows[0][0].field.order) if rows else None
    mod = ModEchelon(emb.q) if emb else None
    chosen: list[int] = []
    for k, row in enumerate(rows):
        if len(chosen) == ncols:
            break
        if mod.add([emb.image(x) for x in row]):
            chosen.append(k)
    if len(chosen) == ncols:
        return ncols, chosen  # full modular rank proves full exact rank
    ech = ExactEchelon()
    chosen = []
    for k, row in enumerate(rows):
        if ech.add(row):
            chosen.append(k)
        if ech.rank == ncols:
            break
    return ech.rank, chosen


class _ModularLambda:
    """lambda_i^n reduced mod a large prime, shared across classes of one level."""

    def __init__(self, ctx: LevelContext):
        qc = exact_constants(ctx)
        self.emb = ModularEmbedding(ctx.one().field.order)
        self.lam = [self.emb.image(qc.lambda_scalar(i)) for i in range(ctx.max_color + 1)]

    def row(self, members: Sequence[Sequence[int]], f: Sequence[int]) -> list[int]:
        q = self.emb.q
        out = []
        for s in members:
            v = 1
            for c, n in zip(s, f):
                if n:
                    v = v * pow(self.lam[c], n, q) % q
            out.append(v)
        return out


_MOD_LAMBDA: dict[int, _ModularLambda] = {}


def class_rank(ctx: LevelContext, members: Sequence[Sequence[int]],
               F: ExponentFamily) -> tuple[int, list[int]]:
    """Rank of M and witness row indices; modular first, exact only on a deficit."""
    n = len(members)
    if n == 1:
        return 1, [0]  # the f = 0 row is all ones
    ml = _MOD_LAMBDA.get(ctx.p)
    if ml is None:
        ml = _MOD_LAMBDA[ctx.p] = _ModularLambda(ctx)
    ech = ModEchelon(ml.emb.q)
    chosen: list[int] = []
    for k, f in enumerate(F):
        if ech.add(ml.row(members, f)):
            chosen.append(k)
            if len(chosen) == n:
                return n, chosen
    return _column_rank(build_M(ctx, members, F), n)


@dataclass
class CertificateResult:
    key: tuple[int, ...]
    members: list[tuple[int, ...]]
    family_size: int
    rank: int
    witness_rows: list[tuple[int, ...]]
    in_z: list[bool] = field(default_factory=list)

    @property
    def full_rank(self) -> bool:
        return self.rank == len(self.members)

    @property
    def passes(self) -> bool:
        return self.full_rank

    def to_dict(self) -> dict:
        return {
            "key": list(self.key), "members": [list(m) for m in self.members],
            "family_size": self.family_size, "rank": self.rank, "full_rank": self.full_rank,
            "witness_rows": [list(f) for f in self.witness_rows], "in_z": self.in_z,
            "passes": self.passes,
        }


def _pairing_nonzero(ctx: LevelContext, graph: TrivalentGraph) -> Any:
    """A predicate coloring -> (u_s, v_0) != 0, decided exactly."""
    if graph.genus == 2:
        tab = table(ctx)
        return lambda col: not tab.theta(*col).is_zero()
    if graph.genus == 3:
        fast = FastModularTet(ctx)
        qc = exact_constants(ctx)

        def nz(col):
            e = graph_tet_edges(graph, col)
            return fast(e) != 0 or not tet_value(qc, e).is_zero()
        return nz
    raise ValueError("pairings are available for the theta and tetrahedron graphs only")


def certify_class(ctx: LevelContext, graph: TrivalentGraph, twist_class: TwistClass,
                  F: ExponentFamily | None = None, check_z: bool | None = None) -> CertificateResult:
    F = F or exponent_family(ctx.p, len(graph.edges))
    rank, rows = class_rank(ctx, twist_class.members, F)
    fl = list(F)
    res = CertificateResult(twist_class.key, list(twist_class.members), len(F), rank, [fl[k] for k in rows])
    if check_z is None:
        check_z = F.shape == "4r"
    if check_z:
        nz = _pairing_nonzero(ctx, graph)
        res.in_z = [bool(nz(s)) for s in twist_class.members]
    return res


def certify_graph(ctx: LevelContext, graph: TrivalentGraph) -> list[CertificateResult]:
    F = exponent_family(ctx.p, len(graph.edges))
    return [certify_class(ctx, graph, c, F) for c in twist_classes(ctx, graph)]


@dataclass
class OneDimReport:
    p: int
    shape: str
    applicable: bool
    checked: int
    failures: list[tuple[int, ...]]
    condition: str

    @property
    def passes(self) -> bool:
        return not self.failures

    def to_dict(self) -> dict:
        return {"p": self.p, "shape": self.shape, "applicable": self.applicable, "checked": self.checked,
                "failures": [list(f) for f in self.failures], "condition": self.condition,
                "passes": self.passes}


def one_dim_conditions(ctx: LevelContext, graph: TrivalentGraph) -> OneDimReport:
    """Colorings meeting the range/congruence condition must sit in singleton classes."""
    shape = level_shape(ctx.p)
    if shape is None:
        raise ValueError(f"level {ctx.p} has none of the shapes 4r, 2r^2, 2r1r2")
    kind, rs = shape
    g = graph.genus
    if kind == "2r2":
        r = rs[0]
        cond = lambda s: all((c + 1) % r for c in s)
        text, applicable = f"no color = -1 mod {r}", True
    elif kind == "4r":
        cond = lambda s: all(c <= g for c in s)
        text, applicable = f"all colors <= {g}", g < rs[0] - 2
    else:
        cond = lambda s: all(c <= g for c in s)
        text, applicable = f"all colors <= {g}", 2 * g < min(rs)
    size = {c.key: len(c) for c in twist_classes(ctx, graph)}
    from .graphs import mu_exponent

    mexp = [mu_exponent(ctx, i) for i in range(ctx.max_color + 1)]
    checked, failures = 0, []
    for col in iter_colorings(ctx, graph):
        if cond(col):
            checked += 1
            if size[tuple(mexp[c] for c in col)] != 1:
                failures.append(col)
    return OneDimReport(ctx.p, kind, applicable, checked, failures, text)


@dataclass
class ZSubspace:
    p: int
    graph: str
    members: list[tuple[int, ...]]
    complement: list[tuple[int, ...]]

    @property
    def everything(self) -> bool:
        return not self.complement


def z_subspace(ctx: LevelContext, graph: TrivalentGraph | None = None) -> ZSubspace:
    graph = graph or theta_graph()
    if graph.genus not in (2, 3) or len(graph.edges) != 3 * graph.genus - 3:
        raise ValueError("z_subspace supports the theta and tetrahedron graphs")
    nz = _pairing_nonzero(ctx, graph)
    inside, outside = [], []
    for col in iter_colorings(ctx, graph):
        (inside if nz(col) else outside).append(col)
    return ZSubspace(ctx.p, graph.name, inside, outside)
