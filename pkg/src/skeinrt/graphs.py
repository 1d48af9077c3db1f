"""Trivalent graphs, admissible colorings, twist classes and the fly-eyes family.

A graph is a list of edges between integer vertices; loops and parallel
edges are allowed.  The genus-1 "graph" is the circle: one edge, no
vertices, every color admissible.
"""
from __future__ import annotations

import itertools
import re
from dataclasses import dataclass, field
from typing import Callable, Iterable, Iterator, Sequence

from .cyclotomic import LevelContext


def is_admissible(ctx: LevelContext, i: int, j: int, k: int) -> bool:
    m = ctx.max_color
    for c in (i, j, k):
        if not 0 <= c <= m:
            raise ValueError(f"color {c} outside 0..{m} at level {ctx.p}")
    return admissible_triple(ctx.p, i, j, k)


def admissible_triple(p: int, i: int, j: int, k: int) -> bool:
    """Admissibility without range checks (colors assumed nonnegative)."""
    s = i + j + k
    return s % 2 == 0 and s <= p - 4 and abs(i - j) <= k <= i + j


@dataclass(frozen=True)
class TrivalentGraph:
    edges: tuple[tuple[int, int], ...]
    genus: int
    name: str = ""
    vertices: tuple[int, ...] = field(default=())

    def __post_init__(self):
        if self.genus == 1:
            if len(self.edges) != 1 or self.vertices:
                raise ValueError("the genus-1 graph is a single loop without vertices")
            return
        verts = sorted({v for e in self.edges for v in e})
        object.__setattr__(self, "vertices", tuple(verts))
        deg = {v: 0 for v in verts}
        for a, b in self.edges:
            deg[a] += 1
            deg[b] += 1
        bad = [v for v, d in deg.items() if d != 3]
        if bad:
            raise ValueError(f"vertices {bad} are not trivalent")
        g = self.genus
        if len(self.edges) != 3 * g - 3 or len(verts) != 2 * g - 2:
            raise ValueError(f"edge/vertex counts do not match genus {g}")

    @property
    def is_circle(self) -> bool:
        return self.genus == 1

    def incidence(self) -> dict[int, list[int]]:
        """vertex -> list of incident edge indices (a loop counts twice)."""
        inc: dict[int, list[int]] = {v: [] for v in self.vertices}
        for idx, (a, b) in enumerate(self.edges):
            inc[a].append(idx)
            inc[b].append(idx)
        return inc

    def to_text(self) -> str:
        return "\n".join(f"e{i}: v{a} v{b}" for i, (a, b) in enumerate(self.edges)) + "\n"


_EDGE_RE = re.compile(r"^\s*e(\d+)\s*:\s*v(\d+)\s+v(\d+)\s*$")


def parse_graph(text: str, name: str = "") -> TrivalentGraph:
    """Read the one-edge-per-line format ``e<i>: v<a> v<b>``.

    A single line ``e0: circle`` denotes the genus-1 graph.
    """
    rows = []
    for lineno, line in enumerate(text.splitlines(), 1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        if re.fullmatch(r"e0\s*:\s*circle", line):
            return circle_graph()
        m = _EDGE_RE.match(line)
        if not m:
            raise ValueError(f"line {lineno}: cannot parse {line!r}")
        rows.append(tuple(int(x) for x in m.groups()))
    rows.sort()
    if [r[0] for r in rows] != list(range(len(rows))):
        raise ValueError("edge indices must be 0..n-1 without gaps")
    edges = tuple((a, b) for _, a, b in rows)
    nv = len({v for e in edges for v in e})
    if nv % 2:
        raise ValueError("a trivalent graph has an even number of vertices")
    return TrivalentGraph(edges, genus=nv // 2 + 1, name=name)


def circle_graph() -> TrivalentGraph:
    return TrivalentGraph(((-1, -1),), genus=1, name="circle")


def theta_graph() -> TrivalentGraph:
    return TrivalentGraph(((0, 1), (0, 1), (0, 1)), genus=2, name="theta")


def insert_triangle(graph: TrivalentGraph, vertex: int) -> TrivalentGraph:
    """Blow up ``vertex`` into a triangle; genus goes up by one.

    The three edge ends at ``vertex`` are reattached to ``vertex`` and to two
    new vertices, which are then joined in a cycle.
    """
    if graph.is_circle:
        raise ValueError("cannot insert a triangle in the circle")
    n = max(graph.vertices) + 1
    new = (vertex, n, n + 1)
    edges = [list(e) for e in graph.edges]
    slot = 0
    for e in edges:
        for end in (0, 1):
            if e[end] == vertex:
                e[end] = new[slot]
                slot += 1
    edges += [[new[0], new[1]], [new[1], new[2]], [new[2], new[0]]]
    return TrivalentGraph(tuple(tuple(e) for e in edges), genus=graph.genus + 1,
                          name=f"fly_eyes_{graph.genus + 1}")


def fly_eyes(g: int, choose: Callable[[TrivalentGraph], int] | None = None) -> TrivalentGraph:
    """The fly-eyes graph of genus g, built from the theta graph.

    Each step inserts a triangle at the lowest-index vertex unless ``choose``
    picks another one.
    """
    if g < 2:
        raise ValueError("fly-eyes graphs start at genus 2")
    graph = theta_graph()
    while graph.genus < g:
        v = choose(graph) if choose else min(graph.vertices)
        graph = insert_triangle(graph, v)
    name = {2: "theta", 3: "tetrahedron"}.get(g, f"fly_eyes_{g}")
    return TrivalentGraph(graph.edges, genus=g, name=name)


def tetrahedron_graph() -> TrivalentGraph:
    return fly_eyes(3)


# Colorings

def _vertex_checks(graph: TrivalentGraph) -> list[list[tuple[int, int, int]]]:
    """For each edge position, the vertex triples completed when it is assigned."""
    inc = graph.incidence()
    done_at = [[] for _ in graph.edges]
    for v, es in inc.items():
        done_at[max(es)].append(tuple(es))
    return done_at


def iter_colorings(ctx: LevelContext, graph: TrivalentGraph,
                   first: Iterable[int] | None = None) -> Iterator[tuple[int, ...]]:
    """Stream admissible colorings in lexicographic order by backtracking.

    ``first`` restricts the color of edge 0, which gives disjoint work units.
    """
    m = ctx.max_color
    if graph.is_circle:
        for c in first if first is not None else range(m + 1):
            yield (c,)
        return
    p = ctx.p
    n = len(graph.edges)
    checks = _vertex_checks(graph)
    col = [0] * n
    first_range = list(first) if first is not None else list(range(m + 1))

    def rec(pos: int):
        rng = first_range if pos == 0 else range(m + 1)
        for c in rng:
            col[pos] = c
            if all(admissible_triple(p, col[a], col[b], col[d]) for a, b, d in checks[pos]):
                if pos + 1 == n:
                    yield tuple(col)
                else:
                    yield from rec(pos + 1)

    yield from rec(0)


def enumerate_colorings(ctx: LevelContext, graph: TrivalentGraph,
                        visit: Callable[[tuple[int, ...]], None] | None = None):
    """Visitor form: calls ``visit`` on each coloring and returns the count.

    Without a visitor, returns the stream itself.
    """
    if visit is None:
        return iter_colorings(ctx, graph)
    n = 0
    for c in iter_colorings(ctx, graph):
        visit(c)
        n += 1
    return n


def brute_force_colorings(ctx: LevelContext, graph: TrivalentGraph) -> list[tuple[int, ...]]:
    """Independent oracle: filter the full product of color ranges."""
    m = ctx.max_color
    if graph.is_circle:
        return [(c,) for c in range(m + 1)]
    inc = graph.incidence()
    out = []
    for col in itertools.product(range(m + 1), repeat=len(graph.edges)):
        if all(admissible_triple(ctx.p, *(col[e] for e in es)) for es in inc.values()):
            out.append(col)
    return out


def count_colorings(ctx: LevelContext, graph: TrivalentGraph) -> int:
    return sum(1 for _ in iter_colorings(ctx, graph))


# Twist eigenvalues as exponents: mu_i = A^(p*i + i*(i+2)), so exact equality
# of mu values is equality of exponents mod 2p.

def mu_exponent(ctx: LevelContext, i: int) -> int:
    return (ctx.p * i + i * (i + 2)) % (2 * ctx.p)


def omega(ctx: LevelContext, i: int) -> set[int]:
    m = ctx.max_color
    if not 0 <= i <= m:
        raise ValueError(f"color {i} outside 0..{m}")
    e = mu_exponent(ctx, i)
    return {j for j in range(m + 1) if mu_exponent(ctx, j) == e}


def omega_classes(ctx: LevelContext) -> list[tuple[int, ...]]:
    """Partition of the color range into omega-classes."""
    groups: dict[int, list[int]] = {}
    for j in range(ctx.max_color + 1):
        groups.setdefault(mu_exponent(ctx, j), []).append(j)
    return sorted(tuple(v) for v in groups.values())


@dataclass
class TwistClass:
    key: tuple[int, ...]  # mu exponent per edge
    members: list[tuple[int, ...]]

    @property
    def representative(self) -> tuple[int, ...]:
        return self.members[0]

    def __len__(self) -> int:
        return len(self.members)


def twist_classes(ctx: LevelContext, graph: TrivalentGraph) -> list[TwistClass]:
    mexp = [mu_exponent(ctx, i) for i in range(ctx.max_color + 1)]
    groups: dict[tuple[int, ...], list[tuple[int, ...]]] = {}
    for col in iter_colorings(ctx, graph):
        groups.setdefault(tuple(mexp[c] for c in col), []).append(col)
    classes = [TwistClass(k, v) for k, v in groups.items()]
    classes.sort(key=lambda c: c.members[0])
    return classes


# Closed-form characterizations of omega for three level shapes.

def level_shape(p: int) -> tuple[str, tuple[int, ...]] | None:
    """Classify p as ('4r', (r,)), ('2r2', (r,)) or ('2r1r2', (r1, r2)), odd primes r."""
    from sympy import factorint

    f = factorint(p)
    odd = {q: e for q, e in f.items() if q != 2}
    two = f.get(2, 0)
    if two == 2 and len(odd) == 1 and list(odd.values()) == [1]:
        return "4r", (next(iter(odd)),)
    if two == 1 and len(odd) == 1 and list(odd.values()) == [2]:
        return "2r2", (next(iter(odd)),)
    if two == 1 and len(odd) == 2 and all(e == 1 for e in odd.values()):
        return "2r1r2", tuple(sorted(odd))
    return None


def omega_closed_form(p: int, i: int, j: int) -> bool:
    """mu_i == mu_j predicted by the congruence conditions for the level shape."""
    shape = level_shape(p)
    if shape is None:
        raise ValueError(f"level {p} has none of the shapes 4r, 2r^2, 2r1r2")
    if i == j:
        return True
    kind, rs = shape
    if kind == "2r2":
        r = rs[0]
        return (i + 1) % r == 0 and (j + 1) % r == 0 and (i - j) % 2 == 0
    if kind == "4r":
        return i == (p - 4) // 2 - j and i % 2 == 0
    r1, r2 = rs
    sys1 = (i - j) % (2 * r1) == 0 and (i + j + 2) % r2 == 0
    sys2 = (i - j) % (2 * r2) == 0 and (i + j + 2) % r1 == 0
    return sys1 or sys2


def check_omega_characterization(p: int) -> list[tuple[int, int]]:
    """Pairs (i, j) where brute force and the closed form disagree."""
    from .cyclotomic import ctx_new

    ctx = ctx_new(p)
    m = ctx.max_color
    bad = []
    for i in range(m + 1):
        for j in range(m + 1):
            if (mu_exponent(ctx, i) == mu_exponent(ctx, j)) != omega_closed_form(p, i, j):
                bad.append((i, j))
    return bad


def dimension_formula_genus1(p: int) -> int:
    return (p - 2) // 2


def graph_signature(graph: TrivalentGraph) -> tuple:
    """Cheap isomorphism-invariant summary (sorted multiset of edge kinds)."""
    loops = sum(1 for a, b in graph.edges if a == b)
    mult: dict[tuple[int, int], int] = {}
    for a, b in graph.edges:
        key = (min(a, b), max(a, b))
        mult[key] = mult.get(key, 0) + 1
    return (graph.genus, loops, tuple(sorted(mult.values())))


def relabel(graph: TrivalentGraph, perm: Sequence[int]) -> TrivalentGraph:
    """Apply a vertex permutation (used to test invariance of counts)."""
    edges = tuple((perm[a], perm[b]) for a, b in graph.edges)
    return TrivalentGraph(edges, graph.genus, graph.name)
