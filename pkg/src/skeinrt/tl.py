"""Diagrammatic evaluator: Temperley-Lieb algebra and Jones-Wenzl projectors.

Used as an oracle independent of the closed formulas in ``recoupling``: a
colored trivalent network on a planar graph is evaluated by expanding every
edge projector into planar matchings and counting closed loops, each worth
delta = -A^2 - A^-2.  Feasible for colors up to about 5.
"""
from __future__ import annotations

import itertools
from typing import Any, Sequence

from .qnum import QConstants

# A TL_n diagram is a tuple m of length 2n with m[m[i]] == i.  Points
# 0..n-1 are the bottom row and n..2n-1 the top row, both left to right.


def identity(n: int) -> tuple[int, ...]:
    return tuple(list(range(n, 2 * n)) + list(range(n)))


def cup_cap(n: int, i: int) -> tuple[int, ...]:
    """The generator e_i joining strands i and i+1 (0-based) top and bottom."""
    m = list(identity(n))
    m[i], m[i + 1] = i + 1, i
    m[n + i], m[n + i + 1] = n + i + 1, n + i
    return tuple(m)


def compose(lower: Sequence[int], upper: Sequence[int], n: int) -> tuple[tuple[int, ...], int]:
    """Stack ``upper`` on ``lower``; returns the diagram and the closed-loop count."""
    # nodes: lower bottom 0..n-1, glued middle n..2n-1, upper top 2n..3n-1;
    # upper point i (bottom or top) lands on node n + i
    adj: list[list[int]] = [[] for _ in range(3 * n)]
    for i, j in enumerate(lower):
        if i < j:
            adj[i].append(j)
            adj[j].append(i)
    for i, j in enumerate(upper):
        if i < j:
            a, b = n + i, n + j
            adj[a].append(b)
            adj[b].append(a)
    out = [0] * (2 * n)
    seen = [False] * (3 * n)

    def outer(node: int) -> int:
        return node if node < n else node - n

    for start in list(range(n)) + list(range(2 * n, 3 * n)):
        if seen[start]:
            continue
        prev, cur = -1, start
        seen[cur] = True
        while True:
            nb = adj[cur]
            nxt = nb[1] if len(nb) == 2 and nb[0] == prev else nb[0]
            prev, cur = cur, nxt
            seen[cur] = True
            if cur < n or cur >= 2 * n:
                break
        a, b = outer(start), outer(cur)
        out[a], out[b] = b, a
    loops = 0
    for k in range(n, 2 * n):
        if seen[k]:
            continue
        loops += 1
        prev, cur = -1, k
        while not seen[cur]:
            seen[cur] = True
            a, b = adj[cur]
            nxt = b if a == prev else a
            prev, cur = cur, nxt
    return tuple(out), loops


class TLAlgebra:
    """Linear combinations of TL_n diagrams over a QConstants arithmetic."""

    def __init__(self, qc: QConstants):
        self.qc = qc
        ar = qc.arith
        self.delta = -(ar.A(2) + ar.A(-2))
        self._jw: dict[int, dict] = {}

    def mul(self, x: dict, y: dict, n: int) -> dict:
        out: dict = {}
        for d1, c1 in x.items():
            for d2, c2 in y.items():
                d, loops = compose(d1, d2, n)
                c = c1 * c2
                for _ in range(loops):
                    c = c * self.delta
                out[d] = out[d] + c if d in out else c
        return out

    def tensor_id(self, x: dict, n: int) -> dict:
        """x (on n strands) tensored with one extra strand on the right."""
        out = {}
        for d, c in x.items():
            m = [0] * (2 * n + 2)
            for i, j in enumerate(d):
                ii = i if i < n else i + 1
                jj = j if j < n else j + 1
                m[ii] = jj
            m[n], m[2 * n + 1] = 2 * n + 1, n
            out[tuple(m)] = c
        return out

    def jones_wenzl(self, n: int) -> dict:
        if n not in self._jw:
            self._jw[n] = self._build_jw(n)
        return self._jw[n]

    def _build_jw(self, n: int) -> dict:
        ar = self.qc.arith
        if n == 0:
            return {(): ar.const(1)}
        if n == 1:
            return {identity(1): ar.const(1)}
        prev = self.tensor_id(self.jones_wenzl(n - 1), n - 1)
        e = {cup_cap(n, n - 2): ar.const(1)}
        mid = self.mul(self.mul(prev, e, n), prev, n)
        ratio = self._loop(n - 2) * ar.inv(self._loop(n - 1))
        out = dict(prev)
        for d, c in mid.items():
            v = out.get(d, ar.const(0)) - ratio * c
            out[d] = v
        return {d: c for d, c in out.items() if not ar.is_zero(c)}

    def _loop(self, n: int):
        v = self.qc.qint(n + 1)
        return -v if n % 2 else v


class _DSU:
    def __init__(self, n):
        self.p = list(range(n))

    def find(self, x):
        while self.p[x] != x:
            self.p[x] = self.p[self.p[x]]
            x = self.p[x]
        return x

    def union(self, a, b):
        a, b = self.find(a), self.find(b)
        if a != b:
            self.p[a] = b
            return True
        return False


def evaluate_network(qc: QConstants, edges: Sequence[tuple[int, int]], colors: Sequence[int],
                     rotation: dict[int, Sequence[int]]) -> Any:
    """Kauffman bracket of a colored planar trivalent network.

    ``edges[i] = (u, v)`` with u != v, ``rotation[u]`` lists the incident edge
    indices in counterclockwise order.  Each edge carries a Jones-Wenzl
    projector of its color; vertices join strands without extra factors.
    """
    tl = TLAlgebra(qc)
    ar = qc.arith
    # endpoint ids: edge i, bottom (at u) positions 0..n-1, top (at v) n..2n-1
    base = []
    tot = 0
    for c in colors:
        base.append(tot)
        tot += 2 * c
    vertex_pairs: list[tuple[int, int]] = []

    def end_points(ei: int, vertex: int) -> list[int]:
        """Endpoint ids of edge ei at ``vertex``, in ccw order around the vertex."""
        u, v = edges[ei]
        n = colors[ei]
        if vertex == u:
            return [base[ei] + (n - 1 - j) for j in range(n)]
        return [base[ei] + n + j for j in range(n)]

    for vtx, rot in rotation.items():
        cs = [colors[e] for e in rot]
        for s in range(3):
            e1, e2 = rot[s], rot[(s + 1) % 3]
            c1, c2, c3 = cs[s], cs[(s + 1) % 3], cs[(s + 2) % 3]
            x = (c1 + c2 - c3) // 2
            p1 = end_points(e1, vtx)
            p2 = end_points(e2, vtx)
            for t in range(x):
                vertex_pairs.append((p1[c1 - 1 - t], p2[t]))
    expansions = [list(tl.jones_wenzl(c).items()) for c in colors]
    total = ar.const(0)
    delta = tl.delta
    powers = [ar.const(1)]
    for choice in itertools.product(*expansions):
        dsu = _DSU(tot)
        comps = tot
        coeff = ar.const(1)
        for ei, (diag, c) in enumerate(choice):
            coeff = coeff * c
            b = base[ei]
            for i, j in enumerate(diag):
                if i < j and dsu.union(b + i, b + j):
                    comps -= 1
        for a, b in vertex_pairs:
            if dsu.union(a, b):
                comps -= 1
        while len(powers) <= comps:
            powers.append(powers[-1] * delta)
        total = total + coeff * powers[comps]
    return total


# Planar embeddings used by the oracle tests

TET_EDGES = ((1, 2), (1, 3), (1, 4), (2, 3), (2, 4), (3, 4))
# vertex 1 at the center, 2, 3, 4 counterclockwise around it
TET_ROTATION = {1: (0, 1, 2), 2: (3, 0, 4), 3: (5, 1, 3), 4: (4, 2, 5)}
THETA_EDGES = ((1, 2), (1, 2), (1, 2))
THETA_ROTATION = {1: (0, 1, 2), 2: (2, 1, 0)}


def tl_theta(qc: QConstants, a: int, b: int, c: int):
    return evaluate_network(qc, THETA_EDGES, (a, b, c), THETA_ROTATION)


def tl_tet(qc: QConstants, edges6: Sequence[int]):
    """Tetrahedron in K4 edge order (e12, e13, e14, e23, e24, e34)."""
    return evaluate_network(qc, TET_EDGES, tuple(edges6), TET_ROTATION)


def tl_loop(qc: QConstants, n: int):
    """Closure of the n-th projector (a theta with one edge colored 0)."""
    return tl_theta(qc, n, n, 0)

