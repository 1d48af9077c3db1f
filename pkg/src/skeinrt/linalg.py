"""Rank and kernel helpers over three arithmetics.

* numeric: complex numpy arrays, rank by relative singular-value threshold
* modular: lists of ints modulo a prime q (a lower bound for the true rank
  of a matrix with entries in Z[A] reduced through a ring map)
* exact: lists of cyclotomic elements, plain Gaussian elimination
"""
from __future__ import annotations

from typing import Any, Sequence

import numpy as np

NUMERIC_TOL = 1e-8


def numeric_rank(mat: np.ndarray, tol: float = NUMERIC_TOL) -> int:
    if mat.size == 0:
        return 0
    s = np.linalg.svd(mat, compute_uv=False)
    if s[0] == 0:
        return 0
    return int(np.sum(s > tol * s[0]))


class ModEchelon:
    """Incremental row echelon form over F_q; ``add`` reports independence."""

    def __init__(self, q: int):
        self.q = q
        self.rows: dict[int, list[int]] = {}  # pivot column -> row with pivot 1

    def reduce(self, v: Sequence[int]) -> list[int]:
        q = self.q
        w = [x % q for x in v]
        for col, row in self.rows.items():
            c = w[col]
            if c:
                for j, x in enumerate(row):
                    if x:
                        w[j] = (w[j] - c * x) % q
        return w

    def add(self, v: Sequence[int]) -> bool:
        w = self.reduce(v)
        for col, c in enumerate(w):
            if c:
                inv = pow(c, -1, self.q)
                w = [(x * inv) % self.q for x in w]
                # keep previous rows reduced at the new pivot
                for other in self.rows.values():
                    f = other[col]
                    if f:
                        for j, x in enumerate(w):
                            if x:
                                other[j] = (other[j] - f * x) % self.q
                self.rows[col] = w
                return True
        return False

    @property
    def rank(self) -> int:
        return len(self.rows)


def modular_rank(rows: Sequence[Sequence[int]], q: int) -> int:
    ech = ModEchelon(q)
    for r in rows:
        ech.add(r)
    return ech.rank


class ExactEchelon:
    """Incremental echelon form over an exact field (elements with .is_zero/.inv)."""

    def __init__(self) -> None:
        self.rows: list[tuple[int, list[Any]]] = []

    def reduce(self, v: Sequence[Any]) -> list[Any]:
        w = list(v)
        for col, row in self.rows:
            c = w[col]
            if not c.is_zero():
                for j in range(col, len(w)):
                    if not row[j].is_zero():
                        w[j] = w[j] - c * row[j]
        return w

    def add(self, v: Sequence[Any]) -> bool:
        w = self.reduce(v)
        for col, c in enumerate(w):
            if not c.is_zero():
                inv = c.inv()
                self.rows.append((col, [x * inv for x in w]))
                return True
        return False

    @property
    def rank(self) -> int:
        return len(self.rows)


def exact_rank(rows: Sequence[Sequence[Any]]) -> int:
    ech = ExactEchelon()
    for r in rows:
        ech.add(r)
    return ech.rank


def exact_nullspace(rows: Sequence[Sequence[Any]], ncols: int, zero: Any, one: Any) -> list[list[Any]]:
    """Basis of {x : rows . x = 0} by reduced row echelon form."""
    mat = [list(r) for r in rows]
    pivots: list[int] = []
    rank = 0
    for col in range(ncols):
        piv = next((i for i in range(rank, len(mat)) if not mat[i][col].is_zero()), None)
        if piv is None:
            continue
        mat[rank], mat[piv] = mat[piv], mat[rank]
        inv = mat[rank][col].inv()
        mat[rank] = [x * inv for x in mat[rank]]
        for i in range(len(mat)):
            if i != rank and not mat[i][col].is_zero():
                f = mat[i][col]
                mat[i] = [a - f * b for a, b in zip(mat[i], mat[rank])]
        pivots.append(col)
        rank += 1
        if rank == len(mat):
            break
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for fcol in free:
        x = [zero] * ncols
        x[fcol] = one
        for i, pc in enumerate(pivots):
            x[pc] = -mat[i][fcol]
        basis.append(x)
    return basis
