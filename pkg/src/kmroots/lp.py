"""Exact rational feasibility LP (phase-1 simplex, Bland's rule) with Farkas certificates.

Everything here works over ``fractions.Fraction``; there is no tolerance anywhere.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence

Vector = tuple  # tuple of Fraction


def frac_vec(v) -> Vector:
    return tuple(Fraction(x) for x in v)


def dot(u, v) -> Fraction:
    return sum((Fraction(a) * b for a, b in zip(u, v)), Fraction(0))


@dataclass(frozen=True)
class Feasibility:
    """Outcome of ``find_nonnegative_solution``.

    Exactly one of ``x`` and ``farkas`` is set.  ``farkas`` is a row vector f with
    f·A >= 0 componentwise and f·b < 0, which proves that A x = b has no x >= 0.
    """

    x: Optional[Vector]
    farkas: Optional[Vector]

    @property
    def feasible(self) -> bool:
        return self.x is not None


def find_nonnegative_solution(A: Sequence[Sequence], b: Sequence) -> Feasibility:
    """Decide whether ``A x = b`` has a solution ``x >= 0``."""
    m = len(A)
    n = len(A[0]) if m else 0
    A = [[Fraction(a) for a in row] for row in A]
    b = [Fraction(v) for v in b]
    if m == 0:
        return Feasibility(x=tuple(Fraction(0) for _ in range(n)), farkas=None)

    signs = [(-1 if v < 0 else 1) for v in b]
    width = n + m
    # tableau rows: [A' | I | b']
    T = []
    for i in range(m):
        row = [signs[i] * a for a in A[i]]
        row += [Fraction(1) if k == i else Fraction(0) for k in range(m)]
        row.append(signs[i] * b[i])
        T.append(row)
    basis = [n + i for i in range(m)]
    cost = [Fraction(0)] * n + [Fraction(1)] * m

    while True:
        cb = [cost[k] for k in basis]
        entering = None
        for j in range(width):
            if j in basis:
                continue
            reduced = cost[j] - sum((cb[i] * T[i][j] for i in range(m)), Fraction(0))
            if reduced < 0:
                entering = j
                break
        if entering is None:
            break
        leave = None
        best = None
        for i in range(m):
            if T[i][entering] > 0:
                ratio = T[i][-1] / T[i][entering]
                if best is None or ratio < best or (ratio == best and basis[i] < basis[leave]):
                    best, leave = ratio, i
        # phase-1 objective is bounded below by zero, so a leaving row always exists
        piv = T[leave][entering]
        T[leave] = [v / piv for v in T[leave]]
        for i in range(m):
            if i != leave and T[i][entering] != 0:
                f = T[i][entering]
                T[i] = [a - f * c for a, c in zip(T[i], T[leave])]
        basis[leave] = entering

    objective = sum((cost[basis[i]] * T[i][-1] for i in range(m)), Fraction(0))
    if objective == 0:
        x = [Fraction(0)] * n
        for i, k in enumerate(basis):
            if k < n:
                x[k] = T[i][-1]
        return Feasibility(x=tuple(x), farkas=None)

    cb = [cost[k] for k in basis]
    y = [sum((cb[k] * T[k][n + i] for k in range(m)), Fraction(0)) for i in range(m)]
    farkas = tuple(-signs[i] * y[i] for i in range(m))
    return Feasibility(x=None, farkas=farkas)


def check_farkas(A, b, f) -> bool:
    """Re-verify a Farkas certificate exactly."""
    n = len(A[0]) if A else 0
    for j in range(n):
        if sum((Fraction(f[i]) * A[i][j] for i in range(len(A))), Fraction(0)) < 0:
            return False
    return dot(f, b) < 0


def solve_linear_system(M: Sequence[Sequence], rhs: Sequence) -> Optional[Vector]:
    """Solve a square nonsingular system exactly; ``None`` if singular."""
    n = len(M)
    aug = [[Fraction(v) for v in row] + [Fraction(r)] for row, r in zip(M, rhs)]
    for col in range(n):
        pivot = next((r for r in range(col, n) if aug[r][col] != 0), None)
        if pivot is None:
            return None
        aug[col], aug[pivot] = aug[pivot], aug[col]
        p = aug[col][col]
        aug[col] = [v / p for v in aug[col]]
        for r in range(n):
            if r != col and aug[r][col] != 0:
                f = aug[r][col]
                aug[r] = [a - f * c for a, c in zip(aug[r], aug[col])]
    return tuple(aug[r][n] for r in range(n))
