"""Generalized Cartan matrices: validation, Dynkin combinatorics, type and symmetrizer.

Convention: ``A[i][j] = <alpha_j, alpha_i^vee>``, so the pairings of a lattice vector
``v`` (coordinates on the simple roots) with the simple coroots are ``A @ v``.
"""
from __future__ import annotations

import enum
import json
from dataclasses import dataclass
from fractions import Fraction
from math import gcd
from typing import Iterable, Optional, Sequence

from .errors import EmptySubset, NotGCM, NotSymmetrizable, UnknownNode
from .lp import find_nonnegative_solution


@dataclass(frozen=True)
class GeneralizedCartanMatrix:
    labels: tuple
    entries: tuple

    @property
    def rank(self) -> int:
        return len(self.labels)

    def __getitem__(self, ij):
        i, j = ij
        return self.entries[i][j]

    def index(self, label) -> int:
        try:
            return self.labels.index(str(label))
        except ValueError:
            raise UnknownNode(f"unknown node {label!r}; nodes are {list(self.labels)}") from None

    def indices(self, subset: Iterable) -> frozenset:
        """Positions of a set of node labels (ints are accepted and stringified)."""
        return frozenset(self.index(s) for s in subset)

    def names(self, idx: Iterable[int]) -> tuple:
        return tuple(self.labels[i] for i in sorted(idx))

    def simple(self, label) -> tuple:
        k = self.index(label)
        return tuple(1 if i == k else 0 for i in range(self.rank))

    def pairings(self, v: Sequence) -> tuple:
        """``<v, alpha_i^vee>`` for every node i."""
        n = self.rank
        return tuple(sum(self.entries[i][k] * v[k] for k in range(n)) for i in range(n))

    def pairing(self, v: Sequence, i: int):
        return sum(self.entries[i][k] * v[k] for k in range(self.rank))

    def to_json(self) -> dict:
        return {"labels": list(self.labels), "matrix": [list(r) for r in self.entries]}


def validate_gcm(matrix: Sequence[Sequence[int]], labels: Optional[Sequence] = None) -> GeneralizedCartanMatrix:
    n = len(matrix)
    if n == 0:
        raise NotGCM("empty matrix")
    if any(len(row) != n for row in matrix):
        raise NotGCM("matrix is not square")
    if labels is None:
        labels = [str(i + 1) for i in range(n)]
    labels = tuple(str(x) for x in labels)
    if len(labels) != n or len(set(labels)) != n:
        raise NotGCM("labels must be distinct and match the matrix size")
    entries = []
    for i, row in enumerate(matrix):
        out = []
        for j, a in enumerate(row):
            if isinstance(a, bool) or int(a) != a:
                raise NotGCM(f"entry ({i},{j}) is not an integer")
            out.append(int(a))
        entries.append(tuple(out))
    for i in range(n):
        if entries[i][i] != 2:
            raise NotGCM(f"diagonal entry at {labels[i]} is {entries[i][i]}, expected 2")
        for j in range(n):
            if i == j:
                continue
            if entries[i][j] > 0:
                raise NotGCM(f"positive off-diagonal entry at ({labels[i]},{labels[j]})")
            if (entries[i][j] == 0) != (entries[j][i] == 0):
                raise NotGCM(f"zero pattern is not symmetric at ({labels[i]},{labels[j]})")
    return GeneralizedCartanMatrix(labels=labels, entries=tuple(entries))


def load_gcm(path) -> GeneralizedCartanMatrix:
    with open(path, encoding="utf-8") as fh:
        data = json.load(fh)
    return validate_gcm(data["matrix"], data.get("labels"))


def subdiagram(gcm: GeneralizedCartanMatrix, I: Iterable) -> GeneralizedCartanMatrix:
    idx = sorted(gcm.indices(I))
    if not idx:
        raise EmptySubset("subdiagram needs a nonempty node set")
    return GeneralizedCartanMatrix(
        labels=tuple(gcm.labels[i] for i in idx),
        entries=tuple(tuple(gcm.entries[i][j] for j in idx) for i in idx),
    )


def _components(gcm: GeneralizedCartanMatrix, idx: Iterable[int]) -> list:
    remaining = set(idx)
    parts = []
    while remaining:
        start = min(remaining)
        comp, stack = {start}, [start]
        remaining.discard(start)
        while stack:
            i = stack.pop()
            for j in list(remaining):
                if gcm.entries[i][j] != 0:
                    remaining.discard(j)
                    comp.add(j)
                    stack.append(j)
        parts.append(frozenset(comp))
    return sorted(parts, key=min)


def connected_components(gcm: GeneralizedCartanMatrix, I: Iterable = None) -> list:
    """Partition of ``I`` (default: all nodes) into Dynkin-connected pieces, as label sets."""
    idx = range(gcm.rank) if I is None else gcm.indices(I)
    return [frozenset(gcm.labels[i] for i in c) for c in _components(gcm, idx)]


def is_connected(gcm: GeneralizedCartanMatrix, idx: Iterable[int]) -> bool:
    return len(_components(gcm, idx)) == 1


class Kind(enum.Enum):
    FINITE = "finite"
    AFFINE = "affine"
    INDEFINITE = "indefinite"


@dataclass(frozen=True)
class Block:
    nodes: tuple
    kind: Kind
    witness: Optional[tuple] = None  # u > 0 with A u > 0 (finite) or A u = 0 (affine)


@dataclass(frozen=True)
class MatrixType:
    blocks: tuple

    @property
    def is_finite(self) -> bool:
        return all(b.kind is Kind.FINITE for b in self.blocks)

    @property
    def is_affine(self) -> bool:
        return len(self.blocks) == 1 and self.blocks[0].kind is Kind.AFFINE

    @property
    def indecomposable(self) -> bool:
        return len(self.blocks) == 1

    def to_json(self) -> dict:
        return {
            "blocks": [
                {
                    "nodes": list(b.nodes),
                    "type": b.kind.value,
                    "witness": None if b.witness is None else [str(x) for x in b.witness],
                }
                for b in self.blocks
            ]
        }


def _primitive(u) -> tuple:
    den = 1
    for x in u:
        den = den * x.denominator // gcd(den, x.denominator)
    ints = [int(x * den) for x in u]
    g = 0
    for x in ints:
        g = gcd(g, abs(x))
    return tuple(Fraction(x // g) for x in ints)


def _classify_block(A: list) -> tuple:
    n = len(A)
    ones = [1] * n
    Au = [sum(A[i][k] for k in range(n)) for i in range(n)]
    if all(v > 0 for v in Au):
        return Kind.FINITE, tuple(Fraction(1) for _ in range(n))
    if all(v == 0 for v in Au):
        return Kind.AFFINE, tuple(Fraction(1) for _ in range(n))
    # u = 1 + x with x >= 0.  Finite: A u - s = 1, s >= 0.  Affine: A u = 0.
    fin = find_nonnegative_solution(
        [list(A[i]) + [-1 if k == i else 0 for k in range(n)] for i in range(n)],
        [1 - Au[i] for i in range(n)],
    )
    if fin.feasible:
        u = [ones[k] + fin.x[k] for k in range(n)]
        return Kind.FINITE, _primitive(u)
    aff = find_nonnegative_solution([list(r) for r in A], [-Au[i] for i in range(n)])
    if aff.feasible:
        u = [ones[k] + aff.x[k] for k in range(n)]
        return Kind.AFFINE, _primitive(u)
    return Kind.INDEFINITE, None


def classify(gcm: GeneralizedCartanMatrix) -> MatrixType:
    """Finite / affine / indefinite per indecomposable block, decided by exact LP."""
    blocks = []
    for comp in _components(gcm, range(gcm.rank)):
        idx = sorted(comp)
        A = [[gcm.entries[i][j] for j in idx] for i in idx]
        kind, witness = _classify_block(A)
        blocks.append(Block(nodes=tuple(gcm.labels[i] for i in idx), kind=kind, witness=witness))
    return MatrixType(blocks=tuple(blocks))


def classify_nodes(gcm: GeneralizedCartanMatrix, I: Iterable) -> MatrixType:
    return classify(subdiagram(gcm, I))


@dataclass(frozen=True)
class Symmetrizer:
    d: Optional[tuple]
    exists: bool


def symmetrizer(gcm: GeneralizedCartanMatrix) -> Symmetrizer:
    """Positive rationals d with d_i A[i][j] = d_j A[j][i]; min d per component is 1."""
    n = gcm.rank
    A = gcm.entries
    d: list = [None] * n
    for comp in _components(gcm, range(n)):
        root = min(comp)
        d[root] = Fraction(1)
        stack = [root]
        while stack:
            i = stack.pop()
            for j in sorted(comp):
                if j != i and A[i][j] != 0 and d[j] is None:
                    d[j] = d[i] * Fraction(A[i][j], A[j][i])
                    stack.append(j)
        low = min(d[i] for i in comp)
        for i in comp:
            d[i] = d[i] / low
    for i in range(n):
        for j in range(n):
            if d[i] * A[i][j] != d[j] * A[j][i]:
                return Symmetrizer(d=None, exists=False)
    return Symmetrizer(d=tuple(d), exists=True)


def bilinear_form(sym: Symmetrizer, gcm: GeneralizedCartanMatrix, x: Sequence, y: Sequence) -> Fraction:
    """(x, y) = sum_{i,j} x_i y_j d_i A[i][j]."""
    if not sym.exists:
        raise NotSymmetrizable("the Cartan matrix admits no symmetrizer")
    n = gcm.rank
    total = Fraction(0)
    for i in range(n):
        if x[i] == 0:
            continue
        row = sum(gcm.entries[i][j] * y[j] for j in range(n))
        total += sym.d[i] * x[i] * row
    return total
