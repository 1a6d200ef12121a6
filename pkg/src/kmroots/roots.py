"""Root lattice vectors, root membership, truncated root databases and graded slices.

Lattice vectors are plain tuples of ints in the order of ``gcm.labels``.  Node sets in
the public API are label sets; helpers working on positions are private.
"""
from __future__ import annotations

import enum
import os
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable

from .cartan import GeneralizedCartanMatrix, bilinear_form, classify, is_connected, symmetrizer
from .errors import BoundTooLarge, NotARoot, NotFiniteType

DEFAULT_BUDGET_MB = 512
_BYTES_PER_ROOT = 240


class RootClass(enum.Enum):
    REAL = "real"
    IMAGINARY = "imaginary"
    NOT_ROOT = "not_root"

    @property
    def is_root(self) -> bool:
        return self is not RootClass.NOT_ROOT


def height(v) -> int:
    return sum(v)


def height_I(gcm: GeneralizedCartanMatrix, v, I: Iterable) -> int:
    return sum(v[i] for i in gcm.indices(I))


def supp(gcm: GeneralizedCartanMatrix, v) -> frozenset:
    return frozenset(gcm.labels[i] for i, c in enumerate(v) if c != 0)


def supp_I(gcm: GeneralizedCartanMatrix, v, I: Iterable) -> frozenset:
    return supp(gcm, v) & frozenset(str(x) for x in I)


def _ht(v, idx) -> int:
    return sum(v[i] for i in idx)


def add(u, v) -> tuple:
    return tuple(a + b for a, b in zip(u, v))


def sub(u, v) -> tuple:
    return tuple(a - b for a, b in zip(u, v))


def neg(v) -> tuple:
    return tuple(-a for a in v)


def scale(c, v) -> tuple:
    return tuple(c * a for a in v)


def leq(u, v) -> bool:
    """The partial order: u ⪯ v iff v - u has nonnegative coordinates."""
    return all(a <= b for a, b in zip(u, v))


def is_zero(v) -> bool:
    return not any(v)


def canonical_key(v):
    """Search order for candidate steps: lower height first, then lowest node label first."""
    return (sum(v), tuple(-c for c in v))


def unit(n: int, k: int) -> tuple:
    return tuple(1 if i == k else 0 for i in range(n))


@lru_cache(maxsize=None)
def _classify_positive(gcm: GeneralizedCartanMatrix, v: tuple) -> RootClass:
    n = gcm.rank
    A = gcm.entries
    v = list(v)
    while True:
        if sum(v) == 1:
            return RootClass.REAL
        step = None
        for j in range(n):
            p = sum(A[j][k] * v[k] for k in range(n))
            if p > 0:
                step = (j, p)
                break
        if step is None:
            idx = [i for i, c in enumerate(v) if c]
            return RootClass.IMAGINARY if is_connected(gcm, idx) else RootClass.NOT_ROOT
        j, p = step
        v[j] -= p
        if v[j] < 0:
            return RootClass.NOT_ROOT


def is_root(gcm: GeneralizedCartanMatrix, v) -> RootClass:
    """Real / imaginary / not-a-root, by reflection descent to the fundamental set."""
    v = tuple(int(c) for c in v)
    if len(v) != gcm.rank:
        raise ValueError("vector length does not match the rank")
    if all(c >= 0 for c in v):
        pos = v
    elif all(c <= 0 for c in v):
        pos = neg(v)
    else:
        return RootClass.NOT_ROOT
    if not any(pos):
        return RootClass.NOT_ROOT
    return _classify_positive(gcm, pos)


def _budget_roots(budget_mb) -> int:
    if budget_mb is None:
        budget_mb = float(os.environ.get("KMROOTS_MEMORY_BUDGET_MB", DEFAULT_BUDGET_MB))
    return int(budget_mb * 1_000_000 / _BYTES_PER_ROOT)


@dataclass(frozen=True)
class RootDatabase:
    gcm: GeneralizedCartanMatrix
    height_bound: int
    positive_roots: dict
    saturated: bool  # True when no root of height exactly ``height_bound`` ... see enumerate_roots

    def __contains__(self, v) -> bool:
        return self.root_class(v).is_root

    def root_class(self, v) -> RootClass:
        v = tuple(v)
        if all(c >= 0 for c in v):
            pos = v
        elif all(c <= 0 for c in v):
            pos = neg(v)
        else:
            return RootClass.NOT_ROOT
        if sum(pos) <= self.height_bound or self.saturated:
            return self.positive_roots.get(pos, RootClass.NOT_ROOT)
        return is_root(self.gcm, pos)

    def is_weight_of_adjoint(self, v) -> bool:
        """Membership in wt g = Δ ⊔ {0}."""
        return is_zero(v) or v in self

    def positives(self, max_height=None) -> list:
        out = [v for v in self.positive_roots if max_height is None or sum(v) <= max_height]
        return sorted(out, key=canonical_key)

    def restrict(self, h: int) -> "RootDatabase":
        h = min(h, self.height_bound)
        kept = {v: c for v, c in self.positive_roots.items() if sum(v) <= h}
        sat = self.saturated and max((sum(v) for v in self.positive_roots), default=0) <= h
        return RootDatabase(self.gcm, h, kept, sat)

    @property
    def max_height(self) -> int:
        return max((sum(v) for v in self.positive_roots), default=0)


def enumerate_roots(gcm: GeneralizedCartanMatrix, H: int, budget_mb=None) -> RootDatabase:
    """All positive roots of height <= H, built level by level from the simple roots.

    ``saturated`` is set when some level below H came out empty, in which case the
    database holds every positive root (finite type).
    """
    if H < 1:
        raise ValueError("height bound must be at least 1")
    limit = _budget_roots(budget_mb)
    n = gcm.rank
    simples = [unit(n, k) for k in range(n)]
    table = {s: RootClass.REAL for s in simples}
    level = list(simples)
    saturated = False
    for h in range(1, H):
        nxt = {}
        for v in level:
            for s in simples:
                w = add(v, s)
                if w in nxt:
                    continue
                c = is_root(gcm, w)
                if c.is_root:
                    nxt[w] = c
        if not nxt:
            saturated = True
            break
        table.update(nxt)
        if len(table) > limit:
            raise BoundTooLarge(
                f"{len(table)} roots exceed the memory budget at height {h + 1}; lower the height bound"
            )
        level = list(nxt)
    if not saturated:
        # one level past the bound decides whether the window already holds everything
        saturated = not any(is_root(gcm, add(v, s)).is_root for v in level for s in simples)
    return RootDatabase(gcm=gcm, height_bound=H, positive_roots=table, saturated=saturated)


def slice_In(db: RootDatabase, I: Iterable, n: int) -> frozenset:
    """Truncated Δ_{I,n} (negative roots included for n <= 0)."""
    idx = db.gcm.indices(I)
    if not idx:
        return frozenset()
    out = set()
    for v in db.positive_roots:
        h = _ht(v, idx)
        if h == n:
            out.add(v)
        if h == -n:
            out.add(neg(v))
    return frozenset(out)


def slice_alphaJ(db: RootDatabase, alpha, J: Iterable) -> frozenset:
    """Truncated Δ_{α,J}: positive roots β with supp(β - α) ⊆ J."""
    alpha = tuple(alpha)
    if not (all(c >= 0 for c in alpha) and alpha in db):
        raise NotARoot(f"{alpha} is not a positive root")
    jdx = db.gcm.indices(J)
    out = {alpha}
    for v in db.positive_roots:
        if all(v[i] == alpha[i] for i in range(len(v)) if i not in jdx):
            out.add(v)
    return frozenset(out)


@dataclass(frozen=True)
class MinimalElements:
    elements: frozenset
    truncation_sensitive: bool


def minimal_elements(db: RootDatabase, I: Iterable, n: int) -> MinimalElements:
    """S_{I,n}: elements of the truncated Δ_{I,n} with nothing strictly below them in it."""
    if n < 1:
        raise ValueError("minimal elements are defined for n >= 1")
    sl = slice_In(db, I, n)
    mins = frozenset(b for b in sl if not any(a != b and leq(a, b) for a in sl))
    sensitive = (not db.saturated) and any(sum(b) >= db.height_bound - 1 for b in sl)
    return MinimalElements(mins, sensitive)


def _require_finite_simple(db: RootDatabase):
    t = classify(db.gcm)
    if not (t.is_finite and t.indecomposable):
        raise NotFiniteType("short roots need a finite-type indecomposable Cartan matrix")
    if not db.saturated:
        raise NotFiniteType("the database does not hold the full finite root system")


def root_length(db: RootDatabase, v):
    return bilinear_form(symmetrizer(db.gcm), db.gcm, v, v)


def short_roots(db: RootDatabase, positive: bool = True) -> frozenset:
    _require_finite_simple(db)
    sym = symmetrizer(db.gcm)
    lengths = {v: bilinear_form(sym, db.gcm, v, v) for v in db.positive_roots}
    low = min(lengths.values())
    pos = frozenset(v for v, l in lengths.items() if l == low)
    return pos if positive else pos | frozenset(neg(v) for v in pos)


def long_roots(db: RootDatabase, positive: bool = True) -> frozenset:
    """Roots of maximal length; equal to all roots in the simply laced case."""
    _require_finite_simple(db)
    sym = symmetrizer(db.gcm)
    lengths = {v: bilinear_form(sym, db.gcm, v, v) for v in db.positive_roots}
    high = max(lengths.values())
    pos = frozenset(v for v, l in lengths.items() if l == high)
    return pos if positive else pos | frozenset(neg(v) for v in pos)


def highest_short_root(db: RootDatabase) -> tuple:
    shorts = short_roots(db)
    dominant = [v for v in shorts if all(p >= 0 for p in db.gcm.pairings(v))]
    if len(dominant) != 1:
        raise AssertionError(f"expected a unique dominant short root, found {dominant}")
    return dominant[0]
