"""Weights of parabolic Verma and simple highest-weight modules, chains between them,
and saturated sets in finite type.

A highest weight λ is carried only through its coroot pairings (the ``anchor``), and a
weight μ = λ - Σ c_i α_i through its depth vector c.  Nothing here ever needs more.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations, product
from typing import Iterable, Optional

from .cartan import GeneralizedCartanMatrix, classify
from .errors import (
    IntegralityViolation,
    NotAWeight,
    NotComparable,
    NotFiniteType,
    NotInSet,
    OutOfWindow,
    PreconditionViolated,
    SupportViolation,
)
from .lp import solve_linear_system
from .roots import RootDatabase, canonical_key, leq, slice_In, sub, unit
from .weyl import AnchoredWeight

SLICE = "slice"
MINKOWSKI = "minkowski"
MINIMAL = "minimal"


def _frac_anchor(anchor) -> tuple:
    return tuple(Fraction(a) for a in anchor)


def J_lambda(gcm: GeneralizedCartanMatrix, anchor) -> frozenset:
    """Nodes where the pairing is a nonnegative integer."""
    a = _frac_anchor(anchor)
    return frozenset(gcm.labels[i] for i in range(gcm.rank) if a[i] >= 0 and a[i].denominator == 1)


def J_lambda_prime(gcm: GeneralizedCartanMatrix, anchor) -> frozenset:
    """Nodes where the pairing is a nonnegative real."""
    a = _frac_anchor(anchor)
    return frozenset(gcm.labels[i] for i in range(gcm.rank) if a[i] >= 0)


def _pair(gcm, k, anchor, depth):
    row = gcm.entries[k]
    return anchor[k] - sum(depth[i] * row[i] for i in range(gcm.rank))


def _check_J(gcm, anchor, jdx):
    for j in jdx:
        a = anchor[j]
        if a < 0 or a.denominator != 1:
            raise IntegralityViolation(f"pairing at node {gcm.labels[j]} is {a}, not a nonnegative integer")


def _integrable(gcm, jdx: list, anchor, depth) -> bool:
    """Dominance test for the integrable g_J-module of highest weight λ."""
    depth = list(depth)
    while True:
        for k in jdx:
            p = _pair(gcm, k, anchor, depth)
            if p < 0:
                depth[k] += int(p)
                if depth[k] < 0:
                    return False
                break
        else:
            return True


def integrable_weight_member(gcm: GeneralizedCartanMatrix, J: Iterable, anchor, depth) -> bool:
    anchor = _frac_anchor(anchor)
    jdx = sorted(gcm.indices(J))
    _check_J(gcm, anchor, jdx)
    depth = tuple(int(c) for c in depth)
    if any(c < 0 for c in depth):
        return False
    if any(depth[i] for i in range(gcm.rank) if i not in jdx):
        raise SupportViolation("the depth vector must be supported on J")
    return _integrable(gcm, jdx, anchor, depth)


def parabolic_verma_member(gcm: GeneralizedCartanMatrix, J: Iterable, anchor, depth) -> bool:
    """μ ∈ wt M(λ,J), by splitting λ - μ into its J^c part ξ and its J part."""
    anchor = _frac_anchor(anchor)
    jdx = sorted(gcm.indices(J))
    _check_J(gcm, anchor, jdx)
    return _slice_member(gcm, jdx, anchor, tuple(depth))


def _slice_member(gcm, jdx, anchor, depth) -> bool:
    if any(c < 0 for c in depth):
        return False
    n = gcm.rank
    js = set(jdx)
    xi = tuple(0 if i in js else depth[i] for i in range(n))
    eta = tuple(depth[i] if i in js else 0 for i in range(n))
    shifted = tuple(_pair(gcm, k, anchor, xi) for k in range(n))
    return _integrable(gcm, jdx, shifted, eta)


def depth_vectors(n: int, D: int):
    """All nonnegative integer vectors of length n with total at most D."""
    if n == 0:
        yield ()
        return
    for first in range(D + 1):
        for rest in depth_vectors(n - 1, D - first):
            yield (first,) + rest


@dataclass(frozen=True)
class WeightSet:
    anchor: tuple
    J: frozenset
    depth_bound: int
    members: frozenset
    formula: str

    def __contains__(self, depth) -> bool:
        return tuple(depth) in self.members

    def __len__(self) -> int:
        return len(self.members)

    def restrict(self, D: int) -> frozenset:
        return frozenset(c for c in self.members if sum(c) <= D)

    def to_json(self) -> dict:
        return {
            "anchor": [str(a) for a in self.anchor],
            "J": sorted(self.J),
            "max_depth": self.depth_bound,
            "formula": self.formula,
            "members": [list(c) for c in sorted(self.members, key=lambda c: (sum(c), c))],
        }


def _prepare(gcm, anchor, J):
    anchor = _frac_anchor(anchor)
    if len(anchor) != gcm.rank:
        raise PreconditionViolated("anchor length does not match the rank")
    jdx = sorted(gcm.indices(J))
    _check_J(gcm, anchor, jdx)
    return anchor, jdx


def wt_slice(gcm: GeneralizedCartanMatrix, anchor, J: Iterable, D: int) -> WeightSet:
    anchor, jdx = _prepare(gcm, anchor, J)
    members = frozenset(c for c in depth_vectors(gcm.rank, D) if _slice_member(gcm, jdx, anchor, c))
    return WeightSet(anchor, frozenset(gcm.labels[j] for j in jdx), D, members, SLICE)


def _integrable_part(gcm, jdx, anchor, D) -> list:
    n = gcm.rank
    js = set(jdx)
    out = []
    for c in depth_vectors(len(jdx), D):
        full = [0] * n
        for j, x in zip(jdx, c):
            full[j] = x
        full = tuple(full)
        if _integrable(gcm, jdx, anchor, full):
            out.append(full)
    assert all(not any(c[i] for i in range(n) if i not in js) for c in out)
    return out


def _knapsack(base, generators, D: int) -> frozenset:
    """Everything base + Z>=0 generators with total depth <= D, filled in depth order."""
    levels = [set() for _ in range(D + 1)]
    for b in base:
        levels[sum(b)].add(b)
    gens = [(g, sum(g)) for g in generators if 0 < sum(g) <= D]
    for t in range(D + 1):
        for x in list(levels[t]):
            for g, h in gens:
                if t + h <= D:
                    levels[t + h].add(tuple(a + b for a, b in zip(x, g)))
    return frozenset().union(*levels)


def _require_height(db: RootDatabase, D: int):
    if db.height_bound < D and not db.saturated:
        raise OutOfWindow(f"root database bound {db.height_bound} is below the depth bound {D}")


def wt_minkowski(gcm: GeneralizedCartanMatrix, db: RootDatabase, anchor, J: Iterable, D: int) -> WeightSet:
    anchor, jdx = _prepare(gcm, anchor, J)
    _require_height(db, D)
    js = set(jdx)
    gens = [v for v in db.positives(D) if any(v[i] for i in range(gcm.rank) if i not in js)]
    members = _knapsack(_integrable_part(gcm, jdx, anchor, D), gens, D)
    return WeightSet(anchor, frozenset(gcm.labels[j] for j in jdx), D, members, MINKOWSKI)


def _complement(gcm, jdx) -> list:
    return [gcm.labels[i] for i in range(gcm.rank) if i not in set(jdx)]


def minimal_generators(db: RootDatabase, J: Iterable, D: int) -> list:
    """The truncated Δ_{J^c,1} (all positive), in canonical order."""
    comp = _complement(db.gcm, db.gcm.indices(J))
    return sorted((v for v in slice_In(db, comp, 1) if sum(v) <= D), key=canonical_key)


def wt_minimal(gcm: GeneralizedCartanMatrix, db: RootDatabase, anchor, J: Iterable, D: int, generators=None) -> WeightSet:
    anchor, jdx = _prepare(gcm, anchor, J)
    _require_height(db, D)
    gens = minimal_generators(db, [gcm.labels[j] for j in jdx], D) if generators is None else generators
    members = _knapsack(_integrable_part(gcm, jdx, anchor, D), gens, D)
    return WeightSet(anchor, frozenset(gcm.labels[j] for j in jdx), D, members, MINIMAL)


def wt_simple(gcm: GeneralizedCartanMatrix, db: RootDatabase, anchor, D: int) -> WeightSet:
    return wt_slice(gcm, anchor, J_lambda(gcm, anchor), D)


def _subsets(labels) -> list:
    labels = sorted(labels)
    return [frozenset(c) for r in range(len(labels) + 1) for c in combinations(labels, r)]


@dataclass(frozen=True)
class TheoremCReport:
    V_J: frozenset
    generator_diff: frozenset
    parabolic_rows: tuple  # (J, containment holds, equality holds, diff) per J

    @property
    def ok(self) -> bool:
        return not self.generator_diff and all(c == e for _, c, e, _ in self.parabolic_rows)

    def to_json(self) -> dict:
        return {
            "V": sorted(self.V_J),
            "minimal_generator_diff": [list(c) for c in sorted(self.generator_diff)],
            "parabolic_rows": [
                {"J": sorted(J), "containment": c, "equality": e, "diff": [list(x) for x in sorted(d)]}
                for J, c, e, d in self.parabolic_rows
            ],
            "ok": self.ok,
        }


def theoremC_check(gcm: GeneralizedCartanMatrix, db: RootDatabase, anchor, Jp: Iterable, D: int) -> TheoremCReport:
    """Check both Minkowski-difference statements for V = M(λ, J′) up to depth D."""
    anchor, jpdx = _prepare(gcm, anchor, Jp)
    _require_height(db, D)
    n = gcm.rank
    V = wt_slice(gcm, anchor, Jp, D).members

    def part(jset):
        idx = gcm.indices(jset)
        return [c for c in V if not any(c[i] for i in range(n) if i not in idx)]

    Jl = J_lambda(gcm, anchor)
    rhs = _knapsack(part(Jl), minimal_generators(db, Jl, D), D)
    diff211 = frozenset(V ^ rhs)
    rows = []
    for J in _subsets(gcm.labels):
        base = part(J)
        idx = gcm.indices(J)
        simple_comp = [unit(n, k) for k in range(n) if k not in idx]
        contained = _knapsack(base, simple_comp, D) <= V
        generated = _knapsack(base, minimal_generators(db, J, D), D)
        rows.append((J, contained, generated == V, frozenset(V ^ generated)))
    return TheoremCReport(frozenset(gcm.labels[j] for j in jpdx), diff211, tuple(rows))


@dataclass(frozen=True)
class WeightChain:
    weights: tuple  # depth vectors, lowest weight first
    increments: tuple  # each weights[k] - weights[k+1] as a root vector
    anchor: tuple

    def __len__(self) -> int:
        return len(self.increments)

    def to_json(self) -> dict:
        return {
            "anchor": [str(a) for a in self.anchor],
            "weights": [list(w) for w in self.weights],
            "increments": [list(g) for g in self.increments],
        }


def _depth_ladder(start, n, steps, member, accept):
    from .psp import _ladder

    return _ladder(start, n, steps, member, accept)


def _chain_from_steps(anchor, start, steps) -> WeightChain:
    weights = [tuple(start)]
    for g in steps:
        weights.append(tuple(a - b for a, b in zip(weights[-1], g)))
    return WeightChain(tuple(weights), tuple(steps), anchor)


def weight_chain(gcm: GeneralizedCartanMatrix, db: Optional[RootDatabase], anchor, J: Iterable, mu0, mu) -> WeightChain:
    """Simple-root steps from μ0 up to μ inside wt M(λ,J); arguments are depth vectors."""
    anchor, jdx = _prepare(gcm, anchor, J)
    mu0, mu = tuple(mu0), tuple(mu)
    if not (leq(mu, mu0) and mu != mu0):
        raise NotComparable(f"depth {mu0} is not strictly deeper than {mu}")
    for c in (mu0, mu):
        if not _slice_member(gcm, jdx, anchor, c):
            raise NotAWeight(f"depth {c} is not a weight")
    diff = sub(mu0, mu)
    steps = [tuple(-x for x in unit(gcm.rank, k)) for k in range(gcm.rank) if diff[k]]

    def member(c):
        return leq(mu, c) and _slice_member(gcm, jdx, anchor, c)

    found = _depth_ladder(mu0, sum(diff), steps, member, lambda c: c == mu)
    if found is None:
        raise AssertionError(f"no weight chain from {mu0} to {mu}")
    return _chain_from_steps(anchor, mu0, [tuple(-x for x in g) for g in found])


@dataclass(frozen=True)
class StepChains:
    up: Optional[WeightChain]
    down: Optional[WeightChain]

    def to_json(self) -> dict:
        return {
            "a": None if self.up is None else self.up.to_json(),
            "b": None if self.down is None else self.down.to_json(),
        }


def delta_I1_weight_chain(gcm: GeneralizedCartanMatrix, db: RootDatabase, anchor, J: Iterable, I: Iterable, mu) -> StepChains:
    """(a) climb from μ in height_I(λ-μ) steps of Δ_{I,1}; (b) descend the same count from λ."""
    anchor, jdx = _prepare(gcm, anchor, J)
    idx = gcm.indices(I)
    if not idx:
        raise PreconditionViolated("I must be nonempty")
    mu = tuple(mu)
    if not _slice_member(gcm, jdx, anchor, mu):
        raise NotAWeight(f"depth {mu} is not a weight")
    n = sum(mu[i] for i in idx)
    if n <= 0:
        raise PreconditionViolated("height_I(lambda - mu) must be positive")
    if sum(mu) > db.height_bound and not db.saturated:
        raise OutOfWindow(f"depth {sum(mu)} exceeds the root database bound")
    gens = [g for g in sorted(slice_In(db, I, 1), key=canonical_key) if leq(g, mu)]
    member = lambda c: _slice_member(gcm, jdx, anchor, c)  # noqa: E731
    up = _depth_ladder(mu, n, [tuple(-x for x in g) for g in gens], member, lambda c: True)
    zero = (0,) * gcm.rank
    down = _depth_ladder(zero, n, gens, lambda c: leq(c, mu) and member(c), lambda c: True)
    chain_a = None if up is None else _chain_from_steps(anchor, mu, [tuple(-x for x in g) for g in up])
    chain_b = None
    if down is not None:
        path = [zero]
        for g in down:
            path.append(tuple(a + b for a, b in zip(path[-1], g)))
        path.reverse()
        chain_b = WeightChain(tuple(path), tuple(reversed(down)), anchor)
    return StepChains(chain_a, chain_b)


@dataclass(frozen=True)
class SaturatedSet:
    """Integral weights stored by their pairing vectors; depths are taken against ``anchor``."""

    gcm: GeneralizedCartanMatrix
    members: frozenset
    anchor: tuple

    def __contains__(self, pairings) -> bool:
        return tuple(pairings) in self.members

    def __len__(self) -> int:
        return len(self.members)

    def depth_of(self, pairings) -> tuple:
        d = tuple(Fraction(a) - Fraction(b) for a, b in zip(self.anchor, pairings))
        c = solve_linear_system(self.gcm.entries, d)
        if c is None or any(x.denominator != 1 for x in c):
            raise NotInSet(f"{pairings} is not in the root-lattice coset of the anchor")
        return tuple(int(x) for x in c)

    def pairings_of(self, depth) -> tuple:
        return tuple(int(_pair(self.gcm, k, self.anchor, depth)) for k in range(self.gcm.rank))

    def depths(self) -> frozenset:
        return frozenset(self.depth_of(p) for p in self.members)

    def to_json(self) -> dict:
        return {
            "anchor": list(self.anchor),
            "members": [
                {"pairings": list(p), "depth": list(self.depth_of(p))}
                for p in sorted(self.members, key=lambda p: (sum(self.depth_of(p)), self.depth_of(p)))
            ],
        }


def _seed_pairings(gcm, s) -> tuple:
    if isinstance(s, AnchoredWeight):
        p = s.pairings(gcm)
    else:
        p = tuple(Fraction(x) for x in s)
    if any(Fraction(x).denominator != 1 for x in p):
        raise IntegralityViolation(f"seed {s} is not an integral weight")
    return tuple(int(x) for x in p)


def saturate(gcm: GeneralizedCartanMatrix, seeds: Iterable) -> SaturatedSet:
    """Least set containing the seeds and closed under full simple-root strings.

    A weight with pairing p at node j drags along μ - tα_j for t between 0 and p, in
    whichever direction the sign of p points.
    """
    if not classify(gcm).is_finite:
        raise NotFiniteType("saturated sets are only closed up in finite type")
    seeds = [_seed_pairings(gcm, s) for s in seeds]
    if not seeds:
        raise PreconditionViolated("at least one seed is needed")
    n = gcm.rank
    cols = [tuple(gcm.entries[i][j] for i in range(n)) for j in range(n)]
    members = set(seeds)
    stack = list(seeds)
    while stack:
        mu = stack.pop()
        for j in range(n):
            p = mu[j]
            sign = 1 if p > 0 else -1
            for t in range(1, abs(p) + 1):
                nu = tuple(m - sign * t * c for m, c in zip(mu, cols[j]))
                if nu not in members:
                    members.add(nu)
                    stack.append(nu)
    return SaturatedSet(gcm, frozenset(members), seeds[0])


def saturated_chain(U: SaturatedSet, mu0, mu) -> WeightChain:
    """Simple-root chain from μ0 up to μ inside U, grown greedily from both ends.

    At every stage some simple α below μ - μ0 has <μ, α^vee> > 0 or <μ0, α^vee> < 0, so
    one end can move.  Arguments are depth vectors against ``U.anchor``.
    """
    gcm = U.gcm
    lo, hi = tuple(mu0), tuple(mu)
    if not (leq(hi, lo) and hi != lo):
        raise NotComparable(f"depth {lo} is not strictly deeper than {hi}")
    for c in (lo, hi):
        if U.pairings_of(c) not in U:
            raise NotInSet(f"depth {c} is not in the saturated set")
    bottom, top = [lo], [hi]
    while bottom[-1] != top[-1]:
        a, b = bottom[-1], top[-1]
        diff = sub(a, b)
        moved = False
        for k in range(gcm.rank):
            if not diff[k]:
                continue
            if _pair(gcm, k, U.anchor, b) > 0:
                top.append(tuple(x + (1 if i == k else 0) for i, x in enumerate(b)))
                moved = True
                break
            if _pair(gcm, k, U.anchor, a) < 0:
                bottom.append(tuple(x - (1 if i == k else 0) for i, x in enumerate(a)))
                moved = True
                break
        if not moved:
            raise AssertionError("no end of the chain can move")
    path = bottom + list(reversed(top[:-1]))
    steps = tuple(sub(x, y) for x, y in zip(path, path[1:]))
    return WeightChain(tuple(path), steps, tuple(Fraction(a) for a in U.anchor))


def formulas_agree(gcm: GeneralizedCartanMatrix, db: RootDatabase, anchor, J: Iterable, D: int) -> dict:
    a = wt_slice(gcm, anchor, J, D)
    b = wt_minkowski(gcm, db, anchor, J, D)
    c = wt_minimal(gcm, db, anchor, J, D)
    return {
        SLICE: a,
        MINKOWSKI: b,
        MINIMAL: c,
        "agree": a.members == b.members == c.members,
    }


def subsets_of(labels) -> list:
    return _subsets(labels)


def all_depth_pairs(members) -> Iterable:
    """Comparable ordered pairs (deeper, shallower) among a set of depth vectors."""
    ms = sorted(members)
    for x, y in product(ms, ms):
        if x != y and leq(y, x):
            yield x, y
