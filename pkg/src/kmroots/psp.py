"""Root-level chains: partial sums in Δ_{I,1}, going up, anchored and support chains,
moves between comparable roots, short-root chains, and the counterexample probes.

Every search walks candidate steps in ``canonical_key`` order and returns the first
chain found, so outputs are reproducible.
"""
from __future__ import annotations

from dataclasses import dataclass, field, replace
from typing import Callable, Iterable, Optional

from .cartan import GeneralizedCartanMatrix, classify
from .errors import (
    HypothesisViolated,
    NotARoot,
    NotComparable,
    NotFiniteType,
    NotInAdjointWeights,
    NotShortRoot,
    OutOfWindow,
    PreconditionViolated,
)
from .roots import (
    RootClass,
    RootDatabase,
    _ht,
    add,
    canonical_key,
    is_root,
    is_zero,
    leq,
    long_roots,
    neg,
    short_roots,
    slice_In,
    sub,
    unit,
)

UP = "up"
DOWN = "down"
EXACT = "exact"


@dataclass(frozen=True)
class RootChain:
    """``anchor`` followed by ``partials``; consecutive differences are ``steps``."""

    steps: tuple
    partials: tuple
    direction: str
    anchor: tuple
    classes: tuple = ()

    @property
    def path(self) -> tuple:
        return (self.anchor,) + self.partials

    def __len__(self) -> int:
        return len(self.steps)

    def to_json(self) -> dict:
        return {
            "anchor": list(self.anchor),
            "steps": [list(s) for s in self.steps],
            "partials": [list(p) for p in self.partials],
            "classes": list(self.classes),
            "direction": self.direction,
        }


@dataclass(frozen=True)
class ProbeReport:
    query: str
    outcome: str  # FOUND or EMPTY
    candidates: tuple  # (candidate, verdict) pairs, every one of them tested
    chain: Optional[RootChain] = None
    expected: Optional[str] = None
    extra: dict = field(default_factory=dict)

    @property
    def holds(self) -> bool:
        return self.expected is None or self.outcome == self.expected

    def to_json(self) -> dict:
        out = {
            "query": self.query,
            "outcome": self.outcome,
            "candidates": [{"candidate": list(c), "verdict": v} for c, v in self.candidates],
        }
        if self.chain is not None:
            out["chain"] = self.chain.to_json()
        if self.expected is not None:
            out["expected"] = self.expected
            out["holds"] = self.holds
        out.update(self.extra)
        return out


def _class_name(db: RootDatabase, v) -> str:
    if is_zero(v):
        return "zero"
    return db.root_class(v).value


def _make_chain(db, anchor, steps, direction) -> RootChain:
    partials = []
    cur = anchor
    for g in steps:
        cur = add(cur, g)
        partials.append(cur)
    return RootChain(
        steps=tuple(steps),
        partials=tuple(partials),
        direction=direction,
        anchor=tuple(anchor),
        classes=tuple(_class_name(db, p) for p in partials),
    )


def _ladder(start, n: int, steps, member: Callable, accept: Callable) -> Optional[tuple]:
    """First sequence of ``n`` steps from ``start`` keeping every partial in ``member``
    and ending in ``accept``.  Depth-first with memoization on (point, remaining)."""
    memo = {}

    def go(v, k):
        if k == 0:
            return () if accept(v) else None
        key = (v, k)
        if key in memo:
            return memo[key]
        found = None
        for g in steps:
            w = add(v, g)
            if member(w):
                tail = go(w, k - 1)
                if tail is not None:
                    found = (g,) + tail
                    break
        memo[key] = found
        return found

    return go(tuple(start), n)


def _positive_root(db: RootDatabase, beta) -> tuple:
    beta = tuple(beta)
    if not (all(c >= 0 for c in beta) and beta in db):
        raise NotARoot(f"{beta} is not a positive root")
    return beta


def _sorted_slice(db: RootDatabase, I, n=1) -> list:
    return sorted(slice_In(db, I, n), key=canonical_key)


def parabolic_psp_down(db: RootDatabase, I: Iterable, beta) -> RootChain:
    """β as an ordered sum of height_I(β) elements of Δ_{I,1} with every partial sum a root."""
    beta = _positive_root(db, beta)
    idx = db.gcm.indices(I)
    if not idx:
        raise PreconditionViolated("I must be nonempty")
    n = _ht(beta, idx)
    if n < 1:
        raise PreconditionViolated("height_I(beta) must be at least 1")
    if sum(beta) > db.height_bound:
        raise OutOfWindow(f"height {sum(beta)} exceeds the database bound {db.height_bound}")
    steps = [g for g in _sorted_slice(db, I) if leq(g, beta)]
    zero = (0,) * len(beta)
    found = _ladder(zero, n, steps, lambda w: leq(w, beta) and w in db, lambda v: v == beta)
    if found is None:
        raise AssertionError(f"no parabolic partial-sum chain for {beta}")
    return _make_chain(db, zero, found, DOWN)


def psp_chain(db: RootDatabase, beta) -> RootChain:
    return parabolic_psp_down(db, db.gcm.labels, beta)


@dataclass(frozen=True)
class GoingUp:
    gamma: Optional[tuple]
    status: str  # found | supremum-attained | unknown
    truncated: bool

    def to_json(self) -> dict:
        return {"gamma": None if self.gamma is None else list(self.gamma), "status": self.status, "truncated": self.truncated}


def going_up(db: RootDatabase, I: Iterable, beta) -> GoingUp:
    """Some γ in Δ_{I,1} with β + γ a root, searched over the truncated slice."""
    beta = _positive_root(db, beta)
    idx = db.gcm.indices(I)
    if not idx:
        raise PreconditionViolated("I must be nonempty")
    for g in _sorted_slice(db, I):
        if all(c >= 0 for c in g) and is_root(db.gcm, add(beta, g)).is_root:
            return GoingUp(g, "found", False)
    if db.saturated:
        return GoingUp(None, "supremum-attained", False)
    return GoingUp(None, "unknown", True)


def support_chain(db: RootDatabase, i, beta) -> RootChain:
    """α_i = β_1 ≺ ... ≺ β_n = β through roots with simple increments."""
    beta = _positive_root(db, beta)
    start = db.gcm.simple(i)
    if not (leq(start, beta) and start != beta):
        raise NotComparable(f"{beta} does not strictly dominate the simple root at {i}")
    n = sum(beta) - 1
    simples = [unit(len(beta), k) for k in range(len(beta))]
    found = _ladder(start, n, simples, lambda w: leq(w, beta) and w in db, lambda v: v == beta)
    if found is None:
        raise AssertionError(f"no support chain from node {i} to {beta}")
    return _make_chain(db, start, found, UP)


def anchored_chain(db: RootDatabase, alpha, J: Iterable, beta) -> RootChain:
    """α = β_0 ≺ ... ≺ β_n = β with simple increments and every β_i - α in Δ_J⁺ (i >= 1)."""
    gcm = db.gcm
    alpha = _positive_root(db, alpha)
    beta = tuple(beta)
    if db.root_class(alpha) is not RootClass.REAL:
        raise PreconditionViolated("alpha must be a real root")
    supp_a = {k for k, c in enumerate(alpha) if c}
    if len(supp_a) == gcm.rank:
        raise PreconditionViolated("supp(alpha) must be a proper subset of the nodes")
    jdx = gcm.indices(J)
    if not jdx:
        raise PreconditionViolated("J must be nonempty")
    if jdx & supp_a:
        raise PreconditionViolated("J must avoid supp(alpha)")
    diff = sub(beta, alpha)
    if not (beta in db and all(c >= 0 for c in diff) and any(diff)):
        raise PreconditionViolated("beta - alpha must be a nonzero element of the positive cone")
    if any(diff[k] for k in range(gcm.rank) if k not in jdx) or not is_root(gcm, diff).is_root:
        raise PreconditionViolated("beta - alpha must be a positive root supported on J")
    simples = [unit(gcm.rank, k) for k in sorted(jdx)]

    def member(w):
        return leq(w, beta) and w in db and is_root(gcm, sub(w, alpha)).is_root

    found = _ladder(alpha, sum(diff), simples, member, lambda v: v == beta)
    if found is None:
        raise AssertionError("no anchored chain")
    return _make_chain(db, alpha, found, UP)


def _adjoint(db: RootDatabase, v) -> bool:
    return db.is_weight_of_adjoint(v)


def root_to_root_chain(db: RootDatabase, mu0, mu) -> RootChain:
    """Simple-root steps from μ0 to μ inside Δ ⊔ {0}."""
    mu0, mu = tuple(mu0), tuple(mu)
    if not (leq(mu0, mu) and mu0 != mu):
        raise NotComparable(f"{mu0} is not strictly below {mu}")
    for v in (mu0, mu):
        if not _adjoint(db, v):
            raise NotInAdjointWeights(f"{v} is neither a root nor zero")
    diff = sub(mu, mu0)
    simples = [unit(len(mu), k) for k in range(len(mu)) if diff[k]]
    found = _ladder(mu0, sum(diff), simples, lambda w: leq(w, mu) and _adjoint(db, w), lambda v: v == mu)
    if found is None:
        raise AssertionError(f"no chain from {mu0} to {mu}")
    return _make_chain(db, mu0, found, UP)


def _require_finite(gcm: GeneralizedCartanMatrix):
    if not classify(gcm).is_finite:
        raise NotFiniteType("this search needs a finite-type Cartan matrix")


def _hypothesis(mode: str, hI, beta0, beta1) -> bool:
    zero = (0,) * len(beta0)
    if mode == UP:
        return leq(zero, beta0) or (leq(beta0, zero) and hI(beta0) < 0)
    if mode == DOWN:
        return leq(beta1, zero) or (leq(zero, beta1) and hI(beta1) > 0)
    return False


def _step_search(db, I, beta0, beta1, mode: str):
    """Chain of height_I(β1 - β0) steps from Δ_{I,1} inside Δ ⊔ {0}.

    ``up`` fixes the start β0 and ends below β1, ``down`` fixes the end β1 and starts
    above β0, ``exact`` fixes both.  Returns (chain or None, first-step verdicts).
    """
    gcm = db.gcm
    idx = gcm.indices(I)
    beta0, beta1 = tuple(beta0), tuple(beta1)
    diff = sub(beta1, beta0)
    n = _ht(diff, idx)
    steps = [g for g in _sorted_slice(db, I) if leq(g, diff)]
    if mode == DOWN:
        member = lambda w: leq(beta0, w) and _adjoint(db, w)  # noqa: E731
        found = _ladder(beta1, n, [neg(g) for g in steps], member, lambda v: True)
        verdicts = _verdicts(db, beta1, [neg(g) for g in steps], member, n, lambda v: True)
        if found is None:
            return None, tuple((neg(g), v) for g, v in verdicts)
        path = [beta1]
        for g in found:
            path.append(add(path[-1], g))
        path.reverse()
        ups = tuple(sub(b, a) for a, b in zip(path, path[1:]))
        return _make_chain(db, path[0], ups, DOWN), tuple((neg(g), v) for g, v in verdicts)
    member = lambda w: leq(w, beta1) and _adjoint(db, w)  # noqa: E731
    accept = (lambda v: v == beta1) if mode == EXACT else (lambda v: True)
    found = _ladder(beta0, n, steps, member, accept)
    verdicts = _verdicts(db, beta0, steps, member, n, accept)
    if found is None:
        return None, verdicts
    return _make_chain(db, beta0, found, UP), verdicts


def _verdicts(db, start, steps, member, n, accept) -> tuple:
    out = []
    for g in steps:
        w = add(start, g)
        if not member(w):
            out.append((g, "leaves the interval or Δ ⊔ {0}" if _adjoint(db, w) else "not in Δ ⊔ {0}"))
        elif _ladder(w, n - 1, steps, member, accept) is None:
            out.append((g, "no completion"))
        else:
            out.append((g, "ok"))
    return tuple(out)


def delta_I1_step_chain(db: RootDatabase, I: Iterable, beta0, beta1, mode: str = UP):
    """Move from β0 up to β1 in steps of Δ_{I,1} (finite type).

    When the case hypothesis for ``mode`` holds the result is a RootChain; otherwise, and
    always for ``exact``, an exhaustive ProbeReport is returned.
    """
    _require_finite(db.gcm)
    return _delta_I1_step(db, I, beta0, beta1, mode)


def _delta_I1_step(db, I, beta0, beta1, mode):
    gcm = db.gcm
    idx = gcm.indices(I)
    if not idx:
        raise PreconditionViolated("I must be nonempty")
    beta0, beta1 = tuple(beta0), tuple(beta1)
    if not (leq(beta0, beta1) and beta0 != beta1):
        raise NotComparable(f"{beta0} is not strictly below {beta1}")
    for v in (beta0, beta1):
        if not _adjoint(db, v):
            raise NotInAdjointWeights(f"{v} is neither a root nor zero")
    n = _ht(sub(beta1, beta0), idx)
    if n <= 0:
        raise PreconditionViolated("height_I(beta1 - beta0) must be positive")
    if mode not in (UP, DOWN, EXACT):
        raise ValueError(f"unknown mode {mode!r}")
    chain, verdicts = _step_search(db, I, beta0, beta1, mode)
    hyp = _hypothesis(mode, lambda v: _ht(v, idx), beta0, beta1)
    if hyp and chain is not None:
        return chain
    nodes = "{" + ",".join(gcm.names(idx)) + "}"
    query = f"{mode} chain in steps of Delta_{nodes},1 from {list(beta0)} to {list(beta1)}"
    extra = {"hypothesis_holds": hyp}
    return ProbeReport(query, "FOUND" if chain else "EMPTY", verdicts, chain, None, extra)


def short_psp(db: RootDatabase, I: Iterable, beta, direction: str = DOWN) -> RootChain:
    """Chains in steps of Δ_{I,1} through short roots only (finite type).

    ``down`` writes β as a sum of height_I(β) steps; ``up`` climbs height_I(θ_s - β) steps.
    """
    gcm = db.gcm
    t = classify(gcm)
    if not (t.is_finite and t.indecomposable):
        raise NotFiniteType("short-root chains need a finite-type indecomposable matrix")
    idx = gcm.indices(I)
    if not idx:
        raise PreconditionViolated("I must be nonempty")
    beta = _positive_root(db, beta)
    shorts = short_roots(db, positive=False)
    if beta not in shorts:
        raise NotShortRoot(f"{beta} is not a short root")
    theta = _theta_s(db)
    steps = _sorted_slice(db, I)
    if direction == DOWN:
        n = _ht(beta, idx)
        if n <= 1:
            raise HypothesisViolated("height_I(beta) must exceed 1")
        zero = (0,) * gcm.rank
        found = _ladder(zero, n, steps, lambda w: leq(w, beta) and w in shorts, lambda v: v == beta)
        anchor = zero
    elif direction == UP:
        m = _ht(sub(theta, beta), idx)
        if m <= 0:
            raise HypothesisViolated("height_I(beta) must be below height_I(theta_s)")
        found = _ladder(beta, m, steps, lambda w: w in shorts, lambda v: True)
        anchor = beta
    else:
        raise ValueError(f"unknown direction {direction!r}")
    if found is None:
        raise AssertionError(f"no short-root chain for {beta} ({direction})")
    return _make_chain(db, anchor, found, direction)


def _theta_s(db: RootDatabase) -> tuple:
    from .roots import highest_short_root

    return highest_short_root(db)


def long_root_probe(db: RootDatabase, I: Iterable, beta, direction: str) -> ProbeReport:
    """One step of Δ_{I,1} from a long root to another long root, exhaustively."""
    beta = tuple(beta)
    longs = long_roots(db, positive=True)
    verdicts = []
    hit = None
    for g in _sorted_slice(db, I):
        w = sub(beta, g) if direction == DOWN else add(beta, g)
        cls = db.root_class(w)
        if w in longs:
            verdicts.append((g, "long positive root"))
            hit = hit or g
        elif cls.is_root:
            verdicts.append((g, "root, but not long positive"))
        else:
            verdicts.append((g, "not a root"))
    word = "down from" if direction == DOWN else "up from"
    chain = None
    if hit is not None:
        step = neg(hit) if direction == DOWN else hit
        chain = _make_chain(db, beta, (step,), direction)
    return ProbeReport(f"long-root step {word} {list(beta)}", "FOUND" if hit else "EMPTY", tuple(verdicts), chain)


def cor35_bound(db: RootDatabase, I: Iterable) -> dict:
    """#Δ_{I,1} against the largest sum of heights of β_i with supp_I(β_i) = {i}."""
    gcm = db.gcm
    idx = sorted(gcm.indices(I))
    sl = slice_In(db, I, 1)
    pos = [g for g in sl if all(c >= 0 for c in g)]
    best = {}
    for i in idx:
        heights = [sum(g) for g in pos if g[i] == 1]
        best[gcm.labels[i]] = max(heights)
    bound = sum(best.values())
    return {"size": len(pos), "bound": bound, "holds": len(pos) >= bound, "per_node": best}


def lemma37_step(db: RootDatabase, I: Iterable, beta) -> Optional[tuple]:
    """Some η in Δ_{I,-1} with β + η in Δ⁺ ⊔ {0}."""
    beta = _positive_root(db, beta)
    for eta in sorted(slice_In(db, I, -1), key=lambda v: canonical_key(neg(v))):
        w = add(beta, eta)
        if is_zero(w) or (all(c >= 0 for c in w) and w in db):
            return eta
    return None


def observation38_check(db: RootDatabase) -> bool:
    """<α, γ^vee> and <γ, β^vee> lie in {-1, 0, 1} for γ any root, α short, β long.

    The pairing <x, y^vee> is 2(x, y)/(y, y) under the symmetrized form.
    """
    from .cartan import bilinear_form, symmetrizer

    gcm = db.gcm
    sym = symmetrizer(gcm)
    shorts = short_roots(db, positive=False)
    longs = long_roots(db, positive=False)
    roots = list(db.positive_roots) + [neg(v) for v in db.positive_roots]

    def pair(x, y):
        return 2 * bilinear_form(sym, gcm, x, y) / bilinear_form(sym, gcm, y, y)

    simply_laced = shorts == longs
    for g in roots:
        for a in shorts:
            if a == g or a == neg(g):
                continue
            if pair(a, g) not in (-1, 0, 1):
                return False
        if simply_laced:
            continue
        for b in longs:
            if b == g or b == neg(g):
                continue
            if pair(g, b) not in (-1, 0, 1):
                return False
    return True


# ---------------------------------------------------------------------------
# regression probes for the worked examples

HOLDS = "HOLDS"
FAILS = "FAILS"


def _expect(report, outcome: str) -> ProbeReport:
    if isinstance(report, RootChain):
        report = ProbeReport("chain search", "FOUND", (), report)
    return replace(report, expected=outcome)


def _probe_semigroup(sc, db) -> list:
    sl = slice_In(db, sc.params["I"], 1)
    lhs, rhs = sc.params["lhs"], sc.params["rhs"]
    verdicts = tuple((v, "in Delta_{I,1}" if v in sl else "outside Delta_{I,1}") for v in lhs + rhs)
    total = lambda vs: tuple(sum(c) for c in zip(*vs))  # noqa: E731
    ok = total(lhs) == total(rhs) and all(v in sl for v in lhs + rhs)
    query = " + ".join(str(list(v)) for v in lhs) + " = " + " + ".join(str(list(v)) for v in rhs)
    return [ProbeReport(query, HOLDS if ok else FAILS, verdicts, expected=HOLDS, extra={"sum": list(total(lhs))})]


def _probe_rational(sc, db) -> list:
    from fractions import Fraction

    from .cones import convex_member

    cert = convex_member(sc.params["target"], sc.params["generators"])
    ok = cert.feasible and tuple(cert.coefficients) == (Fraction(1, 2), Fraction(1, 2))
    query = f"{list(sc.params['target'])} in conv of {[list(g) for g in sc.params['generators']]}"
    return [ProbeReport(query, HOLDS if ok else FAILS, (), expected=HOLDS, extra={"certificate": cert.to_json()})]


def _probe_long(sc, db) -> list:
    I = sc.params["I"]
    return [
        _expect(long_root_probe(db, I, sc.params["beta_top"], DOWN), "EMPTY"),
        _expect(long_root_probe(db, I, sc.params["beta"], UP), "EMPTY"),
    ]


def _probe_unique_simple(sc, db) -> list:
    gcm = db.gcm
    beta = sc.params["beta"]
    verdicts, hits = [], []
    for k in range(gcm.rank):
        w = sub(beta, unit(gcm.rank, k))
        cls = db.root_class(w)
        verdicts.append((unit(gcm.rank, k), cls.value))
        if cls.is_root:
            hits.append(k)
    extra = {"beta_class": db.root_class(beta).value}
    ok = False
    if len(hits) == 1:
        k = hits[0]
        diff = db.root_class(sub(beta, unit(gcm.rank, k)))
        extra["unique_subtractable"] = "α" + gcm.labels[k]
        extra["class_of_difference"] = diff.value
        ok = diff is RootClass.IMAGINARY
    query = f"simple roots subtractable from {list(beta)}"
    return [ProbeReport(query, HOLDS if ok else FAILS, tuple(verdicts), expected=HOLDS, extra=extra)]


def _probe_5_11_1i(sc, db) -> list:
    p = sc.params
    return [_expect(_delta_I1_step(db, p["I"], p["low"], p["high"], EXACT), "EMPTY")]


def _probe_pair(sc, db) -> list:
    p = sc.params
    return [
        _expect(_delta_I1_step(db, p["I1"], p["low"], p["high"], DOWN), "EMPTY"),
        _expect(_delta_I1_step(db, p["I2"], p["low"], p["high"], UP), "EMPTY"),
    ]


_PROBES = {
    "remark-3.3-1": _probe_semigroup,
    "remark-3.3-2": _probe_rational,
    "remark-3.10-1": _probe_long,
    "remark-3.11": _probe_unique_simple,
    "remark-5.11-1i": _probe_5_11_1i,
    "remark-5.11-1ii": _probe_pair,
    "remark-5.11-3": _probe_pair,
}


def probe_fixture(name: str, height_bound: int = 20) -> list:
    from .fixtures import scenario
    from .roots import enumerate_roots

    sc = scenario(name)
    db = enumerate_roots(sc.gcm, height_bound)
    return _PROBES[name](sc, db)


def probe_remark_fixtures(height_bound: int = 20) -> dict:
    """Every registered worked example, by fixture name."""
    from .fixtures import scenario_names

    return {name: probe_fixture(name, height_bound) for name in scenario_names()}
