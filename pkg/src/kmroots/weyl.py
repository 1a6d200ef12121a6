"""Simple reflections, windowed orbits, dominant representatives and orbit finiteness.

Weyl group elements only ever appear as words.  A word ``(j1, j2, ...)`` acts by
applying ``s_{j1}`` first, then ``s_{j2}``, and so on.
"""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Optional

from .cartan import GeneralizedCartanMatrix, _components, classify, subdiagram
from .errors import NonIntegralReflection, OrbitIncomplete, SupportOverlap

_DOMINANCE_STEP_CAP = 100_000


@dataclass(frozen=True)
class AnchoredWeight:
    """μ = λ - Σ c_i α_i, where λ is known only through its coroot pairings ``anchor``."""

    anchor: tuple
    depth: tuple

    @staticmethod
    def make(anchor, depth=None) -> "AnchoredWeight":
        anchor = tuple(Fraction(a) for a in anchor)
        if depth is None:
            depth = (0,) * len(anchor)
        return AnchoredWeight(anchor, tuple(int(c) for c in depth))

    def pairing(self, gcm: GeneralizedCartanMatrix, j: int) -> Fraction:
        row = gcm.entries[j]
        return self.anchor[j] - sum(self.depth[i] * row[i] for i in range(gcm.rank))

    def pairings(self, gcm: GeneralizedCartanMatrix) -> tuple:
        return tuple(self.pairing(gcm, j) for j in range(gcm.rank))

    def lower(self, v) -> "AnchoredWeight":
        """μ - v."""
        return AnchoredWeight(self.anchor, tuple(c + x for c, x in zip(self.depth, v)))

    def to_json(self) -> dict:
        return {"anchor": [str(a) for a in self.anchor], "depth": list(self.depth)}


def reflect(gcm: GeneralizedCartanMatrix, j, v) -> tuple:
    k = gcm.index(j)
    p = gcm.pairing(v, k)
    return tuple(c - p if i == k else c for i, c in enumerate(v))


def _reflect_depth(gcm, k: int, anchor, depth) -> tuple:
    p = anchor[k] - sum(depth[i] * gcm.entries[k][i] for i in range(gcm.rank))
    if Fraction(p).denominator != 1:
        raise NonIntegralReflection(f"pairing {p} at node {gcm.labels[k]} is not an integer")
    p = int(p)
    return tuple(c + p if i == k else c for i, c in enumerate(depth))


def reflect_weight(gcm: GeneralizedCartanMatrix, j, mu: AnchoredWeight) -> AnchoredWeight:
    return AnchoredWeight(mu.anchor, _reflect_depth(gcm, gcm.index(j), mu.anchor, mu.depth))


def apply_word(gcm: GeneralizedCartanMatrix, word: Iterable, x):
    for j in word:
        x = reflect_weight(gcm, j, x) if isinstance(x, AnchoredWeight) else reflect(gcm, j, x)
    return x


@dataclass(frozen=True)
class OrbitSlice:
    generator: object
    group: frozenset
    elements: dict  # element -> word (tuple of labels) carrying the generator to it
    complete: bool

    def __contains__(self, x) -> bool:
        return x in self.elements

    def __len__(self) -> int:
        return len(self.elements)


def orbit(gcm: GeneralizedCartanMatrix, J: Iterable, seed, window: int) -> OrbitSlice:
    """Closure of ``seed`` under s_j (j in J), pruned to the window.

    For root vectors the window bounds every coordinate in absolute value; for anchored
    weights it bounds the total absolute depth.
    """
    jdx = sorted(gcm.indices(J))
    is_weight = isinstance(seed, AnchoredWeight)

    def inside(x) -> bool:
        if is_weight:
            return sum(abs(c) for c in x.depth) <= window
        return all(abs(c) <= window for c in x)

    elements = {seed: ()}
    queue = deque([seed])
    complete = True
    while queue:
        x = queue.popleft()
        for k in jdx:
            label = gcm.labels[k]
            y = reflect_weight(gcm, label, x) if is_weight else reflect(gcm, label, x)
            if y in elements:
                continue
            if not inside(y):
                complete = False
                continue
            elements[y] = elements[x] + (label,)
            queue.append(y)
    return OrbitSlice(generator=seed, group=frozenset(gcm.labels[k] for k in jdx), elements=elements, complete=complete)


def _is_finite_type(gcm: GeneralizedCartanMatrix, idx) -> bool:
    if not idx:
        return True
    return classify(subdiagram(gcm, [gcm.labels[i] for i in idx])).is_finite


def dominant_representative(gcm: GeneralizedCartanMatrix, J: Iterable, mu: AnchoredWeight):
    """Raise μ by simple reflections in J until every J-pairing is nonnegative.

    Returns ``(mu_plus, word)`` with ``apply_word(gcm, word, mu) == mu_plus``.
    """
    jdx = sorted(gcm.indices(J))
    depth = mu.depth
    word = []
    finite = _is_finite_type(gcm, jdx)
    while True:
        k = next((k for k in jdx if _pair(gcm, k, mu.anchor, depth) < 0), None)
        if k is None:
            return AnchoredWeight(mu.anchor, depth), tuple(word)
        depth = _reflect_depth(gcm, k, mu.anchor, depth)
        word.append(gcm.labels[k])
        if not finite and len(word) > _DOMINANCE_STEP_CAP:
            raise OrbitIncomplete("no J-dominant element reached; the weight may lie outside the Tits cone")


def _pair(gcm, k: int, anchor, depth) -> Fraction:
    return anchor[k] - sum(depth[i] * gcm.entries[k][i] for i in range(gcm.rank))


def isotropy_parabola(gcm: GeneralizedCartanMatrix, J: Iterable, alpha) -> frozenset:
    """K = {j in J : <α, α_j^vee> = 0}."""
    jdx = gcm.indices(J)
    overlap = [gcm.labels[i] for i in jdx if alpha[i] != 0]
    if overlap:
        raise SupportOverlap(f"J meets supp(alpha) at {sorted(overlap)}")
    return frozenset(gcm.labels[j] for j in jdx if gcm.pairing(alpha, j) == 0)


def quotient_finite(gcm: GeneralizedCartanMatrix, J: Iterable, K: Iterable) -> bool:
    """Whether W_J / W_K is finite, read off from the components of J."""
    return not _infinite_components(gcm, gcm.indices(J), gcm.indices(K))


def _infinite_components(gcm, jdx, kdx) -> list:
    bad = []
    for comp in _components(gcm, jdx):
        if not comp <= kdx and not _is_finite_type(gcm, comp):
            bad.append(comp)
    return bad


@dataclass(frozen=True)
class FinitenessReport:
    finite: bool
    criterion: str
    isotropy: frozenset
    J_prime: Optional[frozenset] = None
    connected: bool = False
    details: tuple = field(default=())

    def to_json(self) -> dict:
        out = {
            "finite": self.finite,
            "criterion": self.criterion,
            "isotropy": sorted(self.isotropy),
            "J_prime": None if self.J_prime is None else sorted(self.J_prime),
            "J_connected": self.connected,
        }
        if self.details:
            out["details"] = [d.to_json() for d in self.details]
        return out


def delta_alphaJ_finite(gcm: GeneralizedCartanMatrix, alpha, J: Iterable) -> FinitenessReport:
    """Finiteness of Δ_{α,J} from the Dynkin data alone (no enumeration)."""
    alpha = tuple(alpha)
    K = isotropy_parabola(gcm, J, alpha)
    jdx = gcm.indices(J)
    kdx = gcm.indices(K)
    if not jdx:
        return FinitenessReport(True, "J is empty, so the set is {alpha}", K)
    connected = len(_components(gcm, jdx)) == 1
    if kdx == jdx:
        first = gcm.labels[min(jdx)]
        return FinitenessReport(True, "alpha is fixed by all of W_J, so the set is {alpha}", K, frozenset({first}), connected)
    bad = _infinite_components(gcm, jdx, kdx)
    if bad:
        names = ["{" + ",".join(gcm.names(c)) + "}" for c in bad]
        return FinitenessReport(
            False,
            f"component {', '.join(names)} of J is not of finite type and is not inside the isotropy set",
            K,
            None,
            connected,
        )
    moving = frozenset(gcm.labels[i] for comp in _components(gcm, jdx) if not comp <= kdx for i in comp)
    return FinitenessReport(
        True,
        "every component of J not inside the isotropy set is of finite type",
        K,
        moving,
        connected,
    )


def delta_I1_finite(gcm: GeneralizedCartanMatrix, I: Iterable) -> FinitenessReport:
    """Finiteness of Δ_{I,1}, conjoined over the pieces Δ_{α_i, I^c}."""
    idx = gcm.indices(I)
    if not idx:
        raise ValueError("I must be nonempty")
    comp = [gcm.labels[k] for k in range(gcm.rank) if k not in idx]
    parts = tuple(delta_alphaJ_finite(gcm, gcm.simple(gcm.labels[i]), comp) for i in sorted(idx))
    finite = all(p.finite for p in parts)
    if finite:
        crit = "every piece Delta_{alpha_i, I^c} is finite"
    else:
        crit = "some piece Delta_{alpha_i, I^c} is infinite"
    iso = frozenset().union(*(p.isotropy for p in parts))
    return FinitenessReport(finite, crit, iso, None, len(_components(gcm, gcm.indices(comp))) == 1, parts)


def is_W_finite(gcm: GeneralizedCartanMatrix, J: Iterable) -> bool:
    return _is_finite_type(gcm, sorted(gcm.indices(J)))


def orbit_or_raise(gcm: GeneralizedCartanMatrix, J: Iterable, seed, window: int) -> OrbitSlice:
    o = orbit(gcm, J, seed, window)
    if not o.complete:
        raise OrbitIncomplete(f"orbit of {seed} left the window {window}")
    return o
