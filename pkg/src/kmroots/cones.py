"""Exact convex geometry over Q: hull and cone membership with certificates, extremal
rays, minimal generators of root slices, root lengths in Δ_{α,J}, and the shape
P(λ,J) = conv(W_J λ) - R>=0(Δ⁺ minus Δ_J⁺).

Points of P(λ,J) are written as offsets p, meaning the point λ - p.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Optional, Sequence

from .cartan import GeneralizedCartanMatrix, bilinear_form, symmetrizer
from .errors import (
    NotRealRoot,
    NotSymmetrizable,
    OrbitIncomplete,
    OutOfWindow,
    PreconditionViolated,
    WJNotFinite,
)
from .lp import check_farkas, dot, find_nonnegative_solution, frac_vec
from .roots import (
    RootClass,
    RootDatabase,
    canonical_key,
    minimal_elements,
    slice_alphaJ,
    slice_In,
)
from .weyl import apply_word, is_W_finite, orbit

FEASIBLE = "FEASIBLE"
INFEASIBLE = "INFEASIBLE"


@dataclass(frozen=True)
class LPCertificate:
    """FEASIBLE carries ``coefficients``; INFEASIBLE carries a separating ``functional``
    (y, c) with y·g + c >= 0 on every generator g and y·target + c < 0."""

    status: str
    coefficients: Optional[tuple] = None
    functional: Optional[tuple] = None
    offset: Fraction = Fraction(0)

    @property
    def feasible(self) -> bool:
        return self.status == FEASIBLE

    def to_json(self) -> dict:
        out = {"status": self.status}
        if self.coefficients is not None:
            out["coefficients"] = [str(c) for c in self.coefficients]
        if self.functional is not None:
            out["functional"] = [str(c) for c in self.functional]
            out["offset"] = str(self.offset)
        return out


def _membership(target, generators, convex: bool) -> LPCertificate:
    target = frac_vec(target)
    gens = [frac_vec(g) for g in generators]
    n = len(target)
    rows = [[g[i] for g in gens] for i in range(n)]
    rhs = list(target)
    if convex:
        rows.append([Fraction(1)] * len(gens))
        rhs.append(Fraction(1))
    if not gens:
        if not convex and not any(target):
            return LPCertificate(FEASIBLE, coefficients=())
        # separate with any coordinate functional
        if convex:
            return LPCertificate(INFEASIBLE, functional=tuple([Fraction(0)] * n), offset=Fraction(-1))
        k = next(i for i, t in enumerate(target) if t)
        y = tuple(Fraction(-1 if t > 0 else 1) if i == k else Fraction(0) for i, t in enumerate(target))
        return LPCertificate(INFEASIBLE, functional=y)
    res = find_nonnegative_solution(rows, rhs)
    if res.feasible:
        return LPCertificate(FEASIBLE, coefficients=res.x)
    f = res.farkas
    return LPCertificate(INFEASIBLE, functional=tuple(f[:n]), offset=f[n] if convex else Fraction(0))


def convex_member(target, generators: Sequence) -> LPCertificate:
    return _membership(target, generators, convex=True)


def cone_member(target, generators: Sequence) -> LPCertificate:
    return _membership(target, generators, convex=False)


def verify_certificate(cert: LPCertificate, target, generators: Sequence, convex: bool) -> bool:
    """Re-check a certificate by exact evaluation."""
    target = frac_vec(target)
    gens = [frac_vec(g) for g in generators]
    if cert.feasible:
        c = cert.coefficients
        if len(c) != len(gens) or any(x < 0 for x in c):
            return False
        if convex and sum(c) != 1:
            return False
        combo = [sum((ci * g[k] for ci, g in zip(c, gens)), Fraction(0)) for k in range(len(target))]
        return tuple(combo) == target
    y, off = cert.functional, cert.offset
    if any(dot(y, g) + off < 0 for g in gens):
        return False
    return dot(y, target) + off < 0


def proportional(x, y) -> bool:
    """x = t·y for some t > 0, tested by cross-multiplication."""
    x, y = frac_vec(x), frac_vec(y)
    if not any(x) or not any(y):
        return False
    for i in range(len(x)):
        for j in range(len(x)):
            if x[i] * y[j] != x[j] * y[i]:
                return False
    return all(a * b >= 0 for a, b in zip(x, y))


@dataclass(frozen=True)
class ExtremalCheck:
    extremal: bool
    certificate: LPCertificate

    def to_json(self) -> dict:
        return {"extremal": self.extremal, "certificate": self.certificate.to_json()}


def extremal_ray_check(candidate, generators: Sequence) -> ExtremalCheck:
    """Whether R>=0·candidate is an extremal ray of cone(generators)."""
    others = [g for g in generators if not proportional(g, candidate)]
    cert = cone_member(candidate, others)
    return ExtremalCheck(not cert.feasible, cert)


# ---------------------------------------------------------------------------
# minimal generators of conv Δ_{I,n}


@dataclass(frozen=True)
class Lemma61Report:
    slice_elements: frozenset
    minimal: frozenset
    generators: frozenset  # W_{I^c} S_{I,n} inside the window
    hull_ok: bool  # every slice element lies in conv(generators)
    extremal: frozenset  # slice elements that are LP-extremal in cone(slice)
    interior: frozenset
    certificates_ok: bool
    truncated: bool

    @property
    def ok(self) -> bool:
        return self.hull_ok and self.extremal == self.generators and self.certificates_ok

    def to_json(self) -> dict:
        def lst(s):
            return [list(v) for v in sorted(s, key=canonical_key)]

        return {
            "slice": lst(self.slice_elements),
            "minimal_elements": lst(self.minimal),
            "generators": lst(self.generators),
            "hull_ok": self.hull_ok,
            "extremal": lst(self.extremal),
            "interior": lst(self.interior),
            "certificates_ok": self.certificates_ok,
            "truncated": self.truncated,
            "ok": self.ok,
        }


def lemma61_check(db: RootDatabase, I: Iterable, n: int) -> Lemma61Report:
    gcm = db.gcm
    idx = gcm.indices(I)
    comp = [gcm.labels[k] for k in range(gcm.rank) if k not in idx]
    sl = frozenset(v for v in slice_In(db, I, n))
    mins = minimal_elements(db, I, n)
    window = db.height_bound
    gens = set()
    truncated = mins.truncation_sensitive
    for s in mins.elements:
        o = orbit(gcm, comp, s, window)
        truncated = truncated or not o.complete
        gens.update(v for v in o.elements if sum(v) <= db.height_bound)
    gens = frozenset(gens)
    ordered = sorted(sl, key=canonical_key)
    hull_ok = True
    certs_ok = True
    gen_list = sorted(gens, key=canonical_key)
    for b in ordered:
        c = convex_member(b, gen_list)
        certs_ok = certs_ok and verify_certificate(c, b, gen_list, True)
        hull_ok = hull_ok and c.feasible
    extremal, interior = set(), set()
    for b in ordered:
        chk = extremal_ray_check(b, ordered)
        others = [g for g in ordered if not proportional(g, b)]
        certs_ok = certs_ok and verify_certificate(chk.certificate, b, others, False)
        (extremal if chk.extremal else interior).add(b)
    return Lemma61Report(sl, mins.elements, gens, hull_ok, frozenset(extremal), frozenset(interior), certs_ok, truncated)


# ---------------------------------------------------------------------------
# lengths in Δ_{α,J}


@dataclass(frozen=True)
class Lemma65Report:
    alpha_length: Fraction
    lengths: dict  # β -> (β, β)
    bound_ok: bool
    witnesses: dict  # β -> word with ω α = β, for the equality cases
    witnesses_ok: bool
    truncated: bool

    @property
    def ok(self) -> bool:
        return self.bound_ok and self.witnesses_ok

    def to_json(self) -> dict:
        return {
            "alpha_length": str(self.alpha_length),
            "lengths": [{"beta": list(b), "length": str(l)} for b, l in sorted(self.lengths.items(), key=lambda t: canonical_key(t[0]))],
            "bound_ok": self.bound_ok,
            "witnesses": [{"beta": list(b), "word": list(w)} for b, w in sorted(self.witnesses.items(), key=lambda t: canonical_key(t[0]))],
            "witnesses_ok": self.witnesses_ok,
            "truncated": self.truncated,
        }


def _lemma65_pre(db, alpha, J):
    gcm = db.gcm
    sym = symmetrizer(gcm)
    if not sym.exists:
        raise NotSymmetrizable("the Cartan matrix admits no symmetrizer")
    alpha = tuple(alpha)
    if db.root_class(alpha) is not RootClass.REAL or any(c < 0 for c in alpha):
        raise NotRealRoot(f"{alpha} is not a real positive root")
    jdx = gcm.indices(J)
    if any(alpha[j] for j in jdx):
        raise PreconditionViolated("J must avoid supp(alpha)")
    return sym, alpha


def lemma65_check(db: RootDatabase, alpha, J: Iterable) -> Lemma65Report:
    gcm = db.gcm
    sym, alpha = _lemma65_pre(db, alpha, J)
    la = bilinear_form(sym, gcm, alpha, alpha)
    sl = slice_alphaJ(db, alpha, J)
    lengths = {b: bilinear_form(sym, gcm, b, b) for b in sl}
    bound_ok = all(l <= la for l in lengths.values())
    witnesses, ok, truncated = {}, True, False
    for b, l in lengths.items():
        if l != la:
            continue
        supp = [gcm.labels[k] for k in range(gcm.rank) if b[k] != alpha[k]]
        o = orbit(gcm, supp, alpha, db.height_bound)
        truncated = truncated or not o.complete
        if b in o.elements:
            w = o.elements[b]
            witnesses[b] = w
            ok = ok and apply_word(gcm, w, alpha) == b
        else:
            ok = False
    sensitive = (not db.saturated) and any(sum(b) >= db.height_bound - 1 for b in sl)
    return Lemma65Report(la, lengths, bound_ok, witnesses, ok, truncated or sensitive)


@dataclass(frozen=True)
class Cor66Report:
    equals_orbit: bool
    all_real: bool
    alpha_shortest: bool

    @property
    def consistent(self) -> bool:
        return self.equals_orbit == (self.all_real and self.alpha_shortest)

    def to_json(self) -> dict:
        return {
            "slice_equals_orbit": self.equals_orbit,
            "all_real": self.all_real,
            "alpha_shortest": self.alpha_shortest,
            "consistent": self.consistent,
        }


def cor66_check(db: RootDatabase, alpha, J: Iterable) -> Cor66Report:
    gcm = db.gcm
    sym, alpha = _lemma65_pre(db, alpha, J)
    sl = slice_alphaJ(db, alpha, J)
    o = orbit(gcm, J, alpha, db.height_bound)
    orb = frozenset(v for v in o.elements if sum(v) <= db.height_bound)
    la = bilinear_form(sym, gcm, alpha, alpha)
    all_real = all(db.root_class(b) is RootClass.REAL for b in sl)
    shortest = all(la <= bilinear_form(sym, gcm, b, b) for b in sl)
    return Cor66Report(sl == orb, all_real, shortest)


# ---------------------------------------------------------------------------
# the shape P(λ, J)


def _reflect_offset(gcm: GeneralizedCartanMatrix, k: int, anchor, p) -> tuple:
    """Offset of s_k(λ - p)."""
    pair = anchor[k] - sum(gcm.entries[k][i] * p[i] for i in range(gcm.rank))
    return tuple(x + pair if i == k else x for i, x in enumerate(p))


def offset_orbit(gcm: GeneralizedCartanMatrix, J: Iterable, anchor, p, cap: int = 100_000) -> dict:
    """W_J-orbit of the point λ - p, as offsets with words (finite W_J only)."""
    jdx = sorted(gcm.indices(J))
    p = frac_vec(p)
    seen = {p: ()}
    todo = [p]
    while todo:
        x = todo.pop()
        for k in jdx:
            y = _reflect_offset(gcm, k, anchor, x)
            if y not in seen:
                seen[y] = seen[x] + (gcm.labels[k],)
                todo.append(y)
                if len(seen) > cap:
                    raise OrbitIncomplete("orbit exceeds the size cap")
    return seen


@dataclass(frozen=True)
class Shape:
    """Finite generator description of P(λ,J) in offset coordinates."""

    gcm: GeneralizedCartanMatrix
    anchor: tuple
    J: frozenset
    vertices: tuple  # offsets of W_J λ
    words: dict
    rays: tuple  # Δ_{J^c,1}
    window_relative: bool


def _check_prime(gcm, anchor, jdx):
    for j in jdx:
        if anchor[j] < 0:
            raise PreconditionViolated(f"pairing at node {gcm.labels[j]} is negative")


def build_shape(gcm: GeneralizedCartanMatrix, db: RootDatabase, anchor, J: Iterable) -> Shape:
    anchor = frac_vec(anchor)
    jdx = sorted(gcm.indices(J))
    _check_prime(gcm, anchor, jdx)
    labels = [gcm.labels[j] for j in jdx]
    if not is_W_finite(gcm, labels):
        raise WJNotFinite("W_J is infinite")
    orb = offset_orbit(gcm, labels, anchor, (0,) * gcm.rank)
    comp = [gcm.labels[k] for k in range(gcm.rank) if k not in set(jdx)]
    rays = sorted((v for v in slice_In(db, comp, 1)), key=canonical_key) if comp else []
    window_relative = False
    if comp:
        from .weyl import delta_I1_finite

        if delta_I1_finite(gcm, comp).finite:
            need = 0
            for i in comp:
                o = orbit(gcm, labels, gcm.simple(i), 10 * db.height_bound + 10)
                if not o.complete:
                    raise OutOfWindow("orbit of a simple root left the window")
                need = max(need, max(sum(v) for v in o.elements))
            if need > db.height_bound and not db.saturated:
                raise OutOfWindow(f"the ray set needs roots of height {need}")
        else:
            window_relative = True
    verts = tuple(sorted(orb, key=lambda p: (sum(p), tuple(-x for x in p))))
    return Shape(gcm, anchor, frozenset(labels), verts, orb, tuple(frac_vec(r) for r in rays), window_relative)


def shape_member(shape: Shape, p) -> LPCertificate:
    """Decide λ - p ∈ P(λ,J) by one LP over convex weights on vertices and cone weights on rays."""
    p = frac_vec(p)
    n = len(p)
    nv, nr = len(shape.vertices), len(shape.rays)
    rows = []
    for i in range(n):
        rows.append([v[i] for v in shape.vertices] + [r[i] for r in shape.rays])
    rows.append([Fraction(1)] * nv + [Fraction(0)] * nr)
    res = find_nonnegative_solution(rows, list(p) + [Fraction(1)])
    if res.feasible:
        return LPCertificate(FEASIBLE, coefficients=res.x)
    f = res.farkas
    assert check_farkas(rows, list(p) + [Fraction(1)], f)
    return LPCertificate(INFEASIBLE, functional=tuple(f[:n]), offset=f[n])


def P_lambdaJ_member(gcm: GeneralizedCartanMatrix, db: RootDatabase, anchor, J: Iterable, point) -> LPCertificate:
    return shape_member(build_shape(gcm, db, anchor, J), point)


def below_lambda_everywhere(gcm: GeneralizedCartanMatrix, J: Iterable, anchor, p) -> bool:
    """ω(λ - p) ⪯ λ for every ω in W_J, i.e. every orbit offset is nonnegative."""
    return all(all(x >= 0 for x in q) for q in offset_orbit(gcm, J, frac_vec(anchor), p))


@dataclass(frozen=True)
class PropA1Report:
    points: int
    inside: int
    mismatches: tuple

    @property
    def ok(self) -> bool:
        return not self.mismatches

    def to_json(self) -> dict:
        return {
            "points": self.points,
            "inside": self.inside,
            "mismatches": [[str(x) for x in p] for p in self.mismatches],
            "ok": self.ok,
        }


def propA1_check(gcm: GeneralizedCartanMatrix, db: RootDatabase, anchor, J: Iterable, grid: Iterable) -> PropA1Report:
    shape = build_shape(gcm, db, anchor, J)
    bad, inside, count = [], 0, 0
    for p in grid:
        p = frac_vec(p)
        count += 1
        lhs = shape_member(shape, p).feasible
        rhs = below_lambda_everywhere(gcm, shape.J, shape.anchor, p)
        inside += lhs
        if lhs != rhs:
            bad.append(p)
    return PropA1Report(count, inside, tuple(bad))


def maximal_property_check(gcm: GeneralizedCartanMatrix, db: RootDatabase, anchor, J: Iterable, seeds: Iterable) -> bool:
    """Close each seed under W_J; if the orbit stays in λ - R>=0Π it must sit inside P(λ,J)."""
    shape = build_shape(gcm, db, anchor, J)
    for s in seeds:
        orb = offset_orbit(gcm, shape.J, shape.anchor, s)
        if not all(all(x >= 0 for x in q) for q in orb):
            continue
        if not all(shape_member(shape, q).feasible for q in orb):
            return False
    return True


@dataclass(frozen=True)
class RayVerdict:
    vertex: tuple
    direction: tuple
    extremal: bool
    functional: Optional[tuple] = None  # exposes the ray when extremal
    relation: Optional[tuple] = None  # (weights, generators, multiple) when not

    def to_json(self) -> dict:
        out = {"vertex": [str(x) for x in self.vertex], "direction": [str(x) for x in self.direction], "extremal": self.extremal}
        if self.functional is not None:
            out["functional"] = [str(x) for x in self.functional]
        if self.relation is not None:
            weights, gens, mult = self.relation
            out["relation"] = {
                "weights": [str(w) for w in weights],
                "generators": [[str(x) for x in g] for g in gens],
                "multiple_of_direction": str(mult),
            }
        return out


def ray_verdict(shape: Shape, v, r) -> RayVerdict:
    """Is the ray λ - v - R>=0 r extremal in P(λ,J)?

    It is exactly when no convex combination of the other generators, taken relative to
    v, lands on the line through r; infeasibility yields a functional exposing the ray.
    """
    v, r = frac_vec(v), frac_vec(r)
    n = len(v)
    gens = []
    for u in shape.vertices:
        d = tuple(a - b for a, b in zip(u, v))
        if any(d) and not proportional(d, r):
            gens.append(d)
    for q in shape.rays:
        if not proportional(q, r):
            gens.append(q)
    if not gens:
        return RayVerdict(v, r, True, functional=tuple(Fraction(0) for _ in range(n)))
    rows = [[g[i] for g in gens] + [r[i], -r[i]] for i in range(n)]
    rows.append([Fraction(1)] * len(gens) + [Fraction(0), Fraction(0)])
    rhs = [Fraction(0)] * n + [Fraction(1)]
    res = find_nonnegative_solution(rows, rhs)
    if res.feasible:
        x = res.x
        return RayVerdict(v, r, False, relation=(x[: len(gens)], tuple(gens), x[-2] - x[-1]))
    return RayVerdict(v, r, True, functional=tuple(res.farkas[:n]))


def check_ray_verdict(verdict: RayVerdict) -> bool:
    if verdict.extremal:
        return True
    weights, gens, mult = verdict.relation
    if any(w < 0 for w in weights) or sum(weights) != 1:
        return False
    n = len(verdict.vertex)
    total = [sum((w * g[i] for w, g in zip(weights, gens)), Fraction(0)) + mult * verdict.direction[i] for i in range(n)]
    return not any(total)


def _pair_orbit(gcm, J, anchor, v, r) -> set:
    jdx = sorted(gcm.indices(J))
    start = (frac_vec(v), frac_vec(r))
    seen = {start}
    todo = [start]
    while todo:
        a, b = todo.pop()
        for k in jdx:
            a2 = _reflect_offset(gcm, k, anchor, a)
            pb = sum(gcm.entries[k][i] * b[i] for i in range(gcm.rank))
            b2 = tuple(x - pb if i == k else x for i, x in enumerate(b))
            if (a2, b2) not in seen:
                seen.add((a2, b2))
                todo.append((a2, b2))
    return seen


@dataclass(frozen=True)
class Witness:
    kind: str
    ray: tuple  # direction from λ
    points: tuple  # offsets of the points combined
    weights: tuple
    target: tuple  # offset of the point on the ray being decomposed
    valid: bool
    note: str = ""

    def to_json(self) -> dict:
        return {
            "kind": self.kind,
            "ray": [str(x) for x in self.ray],
            "points": [[str(x) for x in p] for p in self.points],
            "weights": [str(w) for w in self.weights],
            "target": [str(x) for x in self.target],
            "valid": self.valid,
            "note": self.note,
        }


@dataclass(frozen=True)
class ExtremalRaysReport:
    J0: frozenset
    certified: frozenset  # (vertex, direction) pairs found extremal by LP
    expected: frozenset  # the W_J orbits of (λ, α_i), i outside J
    at_lambda: frozenset
    expected_at_lambda: frozenset
    verdicts: tuple
    witnesses: tuple
    window_relative: bool

    @property
    def ok(self) -> bool:
        return (
            self.certified == self.expected
            and self.at_lambda == self.expected_at_lambda
            and all(check_ray_verdict(v) for v in self.verdicts)
            and all(w.valid for w in self.witnesses)
        )

    def to_json(self) -> dict:
        def pairs(s):
            return [
                {"vertex": [str(x) for x in a], "direction": [str(x) for x in b]}
                for a, b in sorted(s, key=lambda t: (canonical_key(t[0]), canonical_key(t[1])))
            ]

        return {
            "J0": sorted(self.J0),
            "extremal_rays": pairs(self.certified),
            "expected": pairs(self.expected),
            "rays_at_lambda": pairs(self.at_lambda),
            "expected_at_lambda": pairs(self.expected_at_lambda),
            "verdicts": [v.to_json() for v in self.verdicts],
            "witnesses": [w.to_json() for w in self.witnesses],
            "window_relative": self.window_relative,
            "ok": self.ok,
        }


def _on_ray(point, direction) -> bool:
    return not any(point) or proportional(point, direction)


def _combo_ok(shape, points, weights, target, direction) -> bool:
    if any(w <= 0 for w in weights) or sum(weights) != 1:
        return False
    n = len(target)
    total = tuple(sum((w * p[i] for w, p in zip(weights, points)), Fraction(0)) for i in range(n))
    if total != tuple(target):
        return False
    if not all(shape_member(shape, p).feasible for p in points):
        return False
    return any(not _on_ray(p, direction) for p in points)


def _witness_orbit_points(shape: Shape) -> list:
    """Rays from λ through the other orbit points either leave P or split at λ."""
    out = []
    gcm = shape.gcm
    zero = tuple(Fraction(0) for _ in shape.anchor)
    for g, word in shape.words.items():
        if g == zero:
            continue
        beyond = tuple(2 * x for x in g)
        cert = shape_member(shape, beyond)
        if not cert.feasible:
            ok = _infeasible_ok(shape, beyond, cert)
            out.append(Witness("orbit-point ray leaves P", g, (beyond,), (), beyond, ok, "λ - 2γ lies outside P"))
            continue
        inv = tuple(reversed(word))
        p1 = _apply_offset_word(gcm, shape.anchor, inv, zero)
        p2 = _apply_offset_word(gcm, shape.anchor, inv, beyond)
        weights = (Fraction(1, 2), Fraction(1, 2))
        ok = _combo_ok(shape, (p1, p2), weights, zero, g)
        out.append(Witness("orbit-point ray", g, (p1, p2), weights, zero, ok))
    return out


def _infeasible_ok(shape: Shape, p, cert: LPCertificate) -> bool:
    y, c = cert.functional, cert.offset
    if any(dot(y, v) + c < 0 for v in shape.vertices):
        return False
    if any(dot(y, r) < 0 for r in shape.rays):
        return False
    return dot(y, p) + c < 0


def _apply_offset_word(gcm, anchor, word, p):
    for j in word:
        p = _reflect_offset(gcm, gcm.index(j), anchor, p)
    return p


def _witness_mixed(shape: Shape) -> list:
    """Step 1: λ - ½(λ - μ1 + μ2) = ½ μ1 + ½ (λ - μ2) for μ1 ≠ λ in the orbit, μ2 a ray."""
    out = []
    zero = tuple(Fraction(0) for _ in shape.anchor)
    for p1 in shape.vertices:
        if p1 == zero:
            continue
        for r in shape.rays:
            direction = tuple(a + b for a, b in zip(p1, r))
            target = tuple(x / 2 for x in direction)
            weights = (Fraction(1, 2), Fraction(1, 2))
            ok = _combo_ok(shape, (p1, r), weights, target, direction)
            out.append(Witness("mixed ray", direction, (p1, r), weights, target, ok))
    return out


def _witness_step2(shape: Shape, db: RootDatabase) -> list:
    """Step 2: rays λ - R>=0 β with height_{J minus J0}(β) > 0 split as an explicit convex combination."""
    from .psp import parabolic_psp_down

    gcm = shape.gcm
    anchor = shape.anchor
    jdx = gcm.indices(shape.J)
    j0 = {j for j in jdx if anchor[j] == 0}
    moving = sorted(jdx - j0)
    if not moving:
        return []
    comp = [k for k in range(gcm.rank) if k not in jdx]
    I0 = [gcm.labels[k] for k in comp + moving]
    j0_labels = [gcm.labels[j] for j in sorted(j0)]
    orbit_pts = []
    for j in moving:
        o = orbit(gcm, j0_labels, gcm.simple(gcm.labels[j]), 10 * db.height_bound + 10)
        orbit_pts.extend((v, j) for v in o.elements)
    out = []
    for beta in shape.rays:
        b = tuple(int(x) for x in beta)
        if sum(b[j] for j in moving) <= 0:
            continue
        chain = parabolic_psp_down(db, I0, b)
        firsts = [g for g in chain.steps if any(g[k] for k in comp)]
        rest = [g for g in chain.steps if not any(g[k] for k in comp)]
        g1 = firsts[0]
        pieces = []
        for g in rest:
            gens = [v for v, _ in orbit_pts]
            cert = convex_member(g, gens)
            if not cert.feasible:
                pieces = None
                break
            for coef, (v, j) in zip(cert.coefficients, orbit_pts):
                if coef > 0:
                    pieces.append((coef, v, j))
        if pieces is None:
            out.append(Witness("step-2 ray", beta, (), (), beta, False, "a step is not in the hull"))
            continue
        delta = min(anchor[j] for _, _, j in pieces) / 2 if pieces else Fraction(1)
        m = len(pieces) + 1
        points = tuple(tuple(delta * eps * x for x in v) for eps, v, _ in pieces) + (tuple(delta * x for x in g1),)
        weights = tuple(Fraction(1, m) for _ in range(m))
        target = tuple(delta / m * x for x in beta)
        ok = _combo_ok(shape, points, weights, target, beta)
        out.append(Witness("step-2 ray", beta, points, weights, target, ok))
    return out


def extremal_rays_P(gcm: GeneralizedCartanMatrix, db: RootDatabase, anchor, J: Iterable) -> ExtremalRaysReport:
    shape = build_shape(gcm, db, anchor, J)
    anchor = shape.anchor
    jdx = gcm.indices(shape.J)
    j0 = frozenset(gcm.labels[j] for j in jdx if anchor[j] == 0)
    comp = [k for k in range(gcm.rank) if k not in jdx]
    zero = tuple(Fraction(0) for _ in anchor)
    verdicts = []
    certified = set()
    for v in shape.vertices:
        for r in shape.rays:
            ver = ray_verdict(shape, v, r)
            verdicts.append(ver)
            if ver.extremal:
                certified.add((v, r))
    expected, at_lambda_expected = set(), set()
    for k in comp:
        ai = frac_vec(gcm.simple(gcm.labels[k]))
        expected |= _pair_orbit(gcm, shape.J, anchor, zero, ai)
        at_lambda_expected |= _pair_orbit(gcm, j0, anchor, zero, ai)
    at_lambda = frozenset(p for p in certified if p[0] == zero)
    witnesses = _witness_orbit_points(shape) + _witness_mixed(shape) + _witness_step2(shape, db)
    return ExtremalRaysReport(
        j0,
        frozenset(certified),
        frozenset(expected),
        at_lambda,
        frozenset(at_lambda_expected),
        tuple(verdicts),
        tuple(witnesses),
        shape.window_relative,
    )
