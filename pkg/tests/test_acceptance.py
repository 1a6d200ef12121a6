"""Acceptance suite: one PASS/FAIL line per criterion.

Run under pytest, or directly with ``python3 tests/test_acceptance.py``.
"""
import itertools
import os
import sys
import time
from fractions import Fraction as F

import pytest

sys.path.insert(0, os.path.dirname(__file__))

from oracles import root_oracle  # noqa: E402

from kmroots import cones, psp, weights  # noqa: E402
from kmroots.cartan import bilinear_form, symmetrizer  # noqa: E402
from kmroots.errors import HypothesisViolated  # noqa: E402
from kmroots.fixtures import KINDS, gcm, gcm_names  # noqa: E402
from kmroots.roots import (  # noqa: E402
    enumerate_roots,
    height,
    is_root,
    leq,
    short_roots,
    slice_alphaJ,
    slice_In,
)
from kmroots.weyl import delta_alphaJ_finite, orbit  # noqa: E402

FINITE = [n for n in gcm_names() if KINDS[n] == "finite"]
ANCHORS = [
    ("A2", (1, F(-1, 2))),
    ("A3", (1, -1, 2)),
    ("B2", (2, F(-3, 2))),
    ("C2(1)", (1, 0, F(-1, 2))),
]


def nonempty_subsets(labels):
    return [list(c) for k in range(1, len(labels) + 1) for c in itertools.combinations(labels, k)]


def subsets(labels):
    return [[]] + nonempty_subsets(labels)


def criterion_1():
    t0 = time.perf_counter()
    bad = []
    for name in ["A2", "B2", "G2", "A1(1)", "C2(1)", "Hyp3"]:
        g = gcm(name)
        oracle = root_oracle(g, 8)
        for v in itertools.product(range(-8, 9), repeat=g.rank):
            got = is_root(g, v)
            want = oracle.get(v, "not_root")
            if got.value != want:
                bad.append((name, v, got.value, want))
    sizes = {n: len(enumerate_roots(gcm(n), 20).positive_roots) for n in ("A2", "B2", "G2")}
    sat = all(enumerate_roots(gcm(n), 20).saturated for n in sizes)
    dt = time.perf_counter() - t0
    ok = not bad and sizes == {"A2": 3, "B2": 4, "G2": 6} and sat and dt < 10
    return ok, dt, f"mismatches={len(bad)} |Δ+|={list(sizes.values())} saturated={sat}"


def criterion_2():
    t0 = time.perf_counter()
    checked = failures = 0
    for name in gcm_names():
        db = enumerate_roots(gcm(name), 20)
        g = db.gcm
        for I in nonempty_subsets(g.labels):
            idx = g.indices(I)
            steps = slice_In(db, I, 1)
            for beta in db.positive_roots:
                hI = sum(beta[i] for i in idx)
                if hI < 1:
                    continue
                checked += 1
                chain = psp.parabolic_psp_down(db, I, beta)
                good = (
                    len(chain) == hI
                    and chain.partials[-1] == beta
                    and all(s in steps for s in chain.steps)
                    and all(is_root(g, p).is_root for p in chain.partials)
                )
                failures += not good
    dt = time.perf_counter() - t0
    return failures == 0 and dt < 60, dt, f"chains={checked} failures={failures}"


def criterion_3():
    t0 = time.perf_counter()
    cases = diffs = 0
    for name, anchor in ANCHORS:
        g = gcm(name)
        db = enumerate_roots(g, 15)
        for J in subsets(sorted(weights.J_lambda(g, anchor))):
            res = weights.formulas_agree(g, db, anchor, J, 15)
            a, b, c = (res[k].members for k in ("slice", "minkowski", "minimal"))
            diffs += len(a ^ b) + len(a ^ c)
            cases += 1
    dt = time.perf_counter() - t0
    return diffs == 0 and dt < 60, dt, f"cases={cases} symmetric_difference={diffs}"


def _adjoint_set(db, H):
    zero = (0,) * db.gcm.rank
    pos = [v for v in db.positive_roots if height(v) <= H]
    return [zero] + pos + [tuple(-x for x in v) for v in pos]


def criterion_4():
    t0 = time.perf_counter()
    pairs = failures = 0
    for name, anchor in ANCHORS:
        g = gcm(name)
        for J in subsets(sorted(weights.J_lambda(g, anchor))):
            ws = weights.wt_slice(g, anchor, J, 8)
            for mu0, mu in weights.all_depth_pairs(ws.members):
                pairs += 1
                ch = weights.weight_chain(g, None, anchor, J, mu0, mu)
                simple = all(sorted(x) == [0] * (g.rank - 1) + [1] for x in ch.increments)
                linked = all(weights.parabolic_verma_member(g, J, anchor, w) for w in ch.weights)
                ends = ch.weights[0] == mu0 and ch.weights[-1] == mu
                failures += not (simple and linked and ends and len(ch) == sum(mu0) - sum(mu))
    adj = 0
    for name in gcm_names():
        db = enumerate_roots(gcm(name), 12)
        g = db.gcm
        pts = _adjoint_set(db, 12)
        for a, b in itertools.permutations(pts, 2):
            if not leq(a, b):
                continue
            adj += 1
            ch = psp.root_to_root_chain(db, a, b)
            inside = all(not any(p) or is_root(g, p).is_root for p in ch.path)
            simple = all(sorted(s) == [0] * (g.rank - 1) + [1] for s in ch.steps)
            failures += not (inside and simple and len(ch) == height(b) - height(a) and ch.path[-1] == b)
    dt = time.perf_counter() - t0
    return failures == 0, dt, f"weight_pairs={pairs} root_pairs={adj} failures={failures}"


def criterion_5():
    t0 = time.perf_counter()
    reports = psp.probe_remark_fixtures()
    all_hold = all(r.holds for rs in reports.values() for r in rs)
    coeffs = reports["remark-3.3-2"][0].extra["certificate"]["coefficients"]
    r311 = reports["remark-3.11"][0].extra
    empties = [r.outcome for k, rs in reports.items() if k.startswith(("remark-3.10", "remark-5.11")) for r in rs]
    ok = (
        all_hold
        and reports["remark-3.3-1"][0].outcome == "HOLDS"
        and coeffs == ["1/2", "1/2"]
        and r311["unique_subtractable"] == "α1"
        and r311["class_of_difference"] == "imaginary"
        and empties == ["EMPTY"] * 7
    )
    dt = time.perf_counter() - t0
    return ok, dt, f"fixtures={len(reports)} reports={sum(map(len, reports.values()))}"


def criterion_6():
    t0 = time.perf_counter()
    mismatches = []
    for name in gcm_names():
        g = gcm(name)
        db40 = enumerate_roots(g, 40)
        for a in g.labels:
            alpha = g.simple(a)
            for J in subsets([x for x in g.labels if x != a]):
                finite = delta_alphaJ_finite(g, alpha, J).finite
                full = slice_alphaJ(db40, alpha, J)
                low = {v for v in full if height(v) <= 20}
                if finite != (full == low):
                    mismatches.append((name, a, J))
    aff = enumerate_roots(gcm("A1(1)"), 40)
    three = slice_alphaJ(aff, (1, 0), ["2"])
    hyp = gcm("Hyp3")
    counts = [len(slice_alphaJ(enumerate_roots(hyp, h), (0, 0, 1), ["1", "2"])) for h in (20, 30, 40)]
    ok = (
        not mismatches
        and len(three) == 3
        and delta_alphaJ_finite(gcm("A1(1)"), (1, 0), ["2"]).finite
        and not delta_alphaJ_finite(hyp, (0, 0, 1), ["1", "2"]).finite
        and counts[0] < counts[1] < counts[2]
    )
    dt = time.perf_counter() - t0
    return ok, dt, f"verdict_mismatches={len(mismatches)} A1(1)={len(three)} Hyp3={counts}"


def criterion_7():
    t0 = time.perf_counter()
    ok = True
    for name in ("A3", "B2"):
        db = enumerate_roots(gcm(name), 20)
        g = db.gcm
        rep = cones.lemma61_check(db, ["2"], 1)
        comp = [x for x in g.labels if x != "2"]
        expected = set(orbit(g, comp, g.simple("2"), 20).elements)
        ok &= rep.ok and set(rep.generators) == expected
    dt = time.perf_counter() - t0
    return ok, dt, "A3 I={2}, B2 I={2}"


def criterion_8():
    t0 = time.perf_counter()
    ok = True
    for name, alpha, J in (("A1(1)", (1, 0), ["2"]), ("A3", (0, 1, 0), ["1", "3"])):
        db = enumerate_roots(gcm(name), 20)
        ok &= cones.lemma65_check(db, alpha, J).ok
        ok &= cones.cor66_check(db, alpha, J).consistent
    dt = time.perf_counter() - t0
    return ok, dt, "A1(1) α1 J={2}, A3 α2 J={1,3}"


def _grid(n, count=200):
    vals = [F(k, 3) for k in range(-3, 12)]
    pts = list(itertools.product(vals, repeat=n))
    return pts[:: len(pts) // count][:count]


def criterion_9():
    t0 = time.perf_counter()
    ok = True
    notes = []
    for name, anchor in (("A2", (1, 1)), ("A3", (1, 1, 1))):
        g = gcm(name)
        db = enumerate_roots(g, 20)
        grid = _grid(g.rank)
        assert len(grid) == 200
        for J in (["1"], list(g.labels)):
            rep = cones.propA1_check(g, db, anchor, J, grid)
            ok &= rep.ok
            notes.append(f"{name}{J}:{rep.inside}/{rep.points}")
    a2 = gcm("A2")
    db = enumerate_roots(a2, 20)
    for anchor in ((1, 1), (0, 1)):
        rep = cones.extremal_rays_P(a2, db, anchor, ["1"])
        ok &= rep.ok and all(w.valid for w in rep.witnesses)
    ok &= bool(cones.extremal_rays_P(a2, db, (0, 1), ["1"]).J0)
    dt = time.perf_counter() - t0
    return ok, dt, " ".join(notes)


def criterion_10():
    t0 = time.perf_counter()
    ok = True
    for name in FINITE:
        db = enumerate_roots(gcm(name), 20)
        for I in nonempty_subsets(db.gcm.labels):
            ok &= psp.cor35_bound(db, I)["holds"]
    chains = 0
    for name in ("B2", "G2"):
        db = enumerate_roots(gcm(name), 20)
        g = db.gcm
        sym = symmetrizer(g)
        shorts = short_roots(db)
        low = min(bilinear_form(sym, g, v, v) for v in shorts)
        for I in nonempty_subsets(g.labels):
            for beta in sorted(shorts):
                for direction in (psp.DOWN, psp.UP):
                    try:
                        ch = psp.short_psp(db, I, beta, direction)
                    except HypothesisViolated:
                        continue
                    chains += 1
                    ok &= all(bilinear_form(sym, g, p, p) == low for p in ch.partials)
                    ok &= all(s in slice_In(db, I, 1) for s in ch.steps)
    ok &= chains > 0
    dt = time.perf_counter() - t0
    return ok, dt, f"short_chains={chains}"


CRITERIA = [
    criterion_1, criterion_2, criterion_3, criterion_4, criterion_5,
    criterion_6, criterion_7, criterion_8, criterion_9, criterion_10,
]


def _line(k, ok, dt, detail):
    return f"criterion {k:2d}: {'PASS' if ok else 'FAIL'} ({dt:.2f}s) {detail}"


@pytest.mark.parametrize("k", range(1, 11))
def test_criterion(k, capsys):
    ok, dt, detail = CRITERIA[k - 1]()
    with capsys.disabled():
        print("\n" + _line(k, ok, dt, detail))
    assert ok, detail


if __name__ == "__main__":
    results = [fn() for fn in CRITERIA]
    for k, (ok, dt, detail) in enumerate(results, 1):
        print(_line(k, ok, dt, detail))
    sys.exit(0 if all(r[0] for r in results) else 1)
