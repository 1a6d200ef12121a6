"""Brute-force reference implementations used only by the tests.

Each oracle takes a different route from the library code it checks: root membership
comes from Weyl closures instead of descent, weight diagrams from orbits of dominant
weights instead of dominance tests, Minkowski sets from plain recursion.
"""
from collections import deque
from fractions import Fraction
from itertools import product


def _reflect(A, k, v):
    p = sum(A[k][i] * v[i] for i in range(len(v)))
    return tuple(c - p if i == k else c for i, c in enumerate(v))


def _connected(A, idx):
    idx = set(idx)
    if not idx:
        return False
    start = min(idx)
    seen, stack = {start}, [start]
    while stack:
        i = stack.pop()
        for j in idx:
            if j not in seen and A[i][j] != 0:
                seen.add(j)
                stack.append(j)
    return seen == idx


def _closure_in_box(A, seeds, bound):
    n = len(A)
    seen = set(seeds)
    queue = deque(seeds)
    while queue:
        v = queue.popleft()
        for k in range(n):
            w = _reflect(A, k, v)
            if w not in seen and all(abs(c) <= bound for c in w):
                seen.add(w)
                queue.append(w)
    return seen


def root_oracle(gcm, bound):
    """Map every root with coordinates in [-bound, bound] to 'real' or 'imaginary'."""
    A = gcm.entries
    n = gcm.rank
    simples = [tuple(1 if i == k else 0 for i in range(n)) for k in range(n)]
    real = _closure_in_box(A, simples, bound)
    fundamental = []
    for v in product(range(bound + 1), repeat=n):
        if not any(v):
            continue
        if not _connected(A, [i for i, c in enumerate(v) if c]):
            continue
        if all(sum(A[k][i] * v[i] for i in range(n)) <= 0 for k in range(n)):
            fundamental.append(v)
    imag = _closure_in_box(A, fundamental, bound)
    out = {v: "real" for v in real}
    for v in imag:
        out[v] = "imaginary"
        out[tuple(-c for c in v)] = "imaginary"
    return out


def positive_roots_by_closure(gcm, bound):
    return {v for v, c in root_oracle(gcm, bound).items() if all(x >= 0 for x in v)}


def integrable_weights_oracle(gcm, anchor, J, D):
    """Depths of the integrable g_J-module weights: W_J-orbits of the J-dominant
    weights in λ - Z>=0 Π_J, clipped to total depth D."""
    A = gcm.entries
    n = gcm.rank
    jdx = sorted(gcm.indices(J))

    def pair(k, c):
        return Fraction(anchor[k]) - sum(A[k][i] * c[i] for i in range(n))

    dominant = []
    for c in product(range(D + 1), repeat=len(jdx)):
        depth = [0] * n
        for j, x in zip(jdx, c):
            depth[j] = x
        depth = tuple(depth)
        if sum(depth) <= D and all(pair(k, depth) >= 0 for k in jdx):
            dominant.append(depth)
    out = set()
    for d in dominant:
        seen = {d}
        queue = deque([d])
        while queue:
            x = queue.popleft()
            for k in jdx:
                p = pair(k, x)
                y = tuple(c + int(p) if i == k else c for i, c in enumerate(x))
                if y not in seen and min(y) >= 0 and sum(y) <= 3 * D + 10:
                    seen.add(y)
                    queue.append(y)
        out |= {x for x in seen if sum(x) <= D}
    return out


def minkowski_oracle(base, generators, D):
    """Naive recursive Minkowski closure: base + Z>=0 generators, depth at most D."""
    out = set()

    def go(v, start):
        if sum(v) > D or v in out_seen.get(start, set()):
            return
        out_seen.setdefault(start, set()).add(v)
        out.add(v)
        for k in range(start, len(generators)):
            go(tuple(a + b for a, b in zip(v, generators[k])), k)

    out_seen = {}
    for b in base:
        go(tuple(b), 0)
    return out


def lattice_box(n, lo, hi):
    return product(range(lo, hi + 1), repeat=n)
