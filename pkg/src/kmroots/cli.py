"""Command-line entry point. Every subcommand prints one JSON document on stdout.

Exit status: 0 on success, 1 on a domain error (JSON with ``error`` and ``message``),
2 on a usage error.
"""
from __future__ import annotations

import argparse
import json
import os
import sys
from fractions import Fraction

from . import cones, psp, weights
from .cartan import classify, load_gcm
from .errors import KMRootsError, UnknownNode
from .fixtures import gcm as fixture_gcm
from .fixtures import gcm_names, scenario_names
from .roots import canonical_key, enumerate_roots, minimal_elements, slice_alphaJ, slice_In
from .weyl import delta_alphaJ_finite, delta_I1_finite

DEFAULT_H = 20
DEFAULT_D = 12


class UsageError(Exception):
    pass


def _gcm(arg: str):
    if os.path.exists(arg):
        return load_gcm(arg)
    if arg in gcm_names():
        return fixture_gcm(arg)
    raise UsageError(f"{arg!r} is neither a file nor a named matrix ({', '.join(gcm_names())})")


def _nodes(gcm, text) -> list:
    if text is None or text.strip() in ("", "-"):
        return []
    out = [t.strip() for t in text.split(",") if t.strip()]
    unknown = [t for t in out if t not in gcm.labels]
    if unknown:
        raise UnknownNode(f"unknown nodes {unknown}")
    return out


def _coords(text, rank=None, rational=False) -> tuple:
    try:
        vals = [Fraction(t.strip()) if rational else int(t.strip()) for t in text.split(",")]
    except ValueError as exc:
        raise UsageError(f"cannot parse coordinates {text!r}") from exc
    if rank is not None and len(vals) != rank:
        raise UsageError(f"expected {rank} coordinates, got {len(vals)}")
    return tuple(vals)


def _anchor(gcm, text) -> tuple:
    if text is None:
        raise UsageError("--anchor is required")
    if os.path.exists(text):
        with open(text, encoding="utf-8") as fh:
            data = json.load(fh)
        pairs = data["pairings"]
        missing = [l for l in gcm.labels if l not in pairs]
        if missing:
            raise UsageError(f"anchor file lacks pairings for {missing}")
        return tuple(Fraction(str(pairs[l])) for l in gcm.labels)
    return _coords(text, gcm.rank, rational=True)


def _vec(v) -> list:
    return [str(x) if isinstance(x, Fraction) else x for x in v]


def _sorted(vs) -> list:
    return [list(v) for v in sorted(vs, key=canonical_key)]


def _root_rows(db, vs) -> list:
    return [{"coords": list(v), "class": db.root_class(v).value} for v in sorted(vs, key=canonical_key)]


def _split(text, sep=":"):
    if sep not in text:
        raise UsageError(f"expected NODES{sep}VALUE, got {text!r}")
    a, b = text.rsplit(sep, 1)
    return a, b


# ---------------------------------------------------------------------------


def cmd_classify(args) -> dict:
    return classify(_gcm(args.gcm)).to_json()


def cmd_roots(args) -> object:
    gcm = _gcm(args.gcm)
    db = enumerate_roots(gcm, args.max_height)
    if args.slice:
        nodes, n = _split(args.slice)
        vs = slice_In(db, _nodes(gcm, nodes), int(n))
        out = {"slice": _root_rows(db, vs)}
    elif args.alpha_j:
        a, J = _split(args.alpha_j, ";")
        vs = slice_alphaJ(db, _coords(a, gcm.rank), _nodes(gcm, J))
        out = {"slice": _root_rows(db, vs)}
    elif args.minimal:
        nodes, n = _split(args.minimal)
        m = minimal_elements(db, _nodes(gcm, nodes), int(n))
        out = {"minimal": _sorted(m.elements), "truncation_sensitive": m.truncation_sensitive}
    else:
        out = {"roots": _root_rows(db, db.positive_roots), "saturated": db.saturated}
    out["max_height"] = args.max_height
    if args.out == "tsv":
        rows = out.get("roots") or out.get("slice") or [{"coords": v, "class": ""} for v in out.get("minimal", [])]
        return "\n".join("\t".join([",".join(map(str, r["coords"])), r["class"]]) for r in rows)
    return out


def cmd_psp(args) -> dict:
    gcm = _gcm(args.gcm)
    db = enumerate_roots(gcm, args.max_height)
    I = _nodes(gcm, args.I) if args.I else list(gcm.labels)
    beta = _coords(args.beta, gcm.rank)
    direction = psp.UP if args.up else psp.DOWN
    if args.short:
        chain = psp.short_psp(db, I, beta, direction)
    elif args.up:
        g = psp.going_up(db, I, beta)
        out = {"gamma": None if g.gamma is None else list(g.gamma), "status": g.status, "truncated": g.truncated}
        return out
    else:
        chain = psp.parabolic_psp_down(db, I, beta)
    out = chain.to_json()
    if args.explain:
        out["explain"] = {"I": I, "max_height": args.max_height, "database_saturated": db.saturated}
    return out


def cmd_probes(args) -> object:
    names = scenario_names() if args.fixture == "all" else [args.fixture]
    out = {}
    for name in names:
        reports = psp.probe_fixture(name, args.max_height)
        out[name] = [r.to_json() for r in reports]
    if len(names) == 1:
        rs = out[names[0]]
        return rs[0] if len(rs) == 1 else rs
    return out


def cmd_finiteness(args) -> dict:
    gcm = _gcm(args.gcm)
    if args.alpha:
        rep = delta_alphaJ_finite(gcm, _coords(args.alpha, gcm.rank), _nodes(gcm, args.J))
    else:
        rep = delta_I1_finite(gcm, _nodes(gcm, args.I))
    return rep.to_json()


def cmd_weights(args) -> dict:
    gcm = _gcm(args.gcm)
    anchor = _anchor(gcm, args.anchor)
    J = _nodes(gcm, args.J) if args.J is not None else sorted(weights.J_lambda(gcm, anchor))
    D = args.max_depth
    db = enumerate_roots(gcm, max(D, 1))
    if args.formula == "all":
        res = weights.formulas_agree(gcm, db, anchor, J, D)
        return {
            weights.SLICE: res[weights.SLICE].to_json(),
            weights.MINKOWSKI: res[weights.MINKOWSKI].to_json(),
            weights.MINIMAL: res[weights.MINIMAL].to_json(),
            "agree": res["agree"],
        }
    if args.formula == "slice":
        return weights.wt_slice(gcm, anchor, J, D).to_json()
    if args.formula == "minkowski":
        return weights.wt_minkowski(gcm, db, anchor, J, D).to_json()
    return weights.wt_minimal(gcm, db, anchor, J, D).to_json()


def cmd_weight_chain(args) -> dict:
    gcm = _gcm(args.gcm)
    anchor = _anchor(gcm, args.anchor)
    J = _nodes(gcm, args.J) if args.J is not None else sorted(weights.J_lambda(gcm, anchor))
    mu0 = _coords(args.from_, gcm.rank)
    mu = _coords(args.to, gcm.rank)
    db = enumerate_roots(gcm, max(sum(mu0), 1))
    return weights.weight_chain(gcm, db, anchor, J, mu0, mu).to_json()


def _load_seeds(gcm, text) -> list:
    if os.path.exists(text):
        with open(text, encoding="utf-8") as fh:
            data = json.load(fh)
        seeds = data["seeds"] if isinstance(data, dict) else data
        out = []
        for s in seeds:
            if isinstance(s, dict):
                s = [s["pairings"][l] for l in gcm.labels]
            out.append(tuple(Fraction(str(x)) for x in s))
        return out
    return [_coords(t, gcm.rank, rational=True) for t in text.split(";")]


def cmd_saturate(args) -> dict:
    gcm = _gcm(args.gcm)
    U = weights.saturate(gcm, _load_seeds(gcm, args.seeds))
    out = U.to_json()
    if args.from_ and args.to:
        out["chain"] = weights.saturated_chain(U, _coords(args.from_, gcm.rank), _coords(args.to, gcm.rank)).to_json()
    return out


def cmd_cones(args) -> dict:
    gcm = _gcm(args.gcm)
    if args.action == "extremal-rays":
        return cmd_extremal_rays(args)
    db = enumerate_roots(gcm, args.max_height)
    if args.action in ("member", "extremal"):
        if not args.target:
            raise UsageError("--target is required")
        target = _coords(args.target, gcm.rank, rational=True)
        if args.generators:
            gens = [_coords(g, gcm.rank, rational=True) for g in args.generators.split(";")]
        else:
            gens = sorted(slice_In(db, _nodes(gcm, args.I), 1), key=canonical_key)
        if args.action == "extremal":
            return cones.extremal_ray_check(target, gens).to_json()
        cert = cones.cone_member(target, gens) if args.conic else cones.convex_member(target, gens)
        return cert.to_json()
    if args.action == "lemma61":
        return cones.lemma61_check(db, _nodes(gcm, args.I), args.n).to_json()
    raise UsageError(f"unknown cones action {args.action!r}")


def cmd_extremal_rays(args) -> dict:
    gcm = _gcm(args.gcm)
    db = enumerate_roots(gcm, args.max_height)
    anchor = _anchor(gcm, args.anchor)
    return cones.extremal_rays_P(gcm, db, anchor, _nodes(gcm, args.J)).to_json()


# ---------------------------------------------------------------------------


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="kmroots", description="Exact root and weight combinatorics for Kac-Moody algebras.")
    sub = p.add_subparsers(dest="command", parser_class=_Parser)
    sub.required = True

    def add(name, func, help_text):
        sp = sub.add_parser(name, help=help_text)
        sp.set_defaults(func=func)
        return sp

    sp = add("classify", cmd_classify, "finite / affine / indefinite per block")
    sp.add_argument("--gcm", required=True, help="JSON file or a named matrix such as A2")

    sp = add("roots", cmd_roots, "positive roots up to a height bound")
    sp.add_argument("--gcm", required=True)
    sp.add_argument("--max-height", type=int, default=DEFAULT_H)
    sp.add_argument("--slice", help="NODES:n, e.g. 2:1")
    sp.add_argument("--alpha-j", help="COORDS;NODES, e.g. 0,1,0;1,3")
    sp.add_argument("--minimal", help="NODES:n")
    sp.add_argument("--out", choices=["json", "tsv"], default="json")

    sp = add("psp", cmd_psp, "partial-sum chains")
    sp.add_argument("--gcm", required=True)
    sp.add_argument("--I", help="node list; all nodes when omitted")
    sp.add_argument("--beta", required=True)
    sp.add_argument("--up", action="store_true")
    sp.add_argument("--short", action="store_true")
    sp.add_argument("--explain", action="store_true")
    sp.add_argument("--max-height", type=int, default=DEFAULT_H)

    sp = add("probes", cmd_probes, "regression probes for the worked examples")
    sp.add_argument("--fixture", required=True, choices=scenario_names() + ["all"])
    sp.add_argument("--max-height", type=int, default=DEFAULT_H)

    sp = add("finiteness", cmd_finiteness, "structural finiteness of Δ_{α,J} or Δ_{I,1}")
    sp.add_argument("--gcm", required=True)
    sp.add_argument("--alpha")
    sp.add_argument("--J")
    sp.add_argument("--I")

    sp = add("weights", cmd_weights, "truncated weight sets")
    sp.add_argument("--gcm", required=True)
    sp.add_argument("--anchor", required=True, help="JSON file or comma-separated pairings")
    sp.add_argument("--J", help="integrability; J_lambda when omitted")
    sp.add_argument("--max-depth", type=int, default=DEFAULT_D)
    sp.add_argument("--formula", choices=["slice", "minkowski", "minimal", "all"], default="slice")

    sp = add("weight-chain", cmd_weight_chain, "simple-root chain between comparable weights")
    sp.add_argument("--gcm", required=True)
    sp.add_argument("--anchor", required=True)
    sp.add_argument("--J")
    sp.add_argument("--from", dest="from_", required=True, help="depth of the lower weight")
    sp.add_argument("--to", required=True, help="depth of the higher weight")

    sp = add("saturate", cmd_saturate, "closure under simple-root strings (finite type)")
    sp.add_argument("--gcm", required=True)
    sp.add_argument("--seeds", required=True, help="JSON file or ';'-separated pairing vectors")
    sp.add_argument("--from", dest="from_")
    sp.add_argument("--to")

    def rays_args(sp):
        sp.add_argument("--gcm", required=True)
        sp.add_argument("--anchor")
        sp.add_argument("--J", default="")
        sp.add_argument("--max-height", type=int, default=DEFAULT_H)

    sp = add("cones", cmd_cones, "convex membership, extremality and generator checks")
    sp.add_argument("action", choices=["member", "extremal", "lemma61", "extremal-rays"])
    rays_args(sp)
    sp.add_argument("--I", default="")
    sp.add_argument("--n", type=int, default=1)
    sp.add_argument("--target")
    sp.add_argument("--generators", help="';'-separated vectors; Δ_{I,1} when omitted")
    sp.add_argument("--conic", action="store_true", help="drop the sum-to-one constraint")

    sp = add("extremal-rays", cmd_extremal_rays, "extremal rays of P(λ,J)")
    rays_args(sp)
    return p


def _emit(out) -> None:
    if isinstance(out, str):
        print(out)
    else:
        print(json.dumps(out, ensure_ascii=False, indent=2))


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        out = args.func(args)
    except UsageError as exc:
        print(f"kmroots: {exc}", file=sys.stderr)
        return 2
    except KMRootsError as exc:
        _emit(exc.to_json())
        return 1
    _emit(out)
    return 0


if __name__ == "__main__":
    sys.exit(main())
