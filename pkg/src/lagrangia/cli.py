"""Command line interface: ``lagrangian <verb> ...``.

Exit codes: 0 success (all assertions pass), 1 an assertion failed, 2 usage or
input error. Output is JSON unless ``--pretty`` is given (or the verb emits a
``.hg`` file).
"""

from __future__ import annotations

import argparse
import json
import logging
import sys
from fractions import Fraction

from . import __version__
from .algorithms import dense_compressed_subgraph, left_compress_to_fixpoint, symmetrize_and_clean
from .bounds import FORMULAS, DomainError, closed_form
from .constructions import construct
from .enumeration import ScaleError, enumerate_free, parse_predicate, turan_bruteforce
from .hypergraph import HypergraphError, compress, dumps, loads
from .lagrangian import OptimizerConfig, maximize, maximize_bounded, motzkin_straus
from .suites import SUITES, SuiteError, _jsonable, parse_param, verify

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


def _read_graph(path: str):
    text = sys.stdin.read() if path == "-" else open(path).read()
    return loads(text)


def _emit(obj, pretty: bool = False) -> None:
    data = _jsonable(obj)
    if pretty:
        print(json.dumps(data, indent=2, sort_keys=True))
    else:
        print(json.dumps(data, sort_keys=True))


def _config(args) -> OptimizerConfig:
    return OptimizerConfig(restarts=args.restarts, seed=args.seed, max_iterations=args.max_iterations)


def _fraction(text: str) -> Fraction:
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise UsageError(f"not a number: {text!r}") from None


def _graph_json(G) -> dict:
    return {"r": G.r, "n": G.n, "edges": [list(e) for e in G.edges]}


# ------------------------------------------------------------------ verbs


def cmd_compute(args) -> int:
    G = _read_graph(args.file)
    cfg = _config(args)
    if args.bound is not None:
        res = maximize_bounded(G, _fraction(args.bound), cfg)
    else:
        res = maximize(G, cfg)
    out = {"graph": {"r": G.r, "n": G.n, "edges": len(G)}, "result": res.to_json()}
    if G.r == 2 and args.bound is None:
        out["exact"] = str(motzkin_straus(G))
    _emit(out, args.pretty)
    return EXIT_OK


def cmd_construct(args) -> int:
    text = dumps(construct(args.spec))
    if args.output:
        with open(args.output, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return EXIT_OK


def cmd_compress(args) -> int:
    G = _read_graph(args.file)
    if args.pair:
        i, j = args.pair
        H = compress(G, i, j)
        _emit({"graph": _graph_json(H), "moved": len(set(G.edges) - set(H.edges))}, args.pretty)
        return EXIT_OK
    if not args.weights:
        raise UsageError("compress needs --pair I J or --weights w1,w2,...")
    x = [_fraction(w) for w in args.weights.split(",")]
    H, trace = left_compress_to_fixpoint(G, x)
    _emit({"graph": _graph_json(H), "trace": trace}, args.pretty)
    return EXIT_OK


def cmd_dense_sub(args) -> int:
    G = _read_graph(args.file)
    out = dense_compressed_subgraph(G, _config(args), tol=args.tol)
    _emit({"graph": _graph_json(out.graph), "witness": list(out.witness), "trace": out.trace}, args.pretty)
    return EXIT_OK


def cmd_symmetrize(args) -> int:
    G = _read_graph(args.file)
    forbid = None
    if args.forbid:
        spec, sep, p = args.forbid.rpartition(":")
        if not sep:
            raise UsageError("--forbid takes SPEC:p, e.g. matching:3:2:6")
        forbid = (construct(spec), int(p))
    out = symmetrize_and_clean(G, _fraction(args.alpha), forbid)
    _emit({"graph": _graph_json(out.graph), "labels": list(out.labels), "removed": [list(z) for z in out.removed],
           "trace": out.trace}, args.pretty)
    return EXIT_OK


def cmd_enumerate(args) -> int:
    preds = [parse_predicate(p) for p in args.pred]
    kw = dict(force=args.force_scale, limit=args.limit)
    if args.checkpoint or args.resume:
        kw.update(checkpoint=args.checkpoint, resume=args.resume)
    graphs = list(enumerate_free(args.r, args.n, preds, **kw))
    out = {"r": args.r, "n": args.n, "predicates": [p.name for p in preds], "count": len(graphs)}
    if not args.count:
        out["graphs"] = [_graph_json(G) for G in graphs]
    _emit(out, args.pretty)
    return EXIT_OK


def cmd_turan(args) -> int:
    if args.brute:
        if not args.forbid:
            raise UsageError("turan --brute needs --forbid SPEC")
        F = construct(args.forbid)
        if F.r != args.r:
            raise UsageError(f"forbidden graph is {F.r}-uniform, expected {args.r}")
        value = turan_bruteforce(args.r, args.n, F, force=args.force_scale)
        _emit({"r": args.r, "n": args.n, "forbid": args.forbid, "ex": value}, args.pretty)
        return EXIT_OK
    if args.m is None:
        raise UsageError("turan needs --m (blowup count) or --brute --forbid SPEC")
    value = closed_form("turan-count", r=args.r, m=args.m, n=args.n)
    _emit({"r": args.r, "m": args.m, "n": args.n, "edges": int(value)}, args.pretty)
    return EXIT_OK


def cmd_closed_form(args) -> int:
    params = {}
    for item in args.params:
        key, value = parse_param(item)
        params[key] = value
    value = closed_form(args.name, **params)
    _emit({"name": args.name, "params": params, "value": value,
           "float": float(value) if isinstance(value, Fraction) else None}, args.pretty)
    return EXIT_OK


def cmd_verify(args) -> int:
    params = dict(parse_param(p) for p in args.param)
    rep = verify(args.suite, seed=args.seed, params=params)
    text = rep.pretty() + "\n" if args.pretty else rep.dumps()
    if args.output:
        with open(args.output, "w") as fh:
            fh.write(rep.dumps())
    sys.stdout.write(text)
    return EXIT_OK if rep.passed else EXIT_FAIL


# ----------------------------------------------------------------- parser


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="lagrangian", description="Hypergraph Lagrangians and extremal checks.")
    ap.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    ap.add_argument("-v", "--verbose", action="store_true", help="log progress to stderr")
    sub = ap.add_subparsers(dest="verb", required=True)

    def common(p, optimizer=True):
        p.add_argument("--pretty", action="store_true", help="indented output")
        if optimizer:
            p.add_argument("--restarts", type=int, default=50)
            p.add_argument("--seed", type=int, default=0)
            p.add_argument("--max-iterations", type=int, default=10_000)

    p = sub.add_parser("compute", help="maximize the Lagrangian of a .hg graph")
    p.add_argument("file", help=".hg file, or - for stdin")
    p.add_argument("--bound", help="cap b on every weight (e.g. 1/7)")
    common(p)
    p.set_defaults(func=cmd_compute)

    p = sub.add_parser("construct", help="write a named construction as .hg")
    p.add_argument("spec", help="e.g. complete:3:5, turan-blowup:3:5:12, extension:6:matching:3:2")
    p.add_argument("-o", "--output")
    p.set_defaults(func=cmd_construct)

    p = sub.add_parser("compress", help="one compression, or compress to a fixpoint for given weights")
    p.add_argument("file")
    p.add_argument("--pair", type=int, nargs=2, metavar=("I", "J"))
    p.add_argument("--weights", help="comma separated weights (fractions allowed)")
    common(p, optimizer=False)
    p.set_defaults(func=cmd_compress)

    p = sub.add_parser("dense-sub", help="dense and compressed subgraph with an optimum witness")
    p.add_argument("file")
    p.add_argument("--tol", type=float, default=1e-7)
    common(p)
    p.set_defaults(func=cmd_dense_sub)

    p = sub.add_parser("symmetrize", help="symmetrization and cleaning with threshold alpha")
    p.add_argument("file")
    p.add_argument("--alpha", required=True)
    p.add_argument("--forbid", help="SPEC:p, audit every step for a weak extension of SPEC with core size p")
    common(p, optimizer=False)
    p.set_defaults(func=cmd_symmetrize)

    p = sub.add_parser("enumerate", help="isomorphism classes satisfying predicates")
    p.add_argument("--r", type=int, required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--pred", action="append", default=[],
                   help="matching-free:t, clique-free:p, no-isolated, left-compressed, free:SPEC, weak-free:SPEC:p")
    p.add_argument("--limit", type=int)
    p.add_argument("--count", action="store_true", help="only report the number of classes")
    p.add_argument("--force-scale", action="store_true")
    p.add_argument("--checkpoint", help="write the search frontier here after every level")
    p.add_argument("--resume", help="continue from a checkpoint file")
    common(p, optimizer=False)
    p.set_defaults(func=cmd_enumerate)

    p = sub.add_parser("turan", help="Turan blowup edge counts, or exact ex(n, F) by brute force")
    p.add_argument("--r", type=int, required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--m", type=int)
    p.add_argument("--brute", action="store_true")
    p.add_argument("--forbid", help="construction spec of F")
    p.add_argument("--force-scale", action="store_true")
    common(p, optimizer=False)
    p.set_defaults(func=cmd_turan)

    p = sub.add_parser("closed-form", help="evaluate a named formula: " + ", ".join(sorted(FORMULAS)))
    p.add_argument("name")
    p.add_argument("params", nargs="*", help="key=value, e.g. t=3 b=1/8")
    common(p, optimizer=False)
    p.set_defaults(func=cmd_closed_form)

    p = sub.add_parser("verify", help="run a verification suite: " + ", ".join(SUITES))
    p.add_argument("suite")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--param", action="append", default=[], help="key=value scale parameter")
    p.add_argument("--pretty", action="store_true", help="table instead of JSON")
    p.add_argument("-o", "--output", help="also write the JSON report here")
    p.set_defaults(func=cmd_verify)
    return ap


def main(argv: list[str] | None = None) -> int:
    ap = build_parser()
    args = ap.parse_args(argv)
    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    try:
        return args.func(args)
    except (UsageError, HypergraphError, DomainError, ScaleError, SuiteError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
