"""Command line entry point.

stdout carries the JSON payload and stderr the logs.  Exit status: 0 for a success or
affirmative answer, 1 for a negative answer, 2 for usage and parse errors.
"""
from __future__ import annotations

import argparse
import hashlib
import json
import logging
import os
import sys
import time

from . import graph as gr
from .automorphism import automorphisms, labeling_orbits
from .graph import Graph, GraphError
from .labeling import (
    InapplicableError,
    InvalidLabelingError,
    ModularLabeling,
    parse_labeling,
    reduce_mod_p,
    verify_distance_magic,
    verify_p_distance_magic,
)
from .search import (
    SearchConfig,
    census_dm_graphs,
    count_dm_labelings,
    crt_combine,
    find_dm_labelings,
    find_p_dm_labelings,
)
from .spectral import spectral_report

log = logging.getLogger("magicdist")

EXIT_OK, EXIT_NEGATIVE, EXIT_USAGE = 0, 1, 2

ALIASES = {
    "knm": "complete_minus_matching",
    "cone": "cone_cover",
    "union": "disjoint_union",
    "singular": "singular_even",
    "ndm": "fig_ndm",
    "star": "star",
    "edgeless": "edgeless",
}


class UsageError(Exception):
    pass


def parse_construct(spec: str) -> Graph:
    """``family:params``, e.g. ``knm:6``, ``cone:knm:4``, ``union:path:3+cycle:4``."""
    family, _, rest = spec.partition(":")
    family = ALIASES.get(family, family)
    if family == "cone_cover":
        return gr.cone_cover(parse_construct(rest))
    if family == "disjoint_union":
        return gr.disjoint_union(*(parse_construct(part) for part in rest.split("+")))
    if family == "fig_ndm":
        return gr.fig_ndm()
    if family == "star":
        return gr.star(int(rest))
    if family == "edgeless":
        return gr.edgeless(int(rest))
    try:
        n = int(rest)
    except ValueError:
        raise UsageError(f"cannot read the order in {spec!r}") from None
    return gr.construct(family, n)


def load_graph(args) -> Graph:
    given = [x for x in (args.g6, args.edges, args.construct) if x is not None]
    if len(given) != 1:
        raise UsageError("give exactly one of --g6, --edges, --construct")
    if args.g6 is not None:
        return gr.parse_graph6(args.g6)
    if args.edges is not None:
        with open(args.edges) as fh:
            return gr.parse_edge_list_text(fh.read())
    return parse_construct(args.construct)


def _threads(args) -> int:
    if getattr(args, "threads", None):
        return args.threads
    env = os.environ.get("MAGICDIST_THREADS")
    return int(env) if env else 1


def _cert_json(cert) -> dict:
    out = {"magic": True, "k": cert.k, "weights": list(cert.weights)}
    if cert.p is not None:
        out["p"] = cert.p
    if cert.degenerate:
        out["degenerate"] = True
    return out


def _mismatch_json(bad) -> dict:
    out = {"magic": False, "witness": {"u": bad.u, "v": bad.v, "w_u": bad.w_u, "w_v": bad.w_v}}
    if bad.p is not None:
        out["p"] = bad.p
    return out


def cmd_verify(args):
    g = load_graph(args)
    f = parse_labeling(args.label)
    if args.mod is not None:
        f = f if isinstance(f, ModularLabeling) else reduce_mod_p(f, args.mod)
        if f.p != args.mod:
            raise UsageError(f"--mod {args.mod} disagrees with labelling modulus {f.p}")
    res = verify_p_distance_magic(g, f) if isinstance(f, ModularLabeling) else verify_distance_magic(g, f)
    payload = _cert_json(res) if res else _mismatch_json(res)
    return g, payload, EXIT_OK if res else EXIT_NEGATIVE


def cmd_search(args):
    g = load_graph(args)
    threads = _threads(args)
    if args.count:
        if args.mod is not None:
            count = len(find_p_dm_labelings(g, args.mod))
        else:
            count = count_dm_labelings(g, threads=threads)
        return g, {"count": count}, EXIT_OK if count else EXIT_NEGATIVE
    cfg = SearchConfig(limit=args.limit, symmetry_reduction=args.symmetry, threads=threads)
    if args.mod is not None:
        found = find_p_dm_labelings(g, args.mod, cfg)
        items = [{"labeling": str(f), "k": c.k} for f, c in found]
    else:
        found = find_dm_labelings(g, cfg)
        items = [{"labeling": str(f), "k": c.k} for f, c in found]
    return g, {"found": len(items), "labelings": items}, EXIT_OK if items else EXIT_NEGATIVE


def cmd_spectral(args):
    g = load_graph(args)
    return g, spectral_report(g).to_json(), EXIT_OK


def cmd_aut(args):
    g = load_graph(args)
    group = automorphisms(g)
    payload = {"order": group.order}
    if args.elements:
        payload["elements"] = [list(s.mapping) for s in group]
    found = find_dm_labelings(g)
    if found:
        payload["orbit_report"] = labeling_orbits(g, [f for f, _ in found], group).to_json()
    else:
        payload["orbit_report"] = "inapplicable"
    return g, payload, EXIT_OK


def cmd_crt(args):
    g = load_graph(args)
    fp, fq = parse_labeling(args.fp), parse_labeling(args.fq)
    if not (isinstance(fp, ModularLabeling) and isinstance(fq, ModularLabeling)):
        raise UsageError("--fp and --fq need the form p=<modulus>:<labels>")
    res = crt_combine(g, fp, fq)
    return g, res.to_json(), EXIT_OK if res.consistent else EXIT_NEGATIVE


def cmd_construct(args):
    g = parse_construct(args.family)
    return g, {"graph6": gr.to_graph6(g), "n": g.n, "m": g.m, "edges": [list(e) for e in g.edges()]}, EXIT_OK


def cmd_census(args):
    corpus = None
    if args.corpus is not None:
        corpus = sys.stdin if args.corpus == "-" else open(args.corpus)
    try:
        records = census_dm_graphs(
            args.n, corpus=corpus, threads=_threads(args), include_degenerate=args.include_degenerate
        )
    finally:
        if corpus not in (None, sys.stdin):
            corpus.close()
    for rec in records:
        print(json.dumps(rec.to_json()))
    return EXIT_OK if records else EXIT_NEGATIVE


def _add_graph_args(p):
    p.add_argument("--g6", help="graph6 string")
    p.add_argument("--edges", help="edge-list file: 'n m' then m lines 'u v'")
    p.add_argument("--construct", help="named family, e.g. knm:6, cone:knm:4, union:path:3+cycle:4, ndm")


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="magicdist", description=__doc__.splitlines()[0])
    ap.add_argument("--threads", type=int, default=None, help="worker processes (env MAGICDIST_THREADS)")
    ap.add_argument("--timing", action="store_true", help="add wall-clock time to the report")
    ap.add_argument("-v", "--verbose", action="store_true")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("verify", help="check a labelling")
    _add_graph_args(p)
    p.add_argument("--label", required=True, help="'1,3,2' or 'p=2:1,2,2,1'")
    p.add_argument("--mod", type=int)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("search", help="enumerate or count labellings")
    _add_graph_args(p)
    p.add_argument("--mod", type=int)
    p.add_argument("--limit", type=int)
    p.add_argument("--count", action="store_true")
    p.add_argument("--symmetry", action="store_true", help="search one label-1 position per orbit")
    p.set_defaults(func=cmd_search)

    p = sub.add_parser("spectral", help="spectral report")
    _add_graph_args(p)
    p.set_defaults(func=cmd_spectral)

    p = sub.add_parser("aut", help="automorphism group and labelling orbits")
    _add_graph_args(p)
    p.add_argument("--elements", action="store_true", help="list every automorphism")
    p.set_defaults(func=cmd_aut)

    p = sub.add_parser("crt", help="combine a p- and a q-distance magic labelling")
    _add_graph_args(p)
    p.add_argument("--fp", required=True)
    p.add_argument("--fq", required=True)
    p.set_defaults(func=cmd_crt)

    p = sub.add_parser("construct", help="print a named graph")
    p.add_argument("family", help="e.g. knm:6, singular:8, cone:knm:4, ndm")
    p.set_defaults(func=cmd_construct)

    p = sub.add_parser("census", help="distance magic graphs of order n (JSON lines)")
    p.add_argument("n", type=int, nargs="?")
    p.add_argument("--corpus", help="graph6 file, or '-' for stdin")
    p.add_argument("--include-degenerate", action="store_true", help="also report edgeless graphs")
    p.set_defaults(func=cmd_census)
    return ap


def _digest(command: str, g: Graph, args) -> str:
    extras = {k: v for k, v in sorted(vars(args).items()) if k not in ("func", "timing", "verbose", "threads", "g6", "edges", "construct")}
    blob = json.dumps({"command": command, "graph6": gr.to_graph6(g), "args": extras}, sort_keys=True, default=str)
    return hashlib.sha256(blob.encode()).hexdigest()[:16]


def main(argv=None) -> int:
    ap = build_parser()
    args = ap.parse_args(argv)
    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.WARNING, stream=sys.stderr,
                        format="%(levelname)s %(name)s: %(message)s")
    start = time.perf_counter()
    try:
        if args.command == "census":
            return args.func(args)
        g, payload, code = args.func(args)
    except (UsageError, GraphError, InvalidLabelingError, InapplicableError, OSError, ValueError) as exc:
        print(f"magicdist {args.command}: {exc}", file=sys.stderr)
        return EXIT_USAGE
    report = {"command": args.command, "input": _digest(args.command, g, args), "result": payload}
    if args.timing:
        report["seconds"] = round(time.perf_counter() - start, 6)
    print(json.dumps(report))
    return code


if __name__ == "__main__":
    sys.exit(main())
