"""Command line entry point.

Exit codes: 0 success, 1 the check ran and the answer is no, 2 usage error,
3 bad input.
"""

from __future__ import annotations

import argparse
import json
import logging
import sys

from . import __version__
from .coloring import (
    count_010_colorings,
    enumerate_010_colorings,
    find_010_coloring,
    fixed_colors,
    type_of,
)
from .generate import GenSpec, dumps_record, generate, parse_predicates, parse_shard, pipeline_filter
from .graph import (
    Graph,
    GraphFormatError,
    bridges,
    double_at_vertex,
    edge_connectivity_at_least,
    emit_graph6,
    is_connected,
    parse_graph6,
)

log = logging.getLogger("kssearch")

OK, NO, USAGE, BAD_INPUT = 0, 1, 2, 3


class InputError(Exception):
    pass


def _dump(obj):
    return json.dumps(obj, separators=(",", ":"), sort_keys=True, allow_nan=False)


def _read_graphs(args):
    """Graphs from positional arguments (graph6 or fixture names) or stdin."""
    from .ksdata import fixture, fixture_names

    names = set(fixture_names())
    items = args.graphs if args.graphs else [ln.strip() for ln in sys.stdin if ln.strip()]
    out = []
    for item in items:
        if item in names:
            out.append((item, fixture(item).graph))
            continue
        try:
            out.append((item, parse_graph6(item)))
        except GraphFormatError as exc:
            raise InputError(f"{item!r}: {exc}") from None
    if not out:
        raise InputError("no graphs given")
    return out


def _vertex(g: Graph, v: int) -> int:
    if not 0 <= v < g.n:
        raise InputError(f"vertex {v} out of range for a graph on {g.n} vertices")
    return v


# -- subcommands -----------------------------------------------------------------------


def cmd_gen(args):
    spec = GenSpec(
        n=args.n,
        min_degree=args.min_degree,
        require_squarefree=args.squarefree,
        require_connected=args.connected,
        shard=args.shard,
    )
    for g in generate(spec, jobs=args.jobs):
        s = emit_graph6(g)
        print(_dump({"graph6": s}) if args.json else s)
    return OK


def cmd_filter(args):
    preds = parse_predicates(args.pred)
    errors = []

    def on_error(lineno, msg):
        errors.append(lineno)
        print(f"line {lineno}: {msg}", file=sys.stderr)

    stream = open(args.input) if args.input else sys.stdin
    try:
        for rec in pipeline_filter(stream, preds, jobs=args.jobs, on_error=on_error):
            if args.json or not args.passing:
                print(dumps_record(rec))
            elif rec["pass"]:
                print(rec["graph6"])
    finally:
        if stream is not sys.stdin:
            stream.close()
    return BAD_INPUT if errors else OK


def cmd_color(args):
    status = OK
    for label, g in _read_graphs(args):
        col = find_010_coloring(g)
        rec = {"graph6": emit_graph6(g), "n": g.n, "colorable": col is not None}
        if col is not None:
            rec["coloring"] = list(col)
        if args.count:
            rec["n_colorings"] = count_010_colorings(g)
        if args.enumerate:
            rec["colorings"] = [list(c) for c in enumerate_010_colorings(g)]
        if args.fixed:
            rec["fixed_colors"] = {str(v): c for v, c in sorted(fixed_colors(g).items())}
        if args.type:
            vs = [_vertex(g, int(x)) for x in args.type.split(",")]
            try:
                t = type_of(g, vs)
            except ValueError as exc:
                raise InputError(str(exc)) from None
            rec["type"] = {"vertices": vs, "tuples": [list(x) for x in t.sorted()]}
        if args.check and col is None:
            status = NO
        if args.json:
            print(_dump(rec))
        else:
            verdict = "colorable" if col is not None else "not colorable"
            extra = ""
            if "n_colorings" in rec:
                extra += f" colorings={rec['n_colorings']}"
            if "fixed_colors" in rec:
                extra += " fixed=" + ",".join(f"{v}:{c}" for v, c in rec["fixed_colors"].items())
            if "type" in rec:
                extra += " type=" + " ".join("".join(map(str, t)) for t in rec["type"]["tuples"])
            print(f"{label}\t{verdict}{extra}")
            for c in rec.get("colorings", []):
                print("  " + "".join(map(str, c)))
    return status


def cmd_cut(args):
    status = OK
    for label, g in _read_graphs(args):
        rec = {"graph6": emit_graph6(g), "connected": is_connected(g)}
        if rec["connected"]:
            e2, w2 = edge_connectivity_at_least(g, 2)
            rec["edge2"] = e2
            rec["bridges"] = [list(e) for e in bridges(g)]
            if e2:
                e3, w3 = edge_connectivity_at_least(g, 3)
                rec["edge3"] = e3
                if w3:
                    rec["witness"] = [list(e) for e in w3]
            else:
                rec["edge3"] = False
                rec["witness"] = [list(e) for e in w2]
            level = 1 + e2 + rec["edge3"]
        else:
            level = 0
        rec["level"] = level
        if args.k is not None and level < args.k:
            status = NO
        if args.json:
            print(_dump(rec))
        else:
            print(f"{label}\tedge-connectivity >= {level}" + (f" cut={rec['witness']}" if "witness" in rec else ""))
    return status


def cmd_double(args):
    for label, g in _read_graphs(args):
        h = double_at_vertex(g, _vertex(g, args.vertex))
        s = emit_graph6(h)
        print(_dump({"graph6": s, "source": emit_graph6(g), "vertex": args.vertex}) if args.json else s)
    return OK


def _parse_pin(text):
    try:
        v, vec = text.split(":", 1)
        coords = tuple(float(c) for c in vec.split(","))
    except ValueError:
        raise InputError(f"pin must look like V:x,y,z, got {text!r}") from None
    if len(coords) != 3:
        raise InputError(f"pin must have three coordinates, got {text!r}")
    return int(v), coords


def _parse_order(text):
    out = []
    for tok in text.split(";") if text else []:
        tok = tok.strip()
        if not tok:
            continue
        parts = [int(p) for p in tok.split(",")]
        out.append(parts[0] if len(parts) == 1 else tuple(parts))
    return out


def _assignment(g, args, pins=None):
    from .embedding import best_assignment, derive_assignment

    try:
        if args.order:
            return derive_assignment(g, order=_parse_order(args.order), pins=pins)
        return best_assignment(g, args.budget, pins=pins)
    except ValueError as exc:
        raise InputError(str(exc)) from None


def cmd_embed(args):
    from .embedding import EmbedParams, numeric_embed, pinned_embed, verify_embedding_exact
    from .ksdata import read_certificate

    params = EmbedParams(
        restarts=args.restarts,
        seed=args.seed,
        eps_orth=args.eps,
        delta=args.delta,
        max_iter=args.max_iter,
        budget=args.budget,
    )
    status = OK
    for label, g in _read_graphs(args):
        rec = {"graph6": emit_graph6(g)}
        if args.certificate:
            with open(args.certificate) as fh:
                _, pts = read_certificate(fh.read())
            try:
                ok = verify_embedding_exact(g, pts)
            except ValueError as exc:
                raise InputError(str(exc)) from None
            rec["certificate"] = ok
            status = status if ok else NO
        elif args.assignment_only:
            a = _assignment(g, args)
            rec["assignment"] = a.summary()
        else:
            pins = dict(_parse_pin(p) for p in args.pin) if args.pin else None
            try:
                order = _parse_order(args.order) if args.order else None
                if pins:
                    res = pinned_embed(g, pins, params, order=order)
                elif order is not None:
                    res = numeric_embed(g, params, assignment=_assignment(g, args))
                else:
                    res = numeric_embed(g, params)
            except ValueError as exc:
                raise InputError(str(exc)) from None
            rec.update(res.to_dict())
            if not res.embedded:
                status = NO
        if args.json:
            print(_dump(rec))
        else:
            if "certificate" in rec:
                print(f"{label}\tcertificate {'valid' if rec['certificate'] else 'invalid'}")
            elif "assignment" in rec:
                a = rec["assignment"]
                print(f"{label}\tfree={a['free']} orthogonality={a['orthogonality']}")
            else:
                line = f"{label}\t{rec['verdict']} residual={res.residual:.3g} restarts={rec['restarts']}"
                if "label" in rec:
                    line += f" ({rec['label']}, {rec['degenerate']} degenerate)"
                if "pattern" in rec:
                    line += f" pattern={rec['pattern']}"
                print(line)
    return status


def cmd_sentence(args):
    from .embedding.sentence import emit_sentence

    graphs = _read_graphs(args)
    chunks = []
    for label, g in graphs:
        a = _assignment(g, args)
        text = emit_sentence(a, format=args.format)
        if args.json:
            chunks.append(_dump({"graph6": emit_graph6(g), "format": args.format, "sentence": text}) + "\n")
        else:
            chunks.append(text)
    out = "".join(chunks)
    if args.output:
        with open(args.output, "w") as fh:
            fh.write(out)
    else:
        sys.stdout.write(out)
    return OK


def cmd_subiso(args):
    from .embedding import check_unembeddable_by_subgraph
    from .ksdata import default_catalog, fixture, fixture_names

    if args.pattern:
        names = set(fixture_names())
        catalog = []
        for p in args.pattern:
            if p in names:
                catalog.append((p, fixture(p).graph))
            else:
                try:
                    catalog.append((p, parse_graph6(p)))
                except GraphFormatError as exc:
                    raise InputError(f"pattern {p!r}: {exc}") from None
    else:
        catalog = default_catalog()
    status = OK
    for label, g in _read_graphs(args):
        hit = check_unembeddable_by_subgraph(g, catalog)
        rec = {"graph6": emit_graph6(g), "found": hit is not None}
        if hit:
            rec["pattern"] = hit[0]
            rec["witness"] = {str(k): v for k, v in sorted(hit[1].items())}
        else:
            status = NO
        if args.json:
            print(_dump(rec))
        else:
            print(f"{label}\t" + (f"contains {hit[0]} via {rec['witness']}" if hit else "no catalog pattern"))
    return status


def cmd_ksys(args):
    from .ksdata import VectorFormatError, is_ks_system, parse_vectors

    try:
        with open(args.file) as fh:
            s = parse_vectors(fh.read())
    except OSError as exc:
        raise InputError(str(exc)) from None
    except VectorFormatError as exc:
        raise InputError(f"{args.file}: {exc}") from None
    ks, rep = is_ks_system(s)
    rep["ks"] = ks
    rep["d"] = s.d
    if args.json:
        print(_dump(rep))
    else:
        print(f"{args.file}\t{len(s)} points, {rep['edges']} orthogonal pairs, " + ("KS system" if ks else "colorable, not KS"))
    return OK if ks else NO


def cmd_fixtures(args):
    from .ksdata import fixture, fixture_names, vector_fixture, vector_info, vector_names

    if args.action == "list":
        rows = []
        for name in fixture_names():
            f = fixture(name)
            rows.append({"name": name, "kind": "graph", "n": f.graph.n, "edges": f.graph.num_edges, "graph6": emit_graph6(f.graph)})
        for name in vector_names():
            s = vector_fixture(name)
            rows.append({"name": name, "kind": "vectors", "n": len(s), "d": s.d})
        for r in rows:
            if args.json:
                print(_dump(r))
            elif r["kind"] == "graph":
                print(f"{r['name']}\tgraph\tn={r['n']} m={r['edges']}\t{r['graph6']}")
            else:
                print(f"{r['name']}\tvectors\tn={r['n']} ring sqrt({r['d']})")
        return OK
    if not args.name:
        raise InputError("fixtures show needs a name")
    name = args.name
    if name in vector_names():
        from .ksdata import format_vectors

        s = vector_fixture(name)
        info = vector_info(name)
        if args.json:
            print(_dump({"name": name, "d": s.d, "provenance": info["provenance"], "points": [str(p) for p in s.points]}))
        else:
            sys.stdout.write(format_vectors(s, comment=info["provenance"]))
        return OK
    try:
        f = fixture(name)
    except KeyError as exc:
        raise InputError(str(exc.args[0])) from None
    if args.json:
        print(_dump({"name": f.name, "graph6": emit_graph6(f.graph), "edges": [list(e) for e in f.graph.edges()],
                     "provenance": f.provenance, "stats": f.stats, "properties": f.properties}))
    else:
        print(emit_graph6(f.graph))
    return OK


# -- parser ----------------------------------------------------------------------------


def _shard(text):
    try:
        return parse_shard(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def _positive(kind):
    def conv(text):
        try:
            x = kind(text)
        except ValueError:
            raise argparse.ArgumentTypeError(f"not a number: {text!r}") from None
        if not x > 0:
            raise argparse.ArgumentTypeError(f"must be positive: {text!r}")
        return x

    return conv


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="JSON output, one record per line")
    common.add_argument("--seed", type=int, default=0, help="seed for every random choice (default 0)")
    common.add_argument("--jobs", type=_positive(int), default=1, help="worker processes")
    common.add_argument("-v", "--verbose", action="store_true")

    p = argparse.ArgumentParser(prog="kssearch", description="Kochen-Specker graph search and verification.")
    p.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = p.add_subparsers(dest="command", required=True, metavar="COMMAND")

    def graphs_arg(sp):
        sp.add_argument("graphs", nargs="*", help="graph6 strings or fixture names (default: graph6 lines on stdin)")

    sp = sub.add_parser("gen", parents=[common], help="generate graphs up to isomorphism")
    sp.add_argument("-n", type=int, required=True)
    sp.add_argument("--min-degree", type=int, default=3)
    sp.add_argument("--squarefree", action=argparse.BooleanOptionalAction, default=True)
    sp.add_argument("--connected", action="store_true")
    sp.add_argument("--shard", type=_shard, default=(0, 1), metavar="RES/MOD")
    sp.set_defaults(func=cmd_gen)

    sp = sub.add_parser("filter", parents=[common], help="annotate a graph6 stream with predicates")
    sp.add_argument("--pred", required=True, help="comma-separated predicates, evaluated left to right")
    sp.add_argument("--passing", action="store_true", help="print only graph6 of graphs passing every predicate")
    sp.add_argument("input", nargs="?", help="input file (default stdin)")
    sp.set_defaults(func=cmd_filter)

    sp = sub.add_parser("color", parents=[common], help="010-colorability, colorings, fixed colors, types")
    graphs_arg(sp)
    sp.add_argument("--check", action="store_true", help="exit 1 if some graph is not colorable")
    sp.add_argument("--count", action="store_true")
    sp.add_argument("--enumerate", action="store_true")
    sp.add_argument("--fixed", action="store_true")
    sp.add_argument("--type", metavar="V[,V[,V]]")
    sp.set_defaults(func=cmd_color)

    sp = sub.add_parser("cut", parents=[common], help="edge-connectivity level (up to 3) with a witness cut")
    graphs_arg(sp)
    sp.add_argument("-k", type=int, choices=(1, 2, 3), help="exit 1 if some graph is below this level")
    sp.set_defaults(func=cmd_cut)

    sp = sub.add_parser("double", parents=[common], help="two copies joined at one vertex")
    graphs_arg(sp)
    sp.add_argument("--vertex", type=int, required=True)
    sp.set_defaults(func=cmd_double)

    def embed_opts(sp):
        sp.add_argument("--budget", type=_positive(int), default=64, help="choice sequences explored")
        sp.add_argument("--order", help="explicit choice list, e.g. '9;8;6;7;5;0,6,5'")

    sp = sub.add_parser("embed", parents=[common], help="numeric embedding search or exact certificate check")
    graphs_arg(sp)
    embed_opts(sp)
    sp.add_argument("--restarts", type=_positive(int), default=200)
    sp.add_argument("--eps", type=_positive(float), default=1e-9)
    sp.add_argument("--delta", type=_positive(float), default=1e-6)
    sp.add_argument("--max-iter", type=_positive(int), default=5000)
    sp.add_argument("--pin", action="append", metavar="V:x,y,z")
    sp.add_argument("--assignment-only", action="store_true")
    sp.add_argument("--certificate", metavar="FILE", help="verify an exact embedding certificate")
    sp.set_defaults(func=cmd_embed)

    sp = sub.add_parser("sentence", parents=[common], help="export the constraint sentence")
    graphs_arg(sp)
    embed_opts(sp)
    sp.add_argument("--format", choices=("smt", "human"), default="smt")
    sp.add_argument("-o", "--output")
    sp.set_defaults(func=cmd_sentence)

    sp = sub.add_parser("subiso", parents=[common], help="look for unembeddable catalog patterns")
    graphs_arg(sp)
    sp.add_argument("--pattern", action="append", help="pattern graph6 or fixture name (default: catalog)")
    sp.set_defaults(func=cmd_subiso)

    sp = sub.add_parser("ksys", parents=[common], help="check whether a vector file is a KS system")
    sp.add_argument("file")
    sp.set_defaults(func=cmd_ksys)

    sp = sub.add_parser("fixtures", parents=[common], help="list or show packaged fixtures")
    sp.add_argument("action", choices=("list", "show"), nargs="?", default="list")
    sp.add_argument("name", nargs="?")
    sp.set_defaults(func=cmd_fixtures)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else USAGE
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, format="%(levelname)s: %(message)s")
    try:
        return args.func(args)
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return BAD_INPUT
    except (ValueError, KeyError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return BAD_INPUT
    except BrokenPipeError:
        return OK


if __name__ == "__main__":
    sys.exit(main())
