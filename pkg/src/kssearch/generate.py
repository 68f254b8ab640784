"""Isomorphism-free generation of squarefree graphs with a minimum degree.

Graphs grow one vertex at a time.  A child ``G + v`` is kept only when ``v``
is, up to automorphism, the vertex that the canonical deletion rule would
remove again; the rule removes a vertex of least (degree, neighbour degrees)
key, ties broken by the highest canonical label.  Children of one parent are
deduplicated by certificate, so every isomorphism class is emitted once.
"""

from __future__ import annotations

import json
import logging
import re
from dataclasses import dataclass
from multiprocessing import Pool
from typing import Callable, Iterable, Iterator

from .canon import _search, certificate
from .coloring import is_010_colorable
from .graph import (
    Graph,
    GraphFormatError,
    _bits,
    all_labeled_graphs,
    edge_connectivity_at_least,
    emit_graph6,
    is_connected,
    is_squarefree,
    min_degree,
    parse_graph6,
)

log = logging.getLogger(__name__)


@dataclass(frozen=True)
class GenSpec:
    n: int
    min_degree: int = 3
    require_squarefree: bool = True
    require_connected: bool = False
    shard: tuple[int, int] = (0, 1)

    def __post_init__(self):
        if not 1 <= self.n <= 64:
            raise ValueError("n must be between 1 and 64")
        if self.min_degree < 0:
            raise ValueError("min_degree must be non-negative")
        res, mod = self.shard
        if mod < 1 or not 0 <= res < mod:
            raise ValueError(f"invalid shard {res}/{mod}")


def parse_shard(text: str) -> tuple[int, int]:
    m = re.fullmatch(r"\s*(\d+)\s*/\s*(\d+)\s*", text)
    if not m:
        raise ValueError(f"shard must look like RES/MOD, got {text!r}")
    res, mod = int(m.group(1)), int(m.group(2))
    if mod < 1 or res >= mod:
        raise ValueError(f"invalid shard {text!r}")
    return res, mod


def _deletion_key(adj, degs, u):
    return (degs[u], tuple(sorted(degs[x] for x in _bits(adj[u]))))


def _children(g: Graph, cert, spec: GenSpec) -> Iterator[tuple[Graph, tuple]]:
    k = g.n
    adj = g.adj
    md = spec.min_degree
    left = spec.n - k - 1  # vertices still to come after this child
    degs = [r.bit_count() for r in adj]
    full = (1 << k) - 1

    conf = [0] * k
    if spec.require_squarefree:
        # two neighbours of the new vertex must not already share a neighbour
        for a in range(k):
            m = 0
            for x in _bits(adj[a]):
                m |= adj[x]
            conf[a] = m & ~(1 << a)

    must = 0
    for u in range(k):
        if degs[u] + left < md:
            must |= 1 << u
    for u in _bits(must):
        if conf[u] & must:
            return
    opt_mask = full & ~must
    for u in _bits(must):
        opt_mask &= ~conf[u]
    lo = max(md - left, 0)
    hi = (min(degs) + 1) if k else 0
    base = must.bit_count()
    if base > hi:
        return
    opt = list(_bits(opt_mask))
    decided = {}

    def consider(nbrs, size):
        if size < lo:
            return None
        for u in range(k):
            if degs[u] + (nbrs >> u & 1) < size:
                return None
        child = g.add_vertex(nbrs)
        cadj = child.adj
        cdeg = degs + [size]
        for u in _bits(nbrs):
            cdeg[u] += 1
        keys = [_deletion_key(cadj, cdeg, u) for u in range(k + 1)]
        best = min(keys)
        if keys[k] != best:
            return None
        s = _search(child)
        ccert = s.best_key[1]
        if ccert in decided:
            return None
        cands = [u for u in range(k + 1) if keys[u] == best]
        if len(cands) == 1:
            ok = True
        else:
            pos = {v: i for i, v in enumerate(s.best_order)}
            w = max(cands, key=pos.__getitem__)
            ok = w == k or certificate(child.remove_vertex(w)) == cert
        decided[ccert] = ok
        return (child, ccert) if ok else None

    out = []

    def rec(i, nbrs, size, allowed):
        got = consider(nbrs, size)
        if got is not None:
            out.append(got)
        if size == hi:
            return
        for j in range(i, len(opt)):
            u = opt[j]
            if allowed >> u & 1:
                rec(j + 1, nbrs | (1 << u), size + 1, allowed & ~conf[u])

    rec(0, must, base, opt_mask)
    yield from out


def _root(spec: GenSpec):
    g = Graph._trusted(1, (0,))
    return g, certificate(g)


def _final_ok(g: Graph, spec: GenSpec) -> bool:
    if min_degree(g) < spec.min_degree:
        return False
    if spec.require_connected and not is_connected(g):
        return False
    return True


def _expand(nodes, spec):
    out = []
    for g, cert in nodes:
        out.extend(_children(g, cert, spec))
    return out


def _dfs(node, spec: GenSpec) -> Iterator[Graph]:
    stack = [iter([node])]
    while stack:
        try:
            g, cert = next(stack[-1])
        except StopIteration:
            stack.pop()
            continue
        if g.n == spec.n:
            if _final_ok(g, spec):
                yield g
            continue
        stack.append(_children(g, cert, spec))


def _split(nodes, spec, threshold):
    """Expand breadth-first until a level holds ``threshold`` nodes or reaches n."""
    while nodes and nodes[0][0].n < spec.n and len(nodes) < threshold:
        nodes = _expand(nodes, spec)
    return nodes


def _dfs_worker(args):
    node, spec = args
    return [g.adj for g in _dfs(node, spec)]


def generate(spec: GenSpec, jobs: int = 1) -> Iterator[Graph]:
    """One graph per isomorphism class meeting ``spec``, in a fixed order.

    The tree is cut at the first level with at least ``8 * mod`` nodes and
    shard ``res`` keeps the subtrees whose index is ``res`` modulo ``mod``.
    The output order does not depend on ``jobs``.
    """
    res, mod = spec.shard
    nodes = [_root(spec)]
    if mod > 1:
        nodes = _split(nodes, spec, 8 * mod)
        nodes = [node for i, node in enumerate(nodes) if i % mod == res]
    if jobs > 1:
        nodes = _split(nodes, spec, 8 * jobs)
        with Pool(jobs) as pool:
            for rows in pool.imap(_dfs_worker, [(node, spec) for node in nodes]):
                for adj in rows:
                    yield Graph._trusted(spec.n, adj)
        return
    for node in nodes:
        yield from _dfs(node, spec)


def count_nonisomorphic(n: int) -> int:
    """Brute force: canonical forms of all labeled graphs on ``n`` vertices."""
    if not 0 <= n <= 7:
        raise ValueError("brute-force counting is limited to n <= 7")
    return len({certificate(g) for g in all_labeled_graphs(n)})


# -- predicate pipeline ---------------------------------------------------------------


@dataclass(frozen=True)
class Predicate:
    name: str
    test: Callable[[Graph], bool]
    cost: int = 0


def _mindeg(k):
    return Predicate(f"mindeg{k}", lambda g: min_degree(g) >= k, 0)


def _edge_conn(k):
    def test(g):
        return is_connected(g) and edge_connectivity_at_least(g, k)[0]

    return test


def _catalog_hit(g):
    from .embedding import check_unembeddable_by_subgraph
    from .ksdata import default_catalog

    return check_unembeddable_by_subgraph(g, default_catalog()) is not None


PREDICATES: dict[str, Predicate] = {
    "squarefree": Predicate("squarefree", is_squarefree, 1),
    "connected": Predicate("connected", is_connected, 1),
    "edge2": Predicate("edge2", _edge_conn(2), 2),
    "edge3": Predicate("edge3", _edge_conn(3), 3),
    "colorable": Predicate("colorable", is_010_colorable, 4),
    "noncolorable": Predicate("noncolorable", lambda g: not is_010_colorable(g), 4),
    "catalog": Predicate("catalog", _catalog_hit, 5),
}


def get_predicate(name: str) -> Predicate:
    name = name.strip()
    m = re.fullmatch(r"mindeg(\d+)", name)
    if m:
        return _mindeg(int(m.group(1)))
    if name in ("biconnected",):
        return PREDICATES["edge2"]
    if name in ("triconnected",):
        return PREDICATES["edge3"]
    try:
        return PREDICATES[name]
    except KeyError:
        raise ValueError(f"unknown predicate {name!r}") from None


def parse_predicates(text: str) -> list[Predicate]:
    return [get_predicate(p) for p in text.split(",") if p.strip()]


def annotate(g: Graph, predicates: list[Predicate]) -> dict:
    """Evaluate predicates left to right, stopping at the first failure."""
    rec = {"graph6": emit_graph6(g), "n": g.n}
    passed = True
    for p in predicates:
        ok = bool(p.test(g))
        rec[p.name] = ok
        if not ok:
            passed = False
            break
    rec["pass"] = passed
    return rec


def _annotate_line(args):
    lineno, text, names = args
    try:
        g = parse_graph6(text)
    except GraphFormatError as exc:
        return lineno, None, str(exc)
    return lineno, annotate(g, [get_predicate(x) for x in names]), None


def pipeline_filter(
    lines: Iterable[str],
    predicates: list[Predicate] | list[str],
    jobs: int = 1,
    on_error: Callable[[int, str], None] | None = None,
) -> Iterator[dict]:
    """Annotate a graph6 stream; yields one record per well-formed line, in input order.

    Malformed lines are reported through ``on_error(lineno, message)`` (or the
    module logger) and skipped.
    """
    names = [p if isinstance(p, str) else p.name for p in predicates]
    for nm in names:
        get_predicate(nm)
    work = ((i, line.strip(), names) for i, line in enumerate(lines, 1) if line.strip())

    def report(lineno, msg):
        if on_error is not None:
            on_error(lineno, msg)
        else:
            log.warning("line %d: %s", lineno, msg)

    if jobs > 1:
        with Pool(jobs) as pool:
            for lineno, rec, err in pool.imap(_annotate_line, work, chunksize=64):
                if err:
                    report(lineno, err)
                else:
                    rec["line"] = lineno
                    yield rec
        return
    for item in work:
        lineno, rec, err = _annotate_line(item)
        if err:
            report(lineno, err)
        else:
            rec["line"] = lineno
            yield rec


def dumps_record(rec: dict) -> str:
    return json.dumps(rec, separators=(",", ":"))
