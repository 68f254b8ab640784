"""Exact embedding checks and unembeddable-subgraph detection."""

from __future__ import annotations

from ..exact import ExactVec3
from ..graph import Graph, subgraph_contains


def verify_embedding_exact(g: Graph, points) -> bool:
    """True iff every edge is exactly orthogonal and all points are projectively distinct.

    ``points`` maps each vertex to an :class:`ExactVec3` (or anything
    ``ExactVec3.of`` accepts).  Non-edges may be orthogonal too.
    """
    pts = []
    for v in range(g.n):
        if v not in points:
            raise ValueError(f"vertex {v} has no point")
        p = points[v]
        if not isinstance(p, ExactVec3):
            p = ExactVec3.of(p)
        pts.append(p)
    ds = {p.d for p in pts if any(c.b for c in p)}
    if len(ds) > 1:
        raise ValueError("points use different radicands")
    for u, v in g.edges():
        if not pts[u].is_orthogonal(pts[v]):
            return False
    for u in range(g.n):
        for v in range(u + 1, g.n):
            if pts[u].same_point(pts[v]):
                return False
    return True


def check_unembeddable_by_subgraph(g: Graph, catalog):
    """First catalog pattern contained in ``g`` as ``(name, witness)``, else None.

    ``catalog`` is a list of graphs or of ``(name, graph)`` pairs, all known
    to be unembeddable.
    """
    for i, item in enumerate(catalog):
        if isinstance(item, Graph):
            name, h = f"pattern{i}", item
        else:
            name, h = item
        if h.n > g.n:
            continue
        ok, mapping = subgraph_contains(g, h)
        if ok:
            return name, mapping
    return None
