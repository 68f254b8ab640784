"""Cross-product assignments.

Free vertices get a vector variable of their own.  Any unassigned vertex
adjacent to two assigned vertices is forced, up to scale, to the cross product
of their vectors, and both of those edges then hold automatically.  What is
left over becomes explicit requirements: orthogonality for the edges not
accounted for, non-collinearity for every non-adjacent pair.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from typing import Union

from ..graph import Graph, _bits


@dataclass(frozen=True)
class BaseVar:
    vertex: int

    def __str__(self):
        return f"V{self.vertex}"


@dataclass(frozen=True)
class Pinned:
    vertex: int
    vector: tuple

    def __str__(self):
        return "(" + ", ".join(str(c) for c in self.vector) + ")"


@dataclass(frozen=True)
class Cross:
    left: "VecExpr"
    right: "VecExpr"

    def __str__(self):
        return f"({self.left} x {self.right})"


VecExpr = Union[BaseVar, Pinned, Cross]


def expr_depth(e: VecExpr) -> int:
    """Number of nested cross products."""
    if isinstance(e, Cross):
        return 1 + max(expr_depth(e.left), expr_depth(e.right))
    return 0


@dataclass
class Assignment:
    n: int
    exprs: dict[int, VecExpr]
    free: list[int]
    pinned: dict[int, tuple] = field(default_factory=dict)
    parents: dict[int, tuple[int, int]] = field(default_factory=dict)
    order: list[int] = field(default_factory=list)
    accounted: list[tuple[int, int]] = field(default_factory=list)
    orth_reqs: list[tuple[int, int]] = field(default_factory=list)
    noncol_reqs: list[tuple[int, int]] = field(default_factory=list)

    @property
    def requirement_count(self) -> int:
        return len(self.orth_reqs) + len(self.noncol_reqs)

    def summary(self) -> dict:
        return {
            "free": list(self.free),
            "pinned": sorted(self.pinned),
            "derived": {str(v): list(p) for v, p in sorted(self.parents.items())},
            "accounted": [list(e) for e in self.accounted],
            "orthogonality": [list(e) for e in self.orth_reqs],
            "noncollinearity": len(self.noncol_reqs),
        }


def _policy_rank(g: Graph) -> list[int]:
    degs = g.degrees()
    return sorted(range(g.n), key=lambda v: (-degs[v], v))


def _derivable(g, assigned_mask, unassigned):
    return [u for u in unassigned if (g.adj[u] & assigned_mask).bit_count() >= 2]


def derive_assignment(g: Graph, order=None, pins: dict | None = None) -> Assignment:
    """Run the cross-product assignment procedure.

    ``order`` is an optional choice list consumed at the procedure's choice
    points.  At a free pick the next entry must be an unassigned vertex.  At a
    derivation the next entry is used when it is a derivable vertex ``w`` or a
    triple ``(w, w1, w2)`` naming the two assigned neighbours to cross;
    otherwise, and once the list runs out, the default policy applies: free
    picks take the highest-degree vertex (lowest index on ties), derivations
    take the lowest-index derivable vertex and its two lowest-index assigned
    neighbours.  Pinned vertices are assigned before anything else.
    """
    n = g.n
    choices = deque(order or [])
    pins = dict(pins or {})
    exprs: dict[int, VecExpr] = {}
    parents = {}
    seq = []
    free = []
    accounted = set()
    assigned = 0
    rank = _policy_rank(g)

    def assign_derived(w, w1, w2):
        nonlocal assigned
        exprs[w] = Cross(exprs[w1], exprs[w2])
        parents[w] = (w1, w2)
        accounted.add((min(w, w1), max(w, w1)))
        accounted.add((min(w, w2), max(w, w2)))
        assigned |= 1 << w
        seq.append(w)

    def close():
        while True:
            unassigned = [u for u in range(n) if not assigned >> u & 1]
            cand = _derivable(g, assigned, unassigned)
            if not cand:
                return
            pick = None
            if choices:
                c = choices[0]
                if isinstance(c, (tuple, list)):
                    w, w1, w2 = c
                    if w not in cand:
                        raise ValueError(f"vertex {w} is not derivable at this point")
                    if w1 == w2 or not (g.has_edge(w, w1) and g.has_edge(w, w2)):
                        raise ValueError(f"({w1}, {w2}) are not two distinct neighbours of {w}")
                    if not (assigned >> w1 & 1 and assigned >> w2 & 1):
                        raise ValueError(f"neighbours {w1}, {w2} of {w} are not both assigned")
                    pick = (w, w1, w2)
                    choices.popleft()
                elif c in cand:
                    choices.popleft()
                    w = c
                    nb = list(_bits(g.adj[w] & assigned))
                    pick = (w, nb[0], nb[1])
            if pick is None:
                w = cand[0]
                nb = list(_bits(g.adj[w] & assigned))
                pick = (w, nb[0], nb[1])
            assign_derived(*pick)

    for v, vec in pins.items():
        if not 0 <= v < n:
            raise ValueError(f"pinned vertex {v} out of range")
        exprs[v] = Pinned(v, tuple(vec))
        assigned |= 1 << v
        seq.append(v)
    close()
    while assigned != (1 << n) - 1:
        if choices:
            c = choices.popleft()
            if isinstance(c, (tuple, list)) or not 0 <= c < n or assigned >> c & 1:
                raise ValueError(f"choice {c!r} is not an unassigned vertex at a free pick")
            v = c
        else:
            v = next(u for u in rank if not assigned >> u & 1)
        exprs[v] = BaseVar(v)
        free.append(v)
        assigned |= 1 << v
        seq.append(v)
        close()

    edges = g.edges()
    acc = sorted(accounted)
    orth = [e for e in edges if e not in accounted]
    noncol = [(u, v) for u in range(n) for v in range(u + 1, n) if not g.has_edge(u, v)]
    return Assignment(
        n=n,
        exprs=exprs,
        free=free,
        pinned=pins,
        parents=parents,
        order=seq,
        accounted=acc,
        orth_reqs=orth,
        noncol_reqs=noncol,
    )


def _closure(g, mask):
    full = (1 << g.n) - 1
    while True:
        grow = 0
        for u in _bits(full & ~mask):
            if (g.adj[u] & mask).bit_count() >= 2:
                grow |= 1 << u
        if not grow:
            return mask
        mask |= grow


def best_assignment(g: Graph, budget: int = 64, pins: dict | None = None) -> Assignment:
    """Search free-pick sequences for an assignment with the fewest free vertices.

    Free picks are explored in policy order (highest degree first) and each
    sequence only moves forward in that order, which still reaches every
    minimal set of free vertices because the derived closure of a set does
    not depend on the order of its elements.  The first sequence explored is
    the default policy, so ``budget=1`` reproduces ``derive_assignment(g)``.
    At most ``budget`` complete sequences are examined.
    """
    if budget < 1:
        raise ValueError("budget must be at least 1")
    pins = dict(pins or {})
    n = g.n
    full = (1 << n) - 1
    rank = _policy_rank(g)
    start = 0
    for v in pins:
        start |= 1 << v
    start = _closure(g, start)

    best = None  # (free count, free sequence)
    leaves = 0
    nodes = 0
    node_cap = 2000 * budget

    def dfs(mask, last, picks):
        nonlocal best, leaves, nodes
        if leaves >= budget or nodes >= node_cap:
            return
        nodes += 1
        if mask == full:
            leaves += 1
            if best is None or len(picks) < best[0]:
                best = (len(picks), list(picks))
            return
        if best is not None and len(picks) + 1 >= best[0]:
            return
        for r in range(last + 1, n):
            u = rank[r]
            if mask >> u & 1:
                continue
            picks.append(u)
            dfs(_closure(g, mask | (1 << u)), r, picks)
            picks.pop()
            if leaves >= budget:
                return

    dfs(start, -1, [])
    order = best[1] if best else None
    return derive_assignment(g, order=order, pins=pins)
