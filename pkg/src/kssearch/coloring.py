"""010-colorings: backtracking with unit propagation, fixed colors and types.

A 010-coloring assigns 0/1 to vertices so that adjacent vertices are never
both 1 and every triangle has exactly one vertex colored 1.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from itertools import product
from typing import Iterator

from .graph import Graph, _bits, triangles

Coloring = tuple[int, ...]


class FixedColor(str, Enum):
    ZERO = "fixed-0"
    ONE = "fixed-1"
    NOT_FIXED = "not-fixed"
    UNCOLORABLE = "uncolorable"


class _Solver:
    """Reusable constraint data for one graph."""

    def __init__(self, g: Graph):
        self.g = g
        self.n = g.n
        self.adj = g.adj
        tris = triangles(g)
        self.tri_of = [[] for _ in range(g.n)]
        for a, b, c in tris:
            self.tri_of[a].append((b, c))
            self.tri_of[b].append((a, c))
            self.tri_of[c].append((a, b))
        degs = g.degrees()
        # most triangles first, then higher degree, then lower index
        self.branch_order = sorted(range(g.n), key=lambda v: (-len(self.tri_of[v]), -degs[v], v))

    def propagate(self, ones, zeros, pending):
        """Apply the forcing rules; return (ones, zeros) or None on conflict."""
        adj = self.adj
        tri_of = self.tri_of
        while pending:
            v, val = pending.pop()
            bit = 1 << v
            if val:
                if zeros & bit:
                    return None
                if ones & bit:
                    continue
                ones |= bit
                if adj[v] & ones:
                    return None
                # neighbours of a 1 are 0; this also settles every triangle through v
                for u in _bits(adj[v] & ~zeros):
                    pending.append((u, 0))
            else:
                if ones & bit:
                    return None
                if zeros & bit:
                    continue
                zeros |= bit
                for a, b in tri_of[v]:
                    za, zb = zeros >> a & 1, zeros >> b & 1
                    if za and zb:
                        return None
                    if za and not ones >> b & 1:
                        pending.append((b, 1))
                    elif zb and not ones >> a & 1:
                        pending.append((a, 1))
        return ones, zeros

    def _pick(self, assigned):
        for v in self.branch_order:
            if not assigned >> v & 1:
                return v
        return -1

    def solve(self, ones=0, zeros=0, pending=None):
        """Return one coloring extending the partial assignment, or None."""
        state = self.propagate(ones, zeros, list(pending or []))
        if state is None:
            return None
        stack = [state]
        while stack:
            ones, zeros = stack.pop()
            v = self._pick(ones | zeros)
            if v < 0:
                return tuple(ones >> u & 1 for u in range(self.n))
            if not self.tri_of[v]:
                # remaining vertices lie in no triangle; 0 is always safe for them
                return tuple(ones >> u & 1 for u in range(self.n))
            # push 0 first so that 1 is explored first
            for val in (0, 1):
                nxt = self.propagate(ones, zeros, [(v, val)])
                if nxt is not None:
                    stack.append(nxt)
        return None

    def enumerate(self, ones=0, zeros=0, pending=None) -> Iterator[Coloring]:
        state = self.propagate(ones, zeros, list(pending or []))
        if state is None:
            return
        stack = [state]
        while stack:
            ones, zeros = stack.pop()
            v = self._pick(ones | zeros)
            if v < 0:
                yield tuple(ones >> u & 1 for u in range(self.n))
                continue
            for val in (0, 1):
                nxt = self.propagate(ones, zeros, [(v, val)])
                if nxt is not None:
                    stack.append(nxt)


def is_valid_coloring(g: Graph, c) -> bool:
    """Check both 010 rules directly, without any propagation."""
    if len(c) != g.n or any(x not in (0, 1) for x in c):
        return False
    for u, v in g.edges():
        if c[u] and c[v]:
            return False
    for a, b, d in triangles(g):
        if c[a] + c[b] + c[d] != 1:
            return False
    return True


def find_010_coloring(g: Graph, forced: dict[int, int] | None = None) -> Coloring | None:
    """One 010-coloring of ``g`` respecting ``forced`` (vertex -> color), or None."""
    s = _Solver(g)
    return s.solve(pending=list((forced or {}).items()))


def is_010_colorable(g: Graph) -> bool:
    return find_010_coloring(g) is not None


def enumerate_010_colorings(g: Graph) -> Iterator[Coloring]:
    """Every 010-coloring exactly once, in an order fixed by ``g``."""
    return _Solver(g).enumerate()


def count_010_colorings(g: Graph) -> int:
    return sum(1 for _ in enumerate_010_colorings(g))


def fixed_color(g: Graph, v: int) -> FixedColor:
    if not 0 <= v < g.n:
        raise ValueError(f"vertex {v} out of range")
    s = _Solver(g)
    can0 = s.solve(pending=[(v, 0)]) is not None
    can1 = s.solve(pending=[(v, 1)]) is not None
    if can0 and can1:
        return FixedColor.NOT_FIXED
    if can0:
        return FixedColor.ZERO
    if can1:
        return FixedColor.ONE
    return FixedColor.UNCOLORABLE


def fixed_colors(g: Graph) -> dict[int, int]:
    """Map of vertices with a fixed color to that color (empty if uncolorable)."""
    s = _Solver(g)
    out = {}
    for v in range(g.n):
        can0 = s.solve(pending=[(v, 0)]) is not None
        can1 = s.solve(pending=[(v, 1)]) is not None
        if can0 != can1:
            out[v] = 1 if can1 else 0
    return out


@dataclass(frozen=True)
class VertexType:
    arity: int
    tuples: frozenset

    def __contains__(self, t):
        return tuple(t) in self.tuples

    def __len__(self):
        return len(self.tuples)

    def sorted(self) -> list[tuple[int, ...]]:
        return sorted(self.tuples)

    @classmethod
    def of(cls, tuples) -> "VertexType":
        tuples = frozenset(tuple(t) for t in tuples)
        arities = {len(t) for t in tuples}
        if len(arities) > 1:
            raise ValueError("mixed arities in type")
        arity = arities.pop() if arities else 0
        return cls(arity, tuples)


def type_of(g: Graph, vs) -> VertexType:
    """The set of color tuples taken by ``vs`` over all 010-colorings of ``g``."""
    vs = tuple(vs)
    if len(set(vs)) != len(vs):
        raise ValueError("type vertices must be distinct")
    if not 1 <= len(vs) <= 3:
        raise ValueError("types are computed for 1, 2 or 3 vertices")
    for v in vs:
        if not 0 <= v < g.n:
            raise ValueError(f"vertex {v} out of range")
    s = _Solver(g)
    found = set()
    for t in product((0, 1), repeat=len(vs)):
        if s.solve(pending=list(zip(vs, t))) is not None:
            found.add(t)
    return VertexType(len(vs), frozenset(found))


# Known lower bounds on the order of an embeddable graph realising a 1- or
# 2-type; every type not listed needs at least 17 vertices.
TYPE_BOUND_TABLE: dict[frozenset, int] = {
    frozenset({(0, 0), (1, 0), (0, 1)}): 10,
    frozenset({(0, 0), (1, 0), (1, 1)}): 10,
    frozenset({(0, 0), (0, 1), (1, 1)}): 10,
    frozenset({(0, 0), (0, 1)}): 15,
    frozenset({(0, 0), (1, 0)}): 15,
    frozenset({(0,)}): 15,
    frozenset({(0, 1), (1, 0)}): 16,
}
TYPE_BOUND_DEFAULT = 17

_TRIVIAL_TYPES = (
    frozenset({(0,), (1,)}),
    frozenset({(0, 0), (0, 1), (1, 0), (1, 1)}),
)


def type_bound_lookup(t: VertexType) -> int:
    """Least order of an embeddable graph in which type ``t`` occurs.

    The ``{(0,0),(1,0),(0,1)}`` bound applies to non-trivial occurrences only:
    on two adjacent vertices that type is realised by a single edge.
    """
    if t.arity not in (1, 2):
        raise ValueError("bounds are tabulated for 1- and 2-types only")
    if t.tuples in _TRIVIAL_TYPES:
        raise ValueError("trivial types carry no bound")
    if not t.tuples:
        raise ValueError("empty type: the graph is not 010-colorable")
    return TYPE_BOUND_TABLE.get(t.tuples, TYPE_BOUND_DEFAULT)
