"""Undirected simple graphs on at most 64 vertices.

Adjacency is stored as one integer bitmask per vertex, so most structural
predicates reduce to a handful of ``&`` and ``bit_count`` operations.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Iterable, Iterator

MAX_VERTICES = 64


class GraphFormatError(ValueError):
    pass


def _popcount(x: int) -> int:
    return x.bit_count()


def _bits(mask: int) -> Iterator[int]:
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


@dataclass(frozen=True)
class Graph:
    """Immutable simple graph; ``adj[v]`` is the neighbour bitmask of ``v``."""

    n: int
    adj: tuple[int, ...]

    def __post_init__(self):
        if not 0 <= self.n <= MAX_VERTICES:
            raise ValueError(f"vertex count {self.n} outside 0..{MAX_VERTICES}")
        if len(self.adj) != self.n:
            raise ValueError("adjacency length does not match vertex count")
        full = (1 << self.n) - 1
        for v, row in enumerate(self.adj):
            if row & ~full:
                raise ValueError(f"row {v} references a vertex >= n")
            if row >> v & 1:
                raise ValueError(f"self-loop at vertex {v}")
            for u in _bits(row):
                if not self.adj[u] >> v & 1:
                    raise ValueError(f"asymmetric adjacency between {v} and {u}")

    @classmethod
    def _trusted(cls, n: int, adj: tuple[int, ...]) -> "Graph":
        # hot paths build graphs whose adjacency is symmetric by construction
        g = object.__new__(cls)
        object.__setattr__(g, "n", n)
        object.__setattr__(g, "adj", adj)
        return g

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[tuple[int, int]]) -> "Graph":
        rows = [0] * n
        for u, v in edges:
            if u == v:
                raise ValueError(f"self-loop at vertex {u}")
            if not (0 <= u < n and 0 <= v < n):
                raise ValueError(f"edge ({u}, {v}) out of range for n={n}")
            rows[u] |= 1 << v
            rows[v] |= 1 << u
        return cls(n, tuple(rows))

    @classmethod
    def empty(cls, n: int) -> "Graph":
        return cls(n, (0,) * n)

    @classmethod
    def complete(cls, n: int) -> "Graph":
        full = (1 << n) - 1
        return cls(n, tuple(full & ~(1 << v) for v in range(n)))

    @classmethod
    def cycle(cls, n: int) -> "Graph":
        return cls.from_edges(n, [(i, (i + 1) % n) for i in range(n)])

    @classmethod
    def path(cls, n: int) -> "Graph":
        return cls.from_edges(n, [(i, i + 1) for i in range(n - 1)])

    def __repr__(self):
        return f"Graph(n={self.n}, graph6={emit_graph6(self)!r})"

    def has_edge(self, u: int, v: int) -> bool:
        return bool(self.adj[u] >> v & 1)

    def neighbors(self, v: int) -> list[int]:
        return list(_bits(self.adj[v]))

    def degree(self, v: int) -> int:
        return _popcount(self.adj[v])

    def degrees(self) -> list[int]:
        return [_popcount(r) for r in self.adj]

    def edges(self) -> list[tuple[int, int]]:
        return [(u, v) for u in range(self.n) for v in _bits(self.adj[u] >> (u + 1) << (u + 1))]

    @property
    def num_edges(self) -> int:
        return sum(_popcount(r) for r in self.adj) // 2

    def relabel(self, perm) -> "Graph":
        """Return the graph with vertex ``v`` renamed to ``perm[v]``."""
        rows = [0] * self.n
        for v, row in enumerate(self.adj):
            new = 0
            for u in _bits(row):
                new |= 1 << perm[u]
            rows[perm[v]] = new
        return Graph._trusted(self.n, tuple(rows))

    def induced(self, vertices) -> "Graph":
        vertices = list(vertices)
        index = {v: i for i, v in enumerate(vertices)}
        rows = []
        for v in vertices:
            new = 0
            for u in _bits(self.adj[v]):
                if u in index:
                    new |= 1 << index[u]
            rows.append(new)
        return Graph._trusted(len(vertices), tuple(rows))

    def remove_vertex(self, v: int) -> "Graph":
        return self.induced(u for u in range(self.n) if u != v)

    def add_vertex(self, neighbors_mask: int) -> "Graph":
        """Append vertex ``n`` adjacent to the vertices in ``neighbors_mask``."""
        if self.n >= MAX_VERTICES:
            raise ValueError("cannot exceed 64 vertices")
        v = self.n
        rows = tuple(row | (1 << v) if neighbors_mask >> u & 1 else row for u, row in enumerate(self.adj))
        return Graph._trusted(self.n + 1, rows + (neighbors_mask,))

    def without_edges(self, edges) -> "Graph":
        rows = list(self.adj)
        for u, v in edges:
            rows[u] &= ~(1 << v)
            rows[v] &= ~(1 << u)
        return Graph._trusted(self.n, tuple(rows))


# -- graph6 -------------------------------------------------------------------


def _size_prefix(n: int) -> str:
    if n <= 62:
        return chr(n + 63)
    return "~" + "".join(chr(((n >> s) & 63) + 63) for s in (12, 6, 0))


def emit_graph6(g: Graph) -> str:
    """Encode ``g`` in graph6 (no ``>>graph6<<`` header)."""
    bits = []
    for j in range(1, g.n):
        row = g.adj[j]
        for i in range(j):
            bits.append(row >> i & 1)
    bits.extend([0] * (-len(bits) % 6))
    body = []
    for k in range(0, len(bits), 6):
        val = 0
        for b in bits[k:k + 6]:
            val = val << 1 | b
        body.append(chr(val + 63))
    return _size_prefix(g.n) + "".join(body)


def parse_graph6(text: str) -> Graph:
    s = text.strip()
    if s.startswith(">>graph6<<"):
        s = s[10:]
    if not s:
        raise GraphFormatError("empty graph6 string")
    if any(not 63 <= ord(c) <= 126 for c in s):
        raise GraphFormatError(f"invalid graph6 character in {text!r}")
    if s[0] == "~":
        if len(s) >= 2 and s[1] == "~":
            raise GraphFormatError("graphs with more than 64 vertices are not supported")
        if len(s) < 4:
            raise GraphFormatError("truncated extended size header")
        n = 0
        for c in s[1:4]:
            n = n << 6 | (ord(c) - 63)
        body = s[4:]
    else:
        n = ord(s[0]) - 63
        body = s[1:]
    if n > MAX_VERTICES:
        raise GraphFormatError(f"graph has {n} vertices; at most {MAX_VERTICES} supported")
    nbits = n * (n - 1) // 2
    need = -(-nbits // 6)
    if len(body) != need:
        raise GraphFormatError(f"body has {len(body)} characters, expected {need} for n={n}")
    rows = [0] * n
    k = 0
    i, j = 0, 1
    for c in body:
        val = ord(c) - 63
        for shift in range(5, -1, -1):
            if k >= nbits:
                if val >> shift & 1:
                    raise GraphFormatError("nonzero padding bits")
                continue
            if val >> shift & 1:
                rows[i] |= 1 << j
                rows[j] |= 1 << i
            k += 1
            i += 1
            if i == j:
                i, j = 0, j + 1
    return Graph._trusted(n, tuple(rows))


# -- structural predicates --------------------------------------------------------


def is_squarefree(g: Graph) -> bool:
    """True iff no 4-cycle occurs as a (not necessarily induced) subgraph.

    Two distinct vertices with two common neighbours span a square and
    conversely, so counting common neighbours suffices.
    """
    adj = g.adj
    for u in range(g.n):
        au = adj[u]
        for v in range(u + 1, g.n):
            if _popcount(au & adj[v]) >= 2:
                return False
    return True


def find_square(g: Graph) -> tuple[int, int, int, int] | None:
    """A 4-cycle ``(a, b, c, d)`` as consecutive vertices, or None."""
    for u in range(g.n):
        for v in range(u + 1, g.n):
            common = g.adj[u] & g.adj[v]
            if _popcount(common) >= 2:
                x, y = list(_bits(common))[:2]
                return (u, x, v, y)
    return None


def min_degree(g: Graph) -> int:
    if g.n == 0:
        return 0
    return min(_popcount(r) for r in g.adj)


def components(g: Graph) -> list[list[int]]:
    seen = 0
    out = []
    for s in range(g.n):
        if seen >> s & 1:
            continue
        comp = 1 << s
        frontier = comp
        while frontier:
            nxt = 0
            for v in _bits(frontier):
                nxt |= g.adj[v]
            frontier = nxt & ~comp
            comp |= frontier
        seen |= comp
        out.append(list(_bits(comp)))
    return out


def is_connected(g: Graph) -> bool:
    return g.n <= 1 or len(components(g)) == 1


def bridges(g: Graph) -> list[tuple[int, int]]:
    """All bridges of ``g`` as sorted pairs, via iterative low-link DFS."""
    n = g.n
    disc = [-1] * n
    low = [0] * n
    out = []
    t = 0
    for root in range(n):
        if disc[root] >= 0:
            continue
        disc[root] = low[root] = t
        t += 1
        stack = [(root, -1, iter(_bits(g.adj[root])))]
        while stack:
            v, parent, it = stack[-1]
            advanced = False
            for u in it:
                if u == parent:
                    continue
                if disc[u] < 0:
                    disc[u] = low[u] = t
                    t += 1
                    stack.append((u, v, iter(_bits(g.adj[u]))))
                    advanced = True
                    break
                low[v] = min(low[v], disc[u])
            if advanced:
                continue
            stack.pop()
            if parent >= 0:
                low[parent] = min(low[parent], low[v])
                if low[v] > disc[parent]:
                    out.append((min(v, parent), max(v, parent)))
    return sorted(out)


def edge_connectivity_at_least(g: Graph, k: int) -> tuple[bool, list[tuple[int, int]] | None]:
    """Decide whether removing fewer than ``k`` edges always keeps ``g`` connected.

    Returns ``(verdict, witness)``; on a negative verdict the witness is a
    smallest disconnecting edge set.
    """
    if k not in (2, 3):
        raise ValueError("k must be 2 or 3")
    if not is_connected(g):
        raise ValueError("edge connectivity is only defined here for connected graphs")
    br = bridges(g)
    if br:
        return False, [br[0]]
    if k == 2:
        return True, None
    for e in g.edges():
        rest = bridges(g.without_edges([e]))
        if rest:
            return False, sorted([e, rest[0]])
    return True, None


def triangles(g: Graph) -> list[tuple[int, int, int]]:
    out = []
    for u in range(g.n):
        above_u = g.adj[u] >> (u + 1) << (u + 1)
        for v in _bits(above_u):
            common = g.adj[u] & g.adj[v] & ~((1 << (v + 1)) - 1)
            for w in _bits(common):
                out.append((u, v, w))
    return out


def double_at_vertex(g: Graph, v: int) -> Graph:
    """Two disjoint copies of ``g`` with the two copies of ``v`` joined."""
    if not 0 <= v < g.n:
        raise ValueError(f"vertex {v} out of range")
    n = g.n
    if 2 * n > MAX_VERTICES:
        raise ValueError("doubled graph would exceed 64 vertices")
    rows = list(g.adj) + [row << n for row in g.adj]
    rows[v] |= 1 << (v + n)
    rows[v + n] |= 1 << v
    return Graph._trusted(2 * n, tuple(rows))


def disjoint_union(g: Graph, h: Graph) -> Graph:
    rows = list(g.adj) + [row << g.n for row in h.adj]
    return Graph(g.n + h.n, tuple(rows))


# -- subgraph isomorphism -------------------------------------------------------


def subgraph_contains(g: Graph, h: Graph) -> tuple[bool, dict[int, int] | None]:
    """Search for a (non-induced) copy of ``h`` inside ``g``.

    Returns ``(found, mapping)`` where ``mapping`` sends pattern vertices to
    host vertices such that every edge of ``h`` lands on an edge of ``g``.
    """
    if h.n > g.n:
        return False, None
    if h.n == 0:
        return True, {}
    if h.num_edges > g.num_edges:
        return False, None
    gdeg = g.degrees()
    hdeg = h.degrees()
    # sorted neighbour-degree profiles, used as a domination filter
    gprof = [sorted((gdeg[u] for u in _bits(g.adj[v])), reverse=True) for v in range(g.n)]
    hprof = [sorted((hdeg[u] for u in _bits(h.adj[v])), reverse=True) for v in range(h.n)]

    def dominates(gv, hv):
        gp, hp = gprof[gv], hprof[hv]
        return all(a >= b for a, b in zip(gp, hp))

    # pattern order: repeatedly take the vertex with most already-ordered neighbours
    order = []
    placed = 0
    remaining = set(range(h.n))
    while remaining:
        u = max(remaining, key=lambda x: (_popcount(h.adj[x] & placed), hdeg[x], -x))
        order.append(u)
        placed |= 1 << u
        remaining.remove(u)

    cand = []
    for u in range(h.n):
        mask = 0
        for v in range(g.n):
            if gdeg[v] >= hdeg[u] and dominates(v, u):
                mask |= 1 << v
        if not mask:
            return False, None
        cand.append(mask)

    mapping = [-1] * h.n
    earlier = [h.adj[u] & sum(1 << w for w in order[:i]) for i, u in enumerate(order)]

    def extend(i, used):
        if i == len(order):
            return True
        u = order[i]
        allowed = cand[u] & ~used
        for w in _bits(earlier[i]):
            allowed &= g.adj[mapping[w]]
            if not allowed:
                return False
        for v in _bits(allowed):
            mapping[u] = v
            if extend(i + 1, used | (1 << v)):
                return True
        mapping[u] = -1
        return False

    if extend(0, 0):
        return True, {u: mapping[u] for u in range(h.n)}
    return False, None


def is_subgraph_map(g: Graph, h: Graph, mapping: dict[int, int]) -> bool:
    """Check that ``mapping`` is injective and sends every edge of ``h`` into ``g``."""
    if len(set(mapping.values())) != len(mapping) or set(mapping) != set(range(h.n)):
        return False
    return all(g.has_edge(mapping[u], mapping[v]) for u, v in h.edges())


def all_labeled_graphs(n: int) -> Iterator[Graph]:
    """Every labeled graph on ``n`` vertices (2**C(n,2) of them)."""
    pairs = list(combinations(range(n), 2))
    for mask in range(1 << len(pairs)):
        rows = [0] * n
        for k, (u, v) in enumerate(pairs):
            if mask >> k & 1:
                rows[u] |= 1 << v
                rows[v] |= 1 << u
        yield Graph._trusted(n, tuple(rows))
