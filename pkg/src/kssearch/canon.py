"""Canonical labeling by partition refinement and individualization.

The search tree follows the usual recipe: refine the ordered partition to an
equitable one, individualize a vertex of the first non-singleton cell and
recurse.  Leaves are ranked by the sequence of partition shapes met on the
way down, then by the relabeled adjacency rows; the best leaf defines the
canonical labeling.  Leaves that reproduce the best (or the first) leaf give
automorphisms, which prune sibling branches lying in one orbit.
"""

from __future__ import annotations

from collections import deque

from .graph import Graph, _bits


def _mask(cell):
    m = 0
    for v in cell:
        m |= 1 << v
    return m


def _refine(adj, cells, splitters=None):
    """Split cells until every vertex of a cell sees each cell equally often.

    ``splitters`` lists the cell masks still to be used; by default every
    cell.  Fragments of a split cell are queued in turn.
    """
    cells = list(cells)
    queue = deque(_mask(c) for c in cells) if splitters is None else deque(splitters)
    nontrivial = sum(1 for c in cells if len(c) > 1)
    while queue and nontrivial:
        smask = queue.popleft()
        new = []
        for c in cells:
            if len(c) == 1:
                new.append(c)
                continue
            groups = {}
            for v in c:
                k = (adj[v] & smask).bit_count()
                if k in groups:
                    groups[k].append(v)
                else:
                    groups[k] = [v]
            if len(groups) == 1:
                new.append(c)
                continue
            nontrivial -= 1
            for key in sorted(groups):
                frag = groups[key]
                new.append(frag)
                queue.append(_mask(frag))
                if len(frag) > 1:
                    nontrivial += 1
        cells = new
    return cells


def _orbit_reps(autos, fixed, n):
    """Union-find roots of the group generated by autos fixing ``fixed`` pointwise."""
    parent = list(range(n))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for a in autos:
        if any(a[p] != p for p in fixed):
            continue
        for v in range(n):
            ra, rb = find(v), find(a[v])
            if ra != rb:
                parent[max(ra, rb)] = min(ra, rb)
    return find


class _Search:
    def __init__(self, g: Graph):
        self.g = g
        self.adj = g.adj
        self.n = g.n
        self.nbrs = [list(_bits(r)) for r in g.adj]
        self.best_key = None
        self.best_order = None
        self.first_key = None
        self.first_order = None
        self.autos = []

    def certificate(self, order):
        pos = [0] * self.n
        for i, v in enumerate(order):
            pos[v] = i
        nbrs = self.nbrs
        rows = []
        for v in order:
            row = 0
            for u in nbrs[v]:
                row |= 1 << pos[u]
            rows.append(row)
        return tuple(rows)

    def record_auto(self, order, other):
        # vertex order[i] plays the role of other[i]
        a = [0] * self.n
        for x, y in zip(order, other):
            a[x] = y
        if any(a[v] != v for v in range(self.n)):
            self.autos.append(a)

    def visit(self, cells, prefix, shapes, splitters=None):
        cells = _refine(self.adj, cells, splitters)
        shapes = shapes + (tuple(len(c) for c in cells),)
        if self.best_key is not None:
            bs = self.best_key[0][:len(shapes)]
            if shapes < bs:
                return
        if len(cells) == self.n:
            order = [c[0] for c in cells]
            key = (shapes, self.certificate(order))
            if self.first_key is None:
                self.first_key, self.first_order = key, order
                self.best_key, self.best_order = key, order
                return
            if key == self.first_key:
                self.record_auto(order, self.first_order)
            elif key == self.best_key:
                self.record_auto(order, self.best_order)
            elif key > self.best_key:
                self.best_key, self.best_order = key, order
            return
        idx = next(i for i, c in enumerate(cells) if len(c) > 1)
        target = cells[idx]
        tried = []
        for v in target:
            if tried:
                find = _orbit_reps(self.autos, prefix, self.n)
                rv = find(v)
                if any(find(u) == rv for u in tried):
                    continue
            tried.append(v)
            rest = [u for u in target if u != v]
            child = cells[:idx] + [[v], rest] + cells[idx + 1:]
            # the old partition is already equitable; only the new singleton can split it
            self.visit(child, prefix + [v], shapes, [1 << v])


def _search(g):
    s = _Search(g)
    if g.n:
        s.visit([list(range(g.n))], [], ())
    return s


def canonical_labeling(g: Graph) -> list[int]:
    """Return ``perm`` with ``perm[v]`` the canonical label of vertex ``v``."""
    s = _search(g)
    perm = [0] * g.n
    for i, v in enumerate(s.best_order or []):
        perm[v] = i
    return perm


def canonical_form(g: Graph) -> tuple[Graph, list[int]]:
    """Canonical relabeling of ``g`` and the permutation that produces it.

    Two graphs are isomorphic iff their canonical forms compare equal.
    """
    s = _search(g)
    perm = [0] * g.n
    for i, v in enumerate(s.best_order or []):
        perm[v] = i
    rows = s.best_key[1] if g.n else ()
    return Graph._trusted(g.n, rows), perm


def certificate(g: Graph) -> tuple[int, ...]:
    """Hashable isomorphism invariant: the canonical adjacency rows."""
    if g.n == 0:
        return ()
    return _search(g).best_key[1]


def automorphisms_found(g: Graph) -> list[list[int]]:
    """Automorphisms discovered while labeling ``g`` (not necessarily a full generating set)."""
    return _search(g).autos


def are_isomorphic(g: Graph, h: Graph) -> bool:
    return g.n == h.n and g.num_edges == h.num_edges and certificate(g) == certificate(h)
