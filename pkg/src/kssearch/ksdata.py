"""Vector systems, orthogonality graphs and the packaged graph fixtures.

Vector file format::

    # comment
    ring sqrt(2)
    0: 1, 0, 0
    1: 1+1*r, 0, -r

The ``ring sqrt(d)`` header fixes the radicand; ``r`` stands for sqrt(d) in
every element.  The ``id:`` prefix is optional.  The same format doubles as
the exact embedding certificate format, with ids naming graph vertices.
"""

from __future__ import annotations

import hashlib
import json
import re
from dataclasses import dataclass, field
from functools import lru_cache
from importlib import resources

from .coloring import find_010_coloring
from .exact import ExactVec3, parse_element
from .graph import Graph, emit_graph6, parse_graph6

_HEADER = re.compile(r"ring\s+sqrt\(\s*(\d+)\s*\)")


class VectorFormatError(ValueError):
    pass


@dataclass
class VectorSystem:
    d: int
    points: list[ExactVec3]
    ids: list[str] = field(default_factory=list)

    def __len__(self):
        return len(self.points)


def parse_vectors(text: str, allow_duplicates: bool = False) -> VectorSystem:
    """Parse a vector file; projectively equal points (antipodes included) are rejected."""
    d = None
    points = []
    ids = []
    where = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if d is None:
            m = _HEADER.fullmatch(line)
            if not m:
                raise VectorFormatError(f"line {lineno}: expected header 'ring sqrt(d)'")
            d = int(m.group(1))
            try:
                parse_element("0", d)
            except ValueError as exc:
                raise VectorFormatError(f"line {lineno}: {exc}") from None
            continue
        ident = str(len(points))
        if ":" in line:
            ident, line = (s.strip() for s in line.split(":", 1))
            if not ident:
                raise VectorFormatError(f"line {lineno}: empty id")
        parts = [p for p in line.split(",")]
        if len(parts) != 3:
            raise VectorFormatError(f"line {lineno}: expected three comma-separated elements")
        try:
            coords = [parse_element(p, d) for p in parts]
        except ValueError as exc:
            raise VectorFormatError(f"line {lineno}: {exc}") from None
        if not any(coords):
            raise VectorFormatError(f"line {lineno}: zero vector")
        p = ExactVec3(*coords)
        if ident in ids:
            raise VectorFormatError(f"line {lineno}: id {ident!r} used twice")
        if not allow_duplicates:
            for i, q in enumerate(points):
                if p.same_point(q):
                    raise VectorFormatError(
                        f"line {lineno}: vector {len(points)} duplicates vector {i} "
                        f"(line {where[i]}) up to scale or sign"
                    )
        points.append(p)
        ids.append(ident)
        where.append(lineno)
    if d is None:
        raise VectorFormatError("missing header 'ring sqrt(d)'")
    return VectorSystem(d, points, ids)


def format_vectors(s: VectorSystem, comment: str | None = None) -> str:
    lines = [f"# {c}" for c in (comment.splitlines() if comment else [])]
    lines.append(f"ring sqrt({s.d})")
    ids = s.ids or [str(i) for i in range(len(s.points))]
    for i, p in zip(ids, s.points):
        lines.append(f"{i}: {p}")
    return "\n".join(lines) + "\n"


def orthogonality_graph(s: VectorSystem) -> Graph:
    pts = s.points
    edges = [(i, j) for i in range(len(pts)) for j in range(i + 1, len(pts)) if pts[i].is_orthogonal(pts[j])]
    return Graph.from_edges(len(pts), edges)


def is_ks_system(s: VectorSystem) -> tuple[bool, dict]:
    """A system is Kochen-Specker iff its orthogonality graph has no 010-coloring."""
    g = orthogonality_graph(s)
    col = find_010_coloring(g)
    report = {
        "n": g.n,
        "edges": g.num_edges,
        "graph6": emit_graph6(g),
        "colorable": col is not None,
    }
    if col is not None:
        report["coloring"] = list(col)
    return col is None, report


# -- certificates ----------------------------------------------------------------------


def read_certificate(text: str) -> tuple[int, dict[int, ExactVec3]]:
    """Exact embedding certificate: integer vertex ids mapped to ring vectors.

    Unlike a vector system, distinct vertices may not share a point either, but
    that is the verifier's call, so duplicates are allowed through here.
    """
    s = parse_vectors(text, allow_duplicates=True)
    out = {}
    for ident, p in zip(s.ids, s.points):
        try:
            v = int(ident)
        except ValueError:
            raise VectorFormatError(f"certificate id {ident!r} is not a vertex number") from None
        out[v] = p
    return s.d, out


def write_certificate(points: dict[int, ExactVec3], d: int | None = None) -> str:
    if d is None:
        d = next(iter(points.values())).d if points else 2
    vs = sorted(points)
    return format_vectors(VectorSystem(d, [points[v] for v in vs], [str(v) for v in vs]))


# -- fixtures --------------------------------------------------------------------------


@dataclass(frozen=True)
class Fixture:
    name: str
    graph: Graph
    provenance: str
    stats: dict
    properties: dict

    def check_stats(self) -> list[str]:
        """Mismatches between the stored graph and its recorded statistics."""
        g = self.graph
        got = {
            "n": g.n,
            "edges": g.num_edges,
            "degrees": sorted(g.degrees(), reverse=True),
            "sha256": hashlib.sha256(emit_graph6(g).encode()).hexdigest(),
        }
        return [f"{k}: recorded {self.stats.get(k)!r}, found {v!r}" for k, v in got.items() if self.stats.get(k) != v]


def _data(name: str) -> str:
    return resources.files("kssearch").joinpath("data", name).read_text(encoding="utf-8")


@lru_cache(maxsize=None)
def _registry() -> dict:
    return json.loads(_data("fixtures.json"))


def fixture_names() -> list[str]:
    return sorted(_registry()["graphs"])


def fixture(name: str) -> Fixture:
    reg = _registry()["graphs"]
    if name not in reg:
        raise KeyError(f"unknown fixture {name!r}; known: {', '.join(sorted(reg))}")
    e = reg[name]
    g = parse_graph6(_data(e["file"]).split()[0])
    return Fixture(name, g, e["provenance"], e["stats"], e.get("properties", {}))


def vector_names() -> list[str]:
    return sorted(_registry()["vectors"])


def vector_fixture(name: str) -> VectorSystem:
    reg = _registry()["vectors"]
    if name not in reg:
        raise KeyError(f"unknown vector fixture {name!r}; known: {', '.join(sorted(reg))}")
    return parse_vectors(_data(reg[name]["file"]))


def vector_info(name: str) -> dict:
    return dict(_registry()["vectors"][name])


def default_catalog() -> list[tuple[str, Graph]]:
    """Known unembeddable patterns, smallest first."""
    return [(name, fixture(name).graph) for name in _registry()["catalog"]]
