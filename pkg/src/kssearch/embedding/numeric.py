"""Multi-start numeric search for embeddings on the sphere.

Only free vectors are optimised; every derived vertex is evaluated from its
cross-product expression, so accounted edges hold exactly.  The objective is
the sum of squared cosines over the remaining orthogonality requirements plus
a unit-norm penalty on each free vector.  All restarts of a batch advance
together in a damped Gauss-Newton (Levenberg-Marquardt) loop.
"""

from __future__ import annotations

import hashlib
import math
from dataclasses import dataclass, field

import numpy as np

from ..canon import canonical_form
from ..graph import Graph, emit_graph6, find_square, is_squarefree
from .assignment import Assignment, best_assignment, derive_assignment

BATCH = 50
POLISH = 1e-15
CONVERGED = 1e-12
POLISH_ITER = 500
_O = (0.0, 0.0, 0.0)


@dataclass(frozen=True)
class EmbedParams:
    restarts: int = 200
    seed: int = 0
    eps_orth: float = 1e-9
    delta: float = 1e-6
    max_iter: int = 5000
    budget: int = 64

    def __post_init__(self):
        if self.restarts < 1:
            raise ValueError("restarts must be at least 1")
        if not self.eps_orth > 0 or not self.delta > 0:
            raise ValueError("tolerances must be positive")
        if self.max_iter < 1:
            raise ValueError("max_iter must be at least 1")
        if self.budget < 1:
            raise ValueError("budget must be at least 1")


@dataclass
class EmbedResult:
    """Outcome of an embedding search.

    ``verdict`` is ``"embedded"``, ``"unembeddable"`` (a known unembeddable
    subgraph was found) or ``"unknown"``.  An unknown verdict is never a
    proof of anything; ``residual`` then holds the best edge residual among
    restarts that ended with pairwise distinct points, and ``degenerate``
    counts the restarts that collapsed onto coincident points instead.
    """

    verdict: str
    residual: float = math.inf
    points: dict[int, tuple[float, float, float]] | None = None
    restarts: int = 0
    pattern: str | None = None
    witness: dict[int, int] | None = None
    free: list[int] = field(default_factory=list)
    degenerate: int = 0

    @property
    def embedded(self) -> bool:
        return self.verdict == "embedded"

    def to_dict(self) -> dict:
        # null residual: every start collapsed, so there is no best residual to report
        res = self.residual if math.isfinite(self.residual) else None
        d = {"verdict": self.verdict, "residual": res, "restarts": self.restarts}
        if self.verdict == "unknown":
            d["label"] = "likely unembeddable" if self.residual > 1e-3 else "undecided"
            d["degenerate"] = self.degenerate
        if self.points is not None:
            d["points"] = {str(v): list(p) for v, p in sorted(self.points.items())}
        if self.pattern is not None:
            d["pattern"] = self.pattern
            d["witness"] = {str(k): v for k, v in sorted(self.witness.items())}
        return d


def _cross(a, b):
    return np.stack(
        [
            a[:, 1] * b[:, 2] - a[:, 2] * b[:, 1],
            a[:, 2] * b[:, 0] - a[:, 0] * b[:, 2],
            a[:, 0] * b[:, 1] - a[:, 1] * b[:, 0],
        ],
        axis=1,
    )


class _Program:
    """Evaluation plan of an assignment: vertex vectors and their Jacobians."""

    def __init__(self, a: Assignment):
        self.a = a
        self.n = a.n
        self.free = list(a.free)
        self.slot = {v: 3 * i for i, v in enumerate(self.free)}
        self.P = 3 * len(self.free)
        self.orth = list(a.orth_reqs)

    def evaluate(self, x, with_jac=True):
        R = x.shape[0]
        P = self.P
        vals = {}
        jacs = {}
        for v in self.a.order:
            if v in self.slot:
                s = self.slot[v]
                vals[v] = x[:, s:s + 3]
                if with_jac:
                    j = np.zeros((R, 3, P))
                    j[:, 0, s] = j[:, 1, s + 1] = j[:, 2, s + 2] = 1.0
                    jacs[v] = j
            elif v in self.a.pinned:
                vals[v] = np.broadcast_to(np.asarray(self.a.pinned[v], dtype=float), (R, 3))
                if with_jac:
                    jacs[v] = np.zeros((R, 3, P))
            else:
                p, q = self.a.parents[v]
                vals[v] = _cross(vals[p], vals[q])
                if with_jac:
                    jacs[v] = _cross(jacs[p], vals[q][:, :, None]) + _cross(vals[p][:, :, None], jacs[q])
        return vals, jacs

    def residuals(self, x, with_jac=True):
        vals, jacs = self.evaluate(x, with_jac)
        R = x.shape[0]
        rs = []
        js = []
        for i, j in self.orth:
            u, w = vals[i], vals[j]
            nu = np.maximum(np.linalg.norm(u, axis=1), 1e-150)
            nw = np.maximum(np.linalg.norm(w, axis=1), 1e-150)
            r = np.sum(u * w, axis=1) / (nu * nw)
            rs.append(r)
            if with_jac:
                ju, jw = jacs[i], jacs[j]
                dd = np.einsum("rkp,rk->rp", ju, w) + np.einsum("rkp,rk->rp", jw, u)
                du = np.einsum("rkp,rk->rp", ju, u) / (nu * nu)[:, None]
                dw = np.einsum("rkp,rk->rp", jw, w) / (nw * nw)[:, None]
                js.append(dd / (nu * nw)[:, None] - r[:, None] * (du + dw))
        for v in self.free:
            s = self.slot[v]
            f = x[:, s:s + 3]
            rs.append(np.sum(f * f, axis=1) - 1.0)
            if with_jac:
                d = np.zeros((R, self.P))
                d[:, s:s + 3] = 2 * f
                js.append(d)
        r = np.stack(rs, axis=1) if rs else np.zeros((R, 0))
        J = np.stack(js, axis=1) if (with_jac and js) else np.zeros((R, len(rs), self.P))
        return r, J, vals


def _levenberg_marquardt(prog: _Program, x, eps, max_iter):
    R, P = x.shape
    r, J, _ = prog.residuals(x)
    f = np.sum(r * r, axis=1)
    lam = np.full(R, 1e-3)
    active = f >= eps * eps
    eye = np.eye(P)
    for _ in range(max_iter):
        if not active.any():
            break
        idx = np.flatnonzero(active)
        Ja, ra = J[idx], r[idx]
        A = np.einsum("rmp,rmq->rpq", Ja, Ja)
        g = np.einsum("rmp,rm->rp", Ja, ra)
        diag = np.einsum("rpp->rp", A)
        M = A + lam[idx, None, None] * (diag[:, :, None] * eye + 1e-9 * eye)
        try:
            step = -np.linalg.solve(M, g[:, :, None])[:, :, 0]
        except np.linalg.LinAlgError:
            step = -g * 1e-3
        xn = x[idx] + step
        rn, Jn, _ = prog.residuals(xn)
        fn = np.sum(rn * rn, axis=1)
        better = fn < f[idx]
        acc = idx[better]
        x[acc], r[acc], J[acc], f[acc] = xn[better], rn[better], Jn[better], fn[better]
        lam[acc] = np.maximum(lam[acc] * 0.3, 1e-15)
        rej = idx[~better]
        lam[rej] = lam[rej] * 4.0
        tiny = np.linalg.norm(step, axis=1) < 1e-14
        active[idx[tiny]] = False
        active[f < eps * eps] = False
        active[lam > 1e16] = False
    return x, f


def _unit(v):
    n = math.sqrt(sum(c * c for c in v))
    return tuple(c / n for c in v)


def verify_embedding_numeric(g: Graph, points, eps_orth=1e-9, delta=1e-6) -> tuple[bool, float]:
    """Plain-float check of an embedding: edges orthogonal, points pairwise distinct.

    Returns ``(ok, residual)`` where ``residual`` is the largest |cosine|
    over the edges.
    """
    pts = {}
    for v in range(g.n):
        p = points[v]
        norm = math.sqrt(sum(c * c for c in p))
        if not norm > 0:
            return False, math.inf
        pts[v] = tuple(c / norm for c in p)
    worst = 0.0
    for u, v in g.edges():
        worst = max(worst, abs(sum(a * b for a, b in zip(pts[u], pts[v]))))
    if worst >= eps_orth:
        return False, worst
    for u in range(g.n):
        a = pts[u]
        for v in range(u + 1, g.n):
            b = pts[v]
            c = (a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0])
            if math.sqrt(sum(x * x for x in c)) <= delta:
                return False, worst
    return True, worst


def _graph_seed(g: Graph) -> int:
    canon = emit_graph6(canonical_form(g)[0])
    return int.from_bytes(hashlib.sha256(canon.encode()).digest()[:8], "big")


def _initial(P, seed, gseed, index):
    rng = np.random.default_rng(np.random.SeedSequence([seed, gseed, index]))
    x = rng.standard_normal(P)
    for s in range(0, P, 3):
        x[s:s + 3] /= np.linalg.norm(x[s:s + 3])
    return x


def _settle(prog, x, params):
    """Run the solver, then polish every start that reached the target.

    Near-collinear pseudo-solutions can meet ``eps_orth`` while their points
    are only barely distinct; pushed further they collapse below ``delta``,
    whereas a genuine embedding just converges to rounding level.  Only
    starts that end below ``CONVERGED`` are accepted as embeddings.
    """
    x, f = _levenberg_marquardt(prog, x, params.eps_orth, params.max_iter)
    hit = f < params.eps_orth ** 2
    if hit.any():
        x[hit], _ = _levenberg_marquardt(prog, x[hit], POLISH, min(params.max_iter, POLISH_ITER))
    return x


def _classify(g, a, raw, params):
    """(ok, residual, degenerate) for one final configuration."""
    for v, (p, q) in a.parents.items():
        denom = math.dist(raw[p], _O) * math.dist(raw[q], _O)
        if not denom > 0 or math.dist(raw[v], _O) / denom <= params.delta:
            return False, math.inf, True
    ok, res = verify_embedding_numeric(g, raw, params.eps_orth, params.delta)
    if ok and res <= CONVERGED:
        return True, res, False
    res = _edge_residual(g, raw)
    # a start that met eps_orth but stalled above rounding level is creeping
    # towards coincident points; it counts as degenerate, not as a solution
    return False, res, res < params.eps_orth or _min_separation(raw) <= params.delta


def _min_separation(raw):
    pts = np.array([_unit(p) for _, p in sorted(raw.items())])
    best = math.inf
    for i in range(len(pts) - 1):
        c = np.cross(pts[i], pts[i + 1:])
        best = min(best, float(np.min(np.linalg.norm(c, axis=1))))
    return best


def _search(g: Graph, a: Assignment, params: EmbedParams) -> EmbedResult:
    prog = _Program(a)
    gseed = _graph_seed(g)
    best_res = math.inf
    degenerate = 0
    used = 0
    for start in range(0, params.restarts, BATCH):
        idxs = list(range(start, min(start + BATCH, params.restarts)))
        if prog.P:
            x0 = np.stack([_initial(prog.P, params.seed, gseed, i) for i in idxs])
        else:
            x0 = np.zeros((len(idxs), 0))
        x = _settle(prog, x0, params)
        _, _, vals = prog.residuals(x, with_jac=False)
        used = idxs[-1] + 1
        found = None
        for k, i in enumerate(idxs):
            raw = {v: tuple(float(c) for c in vals[v][k]) for v in range(g.n)}
            ok, res, degen = _classify(g, a, raw, params)
            if ok:
                if found is None or res < found[1]:
                    found = (i, res, {v: _unit(p) for v, p in raw.items()})
            elif degen:
                degenerate += 1
            else:
                best_res = min(best_res, res)
        if found is not None:
            return EmbedResult("embedded", found[1], found[2], used, free=list(a.free))
    return EmbedResult("unknown", best_res, None, used, free=list(a.free), degenerate=degenerate)


def _edge_residual(g, raw):
    worst = 0.0
    for u, v in g.edges():
        nu = math.dist(raw[u], (0, 0, 0))
        nv = math.dist(raw[v], (0, 0, 0))
        if not (nu > 0 and nv > 0):
            return math.inf
        worst = max(worst, abs(sum(x * y for x, y in zip(raw[u], raw[v]))) / (nu * nv))
    return worst


def _square_result(g: Graph) -> EmbedResult | None:
    if is_squarefree(g):
        return None
    sq = find_square(g)
    return EmbedResult("unembeddable", pattern="C4", witness={i: v for i, v in enumerate(sq)})


def numeric_embed(g: Graph, params: EmbedParams | None = None, assignment: Assignment | None = None, **kw) -> EmbedResult:
    """Look for an embedding of ``g`` from ``params.restarts`` seeded random starts.

    ``assignment`` overrides the automatic choice of free vertices.
    """
    params = params or EmbedParams(**kw)
    hit = _square_result(g)
    if hit is not None:
        return hit
    a = assignment if assignment is not None else best_assignment(g, params.budget)
    return _search(g, a, params)


def _check_pins(pins):
    out = {}
    for v, vec in pins.items():
        vec = tuple(float(c) for c in vec)
        norm = math.sqrt(sum(c * c for c in vec))
        if not norm > 0:
            raise ValueError(f"pinned vector for vertex {v} is zero")
        out[v] = tuple(c / norm for c in vec)
    items = list(out.items())
    for i, (u, a) in enumerate(items):
        for v, b in items[i + 1:]:
            c = (a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0])
            if math.sqrt(sum(x * x for x in c)) < 1e-12:
                raise ValueError(f"pinned vectors of vertices {u} and {v} are collinear")
    return out


def pinned_embed(g: Graph, pins: dict, params: EmbedParams | None = None, order=None, **kw) -> EmbedResult:
    """Like :func:`numeric_embed` with some vertices held at given directions.

    An embedded verdict is a genuine embedding; an unknown verdict says
    nothing about ``g``, since the guessed positions may simply be wrong.
    """
    params = params or EmbedParams(**kw)
    pins = _check_pins(pins)
    for v in pins:
        if not 0 <= v < g.n:
            raise ValueError(f"pinned vertex {v} out of range")
    hit = _square_result(g)
    if hit is not None:
        return hit
    if order is not None:
        a = derive_assignment(g, order=order, pins=pins)
    else:
        a = best_assignment(g, params.budget, pins=pins)
    return _search(g, a, params)
