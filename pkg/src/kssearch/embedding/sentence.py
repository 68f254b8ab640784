"""Polynomial sentences for the constraint system of an assignment.

Every free vertex contributes three real unknowns.  Cross products are
multiplied out into explicit polynomials, so the exported sentence only uses
``+``, ``-``, ``*`` and numerals and lands in quantifier-free nonlinear real
arithmetic.  Pinned coordinates may be integers, rationals, floats (taken at
their exact binary value) or ring elements ``a + b*r``; the latter bring in
one extra unknown ``r`` pinned by ``r*r = d`` and ``r > 0``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from ..exact import QuadInt
from .assignment import Assignment, BaseVar, Cross, Pinned

AXES = "xyz"


class Poly:
    """Sparse polynomial with rational coefficients.

    Monomials are sorted tuples of ``(variable, exponent)`` pairs.
    """

    __slots__ = ("terms",)

    def __init__(self, terms=None):
        self.terms = {m: c for m, c in (terms or {}).items() if c}

    @classmethod
    def const(cls, c) -> "Poly":
        return cls({(): Fraction(c)})

    @classmethod
    def var(cls, name: str) -> "Poly":
        return cls({((name, 1),): Fraction(1)})

    def __add__(self, other):
        out = dict(self.terms)
        for m, c in other.terms.items():
            out[m] = out.get(m, 0) + c
        return Poly(out)

    def __neg__(self):
        return Poly({m: -c for m, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        out = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                m = _mono_mul(m1, m2)
                out[m] = out.get(m, 0) + c1 * c2
        return Poly(out)

    def __bool__(self):
        return bool(self.terms)

    def __eq__(self, other):
        return isinstance(other, Poly) and self.terms == other.terms

    def degree(self) -> int:
        return max((sum(e for _, e in m) for m in self.terms), default=0)

    def variables(self) -> set[str]:
        return {v for m in self.terms for v, _ in m}

    def evaluate(self, env):
        total = 0
        for m, c in self.terms.items():
            t = c
            for v, e in m:
                t = t * env[v] ** e
            total = total + t
        return total

    def sorted_terms(self):
        # highest degree first, then lexicographic; keeps output stable
        return sorted(self.terms.items(), key=lambda mc: (-sum(e for _, e in mc[0]), mc[0]))


def _mono_mul(m1, m2):
    if not m1:
        return m2
    if not m2:
        return m1
    d = dict(m1)
    for v, e in m2:
        d[v] = d.get(v, 0) + e
    return tuple(sorted(d.items()))


def _coord(c):
    if isinstance(c, QuadInt):
        p = Poly.const(c.a)
        if c.b:
            p = p + Poly.const(c.b) * Poly.var("r")
        return p, c.d if c.b else None
    if isinstance(c, (int, Fraction)):
        return Poly.const(c), None
    if isinstance(c, float):
        return Poly.const(Fraction(c)), None
    raise TypeError(f"unsupported pinned coordinate {c!r}")


def var_names(v: int) -> list[str]:
    return [f"v{v}_{a}" for a in AXES]


def _cross3(p, q):
    return (
        p[1] * q[2] - p[2] * q[1],
        p[2] * q[0] - p[0] * q[2],
        p[0] * q[1] - p[1] * q[0],
    )


def _dot3(p, q):
    return p[0] * q[0] + p[1] * q[1] + p[2] * q[2]


@dataclass
class Sentence:
    """Existential sentence: all ``equations`` vanish, every ``nonzero`` vector is not zero."""

    variables: list[str]
    equations: list[tuple[str, Poly]] = field(default_factory=list)
    nonzero: list[tuple[str, tuple[Poly, Poly, Poly]]] = field(default_factory=list)
    radicand: int | None = None

    def degree(self) -> int:
        return max((p.degree() for _, p in self.equations), default=0)

    def holds(self, env) -> bool:
        """Evaluate at a point; exact when ``env`` holds rationals."""
        if any(p.evaluate(env) != 0 for _, p in self.equations):
            return False
        return all(any(c.evaluate(env) != 0 for c in vec) for _, vec in self.nonzero)


def build_sentence(a: Assignment) -> Sentence:
    vecs = {}
    radicand = None

    def expand(e):
        nonlocal radicand
        if isinstance(e, BaseVar):
            return tuple(Poly.var(n) for n in var_names(e.vertex))
        if isinstance(e, Pinned):
            out = []
            for c in e.vector:
                p, d = _coord(c)
                if d is not None:
                    if radicand is not None and d != radicand:
                        raise ValueError("pinned vectors use different radicands")
                    radicand = d
                out.append(p)
            return tuple(out)
        if isinstance(e, Cross):
            return _cross3(expand(e.left), expand(e.right))
        raise TypeError(f"not a vector expression: {e!r}")

    for v in a.order:
        e = a.exprs[v]
        if isinstance(e, Cross):
            p, q = a.parents[v]
            vecs[v] = _cross3(vecs[p], vecs[q])
        else:
            vecs[v] = expand(e)

    names = [n for v in a.free for n in var_names(v)]
    s = Sentence(variables=names)
    one = Poly.const(1)
    for v in a.free:
        s.equations.append((f"unit {v}", _dot3(vecs[v], vecs[v]) - one))
    for u, v in a.orth_reqs:
        s.equations.append((f"orthogonal {u} {v}", _dot3(vecs[u], vecs[v])))
    if radicand is not None:
        s.variables.append("r")
        s.radicand = radicand
        s.equations.append(("radical", Poly.var("r") * Poly.var("r") - Poly.const(radicand)))
    for v in sorted(a.parents):
        s.nonzero.append((f"nonzero {v}", vecs[v]))
    for u, v in a.noncol_reqs:
        s.nonzero.append((f"noncollinear {u} {v}", _cross3(vecs[u], vecs[v])))
    return s


# -- rendering -------------------------------------------------------------------------


def _smt_num(c: Fraction) -> str:
    def dec(k):
        return f"{k}.0" if k >= 0 else f"(- {-k}.0)"

    if c.denominator == 1:
        return dec(c.numerator)
    return f"(/ {dec(c.numerator)} {dec(c.denominator)})"


def _smt_mono(m, c):
    factors = []
    for v, e in m:
        factors.extend([v] * e)
    if c == 1 and factors:
        body = factors
    elif c == -1 and factors:
        return "(- " + (factors[0] if len(factors) == 1 else "(* " + " ".join(factors) + ")") + ")"
    else:
        body = [_smt_num(c)] + factors
    return body[0] if len(body) == 1 else "(* " + " ".join(body) + ")"


def smt_poly(p: Poly) -> str:
    terms = [_smt_mono(m, c) for m, c in p.sorted_terms()]
    if not terms:
        return "0.0"
    return terms[0] if len(terms) == 1 else "(+ " + " ".join(terms) + ")"


def _human_mono(m, c):
    factors = [v if e == 1 else f"{v}^{e}" for v, e in m]
    if not factors:
        return str(c)
    if c == 1:
        return "*".join(factors)
    if c == -1:
        return "-" + "*".join(factors)
    return f"{c}*" + "*".join(factors)


def human_poly(p: Poly) -> str:
    out = ""
    for m, c in p.sorted_terms():
        t = _human_mono(m, c)
        if not out:
            out = t
        elif t.startswith("-"):
            out += " - " + t[1:]
        else:
            out += " + " + t
    return out or "0"


def render_smt(s: Sentence) -> str:
    lines = ["(set-logic QF_NRA)"]
    for v in s.variables:
        lines.append(f"(declare-fun {v} () Real)")
    for label, p in s.equations:
        lines.append(f"; {label}")
        lines.append(f"(assert (= {smt_poly(p)} 0.0))")
    if s.radicand is not None:
        lines.append("(assert (> r 0.0))")
    for label, vec in s.nonzero:
        lines.append(f"; {label}")
        parts = " ".join(f"(not (= {smt_poly(c)} 0.0))" for c in vec)
        lines.append(f"(assert (or {parts}))")
    lines.append("(check-sat)")
    lines.append("(exit)")
    return "\n".join(lines) + "\n"


def render_human(s: Sentence) -> str:
    lines = ["exists " + " ".join(s.variables) + " such that"]
    for label, p in s.equations:
        lines.append(f"  {human_poly(p)} = 0    [{label}, degree {p.degree()}]")
    if s.radicand is not None:
        lines.append("  r > 0")
    for label, vec in s.nonzero:
        lines.append("  (" + ", ".join(human_poly(c) for c in vec) + f") != 0    [{label}]")
    return "\n".join(lines) + "\n"


def emit_sentence(a: Assignment, format: str = "smt") -> str:
    """Render the constraint system of ``a`` as SMT-LIB 2 (``"smt"``) or infix text (``"human"``)."""
    s = build_sentence(a)
    if format == "smt":
        return render_smt(s)
    if format == "human":
        return render_human(s)
    raise ValueError(f"unknown sentence format {format!r}")
