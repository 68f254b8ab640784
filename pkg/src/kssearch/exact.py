"""Exact arithmetic in Z[sqrt(d)] and projective 3-vectors over it."""

from __future__ import annotations

import math
import re
from dataclasses import dataclass


def _squarefree(d: int) -> bool:
    if d < 1:
        return False
    k = 2
    while k * k <= d:
        if d % (k * k) == 0:
            return False
        k += 1
    return True


@dataclass(frozen=True)
class QuadInt:
    """The number ``a + b*sqrt(d)``."""

    a: int
    b: int = 0
    d: int = 2

    def __post_init__(self):
        if not _squarefree(self.d):
            raise ValueError(f"radicand {self.d} is not a squarefree positive integer")

    def _coerce(self, other):
        if isinstance(other, QuadInt):
            if other.d != self.d and other.b and self.b:
                raise ValueError("mixed radicands")
            return other if other.d == self.d else QuadInt(other.a, other.b, self.d)
        if isinstance(other, int):
            return QuadInt(other, 0, self.d)
        return NotImplemented

    def __add__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return QuadInt(self.a + o.a, self.b + o.b, self.d)

    __radd__ = __add__

    def __neg__(self):
        return QuadInt(-self.a, -self.b, self.d)

    def __sub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return QuadInt(self.a - o.a, self.b - o.b, self.d)

    def __rsub__(self, other):
        return -(self - other)

    def __mul__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return QuadInt(self.a * o.a + self.d * self.b * o.b, self.a * o.b + self.b * o.a, self.d)

    __rmul__ = __mul__

    def __bool__(self):
        # sqrt(d) is irrational, so a + b*sqrt(d) = 0 forces a = b = 0
        return bool(self.a or self.b)

    def __eq__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return False
        return self.a == o.a and self.b == o.b

    def __hash__(self):
        return hash((self.a, self.b, self.d))

    def __float__(self):
        return self.a + self.b * math.sqrt(self.d)

    def __str__(self):
        if self.b == 0:
            return str(self.a)
        if self.a == 0:
            return f"{self.b}*r"
        return f"{self.a}{self.b:+d}*r"

    def sign(self) -> int:
        """Exact sign of ``a + b*sqrt(d)``."""
        a, b = self.a, self.b
        if b == 0:
            return (a > 0) - (a < 0)
        if a == 0:
            return (b > 0) - (b < 0)
        if (a > 0) == (b > 0):
            return 1 if a > 0 else -1
        # opposite signs: compare a^2 with d*b^2
        lhs, rhs = a * a, self.d * b * b
        if lhs == rhs:
            return 0
        dominant = a if lhs > rhs else b
        return 1 if dominant > 0 else -1


_ELEMENT = re.compile(
    r"""^\s*(?:
        (?P<a>[+-]?\d+)\s*(?:(?P<sign>[+-])\s*(?P<b1>\d+)?\s*\*?\s*r)?
      | (?P<b2sign>[+-]?)\s*(?P<b2>\d+)?\s*\*?\s*r
    )\s*$""",
    re.VERBOSE,
)


def parse_element(text: str, d: int) -> QuadInt:
    """Parse ``a``, ``a+b*r``, ``a-b*r``, ``b*r``, ``r`` or ``-r`` (r = sqrt(d))."""
    m = _ELEMENT.match(text)
    if not m:
        raise ValueError(f"malformed ring element {text!r}")
    if m.group("a") is not None:
        a = int(m.group("a"))
        if m.group("sign"):
            b = int(m.group("b1") or 1)
            if m.group("sign") == "-":
                b = -b
        else:
            b = 0
        return QuadInt(a, b, d)
    b = int(m.group("b2") or 1)
    if m.group("b2sign") == "-":
        b = -b
    return QuadInt(0, b, d)


@dataclass(frozen=True)
class ExactVec3:
    x: QuadInt
    y: QuadInt
    z: QuadInt

    def __post_init__(self):
        if not (self.x or self.y or self.z):
            raise ValueError("the zero vector is not a point of the projective plane")

    @classmethod
    def of(cls, coords, d: int = 2) -> "ExactVec3":
        vals = []
        for c in coords:
            if isinstance(c, QuadInt):
                vals.append(c)
            elif isinstance(c, int):
                vals.append(QuadInt(c, 0, d))
            elif isinstance(c, str):
                vals.append(parse_element(c, d))
            else:
                raise TypeError(f"cannot use {c!r} as a ring element")
        return cls(*vals)

    @property
    def d(self) -> int:
        return self.x.d

    def __iter__(self):
        return iter((self.x, self.y, self.z))

    def dot(self, other: "ExactVec3") -> QuadInt:
        return self.x * other.x + self.y * other.y + self.z * other.z

    def cross(self, other: "ExactVec3") -> tuple[QuadInt, QuadInt, QuadInt]:
        return (
            self.y * other.z - self.z * other.y,
            self.z * other.x - self.x * other.z,
            self.x * other.y - self.y * other.x,
        )

    def is_orthogonal(self, other: "ExactVec3") -> bool:
        return not self.dot(other)

    def same_point(self, other: "ExactVec3") -> bool:
        """Projective equality: the vectors are scalar multiples of each other."""
        return not any(self.cross(other))

    def to_float(self) -> tuple[float, float, float]:
        return (float(self.x), float(self.y), float(self.z))

    def __str__(self):
        return f"{self.x}, {self.y}, {self.z}"
