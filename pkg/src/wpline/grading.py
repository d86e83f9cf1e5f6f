"""Grading group of a weighted projective line.

The grading group for weights (p_1, ..., p_n) is generated by x_1, ..., x_n
subject to p_1*x_1 = ... = p_n*x_n.  The common value is the canonical
element c.  Every element has a unique normal form

    l_1*x_1 + ... + l_n*x_n + l*c    with 0 <= l_i < p_i,

stored here as (coeffs, c_part).  The dualizing element is
omega = (n-2)*c - sum(x_i), and the degree map sends x_i to p/p_i where
p = lcm(p_1, ..., p_n).  The sign of degree(omega) splits weight types into
domestic, tubular and wild.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum
from functools import reduce


class LineType(Enum):
    DOMESTIC = "domestic"
    TUBULAR = "tubular"
    WILD = "wild"


def _lcm(values):
    return reduce(math.lcm, values, 1)


@dataclass(frozen=True)
class WeightData:
    """Weight sequence with point labels, padded to at least two points.

    Points of weight 1 are legitimate members of the sequence; appending
    them never changes the group, the degree map or dim_S, which is what
    makes the padding harmless.
    """

    weights: tuple[int, ...]
    points: tuple[str, ...]

    def __post_init__(self):
        if any(p < 1 for p in self.weights):
            raise ValueError("weights must be positive")
        if len(self.weights) != len(self.points):
            raise ValueError("one label per weight required")
        if len(set(self.points)) != len(self.points):
            raise ValueError("point labels must be distinct")
        if len(self.weights) < 2:
            raise ValueError("use make_line(), which pads to two points")

    @property
    def n(self) -> int:
        return len(self.weights)

    @property
    def p(self) -> int:
        return _lcm(self.weights)

    def element(self, coeffs, c_part=0) -> "GradeElement":
        return normalize(self, tuple(coeffs), c_part)

    def zero(self) -> "GradeElement":
        return self.element((0,) * self.n)

    def generator(self, i: int) -> "GradeElement":
        """The element x_i (0-based point index)."""
        coeffs = [0] * self.n
        coeffs[i] = 1
        return self.element(coeffs)

    def canonical(self) -> "GradeElement":
        """c, the common value of the p_i * x_i."""
        return self.element((0,) * self.n, 1)

    def dualizing(self) -> "GradeElement":
        """omega = (n-2)*c - sum(x_i)."""
        return self.element((-1,) * self.n, self.n - 2)

    def weighted_indices(self) -> tuple[int, ...]:
        """Indices of the points with weight at least 2."""
        return tuple(i for i, p in enumerate(self.weights) if p >= 2)


def make_line(weights, extra_points=()) -> WeightData:
    """Build WeightData from a raw weight list, padding to two points.

    Labels follow the usual normalization: the first three points sit at
    inf, 0 and 1, later ones get symbolic names.
    """
    ws = [int(w) for w in weights]
    if any(w < 1 for w in ws):
        raise ValueError("weights must be positive")
    while len(ws) < 2:
        ws.append(1)
    names = []
    for i in range(len(ws)):
        if i == 0:
            names.append("inf")
        elif i == 1:
            names.append("0")
        elif i == 2:
            names.append("1")
        else:
            names.append(f"l{i + 1}")
    line = WeightData(tuple(ws), tuple(names))
    for q in extra_points:
        if q in names:
            raise ValueError(f"ordinary point {q!r} clashes with a weighted point")
    return line


def parse_weights(text: str) -> list[int]:
    """Parse a comma-separated weight list such as "2,3,5"."""
    try:
        ws = [int(part) for part in text.split(",") if part.strip() != ""]
    except ValueError as exc:
        raise ValueError(f"bad weight list {text!r}") from exc
    if not ws or any(w < 1 for w in ws):
        raise ValueError(f"bad weight list {text!r}")
    return ws


@dataclass(frozen=True)
class GradeElement:
    """Normal form l_1*x_1 + ... + l_n*x_n + l*c with 0 <= l_i < p_i."""

    line: WeightData
    coeffs: tuple[int, ...]
    c_part: int

    def __add__(self, other: "GradeElement") -> "GradeElement":
        if self.line != other.line:
            raise ValueError("elements of different grading groups")
        coeffs = tuple(a + b for a, b in zip(self.coeffs, other.coeffs))
        return normalize(self.line, coeffs, self.c_part + other.c_part)

    def __neg__(self) -> "GradeElement":
        return normalize(self.line, tuple(-a for a in self.coeffs), -self.c_part)

    def __sub__(self, other: "GradeElement") -> "GradeElement":
        return self + (-other)

    def scale(self, k: int) -> "GradeElement":
        return normalize(self.line, tuple(k * a for a in self.coeffs), k * self.c_part)

    def degree(self) -> int:
        p = self.line.p
        return sum(a * (p // pi) for a, pi in zip(self.coeffs, self.line.weights)) \
            + self.c_part * p

    def is_effective(self) -> bool:
        """Whether the element is a sum of generators with nonnegative
        coefficients, equivalently has nonnegative c part in normal form."""
        return self.c_part >= 0

    def __le__(self, other: "GradeElement") -> bool:
        return (other - self).is_effective()

    def __str__(self) -> str:
        body = ",".join(str(a) for a in self.coeffs)
        return f"({body};{self.c_part})"


def normalize(line: WeightData, coeffs, c_part: int) -> GradeElement:
    """Reduce raw coefficients to the unique normal form."""
    coeffs = tuple(int(a) for a in coeffs)
    if len(coeffs) != line.n:
        raise ValueError("coefficient count does not match the weight count")
    carry = int(c_part)
    normed = []
    for a, p in zip(coeffs, line.weights):
        q, r = divmod(a, p)
        normed.append(r)
        carry += q
    return GradeElement(line, tuple(normed), carry)


def line_invariants(line: WeightData):
    """Return (c, omega, type) where type is the domestic/tubular/wild split."""
    omega = line.dualizing()
    d = omega.degree()
    if d < 0:
        kind = LineType.DOMESTIC
    elif d == 0:
        kind = LineType.TUBULAR
    else:
        kind = LineType.WILD
    return line.canonical(), omega, kind


def dim_S(a: GradeElement) -> int:
    """Dimension of the degree-a component of the coordinate ring.

    Monomials X_1^a X_2^b prod_{i>=3} X_i^{c_i} with a, b >= 0 and
    0 <= c_i < p_i form a basis; in a fixed torsion pattern the pairs
    (a, b) hitting the target are counted by the normal-form c part.
    """
    t = a.c_part
    return t + 1 if t >= 0 else 0
