"""Time-frequency points, configurations and their classification.

A configuration is a finite set of points (x, y); x is a time shift and y a
frequency shift.  Classification sorts configurations into the shapes for
which independence of the associated Gabor system is settled by different
arguments, in a fixed priority order:

    Lattice > OneZ2 > Collinear1N > TwoTwo > General

Lattice means every point is integral; OneZ2 means all but exactly one are;
Collinear1N means all but one point sit on a common affine line (with the
fully collinear degenerate case flagged); TwoTwo is four points split
two-and-two across a pair of parallel lines.  The priority order resolves
overlaps: a lattice configuration that also happens to be collinear is
reported as Lattice.

Coordinates are floats, or exact values (:class:`~hrtlab.exactnum.SqrtExpr`)
when parsed from the exact text grammar; exact coordinates get exact
classification, float coordinates use an integrality tolerance of 1e-9.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from itertools import combinations
from math import hypot, isfinite
from typing import Optional, Union

from .errors import Collinear, DuplicatePoints
from .exactnum import SqrtExpr, parse_real

Real = Union[float, SqrtExpr]

INTEGRALITY_TOL = 1e-9
# Integrality and collinearity share one tolerance; the collinearity test
# scales it by the edge sizes so large configurations do not get a free pass.
_COLLINEAR_TOL = 1e-9


@dataclass(frozen=True)
class TFPoint:
    """One time-frequency shift: translate by x, then modulate by y."""

    x: Real
    y: Real

    def __post_init__(self):
        for value in (self.x, self.y):
            if isinstance(value, float) and not isfinite(value):
                raise ValueError("TFPoint components must be finite")

    @property
    def xf(self) -> float:
        return float(self.x)

    @property
    def yf(self) -> float:
        return float(self.y)

    def as_floats(self) -> tuple[float, float]:
        return (self.xf, self.yf)


@dataclass(frozen=True)
class Configuration:
    """An ordered list of pairwise distinct points, one optionally marked.

    The distinguished index singles out the point whose shift is to be
    expressed through the others (dependency residuals); most operations
    ignore it.
    """

    points: tuple[TFPoint, ...]
    distinguished: Optional[int] = None

    def __post_init__(self):
        pts = tuple(self.points)
        object.__setattr__(self, "points", pts)
        if len(pts) < 1:
            raise ValueError("configuration needs at least one point")
        for i, j in combinations(range(len(pts)), 2):
            if pts[i] == pts[j]:
                raise DuplicatePoints(
                    f"points {i} and {j} coincide: {pts[i].as_floats()}")
        if self.distinguished is not None and not (
                0 <= self.distinguished < len(pts)):
            raise ValueError("distinguished index out of range")

    def __len__(self) -> int:
        return len(self.points)

    def float_points(self) -> list[tuple[float, float]]:
        return [p.as_floats() for p in self.points]


@dataclass(frozen=True)
class CoefficientVector:
    """Nonzero complex coefficients attached to configuration points."""

    values: tuple[complex, ...]

    def __post_init__(self):
        vals = tuple(complex(v) for v in self.values)
        object.__setattr__(self, "values", vals)
        if not vals:
            raise ValueError("coefficient vector must be nonempty")
        if any(v == 0 for v in vals):
            raise ValueError("coefficient vector entries must be nonzero")

    def __len__(self) -> int:
        return len(self.values)


class ConfigLabel(Enum):
    LATTICE = "Lattice"
    ONE_Z2 = "OneZ2"
    COLLINEAR_1N = "Collinear1N"
    TWO_TWO = "TwoTwo"
    GENERAL = "General"


@dataclass(frozen=True)
class ConfigClass:
    """Classification result.

    off_index is the off-lattice point for OneZ2 and the off-line point for
    Collinear1N (None when the whole configuration is collinear).  line holds
    (a, b, c) with a*x + b*y = c, unit normal, first nonzero of (a, b)
    positive.
    """

    label: ConfigLabel
    off_index: Optional[int] = None
    line: Optional[tuple[float, float, float]] = None
    fully_collinear: bool = False

    def describe(self) -> str:
        if self.label is ConfigLabel.COLLINEAR_1N and self.fully_collinear:
            return "Collinear1N fully-collinear"
        if self.off_index is not None:
            return f"{self.label.value} off={self.off_index}"
        return self.label.value


def _is_integral(value: Real) -> bool:
    if isinstance(value, SqrtExpr):
        return value.is_integer
    return abs(value - round(value)) <= INTEGRALITY_TOL


def _cross(a: TFPoint, b: TFPoint, c: TFPoint, exact: bool) -> Real:
    """Signed area factor of the triangle a, b, c."""
    if exact:
        return ((b.x - a.x) * (c.y - a.y)) - ((b.y - a.y) * (c.x - a.x))
    return ((b.xf - a.xf) * (c.yf - a.yf)) - ((b.yf - a.yf) * (c.xf - a.xf))


def _cross_is_zero(a: TFPoint, b: TFPoint, c: TFPoint, exact: bool) -> bool:
    value = _cross(a, b, c, exact)
    if exact:
        return not bool(value)
    scale = max(1.0, (abs(b.xf - a.xf) + abs(b.yf - a.yf))
                * (abs(c.xf - a.xf) + abs(c.yf - a.yf)))
    return abs(value) <= _COLLINEAR_TOL * scale


def _all_collinear(points: list[TFPoint], exact: bool) -> bool:
    if len(points) <= 2:
        return True
    a = points[0]
    b = next((p for p in points[1:] if p != a), None)
    if b is None:
        return True
    return all(_cross_is_zero(a, b, p, exact) for p in points[2:])


def _line_through(a: TFPoint, b: TFPoint) -> tuple[float, float, float]:
    dx, dy = b.xf - a.xf, b.yf - a.yf
    norm = hypot(dx, dy)
    na, nb = -dy / norm, dx / norm
    if na < 0 or (na == 0 and nb < 0):
        na, nb = -na, -nb
    return (na, nb, na * a.xf + nb * a.yf)


def classify_configuration(cfg: Configuration) -> ConfigClass:
    """First matching label in the documented priority order."""
    pts = list(cfg.points)
    n = len(pts)
    exact = all(isinstance(p.x, SqrtExpr) and isinstance(p.y, SqrtExpr)
                for p in pts)

    integral = [_is_integral(p.x) and _is_integral(p.y) for p in pts]
    if all(integral):
        return ConfigClass(ConfigLabel.LATTICE)
    if integral.count(False) == 1:
        return ConfigClass(ConfigLabel.ONE_Z2, off_index=integral.index(False))

    if _all_collinear(pts, exact):
        line = _line_through(pts[0], next(
            (p for p in pts[1:] if p != pts[0]), pts[0])) if n >= 2 else None
        return ConfigClass(ConfigLabel.COLLINEAR_1N, line=line,
                           fully_collinear=True)
    if n >= 3:
        for i in range(n):
            rest = pts[:i] + pts[i + 1:]
            if _all_collinear(rest, exact) and not _cross_is_zero(
                    rest[0], rest[1], pts[i], exact):
                return ConfigClass(ConfigLabel.COLLINEAR_1N, off_index=i,
                                   line=_line_through(rest[0], rest[1]))

    if n == 4:
        for (i, j), (k, l) in (((0, 1), (2, 3)), ((0, 2), (1, 3)),
                               ((0, 3), (1, 2))):
            d1 = (pts[j].xf - pts[i].xf, pts[j].yf - pts[i].yf)
            d2 = (pts[l].xf - pts[k].xf, pts[l].yf - pts[k].yf)
            det = d1[0] * d2[1] - d1[1] * d2[0]
            scale = max(1.0, (abs(d1[0]) + abs(d1[1]))
                        * (abs(d2[0]) + abs(d2[1])))
            if abs(det) <= _COLLINEAR_TOL * scale:
                return ConfigClass(ConfigLabel.TWO_TWO)

    return ConfigClass(ConfigLabel.GENERAL)


@dataclass(frozen=True)
class AffineSymplecticMap:
    """p -> A (p - v) with det A = 1.

    Inverse is of the same shape, so round trips stay in the class.
    """

    matrix: tuple[tuple[float, float], tuple[float, float]]
    shift: tuple[float, float]

    def apply_point(self, p: TFPoint) -> TFPoint:
        (a11, a12), (a21, a22) = self.matrix
        qx, qy = p.xf - self.shift[0], p.yf - self.shift[1]
        return TFPoint(a11 * qx + a12 * qy, a21 * qx + a22 * qy)

    def apply(self, cfg: Configuration) -> Configuration:
        return Configuration(tuple(self.apply_point(p) for p in cfg.points),
                             cfg.distinguished)

    def inverse(self) -> "AffineSymplecticMap":
        (a11, a12), (a21, a22) = self.matrix
        det = a11 * a22 - a12 * a21
        inv = ((a22 / det, -a12 / det), (-a21 / det, a11 / det))
        vx, vy = self.shift
        w = (-(a11 * vx + a12 * vy), -(a21 * vx + a22 * vy))
        return AffineSymplecticMap(inv, w)


def normalize_configuration(
        cfg: Configuration) -> tuple[Configuration, AffineSymplecticMap]:
    """Map the configuration onto one containing (0,0), (0,1) and (a,0).

    The first non-collinear triple (in index order) supplies the three
    anchors; its first point goes to the origin, the second to (0,1) and the
    third to (a,0) with a = -det[p1-p0, p2-p0], which is the unique choice
    with det A = 1.  Raises Collinear when every triple is degenerate.
    """
    pts = list(cfg.points)
    exact = all(isinstance(p.x, SqrtExpr) and isinstance(p.y, SqrtExpr)
                for p in pts)
    anchor = next((idx for idx in combinations(range(len(pts)), 3)
                   if not _cross_is_zero(pts[idx[0]], pts[idx[1]],
                                         pts[idx[2]], exact)), None)
    if anchor is None:
        raise Collinear("no non-collinear triple to anchor the normalization")
    p0, p1, p2 = (pts[i] for i in anchor)
    u1 = (p1.xf - p0.xf, p1.yf - p0.yf)
    u2 = (p2.xf - p0.xf, p2.yf - p0.yf)
    det = u1[0] * u2[1] - u1[1] * u2[0]
    # Rows solve A u1 = (0, 1), A u2 = (-det, 0); det A = 1 follows.
    matrix = ((u1[1], -u1[0]), (u2[1] / det, -u2[0] / det))
    fmap = AffineSymplecticMap(matrix, (p0.xf, p0.yf))
    return fmap.apply(cfg), fmap


def parse_configuration(source: Union[str, dict, list]) -> Configuration:
    """Configuration from JSON text or already-parsed JSON data.

    Accepts ``{"points": [[x, y], ...], "distinguished": i | null}`` or the
    bare points list.  Coordinates may be numbers, decimal strings, or exact
    grammar strings such as ``"1/3 + 2/5*sqrt(2)"`` (kept symbolic).
    """
    data = json.loads(source) if isinstance(source, str) else source
    if isinstance(data, list):
        data = {"points": data, "distinguished": None}
    if not isinstance(data, dict) or "points" not in data:
        raise ValueError("expected a points list or an object with 'points'")

    def coord(value) -> Real:
        if isinstance(value, str):
            return parse_real(value)
        if isinstance(value, (int, Fraction)):
            return float(value)
        if isinstance(value, float):
            return value
        raise ValueError(f"bad coordinate {value!r}")

    points = []
    for entry in data["points"]:
        if len(entry) != 2:
            raise ValueError(f"point needs two coordinates: {entry!r}")
        points.append(TFPoint(coord(entry[0]), coord(entry[1])))
    return Configuration(tuple(points), data.get("distinguished"))


def configuration_to_jsonable(cfg: Configuration) -> dict:
    """JSON-ready form; exact coordinates render back to grammar text."""
    def coord(value: Real):
        return str(value) if isinstance(value, SqrtExpr) else value
    return {"points": [[coord(p.x), coord(p.y)] for p in cfg.points],
            "distinguished": cfg.distinguished}
