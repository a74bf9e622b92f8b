"""Exact planar primitives for the taxicab plane.

Points, directions, lines, rays, segments, and taxicab circles over rational
coordinates, plus the distance and intersection operations everything else is
built from.  A taxicab circle of radius r about (cx, cy) is the locus
|x - cx| + |y - cy| = r: a square rotated 45 degrees whose edges have slope
+1 or -1.  Because of those straight edges a line can meet a circle in a full
segment, so the intersection result type enumerates that case explicitly
instead of treating it as an error.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from fractions import Fraction

from .numeric import as_rational


class GeometryError(ValueError):
    """A geometric precondition was violated."""


class CoincidentLinesError(GeometryError):
    """Line-line intersection where both operands are the same line."""


@dataclass(frozen=True)
class Point:
    x: Fraction
    y: Fraction

    def __post_init__(self) -> None:
        object.__setattr__(self, "x", as_rational(self.x))
        object.__setattr__(self, "y", as_rational(self.y))

    def __add__(self, move: Direction) -> Point:
        if not isinstance(move, Direction):
            return NotImplemented
        return Point(self.x + move.dx, self.y + move.dy)

    def __sub__(self, other: Point) -> Direction:
        if not isinstance(other, Point):
            return NotImplemented
        return Direction(self.x - other.x, self.y - other.y)

    def __str__(self) -> str:
        return f"({self.x}, {self.y})"


@dataclass(frozen=True)
class Direction:
    """A nonzero displacement; two directions are equal only componentwise."""

    dx: Fraction
    dy: Fraction

    def __post_init__(self) -> None:
        object.__setattr__(self, "dx", as_rational(self.dx))
        object.__setattr__(self, "dy", as_rational(self.dy))
        if self.dx == 0 and self.dy == 0:
            raise GeometryError("zero direction")

    def scaled(self, factor: Fraction | int) -> Direction:
        return Direction(self.dx * factor, self.dy * factor)

    def __mul__(self, factor: Fraction | int) -> Direction:
        if not isinstance(factor, (int, Fraction)):
            return NotImplemented
        return self.scaled(factor)

    __rmul__ = __mul__

    def __neg__(self) -> Direction:
        return self.scaled(-1)

    def taxicab_length(self) -> Fraction:
        return abs(self.dx) + abs(self.dy)

    def __str__(self) -> str:
        return f"({self.dx}, {self.dy})"


@dataclass(frozen=True)
class Line:
    """The locus a*x + b*y = c, stored in canonical form.

    Canonical means the first nonzero coefficient of (a, b) equals 1, so two
    Line values describe the same locus exactly when they compare equal.
    """

    a: Fraction
    b: Fraction
    c: Fraction

    def __post_init__(self) -> None:
        a = as_rational(self.a)
        b = as_rational(self.b)
        c = as_rational(self.c)
        if a == 0 and b == 0:
            raise GeometryError("line requires (a, b) != (0, 0)")
        scale = a if a != 0 else b
        object.__setattr__(self, "a", a / scale)
        object.__setattr__(self, "b", b / scale)
        object.__setattr__(self, "c", c / scale)

    def contains(self, p: Point) -> bool:
        return self.a * p.x + self.b * p.y == self.c

    def slope(self) -> Fraction | None:
        """Slope of the line, or None when vertical."""
        if self.b == 0:
            return None
        return -self.a / self.b

    def direction(self) -> Direction:
        return Direction(self.b, -self.a)

    def some_point(self) -> Point:
        if self.a != 0:
            return Point(self.c / self.a, Fraction(0))
        return Point(Fraction(0), self.c / self.b)


@dataclass(frozen=True)
class Ray:
    origin: Point
    direction: Direction

    def point_at(self, t: Fraction | int) -> Point:
        return Point(self.origin.x + self.direction.dx * t, self.origin.y + self.direction.dy * t)

    def param_of(self, p: Point) -> Fraction:
        """Parameter t with p == origin + t * direction; p must be on the
        supporting line."""
        if self.direction.dx != 0:
            return (p.x - self.origin.x) / self.direction.dx
        return (p.y - self.origin.y) / self.direction.dy

    def supporting_line(self) -> Line:
        return line_through(self.origin, self.point_at(1))

    def contains(self, p: Point) -> bool:
        dxp = p.x - self.origin.x
        dyp = p.y - self.origin.y
        if dxp * self.direction.dy != dyp * self.direction.dx:
            return False
        return self.param_of(p) >= 0


@dataclass(frozen=True)
class Segment:
    p: Point
    q: Point

    def __post_init__(self) -> None:
        if self.p == self.q:
            raise GeometryError("degenerate segment")

    def contains(self, x: Point) -> bool:
        if not line_through(self.p, self.q).contains(x):
            return False
        lo_x, hi_x = sorted((self.p.x, self.q.x))
        lo_y, hi_y = sorted((self.p.y, self.q.y))
        return lo_x <= x.x <= hi_x and lo_y <= x.y <= hi_y

    def taxicab_length(self) -> Fraction:
        return taxicab_distance(self.p, self.q)


@dataclass(frozen=True)
class TaxicabCircle:
    center: Point
    radius: Fraction

    def __post_init__(self) -> None:
        object.__setattr__(self, "radius", as_rational(self.radius))
        if self.radius <= 0:
            raise GeometryError("circle radius must be positive")


class CircleVertex(Enum):
    NORTH = "N"
    SOUTH = "S"
    EAST = "E"
    WEST = "W"


_VERTEX_OFFSETS = {
    CircleVertex.NORTH: (0, 1),
    CircleVertex.SOUTH: (0, -1),
    CircleVertex.EAST: (1, 0),
    CircleVertex.WEST: (-1, 0),
}


@dataclass(frozen=True)
class Empty:
    pass


@dataclass(frozen=True)
class OnePoint:
    point: Point


@dataclass(frozen=True)
class TwoPoints:
    first: Point
    second: Point

    def __post_init__(self) -> None:
        if self.first == self.second:
            raise GeometryError("TwoPoints requires distinct points")


@dataclass(frozen=True)
class OverlapSegment:
    segment: Segment


Intersection = Empty | OnePoint | TwoPoints | OverlapSegment


def points_of(result: Intersection) -> tuple[Point, ...]:
    """The isolated points of an intersection result, in its stored order."""
    if isinstance(result, OnePoint):
        return (result.point,)
    if isinstance(result, TwoPoints):
        return (result.first, result.second)
    return ()


def taxicab_distance(p: Point, q: Point) -> Fraction:
    return abs(q.x - p.x) + abs(q.y - p.y)


def euclidean_distance_squared(p: Point, q: Point) -> Fraction:
    return (q.x - p.x) ** 2 + (q.y - p.y) ** 2


def line_through(p: Point, q: Point) -> Line:
    if p == q:
        raise GeometryError("line through coincident points is undefined")
    # Normal of the direction (dx, dy) is (dy, -dx).
    dx = q.x - p.x
    dy = q.y - p.y
    return Line(dy, -dx, dy * p.x - dx * p.y)


def intersect_lines(m: Line, n: Line) -> Intersection:
    if m == n:
        raise CoincidentLinesError("lines coincide; intersection is the whole line")
    det = m.a * n.b - n.a * m.b
    if det == 0:
        return Empty()
    x = (m.c * n.b - n.c * m.b) / det
    y = (m.a * n.c - n.a * m.c) / det
    return OnePoint(Point(x, y))


def _lex_key(p: Point) -> tuple[Fraction, Fraction]:
    return (p.x, p.y)


def _circle_edges(circle: TaxicabCircle) -> tuple[tuple[Point, Point], ...]:
    """Edges in counterclockwise order, each as its (start, end) vertices."""
    e = circle_vertex(circle, CircleVertex.EAST)
    n = circle_vertex(circle, CircleVertex.NORTH)
    w = circle_vertex(circle, CircleVertex.WEST)
    s = circle_vertex(circle, CircleVertex.SOUTH)
    return ((e, n), (n, w), (w, s), (s, e))


def intersect_line_circle(line: Line, circle: TaxicabCircle) -> Intersection:
    """Meet a line with the boundary diamond of a taxicab circle.

    Isolated crossing points come back sorted lexicographically by (x, y).
    A line of slope +1 or -1 that supports one of the diamond's edges yields
    that entire edge as an OverlapSegment, with endpoints in the edge's
    counterclockwise order.
    """
    found: list[Point] = []
    for start, end in _circle_edges(circle):
        edge_line = line_through(start, end)
        if edge_line == line:
            return OverlapSegment(Segment(start, end))
        hit = intersect_lines(line, edge_line)
        if isinstance(hit, OnePoint) and Segment(start, end).contains(hit.point):
            if hit.point not in found:
                found.append(hit.point)
    found.sort(key=_lex_key)
    if not found:
        return Empty()
    if len(found) == 1:
        return OnePoint(found[0])
    assert len(found) == 2, "a line meets a convex boundary in at most two points"
    return TwoPoints(found[0], found[1])


def intersect_ray_circle(ray: Ray, circle: TaxicabCircle) -> Intersection:
    """Meet a ray with a circle boundary; points ordered by ray parameter."""
    whole = intersect_line_circle(ray.supporting_line(), circle)
    if isinstance(whole, Empty):
        return Empty()
    if isinstance(whole, OverlapSegment):
        t0 = ray.param_of(whole.segment.p)
        t1 = ray.param_of(whole.segment.q)
        lo, hi = sorted((t0, t1))
        lo = max(lo, Fraction(0))
        if hi < lo:
            return Empty()
        if hi == lo:
            return OnePoint(ray.point_at(hi))
        return OverlapSegment(Segment(ray.point_at(lo), ray.point_at(hi)))
    ahead = [p for p in points_of(whole) if ray.param_of(p) >= 0]
    ahead.sort(key=ray.param_of)
    if not ahead:
        return Empty()
    if len(ahead) == 1:
        return OnePoint(ahead[0])
    return TwoPoints(ahead[0], ahead[1])


def circle_vertex(circle: TaxicabCircle, which: CircleVertex) -> Point:
    ox, oy = _VERTEX_OFFSETS[which]
    return Point(circle.center.x + ox * circle.radius, circle.center.y + oy * circle.radius)


def point_on_circle(circle: TaxicabCircle, p: Point) -> bool:
    return taxicab_distance(circle.center, p) == circle.radius
