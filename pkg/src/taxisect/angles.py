"""Angle measure in t-radians on the taxicab unit circle.

An angle of one t-radian subtends an arc of taxicab length 1 on the unit
circle about its vertex, so a full turn measures 8 (the unit circle's
taxicab circumference) and a straight angle measures 4.  Directions are
located on the unit circle by an arc-length parameter t in [0, 8), measured
counterclockwise from the east vertex (1, 0).  On the upper half of the
diamond the parameter is t = 2 - 2x and on the lower half t = 6 + 2x, both
linear in x, which keeps every conversion exact.

Angles here are undirected: measures live in [0, 4] and a reflex measure is
never produced.  The sectioning code sweeps the shorter way around.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .kernel import Direction, GeometryError, Point, TaxicabCircle
from .numeric import as_rational

FULL_TURN = Fraction(8)
HALF_TURN = Fraction(4)
PI_T = HALF_TURN


@dataclass(frozen=True)
class Angle:
    vertex: Point
    side1: Direction
    side2: Direction


def direction_to_param(d: Direction) -> Fraction:
    """Arc parameter in [0, 8) of the unit-circle point with direction d."""
    scale = d.taxicab_length()
    x = d.dx / scale
    if d.dy >= 0:
        return 2 - 2 * x
    return 6 + 2 * x


def param_to_point(t: Fraction | int) -> Point:
    """The unit-circle point at arc parameter t; inverse of
    :func:`direction_to_param` up to direction scaling."""
    t = as_rational(t)
    if not 0 <= t < 8:
        raise GeometryError(f"arc parameter {t} outside [0, 8)")
    if t <= 4:
        x = 1 - t / 2
        return Point(x, 1 - abs(x))
    x = (t - 6) / 2
    return Point(x, abs(x) - 1)


def normalize_param(t: Fraction | int) -> Fraction:
    return as_rational(t) % 8


def sweep_ccw(t_from: Fraction, t_to: Fraction) -> Fraction:
    """Counterclockwise arc length from one parameter to another, in [0, 8)."""
    return (as_rational(t_to) - as_rational(t_from)) % 8


def measure_between(d1: Direction, d2: Direction) -> Fraction:
    delta = abs(direction_to_param(d1) - direction_to_param(d2))
    return min(delta, 8 - delta)


def measure_angle(angle: Angle) -> Fraction:
    """Undirected t-radian measure, in [0, 4]."""
    return measure_between(angle.side1, angle.side2)


def circumference(circle: TaxicabCircle) -> Fraction:
    """Taxicab arc length of the whole boundary: always 8r."""
    return 8 * circle.radius
