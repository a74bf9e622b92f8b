"""Built-in demonstration figures for the render-demo command.

Each builder returns a complete scene; the registry maps the public figure
names to builders.  Everything is exact until SVG serialization.
"""

from __future__ import annotations

from fractions import Fraction

from .constructions import nsect_segment
from .export import Dash, Scene, SceneItem, Stroke, regroup, scene_from_trace
from .kernel import Point, Segment, TaxicabCircle


def _fig_distance() -> Scene:
    """Two segments of equal taxicab length 4 whose Euclidean lengths differ."""
    origin = Point(0, 0)
    flat_end = Point(4, 0)
    diag_end = Point(2, 2)
    items = (
        SceneItem(Segment(origin, flat_end), stroke=Stroke.BASE, label="d_t=4, d_E^2=16"),
        SceneItem(Segment(origin, diag_end), stroke=Stroke.RESULT, label="d_t=4, d_E^2=8"),
        SceneItem(origin, label="O"),
        SceneItem(flat_end),
        SceneItem(diag_end),
    )
    return Scene(items)


def _fig_circle() -> Scene:
    """A taxicab circle: the diamond of points at distance 2 from the center."""
    center = Point(0, 0)
    circle = TaxicabCircle(center, Fraction(2))
    items = (
        SceneItem(circle, stroke=Stroke.BASE),
        SceneItem(center, label="O"),
        SceneItem(Point(2, 0), label="E"),
        SceneItem(Point(0, 2), label="N"),
        SceneItem(Point(-2, 0), label="W"),
        SceneItem(Point(0, -2), label="S"),
    )
    return Scene(items)


def _fig_tradian() -> Scene:
    """One t-radian: the unit-circle arc from (1, 0) to (1/2, 1/2) has
    taxicab length 1."""
    vertex = Point(0, 0)
    east = Point(1, 0)
    mid = Point(Fraction(1, 2), Fraction(1, 2))
    items = (
        SceneItem(TaxicabCircle(vertex, Fraction(1)), stroke=Stroke.AUX),
        SceneItem(Segment(vertex, east), stroke=Stroke.BASE),
        SceneItem(Segment(vertex, mid), stroke=Stroke.BASE),
        SceneItem((east, mid), stroke=Stroke.RESULT, dash=Dash.DASHED, label="arc length 1"),
        SceneItem(vertex, label="O"),
        SceneItem(east),
        SceneItem(mid),
    )
    return Scene(items)


def _two_panel(first: tuple[Point, Point, int], second: tuple[Point, Point, int]) -> Scene:
    _, trace_a = nsect_segment(*first)
    _, trace_b = nsect_segment(*second)
    items = regroup(scene_from_trace(trace_a), "n3") + regroup(scene_from_trace(trace_b), "n4")
    return Scene(items)


def _fig_construction() -> Scene:
    """Dividing a slope-1 segment into 3 and into 4 equal taxicab parts."""
    return _two_panel(
        (Point(0, 0), Point(3, 3), 3),
        (Point(14, 0), Point(17, 3), 4),
    )


def _fig_general() -> Scene:
    """The same division applied to a segment of slope 1/2."""
    return _two_panel(
        (Point(0, 0), Point(2, 1), 3),
        (Point(12, 0), Point(14, 1), 4),
    )


FIGURES = {
    "distance": _fig_distance,
    "circle": _fig_circle,
    "tradian": _fig_tradian,
    "construction": _fig_construction,
    "general": _fig_general,
}
