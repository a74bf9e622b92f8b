"""Exact taxicab geometry: distances, t-radian angles, and n-section
constructions with replayable, verifiable traces."""

from .angles import (
    FULL_TURN,
    HALF_TURN,
    PI_T,
    Angle,
    circumference,
    direction_to_param,
    measure_angle,
    measure_between,
    param_to_point,
)
from .constructions import (
    ConstructionError,
    ConstructionTrace,
    MalformedTraceError,
    PostconditionError,
    StepKind,
    TraceStep,
    VerificationReport,
    last_circle_south_vertex,
    nsect_segment,
    section_angle,
    verify_trace,
)
from .export import Scene, SceneItem, ViewBox, emit_json, emit_svg, scene_from_trace
from .kernel import (
    CircleVertex,
    CoincidentLinesError,
    Direction,
    Empty,
    GeometryError,
    Line,
    OnePoint,
    OverlapSegment,
    Point,
    Ray,
    Segment,
    TaxicabCircle,
    TwoPoints,
    circle_vertex,
    euclidean_distance_squared,
    intersect_line_circle,
    intersect_lines,
    intersect_ray_circle,
    line_through,
    point_on_circle,
    taxicab_distance,
)
from .numeric import Rational, format_rational, parse_rational

__version__ = "0.1.0"
