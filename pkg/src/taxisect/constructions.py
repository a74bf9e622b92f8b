"""Compass-and-straightedge n-section in the taxicab plane.

The segment splitter divides AB into n equal taxicab parts using only circles
and straight lines.  For n >= 3:

  1. open the compass to the taxicab length L of AB and draw circles of
     radius L about B and about A;
  2. walk the compass down the extension of AB beyond A, drawing n - 3 more
     circles of radius L, each centered where the previous circle crosses
     the extension;
  3. join the bottom corner of the last circle to B; it crosses the circle
     about B first at a point P;
  4. join P to the top corner of the circle about A; it crosses line AB at
     the answer C, the point with d_t(A, C) = L / n.

For n == 2 the chain above degenerates, and instead the bottom corner of the
circle about A is joined straight to the top corner of the circle about B;
that line crosses AB at the midpoint.

"Bottom" and "top" corners as written assume the segment direction points
into the closed upper half-plane with a nonzero x-component.  Any other
direction is handled by renaming the corners through the dihedral symmetry
that carries it there: reflect across the x-axis when dy < 0, quarter-turn
when dx = 0.  Those symmetries preserve taxicab distance and map circle
corners to circle corners, so the construction transfers unchanged.

Every construction returns a trace: the full list of compass and straightedge
steps, each recording its inputs, its produced primitive, and the incidence
claims it relies on.  ``verify_trace`` replays a trace with kernel operations
only and checks that every recorded output and claim reproduces exactly, so a
trace is a machine-checkable certificate independent of the code that built
it.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from typing import Callable, Union

from .angles import Angle, direction_to_param, measure_angle, param_to_point
from .kernel import (
    CircleVertex,
    Direction,
    GeometryError,
    Line,
    OnePoint,
    Point,
    Ray,
    TaxicabCircle,
    circle_vertex,
    intersect_line_circle,
    intersect_lines,
    line_through,
    points_of,
    taxicab_distance,
)


class ConstructionError(GeometryError):
    """Invalid construction request (bad n, degenerate input, ...)."""


class PostconditionError(ConstructionError):
    """The construction finished but its result failed the exactness check.

    Carries the offending trace for inspection; seeing this means the corner
    selection rule is wrong for the given direction, not that the input was
    invalid.
    """

    def __init__(self, message: str, trace: ConstructionTrace) -> None:
        super().__init__(message)
        self.trace = trace


class MalformedTraceError(Exception):
    """A trace is structurally broken (bad references or input kinds).

    Distinct from a verification failure: a malformed trace cannot even be
    replayed, while a well-formed trace may merely fail its checks.
    """


class StepKind(Enum):
    PLACE_POINT = "place-point"
    DRAW_CIRCLE = "draw-circle"
    DRAW_LINE = "draw-line"
    INTERSECT_LINE_CIRCLE = "intersect-line-circle"
    INTERSECT_LINES = "intersect-lines"
    TAKE_CIRCLE_VERTEX = "take-circle-vertex"
    MARK_RESULT = "mark-result"


@dataclass(frozen=True)
class OnLineClaim:
    line_step: int


@dataclass(frozen=True)
class OnCircleClaim:
    circle_step: int


@dataclass(frozen=True)
class BetweenClaim:
    p_step: int
    q_step: int


@dataclass(frozen=True)
class DistanceClaim:
    from_step: int
    value: Fraction


Claim = Union[OnLineClaim, OnCircleClaim, BetweenClaim, DistanceClaim]

Primitive = Union[Point, Line, TaxicabCircle]


@dataclass(frozen=True)
class TraceStep:
    """One compass or straightedge action.

    ``inputs`` reference earlier steps by index.  ``pick`` selects one point
    of a two-point intersection (index into the kernel's canonical ordering),
    ``vertex`` names a circle corner, and ``radius`` records a literal compass
    opening for circles not spanned between two drawn points.
    """

    kind: StepKind
    inputs: tuple[int, ...]
    output: Primitive
    claims: tuple[Claim, ...] = ()
    label: str | None = None
    pick: int | None = None
    vertex: CircleVertex | None = None
    radius: Fraction | None = None


@dataclass(frozen=True)
class ConstructionTrace:
    steps: tuple[TraceStep, ...]
    result: int

    def result_point(self) -> Point:
        out = self.steps[self.result].output
        assert isinstance(out, Point)
        return out

    def marked_points(self) -> tuple[Point, ...]:
        """Outputs of all MARK_RESULT steps, in order."""
        return tuple(
            step.output
            for step in self.steps
            if step.kind is StepKind.MARK_RESULT and isinstance(step.output, Point)
        )


@dataclass(frozen=True)
class StepFailure:
    step: int
    message: str


@dataclass(frozen=True)
class VerificationReport:
    ok: bool
    steps_checked: int
    failure: StepFailure | None = None


def _expect(condition: bool, message: str) -> None:
    if not condition:
        raise MalformedTraceError(message)


def _replay_step(step: TraceStep, outputs: list[Primitive]) -> Primitive | None:
    """Recompute a step's output from earlier outputs; None when the step
    cannot be replayed (reported as a failure, not an exception)."""

    def point_at(ref: int) -> Point:
        out = outputs[ref]
        _expect(isinstance(out, Point), f"step input {ref} is not a point")
        return out  # type: ignore[return-value]

    def line_at(ref: int) -> Line:
        out = outputs[ref]
        _expect(isinstance(out, Line), f"step input {ref} is not a line")
        return out  # type: ignore[return-value]

    def circle_at(ref: int) -> TaxicabCircle:
        out = outputs[ref]
        _expect(isinstance(out, TaxicabCircle), f"step input {ref} is not a circle")
        return out  # type: ignore[return-value]

    if step.kind is StepKind.PLACE_POINT:
        _expect(not step.inputs, "place-point takes no inputs")
        return step.output
    if step.kind is StepKind.DRAW_CIRCLE:
        _expect(len(step.inputs) in (1, 3), "draw-circle takes 1 or 3 inputs")
        center = point_at(step.inputs[0])
        if len(step.inputs) == 3:
            radius = taxicab_distance(point_at(step.inputs[1]), point_at(step.inputs[2]))
        else:
            _expect(step.radius is not None, "draw-circle needs a radius")
            radius = step.radius
        if radius <= 0:
            return None
        return TaxicabCircle(center, radius)
    if step.kind is StepKind.DRAW_LINE:
        _expect(len(step.inputs) == 2, "draw-line takes 2 inputs")
        p = point_at(step.inputs[0])
        q = point_at(step.inputs[1])
        if p == q:
            return None
        return line_through(p, q)
    if step.kind is StepKind.INTERSECT_LINE_CIRCLE:
        _expect(len(step.inputs) == 2, "intersect-line-circle takes 2 inputs")
        _expect(step.pick is not None, "intersect-line-circle needs a pick index")
        candidates = points_of(intersect_line_circle(line_at(step.inputs[0]), circle_at(step.inputs[1])))
        if step.pick >= len(candidates):
            return None
        return candidates[step.pick]
    if step.kind is StepKind.INTERSECT_LINES:
        _expect(len(step.inputs) == 2, "intersect-lines takes 2 inputs")
        hit = intersect_lines(line_at(step.inputs[0]), line_at(step.inputs[1]))
        if not isinstance(hit, OnePoint):
            return None
        return hit.point
    if step.kind is StepKind.TAKE_CIRCLE_VERTEX:
        _expect(len(step.inputs) == 1, "take-circle-vertex takes 1 input")
        _expect(step.vertex is not None, "take-circle-vertex needs a vertex name")
        return circle_vertex(circle_at(step.inputs[0]), step.vertex)
    if step.kind is StepKind.MARK_RESULT:
        _expect(len(step.inputs) == 1, "mark-result takes 1 input")
        return point_at(step.inputs[0])
    raise MalformedTraceError(f"unknown step kind {step.kind!r}")


def _claim_holds(claim: Claim, subject: Primitive, outputs: list[Primitive]) -> bool:
    from .kernel import Segment, point_on_circle

    assert isinstance(subject, Point), "claims attach to point outputs"
    if isinstance(claim, OnLineClaim):
        line = outputs[claim.line_step]
        return isinstance(line, Line) and line.contains(subject)
    if isinstance(claim, OnCircleClaim):
        circle = outputs[claim.circle_step]
        return isinstance(circle, TaxicabCircle) and point_on_circle(circle, subject)
    if isinstance(claim, BetweenClaim):
        p = outputs[claim.p_step]
        q = outputs[claim.q_step]
        if not (isinstance(p, Point) and isinstance(q, Point)):
            return False
        if subject in (p, q) or p == q:
            return subject in (p, q)
        return Segment(p, q).contains(subject)
    if isinstance(claim, DistanceClaim):
        anchor = outputs[claim.from_step]
        return isinstance(anchor, Point) and taxicab_distance(anchor, subject) == claim.value
    raise MalformedTraceError(f"unknown claim {claim!r}")


def _claim_refs(claim: Claim) -> tuple[int, ...]:
    if isinstance(claim, OnLineClaim):
        return (claim.line_step,)
    if isinstance(claim, OnCircleClaim):
        return (claim.circle_step,)
    if isinstance(claim, BetweenClaim):
        return (claim.p_step, claim.q_step)
    if isinstance(claim, DistanceClaim):
        return (claim.from_step,)
    raise MalformedTraceError(f"unknown claim {claim!r}")


def verify_trace(trace: ConstructionTrace) -> VerificationReport:
    """Replay a trace with kernel operations and check every recorded output
    and incidence claim exactly.

    Structural problems (forward or out-of-range references, inputs of the
    wrong kind) raise :class:`MalformedTraceError`.  Semantic problems, such
    as a recorded output that does not replay or a claim that does not hold,
    produce a report whose ``failure`` names the first offending step.
    """
    outputs: list[Primitive] = []
    for index, step in enumerate(trace.steps):
        for ref in step.inputs + tuple(r for claim in step.claims for r in _claim_refs(claim)):
            _expect(0 <= ref < index, f"step {index} references step {ref}")
        replayed = _replay_step(step, outputs)
        if replayed is None:
            return VerificationReport(False, index, StepFailure(index, "step does not replay"))
        if replayed != step.output:
            return VerificationReport(
                False, index, StepFailure(index, "recorded output differs from replay")
            )
        for claim in step.claims:
            if not _claim_holds(claim, step.output, outputs):
                return VerificationReport(
                    False, index, StepFailure(index, f"claim {claim!r} does not hold")
                )
        outputs.append(step.output)
    _expect(0 <= trace.result < len(trace.steps), "result reference out of range")
    _expect(
        trace.steps[trace.result].kind is StepKind.MARK_RESULT,
        "result must reference a mark-result step",
    )
    return VerificationReport(True, len(trace.steps))


class _TraceBuilder:
    def __init__(self) -> None:
        self._steps: list[TraceStep] = []

    def output(self, ref: int) -> Primitive:
        return self._steps[ref].output

    def point(self, ref: int) -> Point:
        out = self.output(ref)
        assert isinstance(out, Point)
        return out

    def _push(self, step: TraceStep) -> int:
        self._steps.append(step)
        return len(self._steps) - 1

    def place_point(self, p: Point, label: str | None = None) -> int:
        return self._push(TraceStep(StepKind.PLACE_POINT, (), p, label=label))

    def draw_line(self, p_ref: int, q_ref: int) -> int:
        line = line_through(self.point(p_ref), self.point(q_ref))
        return self._push(TraceStep(StepKind.DRAW_LINE, (p_ref, q_ref), line))

    def draw_circle_spanned(self, center_ref: int, span: tuple[int, int]) -> int:
        radius = taxicab_distance(self.point(span[0]), self.point(span[1]))
        circle = TaxicabCircle(self.point(center_ref), radius)
        return self._push(TraceStep(StepKind.DRAW_CIRCLE, (center_ref, *span), circle))

    def draw_circle_fixed(self, center_ref: int, radius: Fraction) -> int:
        circle = TaxicabCircle(self.point(center_ref), radius)
        return self._push(TraceStep(StepKind.DRAW_CIRCLE, (center_ref,), circle, radius=radius))

    def take_vertex(self, circle_ref: int, which: CircleVertex, label: str | None = None) -> int:
        circle = self.output(circle_ref)
        assert isinstance(circle, TaxicabCircle)
        p = circle_vertex(circle, which)
        return self._push(
            TraceStep(
                StepKind.TAKE_CIRCLE_VERTEX,
                (circle_ref,),
                p,
                claims=(OnCircleClaim(circle_ref),),
                label=label,
                vertex=which,
            )
        )

    def intersect_with_circle(
        self,
        line_ref: int,
        circle_ref: int,
        choose: Callable[[tuple[Point, ...]], Point],
        label: str | None = None,
    ) -> int:
        line = self.output(line_ref)
        circle = self.output(circle_ref)
        assert isinstance(line, Line) and isinstance(circle, TaxicabCircle)
        candidates = points_of(intersect_line_circle(line, circle))
        if not candidates:
            raise ConstructionError("expected the line to cross the circle")
        chosen = choose(candidates)
        return self._push(
            TraceStep(
                StepKind.INTERSECT_LINE_CIRCLE,
                (line_ref, circle_ref),
                chosen,
                claims=(OnLineClaim(line_ref), OnCircleClaim(circle_ref)),
                label=label,
                pick=candidates.index(chosen),
            )
        )

    def intersect_two_lines(self, first_ref: int, second_ref: int, label: str | None = None) -> int:
        first = self.output(first_ref)
        second = self.output(second_ref)
        assert isinstance(first, Line) and isinstance(second, Line)
        hit = intersect_lines(first, second)
        if not isinstance(hit, OnePoint):
            raise ConstructionError("expected the lines to cross in one point")
        return self._push(
            TraceStep(
                StepKind.INTERSECT_LINES,
                (first_ref, second_ref),
                hit.point,
                claims=(OnLineClaim(first_ref), OnLineClaim(second_ref)),
                label=label,
            )
        )

    def mark_result(self, point_ref: int, claims: tuple[Claim, ...], label: str | None = None) -> int:
        return self._push(
            TraceStep(StepKind.MARK_RESULT, (point_ref,), self.point(point_ref), claims=claims, label=label)
        )

    def build(self, result_ref: int) -> ConstructionTrace:
        return ConstructionTrace(tuple(self._steps), result_ref)


def _corner_pair(direction: Direction) -> tuple[CircleVertex, CircleVertex]:
    """Corner names (low side of the chain, high side of the circle about a)
    for the given segment direction; see the module docstring."""
    if direction.dx == 0:
        return (CircleVertex.EAST, CircleVertex.WEST)
    if direction.dy < 0:
        return (CircleVertex.NORTH, CircleVertex.SOUTH)
    return (CircleVertex.SOUTH, CircleVertex.NORTH)


def last_circle_south_vertex(a: Point, b: Point, n: int) -> Point:
    """South vertex of the final chained circle for the n-section of AB.

    The chain walks the extension of AB beyond A, so the final circle is
    centered at a - (n - 3)(b - a); its south vertex sits a radius below.
    Defined for n >= 3 (for n == 3 the "last" circle is the one about A).
    """
    if n < 3:
        raise ConstructionError(f"the circle chain needs n >= 3, got n = {n}")
    if a == b:
        raise ConstructionError("degenerate segment")
    radius = taxicab_distance(a, b)
    center = a + (a - b).scaled(n - 3) if n > 3 else a
    return Point(center.x, center.y - radius)


def _append_nsect(
    builder: _TraceBuilder,
    a_ref: int,
    b_ref: int,
    n: int,
    mark_label: str | None = "C",
    cross_label: str | None = "P",
) -> int:
    """Append the n-section steps for the segment between two already placed
    points and return the mark-result reference."""
    a = builder.point(a_ref)
    b = builder.point(b_ref)
    low_corner, high_corner = _corner_pair(b - a)
    length = taxicab_distance(a, b)

    base_ref = builder.draw_line(a_ref, b_ref)
    circle_b = builder.draw_circle_spanned(b_ref, (a_ref, b_ref))
    circle_a = builder.draw_circle_spanned(a_ref, (a_ref, b_ref))

    if n == 2:
        low = builder.take_vertex(circle_a, low_corner)
        high = builder.take_vertex(circle_b, high_corner)
        cross_ref = builder.draw_line(low, high)
        c_ref = builder.intersect_two_lines(cross_ref, base_ref)
    else:
        last_circle = circle_a
        for _ in range(n - 3):
            def outward(candidates: tuple[Point, ...], anchor: Point = b) -> Point:
                return max(candidates, key=lambda p: (taxicab_distance(anchor, p), p.x, p.y))

            next_center = builder.intersect_with_circle(base_ref, last_circle, outward)
            last_circle = builder.draw_circle_spanned(next_center, (a_ref, b_ref))
        low = builder.take_vertex(last_circle, low_corner)
        toward_b = builder.draw_line(low, b_ref)
        low_point = builder.point(low)
        approach = Ray(low_point, b - low_point)

        def first_hit(candidates: tuple[Point, ...]) -> Point:
            return min(candidates, key=approach.param_of)

        p_ref = builder.intersect_with_circle(toward_b, circle_b, first_hit, label=cross_label)
        high = builder.take_vertex(circle_a, high_corner)
        back_ref = builder.draw_line(p_ref, high)
        c_ref = builder.intersect_two_lines(back_ref, base_ref)

    claims: tuple[Claim, ...] = (
        BetweenClaim(a_ref, b_ref),
        DistanceClaim(a_ref, length / n),
    )
    return builder.mark_result(c_ref, claims, label=mark_label)


def nsect_segment(a: Point, b: Point, n: int) -> tuple[Point, ConstructionTrace]:
    """Split segment AB at taxicab distance d_t(A, B) / n from A.

    Returns the division point C = a + (b - a) / n together with the full
    compass-and-straightedge trace that produced it.  The point is read off
    the construction, then checked against the parametric form; a mismatch
    raises :class:`PostconditionError` with the trace attached.
    """
    if n < 2:
        raise ConstructionError(f"segment sectioning needs n >= 2, got n = {n}")
    if a == b:
        raise ConstructionError("cannot section a degenerate segment")
    builder = _TraceBuilder()
    a_ref = builder.place_point(a, label="A")
    b_ref = builder.place_point(b, label="B")
    result_ref = _append_nsect(builder, a_ref, b_ref, n)
    trace = builder.build(result_ref)
    constructed = trace.result_point()
    expected = a + (b - a).scaled(Fraction(1, n))
    if constructed != expected:
        raise PostconditionError(
            f"construction produced {constructed}, expected {expected}", trace
        )
    return constructed, trace


def section_angle(
    angle: Angle, n: int, radius: Fraction | int = 1
) -> tuple[tuple[Ray, ...], ConstructionTrace | None]:
    """Split an angle into n sub-angles of equal t-radian measure.

    Returns the n - 1 interior rays, ordered along the sweep from one side to
    the other (the non-reflex way around; for a straight angle the sweep
    starts at side1).  When both sides cross the same edge of the taxicab
    circle of the given radius about the vertex, the chord between the
    crossings runs along that edge, and the second return value is a trace
    that marks every division point of the chord by repeated segment
    sectioning; otherwise it is None.
    """
    if n < 2:
        raise ConstructionError(f"angle sectioning needs n >= 2, got n = {n}")
    radius = Fraction(radius)
    if radius <= 0:
        raise ConstructionError("sectioning circle radius must be positive")
    if measure_angle(angle) == 0:
        raise ConstructionError("cannot section a zero angle")

    t1 = direction_to_param(angle.side1)
    t2 = direction_to_param(angle.side2)
    forward = (t2 - t1) % 8
    if forward <= 4:
        start, sweep, flipped = t1, forward, False
    else:
        start, sweep, flipped = t2, 8 - forward, True

    rays = tuple(
        Ray(angle.vertex, _as_direction(param_to_point((start + sweep * k / n) % 8)))
        for k in range(1, n)
    )

    edge_end = 2 * (start // 2 + 1)
    if start + sweep > edge_end:
        return rays, None

    first_side = angle.side2 if flipped else angle.side1
    second_side = angle.side1 if flipped else angle.side2
    trace = _chord_trace(angle.vertex, first_side, second_side, n, radius)
    return rays, trace


def _as_direction(unit_point: Point) -> Direction:
    return Direction(unit_point.x, unit_point.y)


def _chord_trace(
    vertex: Point, first_side: Direction, second_side: Direction, n: int, radius: Fraction
) -> ConstructionTrace:
    """Trace that cuts the chord between the two side crossings into n equal
    parts, marking each division point in sweep order."""
    builder = _TraceBuilder()
    v_ref = builder.place_point(vertex, label="A")
    # Helper points just fix each side's line; push them past the circle so
    # the rendered sides read as full angle arms.
    reach = 2 * radius
    h1 = vertex + first_side.scaled(reach / first_side.taxicab_length())
    h2 = vertex + second_side.scaled(reach / second_side.taxicab_length())
    h1_ref = builder.place_point(h1)
    h2_ref = builder.place_point(h2)
    circle_ref = builder.draw_circle_fixed(v_ref, radius)

    def crossing(side: Direction) -> Callable[[tuple[Point, ...]], Point]:
        ray = Ray(vertex, side)

        def choose(candidates: tuple[Point, ...]) -> Point:
            ahead = [p for p in candidates if ray.param_of(p) >= 0]
            assert ahead, "a ray from the center always exits the circle"
            return ahead[0]

        return choose

    side1_line = builder.draw_line(v_ref, h1_ref)
    q1_ref = builder.intersect_with_circle(side1_line, circle_ref, crossing(first_side), label="B")
    side2_line = builder.draw_line(v_ref, h2_ref)
    q2_ref = builder.intersect_with_circle(side2_line, circle_ref, crossing(second_side), label="C")

    current = q1_ref
    mark_ref = current
    for stage in range(n - 1):
        remaining = n - stage
        mark_ref = _append_nsect(
            builder,
            current,
            q2_ref,
            remaining,
            mark_label=f"M{stage + 1}",
            cross_label=None,
        )
        current = mark_ref
    return builder.build(mark_ref)
