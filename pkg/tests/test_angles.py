from fractions import Fraction as F

import pytest
from hypothesis import given, strategies as st

from taxisect.angles import (
    FULL_TURN,
    HALF_TURN,
    PI_T,
    Angle,
    circumference,
    direction_to_param,
    measure_angle,
    measure_between,
    param_to_point,
    sweep_ccw,
)
from taxisect.kernel import Direction, GeometryError, Point, TaxicabCircle, taxicab_distance

rationals = st.fractions(min_value=-40, max_value=40, max_denominator=48)
directions = (
    st.tuples(rationals, rationals)
    .filter(lambda t: t != (0, 0))
    .map(lambda t: Direction(t[0], t[1]))
)
params = st.fractions(min_value=0, max_value=8, max_denominator=600).filter(lambda t: t < 8)
positive = st.fractions(min_value=F(1, 100), max_value=100, max_denominator=100)

ORIGIN = Point(F(0), F(0))


def d(dx, dy) -> Direction:
    return Direction(F(dx), F(dy))


def test_constants():
    assert FULL_TURN == 8
    assert HALF_TURN == 4
    assert PI_T == 4


@pytest.mark.parametrize(
    "direction,param",
    [
        ((1, 0), 0),
        ((1, 1), 1),
        ((0, 1), 2),
        ((-1, 1), 3),
        ((-1, 0), 4),
        ((-1, -1), 5),
        ((0, -1), 6),
        ((1, -1), 7),
        ((3, 4), F(8, 7)),
        ((4, 3), F(6, 7)),
        ((2, 2), 1),
    ],
)
def test_direction_to_param(direction, param):
    assert direction_to_param(d(*direction)) == param


def test_param_from_arc_length():
    """The parameter of (3,4) equals the taxicab arc run from (1,0)."""
    t = direction_to_param(d(3, 4))
    unit_point = Point(F(3, 7), F(4, 7))
    assert t == taxicab_distance(Point(F(1), F(0)), unit_point) == F(8, 7)


@pytest.mark.parametrize(
    "t,point",
    [
        (0, (1, 0)),
        (1, (F(1, 2), F(1, 2))),
        (F(1, 2), (F(3, 4), F(1, 4))),
        (2, (0, 1)),
        (4, (-1, 0)),
        (6, (0, -1)),
        (F(15, 2), (F(3, 4), F(-1, 4))),
    ],
)
def test_param_to_point(t, point):
    assert param_to_point(F(t)) == Point(F(point[0]), F(point[1]))


def test_param_to_point_rejects_out_of_range():
    with pytest.raises(GeometryError):
        param_to_point(F(8))
    with pytest.raises(GeometryError):
        param_to_point(F(-1, 2))


@given(params)
def test_param_round_trip(t):
    p = param_to_point(t)
    assert abs(p.x) + abs(p.y) == 1
    assert direction_to_param(Direction(p.x, p.y)) == t


@given(directions)
def test_param_in_range(direction):
    t = direction_to_param(direction)
    assert 0 <= t < 8


def test_measure_unit_angle():
    angle = Angle(ORIGIN, d(1, 0), d(1, 1))
    assert measure_angle(angle) == 1


def test_measure_straight_angle():
    assert measure_angle(Angle(ORIGIN, d(1, 0), d(-1, 0))) == 4
    assert measure_angle(Angle(ORIGIN, d(2, 5), d(-2, -5))) == 4


def test_measure_skew_angle():
    assert measure_angle(Angle(ORIGIN, d(1, 0), d(3, 4))) == F(8, 7)


def test_measure_degenerate():
    assert measure_angle(Angle(ORIGIN, d(2, 3), d(4, 6))) == 0


@given(directions, directions)
def test_measure_range_and_symmetry(d1, d2):
    m = measure_between(d1, d2)
    assert 0 <= m <= 4
    assert m == measure_between(d2, d1)


@given(directions, positive)
def test_measure_scale_invariance(d1, scale):
    d2 = d(1, 3)
    base = measure_between(d1, d2)
    assert measure_between(d1.scaled(scale), d2) == base
    assert measure_between(d1, d2.scaled(scale)) == base


DIHEDRAL = [
    lambda v: (v.dx, v.dy),
    lambda v: (-v.dy, v.dx),
    lambda v: (-v.dx, -v.dy),
    lambda v: (v.dy, -v.dx),
    lambda v: (v.dx, -v.dy),
    lambda v: (-v.dx, v.dy),
    lambda v: (v.dy, v.dx),
    lambda v: (-v.dy, -v.dx),
]


@given(directions, directions, st.integers(0, 7))
def test_measure_dihedral_invariance(d1, d2, i):
    """Quarter-turn rotations and axis flips preserve t-radian measure."""
    sym = DIHEDRAL[i]
    mapped1 = Direction(*[F(c) for c in sym(d1)])
    mapped2 = Direction(*[F(c) for c in sym(d2)])
    assert measure_between(mapped1, mapped2) == measure_between(d1, d2)


@given(params, st.fractions(min_value=0, max_value=4, max_denominator=64),
       st.fractions(min_value=0, max_value=4, max_denominator=64))
def test_measure_additivity(t, s1, s2):
    if s1 + s2 > 4 or s1 == 0 or s2 == 0:
        return
    r1 = param_to_point(t)
    r2 = param_to_point((t + s1) % 8)
    r3 = param_to_point((t + s1 + s2) % 8)
    as_dir = lambda p: Direction(p.x, p.y)
    total = measure_between(as_dir(r1), as_dir(r3))
    assert total == measure_between(as_dir(r1), as_dir(r2)) + measure_between(
        as_dir(r2), as_dir(r3)
    )


@given(params, params)
def test_sweep_ccw_complements(t1, t2):
    if t1 == t2:
        assert sweep_ccw(t1, t2) == 0
        return
    assert sweep_ccw(t1, t2) + sweep_ccw(t2, t1) == 8


def test_circumference_examples():
    assert circumference(TaxicabCircle(ORIGIN, F(1))) == 8
    assert circumference(TaxicabCircle(ORIGIN, F(1, 2))) == 4
    assert circumference(TaxicabCircle(ORIGIN, F(6))) == 48


def test_straight_angle_is_half_circumference():
    half = circumference(TaxicabCircle(ORIGIN, F(1))) / 2
    assert measure_angle(Angle(ORIGIN, d(1, 0), d(-1, 0))) == half == PI_T
