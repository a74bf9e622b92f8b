"""A small script language for exact taxicab constructions (.taxi files).

A script is a flat list of statements: bindings of named values, exact
equality assertions, and the ``render``/``dump`` output directives.

    # divide the diagonal into three
    A = point(0, 0)
    B = point(3, 3)
    C = nsect(A, B, 3)
    assert_eq C (1, 1)
    assert_eq tdist(A, C) 2

There is one static scope, no control flow, and no redefinition.  Values are
typed (rational, point, direction, line, ray, segment, circle, or a list of
rays) and every comparison is exact; there are no tolerances anywhere.
Parsing is purely syntactic: ``x = 1/0`` parses, then fails at execution
time, because a zero denominator is a semantic problem, not a spelling one.
Failed assertions are recorded and execution continues; type errors, unbound
or rebound names, and domain errors from the geometry kernel halt execution.
All errors and failures carry the 1-based line and column of the statement
that caused them.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path
from typing import Union

from . import constructions, kernel
from .angles import Angle, direction_to_param, measure_angle
from .export import Scene, SceneItem, Stroke, emit_json, emit_svg
from .kernel import (
    CircleVertex,
    Direction,
    Line,
    OnePoint,
    OverlapSegment,
    Point,
    Ray,
    Segment,
    TaxicabCircle,
)
from .numeric import parse_rational

Value = Union[Fraction, Point, Direction, Line, Ray, Segment, TaxicabCircle, tuple[Ray, ...]]


class ScriptError(Exception):
    """Base for script problems; carries a 1-based source location."""

    def __init__(self, message: str, line: int, col: int) -> None:
        super().__init__(f"line {line}, col {col}: {message}")
        self.message = message
        self.line = line
        self.col = col


class TaxiSyntaxError(ScriptError):
    pass


class TaxiRuntimeError(ScriptError):
    pass


# ---------------------------------------------------------------------------
# Lexer

@dataclass(frozen=True)
class _Token:
    kind: str  # NUMBER, IDENT, STRING, or a literal symbol
    text: str
    line: int
    col: int


_TOKEN_RE = re.compile(
    r"""
    (?P<ws>[ \t\r\n]+)
  | (?P<comment>\#[^\n]*)
  | (?P<number>-?\d+\.\d+|-?\d+)
  | (?P<ident>[A-Za-z_][A-Za-z0-9_]*)
  | (?P<string>"[^"\n]*")
  | (?P<symbol>[()=,/])
    """,
    re.VERBOSE,
)


def _tokenize(source: str) -> list[_Token]:
    tokens: list[_Token] = []
    line = 1
    line_start = 0
    pos = 0
    while pos < len(source):
        match = _TOKEN_RE.match(source, pos)
        if match is None:
            col = pos - line_start + 1
            raise TaxiSyntaxError(f"unexpected character {source[pos]!r}", line, col)
        kind = match.lastgroup
        text = match.group()
        col = pos - line_start + 1
        if kind == "ws":
            for i, ch in enumerate(text):
                if ch == "\n":
                    line += 1
                    line_start = pos + i + 1
        elif kind != "comment":
            label = {"number": "NUMBER", "ident": "IDENT", "string": "STRING"}.get(kind, text)
            tokens.append(_Token(label if kind != "symbol" else text, text, line, col))
        pos = match.end()
    tokens.append(_Token("EOF", "", line, len(source) - line_start + 1))
    return tokens


# ---------------------------------------------------------------------------
# Syntax tree.  Locations are excluded from equality so that formatting and
# reparsing yields a structurally identical tree.

@dataclass(frozen=True)
class Loc:
    line: int
    col: int


@dataclass(frozen=True)
class RationalLit:
    text: str
    loc: Loc = field(compare=False)


@dataclass(frozen=True)
class PointLit:
    x: RationalLit
    y: RationalLit
    loc: Loc = field(compare=False)


@dataclass(frozen=True)
class StringLit:
    value: str
    loc: Loc = field(compare=False)


@dataclass(frozen=True)
class NameRef:
    name: str
    loc: Loc = field(compare=False)


@dataclass(frozen=True)
class Call:
    func: str
    args: tuple[Expr, ...]
    loc: Loc = field(compare=False)


Expr = Union[RationalLit, PointLit, StringLit, NameRef, Call]


@dataclass(frozen=True)
class Binding:
    name: str
    expr: Expr
    loc: Loc = field(compare=False)


@dataclass(frozen=True)
class AssertEq:
    lhs: Expr
    rhs: Expr
    loc: Loc = field(compare=False)


@dataclass(frozen=True)
class Render:
    path: str
    loc: Loc = field(compare=False)


@dataclass(frozen=True)
class Dump:
    loc: Loc = field(compare=False)


Statement = Union[Binding, AssertEq, Render, Dump]


@dataclass(frozen=True)
class Script:
    statements: tuple[Statement, ...]


_KEYWORDS = {"assert_eq", "render", "dump"}

# name -> accepted argument counts
_BUILTIN_ARITY = {
    "point": (2,),
    "dir": (2,),
    "segment": (2,),
    "ray": (2,),
    "line_through": (2,),
    "circle": (2,),
    "tdist": (2,),
    "edist2": (2,),
    "intersect": (2, 3),
    "vertex": (2,),
    "nsect": (3,),
    "section": (4, 5),
    "measure": (3,),
    "param": (1,),
}


class _Parser:
    def __init__(self, tokens: list[_Token]) -> None:
        self._tokens = tokens
        self._pos = 0

    def _peek(self) -> _Token:
        return self._tokens[self._pos]

    def _next(self) -> _Token:
        token = self._tokens[self._pos]
        self._pos += 1
        return token

    def _expect(self, kind: str) -> _Token:
        token = self._peek()
        if token.kind != kind:
            shown = token.text if token.kind != "EOF" else "end of input"
            raise TaxiSyntaxError(f"expected {kind}, found {shown!r}", token.line, token.col)
        return self._next()

    def parse(self) -> Script:
        statements: list[Statement] = []
        while self._peek().kind != "EOF":
            statements.append(self._statement())
        return Script(tuple(statements))

    def _statement(self) -> Statement:
        token = self._peek()
        if token.kind != "IDENT":
            raise TaxiSyntaxError(f"expected a statement, found {token.text!r}", token.line, token.col)
        loc = Loc(token.line, token.col)
        if token.text == "assert_eq":
            self._next()
            lhs = self._expr()
            rhs = self._expr()
            return AssertEq(lhs, rhs, loc)
        if token.text == "render":
            self._next()
            path = self._expect("STRING")
            return Render(path.text[1:-1], loc)
        if token.text == "dump":
            self._next()
            return Dump(loc)
        name = self._next()
        self._expect("=")
        if name.text in _BUILTIN_ARITY:
            raise TaxiSyntaxError(f"cannot bind built-in name {name.text!r}", name.line, name.col)
        expr = self._expr()
        if isinstance(expr, NameRef) and self._peek().kind == "(":
            # a binding holds exactly one expression, so a leftover "(" after
            # a bare name means a call to a function we do not know
            raise TaxiSyntaxError(
                f"unknown function {expr.name!r}", expr.loc.line, expr.loc.col
            )
        return Binding(name.text, expr, loc)

    def _expr(self) -> Expr:
        token = self._peek()
        if token.kind == "NUMBER":
            return self._rational()
        if token.kind == "(":
            open_paren = self._next()
            x = self._rational()
            self._expect(",")
            y = self._rational()
            self._expect(")")
            return PointLit(x, y, Loc(open_paren.line, open_paren.col))
        if token.kind == "STRING":
            self._next()
            return StringLit(token.text[1:-1], Loc(token.line, token.col))
        if token.kind == "IDENT":
            self._next()
            if token.text in _KEYWORDS:
                raise TaxiSyntaxError(f"{token.text!r} is a keyword", token.line, token.col)
            if token.text in _BUILTIN_ARITY:
                return self._call(token)
            if self._peek().kind == "(" and self._tokens[self._pos + 1].kind in ("IDENT", "STRING"):
                # looks like foo(A, ...): a call to something we do not know,
                # not a name followed by a point literal
                raise TaxiSyntaxError(f"unknown function {token.text!r}", token.line, token.col)
            return NameRef(token.text, Loc(token.line, token.col))
        shown = token.text if token.kind != "EOF" else "end of input"
        raise TaxiSyntaxError(f"expected an expression, found {shown!r}", token.line, token.col)

    def _rational(self) -> RationalLit:
        head = self._expect("NUMBER")
        text = head.text
        if "." not in text and self._peek().kind == "/":
            self._next()
            denom = self._expect("NUMBER")
            if "." in denom.text or denom.text.startswith("-"):
                raise TaxiSyntaxError("denominator must be a plain integer", denom.line, denom.col)
            text = f"{text}/{denom.text}"
        return RationalLit(text, Loc(head.line, head.col))

    def _call(self, name: _Token) -> Call:
        if name.text not in _BUILTIN_ARITY:
            raise TaxiSyntaxError(f"unknown function {name.text!r}", name.line, name.col)
        self._expect("(")
        args: list[Expr] = []
        if self._peek().kind != ")":
            args.append(self._expr())
            while self._peek().kind == ",":
                self._next()
                args.append(self._expr())
        self._expect(")")
        if len(args) not in _BUILTIN_ARITY[name.text]:
            expected = " or ".join(str(k) for k in _BUILTIN_ARITY[name.text])
            raise TaxiSyntaxError(
                f"{name.text} takes {expected} arguments, got {len(args)}", name.line, name.col
            )
        return Call(name.text, tuple(args), Loc(name.line, name.col))


def parse(source: str) -> Script:
    """Parse .taxi source text; raises :class:`TaxiSyntaxError` with the
    offending location."""
    return _Parser(_tokenize(source)).parse()


# ---------------------------------------------------------------------------
# Formatter

def _format_expr(expr: Expr) -> str:
    if isinstance(expr, RationalLit):
        return expr.text
    if isinstance(expr, PointLit):
        return f"({expr.x.text}, {expr.y.text})"
    if isinstance(expr, StringLit):
        return f'"{expr.value}"'
    if isinstance(expr, NameRef):
        return expr.name
    if isinstance(expr, Call):
        return f"{expr.func}({', '.join(_format_expr(a) for a in expr.args)})"
    raise TypeError(f"unknown expression {expr!r}")


def format_script(script: Script) -> str:
    """Canonical text for a script; reparsing gives an equal tree."""
    lines = []
    for stmt in script.statements:
        if isinstance(stmt, Binding):
            lines.append(f"{stmt.name} = {_format_expr(stmt.expr)}")
        elif isinstance(stmt, AssertEq):
            lines.append(f"assert_eq {_format_expr(stmt.lhs)} {_format_expr(stmt.rhs)}")
        elif isinstance(stmt, Render):
            lines.append(f'render "{stmt.path}"')
        elif isinstance(stmt, Dump):
            lines.append("dump")
        else:
            raise TypeError(f"unknown statement {stmt!r}")
    return "\n".join(lines) + ("\n" if lines else "")


# ---------------------------------------------------------------------------
# Interpreter

_TYPE_NAMES = {
    Fraction: "rational",
    Point: "point",
    Direction: "direction",
    Line: "line",
    Ray: "ray",
    Segment: "segment",
    TaxicabCircle: "circle",
}


def _type_name(value: Value) -> str:
    if isinstance(value, tuple):
        return "raylist"
    return _TYPE_NAMES[type(value)]


@dataclass(frozen=True)
class AssertionFailure:
    line: int
    col: int
    expected: str
    actual: str

    def describe(self) -> str:
        return f"line {self.line}: expected {self.expected}, actual {self.actual}"


@dataclass(frozen=True)
class ExecutionResult:
    env: dict[str, Value]
    scene: Scene
    failures: tuple[AssertionFailure, ...]
    dumps: tuple[str, ...]
    rendered: tuple[str, ...]  # paths written by render directives

    @property
    def ok(self) -> bool:
        return not self.failures


def _format_value(value: Value) -> str:
    if isinstance(value, tuple):
        return "[" + ", ".join(_format_value(r) for r in value) + "]"
    if isinstance(value, Ray):
        return f"ray {value.origin} dir {value.direction}"
    if isinstance(value, (Fraction, Point, Direction)):
        return str(value)
    return f"{_type_name(value)} {value!r}"


class _Executor:
    def __init__(self, output_root: Path | None) -> None:
        self.output_root = output_root
        self.env: dict[str, Value] = {}
        self.items: list[SceneItem] = []
        self.failures: list[AssertionFailure] = []
        self.dumps: list[str] = []
        self.rendered: list[str] = []

    def run(self, script: Script) -> ExecutionResult:
        for stmt in script.statements:
            self._statement(stmt)
        return ExecutionResult(
            env=self.env,
            scene=Scene(tuple(self.items)),
            failures=tuple(self.failures),
            dumps=tuple(self.dumps),
            rendered=tuple(self.rendered),
        )

    def _statement(self, stmt: Statement) -> None:
        if isinstance(stmt, Binding):
            if stmt.name in self.env:
                raise TaxiRuntimeError(f"{stmt.name!r} is already defined", stmt.loc.line, stmt.loc.col)
            value = self._eval(stmt.expr)
            self.env[stmt.name] = value
            self._accumulate(stmt.name, value)
        elif isinstance(stmt, AssertEq):
            lhs = self._eval(stmt.lhs)
            rhs = self._eval(stmt.rhs)
            if _type_name(lhs) != _type_name(rhs):
                raise TaxiRuntimeError(
                    f"cannot compare {_type_name(lhs)} with {_type_name(rhs)}",
                    stmt.loc.line,
                    stmt.loc.col,
                )
            if lhs != rhs:
                self.failures.append(
                    AssertionFailure(
                        stmt.loc.line, stmt.loc.col, _format_value(rhs), _format_value(lhs)
                    )
                )
        elif isinstance(stmt, Render):
            path = Path(stmt.path)
            if not path.is_absolute():
                path = (self.output_root or Path.cwd()) / path
            path.parent.mkdir(parents=True, exist_ok=True)
            path.write_text(emit_svg(Scene(tuple(self.items))), encoding="utf-8")
            self.rendered.append(str(path))
        elif isinstance(stmt, Dump):
            self.dumps.append(emit_json(self.env))
        else:
            raise TypeError(f"unknown statement {stmt!r}")

    def _accumulate(self, name: str, value: Value) -> None:
        if isinstance(value, Fraction):
            return  # scalars are not drawable
        if isinstance(value, tuple):
            for i, ray in enumerate(value):
                self.items.append(SceneItem(ray, label=f"{name}[{i}]"))
            return
        stroke = Stroke.RESULT if isinstance(value, Point) else Stroke.PLAIN
        self.items.append(SceneItem(value, label=name, stroke=stroke))

    def _eval(self, expr: Expr) -> Value:
        if isinstance(expr, RationalLit):
            try:
                return parse_rational(expr.text)
            except ZeroDivisionError:
                raise TaxiRuntimeError(
                    f"division by zero in {expr.text!r}", expr.loc.line, expr.loc.col
                ) from None
        if isinstance(expr, PointLit):
            return Point(self._eval(expr.x), self._eval(expr.y))
        if isinstance(expr, StringLit):
            raise TaxiRuntimeError("a string is not a value here", expr.loc.line, expr.loc.col)
        if isinstance(expr, NameRef):
            if expr.name not in self.env:
                raise TaxiRuntimeError(f"undefined name {expr.name!r}", expr.loc.line, expr.loc.col)
            return self.env[expr.name]
        if isinstance(expr, Call):
            return self._call(expr)
        raise TypeError(f"unknown expression {expr!r}")

    def _arg(self, expr: Expr, want: type | tuple[type, ...], what: str) -> Value:
        value = self._eval(expr)
        if isinstance(want, tuple):
            ok = isinstance(value, want)
            names = " or ".join(_TYPE_NAMES[t] for t in want)
        else:
            ok = isinstance(value, want)
            names = _TYPE_NAMES[want]
        if not ok:
            raise TaxiRuntimeError(
                f"{what} must be a {names}, got {_type_name(value)}",
                expr.loc.line,
                expr.loc.col,
            )
        return value

    def _string_arg(self, expr: Expr, what: str) -> str:
        if not isinstance(expr, StringLit):
            raise TaxiRuntimeError(f"{what} must be a quoted string", expr.loc.line, expr.loc.col)
        return expr.value

    def _int_arg(self, expr: Expr, what: str) -> int:
        value = self._arg(expr, Fraction, what)
        assert isinstance(value, Fraction)
        if value.denominator != 1:
            raise TaxiRuntimeError(f"{what} must be an integer, got {value}", expr.loc.line, expr.loc.col)
        return int(value)

    def _call(self, call: Call) -> Value:
        loc = call.loc
        name = call.func
        args = call.args
        try:
            if name == "point":
                return Point(self._arg(args[0], Fraction, "x"), self._arg(args[1], Fraction, "y"))
            if name == "dir":
                return Direction(self._arg(args[0], Fraction, "dx"), self._arg(args[1], Fraction, "dy"))
            if name == "segment":
                return Segment(self._arg(args[0], Point, "endpoint"), self._arg(args[1], Point, "endpoint"))
            if name == "ray":
                return Ray(self._arg(args[0], Point, "origin"), self._arg(args[1], Direction, "direction"))
            if name == "line_through":
                return kernel.line_through(
                    self._arg(args[0], Point, "point"), self._arg(args[1], Point, "point")
                )
            if name == "circle":
                return TaxicabCircle(self._arg(args[0], Point, "center"), self._arg(args[1], Fraction, "radius"))
            if name == "tdist":
                return kernel.taxicab_distance(
                    self._arg(args[0], Point, "point"), self._arg(args[1], Point, "point")
                )
            if name == "edist2":
                return kernel.euclidean_distance_squared(
                    self._arg(args[0], Point, "point"), self._arg(args[1], Point, "point")
                )
            if name == "intersect":
                return self._intersect(call)
            if name == "vertex":
                circle = self._arg(args[0], TaxicabCircle, "circle")
                letter = self._string_arg(args[1], "vertex name")
                try:
                    which = CircleVertex(letter)
                except ValueError:
                    raise TaxiRuntimeError(
                        f'vertex name must be "N", "S", "E", or "W", got "{letter}"',
                        args[1].loc.line,
                        args[1].loc.col,
                    ) from None
                return kernel.circle_vertex(circle, which)
            if name == "nsect":
                a = self._arg(args[0], Point, "endpoint")
                b = self._arg(args[1], Point, "endpoint")
                parts = self._int_arg(args[2], "part count")
                point, _ = constructions.nsect_segment(a, b, parts)
                return point
            if name == "section":
                vertex = self._arg(args[0], Point, "vertex")
                d1 = self._arg(args[1], Direction, "side")
                d2 = self._arg(args[2], Direction, "side")
                parts = self._int_arg(args[3], "part count")
                radius = self._arg(args[4], Fraction, "radius") if len(args) == 5 else Fraction(1)
                rays, _ = constructions.section_angle(Angle(vertex, d1, d2), parts, radius)
                return rays
            if name == "measure":
                vertex = self._arg(args[0], Point, "vertex")
                d1 = self._arg(args[1], Direction, "side")
                d2 = self._arg(args[2], Direction, "side")
                return measure_angle(Angle(vertex, d1, d2))
            if name == "param":
                return direction_to_param(self._arg(args[0], Direction, "direction"))
        except ScriptError:
            raise
        except (kernel.GeometryError, ZeroDivisionError) as exc:
            raise TaxiRuntimeError(str(exc), loc.line, loc.col) from exc
        raise TypeError(f"unhandled builtin {name!r}")

    def _intersect(self, call: Call) -> Value:
        first = self._arg(call.args[0], (Line, Ray), "first operand")
        second = self._arg(call.args[1], (Line, TaxicabCircle), "second operand")
        loc = call.loc
        if isinstance(first, Ray):
            if not isinstance(second, TaxicabCircle):
                raise TaxiRuntimeError("a ray can only be intersected with a circle", loc.line, loc.col)
            result = kernel.intersect_ray_circle(first, second)
        elif isinstance(second, Line):
            result = kernel.intersect_lines(first, second)
        else:
            result = kernel.intersect_line_circle(first, second)
        if isinstance(result, OverlapSegment):
            raise TaxiRuntimeError(
                "intersection is a whole segment, not a point", loc.line, loc.col
            )
        points = kernel.points_of(result)
        if len(call.args) == 3:
            index = self._int_arg(call.args[2], "intersection index")
        elif len(points) == 1:
            index = 0
        elif not points:
            raise TaxiRuntimeError("intersection is empty", loc.line, loc.col)
        else:
            raise TaxiRuntimeError(
                "intersection has two points; select one with intersect(a, b, index)",
                loc.line,
                loc.col,
            )
        if not 0 <= index < len(points):
            raise TaxiRuntimeError(
                f"intersection index {index} out of range for {len(points)} point(s)",
                loc.line,
                loc.col,
            )
        return points[index]


def execute(script: Script, output_root: Path | None = None) -> ExecutionResult:
    """Run a parsed script.

    ``render`` paths resolve against ``output_root`` (default: the current
    working directory).  Assertion failures are collected in the result;
    anything else wrong raises :class:`TaxiRuntimeError`.
    """
    return _Executor(output_root).run(script)


def run_source(source: str, output_root: Path | None = None) -> ExecutionResult:
    return execute(parse(source), output_root)
