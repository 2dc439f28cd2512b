"""Built-in model series/sequences and coefficient-file loading.

Builtin names:

* ``log1p-over-z`` -- coefficients ``(-1)**m / (m+1)``, the alternating
  series of ``ln(1+z)/z``, with a closed-form tail rule.  The standard
  model problem: linearly convergent inside ``|z| < 1``, summable outside.
* ``zeta(s)`` -- terms ``(m+1)**(-s)`` of the Dirichlet series, ``s > 1``;
  partial sums at z = 1 are the classic logarithmically convergent example.
* ``geometric(z0)`` -- unit coefficients (tail included); ``z0`` is an
  optional default evaluation point.
* ``model(s, c, ratio)`` -- the sequence ``s + c * ratio**n`` directly.

A series spec on the command line is ``builtin:NAME`` or
``builtin:NAME(arg,...)`` or ``file:PATH`` (a bare path also works).
Coefficient files carry one ``p/q`` or decimal literal per line, ``#``
comments, and an optional ``# mode: rational|bigfloat|f64`` header.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path

from .field import BigFloatField, Field, ParseError, RationalField, Scalar, field_for_mode
from .jets import PowerSeries
from .transforms import ModelSequence, ScalarSequence

__all__ = [
    "BUILTIN_NAMES",
    "ResolvedInput",
    "builtin_series",
    "load_coefficient_file",
    "resolve_series_spec",
]

BUILTIN_NAMES = ("log1p-over-z", "zeta", "geometric", "model")


@dataclass(frozen=True)
class ResolvedInput:
    """What a series spec resolved to: a power series or a raw sequence."""

    label: str
    series: PowerSeries | None = None
    sequence: ScalarSequence | None = None
    default_z: Scalar | None = None

    def require_series(self) -> PowerSeries:
        if self.series is None:
            raise ValueError(f"{self.label} is a plain sequence; this command needs series coefficients")
        return self.series

    def require_sequence_or_series(self):
        return self


def _log_coefficient(field: Field, i: int) -> Scalar:
    return field.from_fraction(Fraction((-1) ** i, i + 1))


def _zeta_coefficient(field: Field, s: Scalar, i: int) -> Scalar:
    base = i + 1
    if isinstance(field, RationalField):
        # Exactness needs an integer exponent; rejected otherwise at build time.
        return Fraction(1, base ** int(s))
    if isinstance(field, BigFloatField):
        with field.arithmetic() as ctx:
            return ctx.power(field.from_int(base), -s)
    return float(base) ** (-s)


def builtin_series(name: str, params: tuple, count: int, field: Field) -> ResolvedInput:
    """Materialize ``count`` coefficients (or sequence entries) of a builtin."""
    if count < 1:
        raise ValueError("count must be >= 1")

    if name == "log1p-over-z":
        if params:
            raise ValueError("log1p-over-z takes no parameters")
        tail = lambda i: _log_coefficient(field, i)
        coeffs = tuple(tail(i) for i in range(count))
        return ResolvedInput("builtin:log1p-over-z", series=PowerSeries(field, coeffs, tail=tail))

    if name == "zeta":
        if len(params) != 1:
            raise ValueError("zeta needs exactly one parameter: the exponent")
        s = field.ensure(params[0])
        if not s > field.one:
            raise ValueError("zeta requires an exponent > 1")
        if isinstance(field, RationalField) and s.denominator != 1:
            raise ValueError("zeta in rational mode needs an integer exponent")
        tail = lambda i: _zeta_coefficient(field, s, i)
        coeffs = tuple(tail(i) for i in range(count))
        return ResolvedInput(
            "builtin:zeta", series=PowerSeries(field, coeffs, tail=tail), default_z=field.one
        )

    if name == "geometric":
        if len(params) > 1:
            raise ValueError("geometric takes at most one parameter: the evaluation point")
        tail = lambda i: field.one
        coeffs = tuple(field.one for _ in range(count))
        default_z = field.ensure(params[0]) if params else None
        return ResolvedInput(
            "builtin:geometric", series=PowerSeries(field, coeffs, tail=tail), default_z=default_z
        )

    if name == "model":
        if len(params) != 3:
            raise ValueError("model needs three parameters: limit, amplitude, ratio")
        model = ModelSequence(field, *params)
        return ResolvedInput("builtin:model", sequence=model.sequence(count))

    raise ValueError(f"unknown builtin series {name!r}; expected one of {BUILTIN_NAMES}")


_SPEC_RE = re.compile(r"^([a-z0-9-]+)(?:\((.*)\))?$")


def _parse_builtin_spec(body: str, field: Field) -> tuple[str, tuple]:
    match = _SPEC_RE.match(body.strip())
    if not match:
        raise ValueError(f"malformed builtin spec {body!r}")
    name = match.group(1)
    raw = match.group(2)
    if raw is None or raw.strip() == "":
        return name, ()
    params = tuple(field.parse(piece) for piece in raw.split(","))
    return name, params


def resolve_series_spec(spec: str, field: Field, count: int) -> ResolvedInput:
    """Resolve ``builtin:...`` / ``file:...`` / bare-path specs."""
    if spec.startswith("builtin:"):
        name, params = _parse_builtin_spec(spec[len("builtin:"):], field)
        return builtin_series(name, params, count, field)
    path = spec[len("file:"):] if spec.startswith("file:") else spec
    loaded_field, series = load_coefficient_file(path, field=field)
    return ResolvedInput(f"file:{path}", series=series)


_MODE_HEADER = re.compile(r"^#\s*mode\s*:\s*(rational|bigfloat|f64)\s*$")


def load_coefficient_file(
    path: str | Path,
    field: Field | None = None,
    digits: int = 50,
) -> tuple[Field, PowerSeries]:
    """Read one coefficient per line; ``# mode:`` header picks the field.

    An explicitly supplied ``field`` wins over the header; without either,
    coefficients load in rational mode.
    """
    text = Path(path).read_text()
    mode_from_header = None
    values: list[str] = []
    for line in text.splitlines():
        line = line.strip()
        if not line:
            continue
        header = _MODE_HEADER.match(line)
        if header:
            mode_from_header = header.group(1)
            continue
        if line.startswith("#"):
            continue
        values.append(line)
    if not values:
        raise ParseError(f"{path}: no coefficients found")
    if field is None:
        field = field_for_mode(mode_from_header or "rational", digits)
    coeffs = tuple(field.parse(v) for v in values)
    return field, PowerSeries(field, coeffs)
