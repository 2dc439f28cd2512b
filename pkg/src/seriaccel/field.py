"""Scalar arithmetic over the three supported numeric field modes.

Every quantity in this package (sequence elements, series coefficients,
table entries, jet coefficients) lives in one of three fields:

* ``rational`` -- exact arbitrary-precision rationals, no rounding at all;
* ``bigfloat`` -- decimal floats with a configurable number of significant
  digits (at least 50), rounded half-to-even;
* ``f64`` -- native machine doubles.

A :class:`Field` instance pins the mode once.  Values themselves are plain
``fractions.Fraction``, ``decimal.Decimal`` or ``float`` objects, so the
recursions can use ordinary Python operators.  Mode discipline is enforced
where values enter the system (parsing, constructors, :meth:`Field.ensure`);
mixing modes is an error there, never a silent coercion.

Division inside the nonlinear recursions must go through :meth:`Field.div`,
which raises :class:`BreakdownError` on an exactly-zero denominator in
rational mode and on a near-zero denominator in the float modes.  The
near-zero rule is relative: a denominator ``d`` counts as zero when
``|d| <= eps * max(1, |numerator|)`` with ``eps = 2**-40`` for machine
doubles and ``eps = 10**(10 - digits)`` for bigfloats, so the guard scales
with the working precision instead of strangling deep high-precision tables.
It stops overflow cascades without flagging legitimately small values.
"""

from __future__ import annotations

import math
from contextlib import contextmanager, nullcontext
from dataclasses import dataclass
from decimal import ROUND_HALF_EVEN, Decimal, InvalidOperation, localcontext
from fractions import Fraction
from typing import Union

Scalar = Union[Fraction, Decimal, float]

__all__ = [
    "Scalar",
    "ParseError",
    "ModeMismatchError",
    "BreakdownError",
    "Field",
    "RationalField",
    "BigFloatField",
    "Float64Field",
    "field_for_mode",
    "to_fraction_string",
    "decimal_string",
    "scientific_string",
]

#: Relative threshold below which float-mode denominators count as zero.
NEAR_ZERO = 2.0 ** -40


class ParseError(ValueError):
    """Text cannot be parsed as a scalar in the requested mode."""


class ModeMismatchError(TypeError):
    """A value of one field mode was fed into a computation of another."""


class BreakdownError(ArithmeticError):
    """(Near-)zero denominator in a nonlinear recursion step.

    Carries the offending operands so table builders can record what broke.
    """

    def __init__(self, message: str, numerator=None, denominator=None):
        super().__init__(message)
        self.numerator = numerator
        self.denominator = denominator


def _split_fraction_text(text: str) -> tuple[str, str] | None:
    if "/" not in text:
        return None
    parts = text.split("/")
    if len(parts) != 2:
        raise ParseError(f"malformed fraction literal: {text!r}")
    return parts[0].strip(), parts[1].strip()


class Field:
    """Shared behaviour of the three field modes."""

    mode: str = "?"

    # -- values -----------------------------------------------------------

    @property
    def zero(self) -> Scalar:
        return self.from_int(0)

    @property
    def one(self) -> Scalar:
        return self.from_int(1)

    def from_int(self, value: int) -> Scalar:
        raise NotImplementedError

    def from_fraction(self, value: Fraction) -> Scalar:
        raise NotImplementedError

    def ensure(self, value: Scalar) -> Scalar:
        """Return ``value`` if it belongs to this field, else raise."""
        raise NotImplementedError

    def ensure_all(self, values) -> tuple:
        return tuple(self.ensure(v) for v in values)

    def parse(self, text: str) -> Scalar:
        """Parse an integer, a ``p/q`` fraction, or a decimal literal."""
        raise NotImplementedError

    # -- arithmetic helpers -------------------------------------------------

    def arithmetic(self):
        """Context manager establishing this field's working precision."""
        return nullcontext()

    def is_zero(self, value: Scalar, scale: Scalar | None = None) -> bool:
        """True when ``value`` counts as zero (relative to ``scale`` if given)."""
        raise NotImplementedError

    def div(self, numerator: Scalar, denominator: Scalar) -> Scalar:
        """Checked division; raises :class:`BreakdownError` on (near-)zero."""
        if self.is_zero(denominator, scale=numerator):
            raise BreakdownError(
                f"{self.mode}: division by (near-)zero denominator",
                numerator=numerator,
                denominator=denominator,
            )
        with self.arithmetic():
            return numerator / denominator

    def is_finite(self, value: Scalar) -> bool:
        return True

    def __repr__(self):
        return f"{type(self).__name__}()"


@dataclass(frozen=True, repr=False)
class RationalField(Field):
    """Exact rationals; all field axioms hold exactly."""

    mode = "rational"

    def from_int(self, value: int) -> Fraction:
        return Fraction(value)

    def from_fraction(self, value: Fraction) -> Fraction:
        return Fraction(value)

    def ensure(self, value):
        if isinstance(value, Fraction):
            return value
        if isinstance(value, int) and not isinstance(value, bool):
            return Fraction(value)
        raise ModeMismatchError(f"expected a rational scalar, got {type(value).__name__}")

    def parse(self, text: str) -> Fraction:
        text = text.strip()
        parts = _split_fraction_text(text)
        try:
            if parts is not None:
                return Fraction(int(parts[0]), int(parts[1]))
            # Decimal literals become exact powers-of-ten rationals.
            return Fraction(Decimal(text))
        except ZeroDivisionError:
            raise
        except (ValueError, InvalidOperation):
            raise ParseError(f"not a rational scalar: {text!r}") from None

    def is_zero(self, value, scale=None) -> bool:
        return value == 0


@dataclass(frozen=True, repr=False)
class BigFloatField(Field):
    """Decimal floats with ``digits`` significant digits (>= 50), half-even."""

    digits: int = 50
    mode = "bigfloat"

    def __post_init__(self):
        if self.digits < 50:
            raise ValueError("bigfloat mode is defined for >= 50 significant digits")

    @contextmanager
    def arithmetic(self):
        with localcontext() as ctx:
            ctx.prec = self.digits
            ctx.rounding = ROUND_HALF_EVEN
            yield ctx

    def from_int(self, value: int) -> Decimal:
        return Decimal(value)

    def from_fraction(self, value: Fraction) -> Decimal:
        with self.arithmetic():
            return Decimal(value.numerator) / Decimal(value.denominator)

    def ensure(self, value):
        if isinstance(value, Decimal):
            return value
        if isinstance(value, int) and not isinstance(value, bool):
            return Decimal(value)
        raise ModeMismatchError(f"expected a bigfloat scalar, got {type(value).__name__}")

    def parse(self, text: str) -> Decimal:
        text = text.strip()
        parts = _split_fraction_text(text)
        try:
            if parts is not None:
                num, den = int(parts[0]), int(parts[1])
                if den == 0:
                    raise ZeroDivisionError("denominator is zero")
                with self.arithmetic():
                    return Decimal(num) / Decimal(den)
            with self.arithmetic():
                return +Decimal(text)
        except ZeroDivisionError:
            raise
        except (ValueError, InvalidOperation):
            raise ParseError(f"not a bigfloat scalar: {text!r}") from None

    @property
    def near_zero(self) -> Decimal:
        # 10 guard digits of slack below the working precision.
        return Decimal(1).scaleb(10 - self.digits)

    def is_zero(self, value, scale=None) -> bool:
        bound = self.near_zero
        if scale is not None:
            mag = abs(scale)
            if mag > 1:
                with self.arithmetic():
                    bound = bound * mag
        return abs(value) <= bound

    def is_finite(self, value) -> bool:
        return value.is_finite()


@dataclass(frozen=True, repr=False)
class Float64Field(Field):
    """Native double precision."""

    mode = "f64"

    def from_int(self, value: int) -> float:
        return float(value)

    def from_fraction(self, value: Fraction) -> float:
        return value.numerator / value.denominator

    def ensure(self, value):
        if isinstance(value, float):
            return value
        if isinstance(value, int) and not isinstance(value, bool):
            return float(value)
        raise ModeMismatchError(f"expected an f64 scalar, got {type(value).__name__}")

    def parse(self, text: str) -> float:
        text = text.strip()
        parts = _split_fraction_text(text)
        try:
            if parts is not None:
                num, den = int(parts[0]), int(parts[1])
                if den == 0:
                    raise ZeroDivisionError("denominator is zero")
                return num / den
            return float(text)
        except ZeroDivisionError:
            raise
        except ValueError:
            raise ParseError(f"not an f64 scalar: {text!r}") from None

    def is_zero(self, value, scale=None) -> bool:
        bound = NEAR_ZERO
        if scale is not None:
            bound *= max(1.0, abs(scale))
        return abs(value) <= bound

    def is_finite(self, value) -> bool:
        return math.isfinite(value)


_MODES = {
    "rational": lambda digits: RationalField(),
    "bigfloat": lambda digits: BigFloatField(digits=digits),
    "f64": lambda digits: Float64Field(),
}


def field_for_mode(mode: str, digits: int = 50) -> Field:
    try:
        return _MODES[mode](digits)
    except KeyError:
        raise ValueError(f"unknown field mode {mode!r} (expected rational|bigfloat|f64)") from None


# ---------------------------------------------------------------------------
# rendering


def to_fraction_string(value: Fraction) -> str:
    """``p/q`` text for an exact rational (plain integer when q == 1)."""
    if not isinstance(value, Fraction):
        raise ModeMismatchError("fraction rendering needs an exact rational")
    if value.denominator == 1:
        return str(value.numerator)
    return f"{value.numerator}/{value.denominator}"


def _as_rounded_decimal(value: Scalar, digits: int) -> Decimal:
    """Convert exactly, then round half-to-even to ``digits`` significant digits."""
    with localcontext() as ctx:
        ctx.prec = digits
        ctx.rounding = ROUND_HALF_EVEN
        if isinstance(value, Fraction):
            return Decimal(value.numerator) / Decimal(value.denominator)
        if isinstance(value, float):
            return +Decimal(value)
        if isinstance(value, Decimal):
            return +value
    raise ModeMismatchError(f"cannot render {type(value).__name__} as decimal text")


def decimal_string(value: Scalar, digits: int) -> str:
    """Positional decimal rendering with ``digits`` significant digits."""
    d = _as_rounded_decimal(value, digits)
    if not d.is_finite():
        return str(d)
    return format(d, "f")


def scientific_string(value: Scalar, digits: int) -> str:
    """Render as ``0.DDDDDDe[-]E`` with the mantissa in [0.1, 1).

    Matches the table typography used throughout this package, e.g.
    ``0.620539e-2`` for 6 significant digits of 0.00620539.  Exact zero
    renders as ``"0"``.
    """
    d = _as_rounded_decimal(value, digits)
    if not d.is_finite():
        return str(d)
    if d == 0:
        return "0"
    sign = "-" if d < 0 else ""
    magnitude = abs(d)
    exponent = magnitude.adjusted() + 1
    with localcontext() as ctx:
        ctx.prec = digits + 5
        mantissa = magnitude.scaleb(-exponent)
        quantum = Decimal(1).scaleb(-digits)
        mantissa = mantissa.quantize(quantum, rounding=ROUND_HALF_EVEN)
    return f"{sign}{format(mantissa, 'f')}e{exponent}"
