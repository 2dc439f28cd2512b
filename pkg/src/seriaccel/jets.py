"""Truncated power-series (jet) arithmetic in one variable over a scalar field.

A :class:`Jet` keeps the Taylor coefficients of a series through a fixed
order ``N``; everything above ``N`` is unknown, not zero.  Arithmetic between
jets of different orders truncates to the smaller order, which is exactly the
set of coefficients both operands honestly know.  Multiplying by the series
variable shifts coefficients up one slot and drops the top one, keeping the
order fixed.

This is the engine that expands the rational transformation and remainder
terms of the acceleration schemes into Taylor coefficients: all of their
recursions reduce to jet addition, multiplication, reciprocal, and the
shifted difference operators :func:`delta_shift` / :func:`delta2_shift`.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Mapping, Sequence

from .field import BreakdownError, Field, Scalar

__all__ = [
    "Jet",
    "JetBreakdownError",
    "PowerSeries",
    "delta_shift",
    "delta2_shift",
]


class JetBreakdownError(BreakdownError):
    """Reciprocal of a jet whose constant term is (near-)zero."""


@dataclass(frozen=True)
class Jet:
    """Coefficients ``c[0] + c[1] z + ... + c[N] z**N`` of a truncated series."""

    field: Field
    coeffs: tuple[Scalar, ...]

    def __post_init__(self):
        if not self.coeffs:
            raise ValueError("a jet needs at least its constant term")
        object.__setattr__(self, "coeffs", self.field.ensure_all(self.coeffs))

    @classmethod
    def constant(cls, field: Field, value: Scalar, order: int) -> "Jet":
        coeffs = [field.zero] * (order + 1)
        coeffs[0] = field.ensure(value)
        return cls(field, tuple(coeffs))

    @classmethod
    def from_coeffs(cls, field: Field, values, order: int | None = None) -> "Jet":
        coeffs = list(values)
        if order is not None:
            coeffs = coeffs[: order + 1]
            coeffs += [field.zero] * (order + 1 - len(coeffs))
        return cls(field, tuple(coeffs))

    @property
    def order(self) -> int:
        return len(self.coeffs) - 1

    @property
    def constant_term(self) -> Scalar:
        return self.coeffs[0]

    def truncate(self, order: int) -> "Jet":
        if order < 0:
            raise ValueError("jet order must be >= 0")
        if order >= self.order:
            return self
        return Jet(self.field, self.coeffs[: order + 1])

    def _common(self, other: "Jet") -> int:
        if self.field != other.field:
            _mode_error(self, other)
        return min(self.order, other.order)

    def __add__(self, other: "Jet") -> "Jet":
        n = self._common(other)
        with self.field.arithmetic():
            return Jet(self.field, tuple(self.coeffs[i] + other.coeffs[i] for i in range(n + 1)))

    def __sub__(self, other: "Jet") -> "Jet":
        n = self._common(other)
        with self.field.arithmetic():
            return Jet(self.field, tuple(self.coeffs[i] - other.coeffs[i] for i in range(n + 1)))

    def __neg__(self) -> "Jet":
        with self.field.arithmetic():
            return Jet(self.field, tuple(-c for c in self.coeffs))

    def scale(self, factor: Scalar) -> "Jet":
        factor = self.field.ensure(factor)
        with self.field.arithmetic():
            return Jet(self.field, tuple(factor * c for c in self.coeffs))

    def __mul__(self, other: "Jet") -> "Jet":
        n = self._common(other)
        zero = self.field.zero
        out = [zero] * (n + 1)
        with self.field.arithmetic():
            for i in range(n + 1):
                a = self.coeffs[i]
                if a == zero:
                    continue
                for j in range(n + 1 - i):
                    out[i + j] += a * other.coeffs[j]
        return Jet(self.field, tuple(out))

    def reciprocal(self) -> "Jet":
        """Jet ``r`` with ``self * r == 1`` through this jet's order.

        Uses the triangular recurrence ``r[k] = -(sum a[j] r[k-j]) / a[0]``;
        requires a (near-)nonzero constant term.
        """
        a0 = self.coeffs[0]
        if self.field.is_zero(a0):
            raise JetBreakdownError(
                "jet breakdown: reciprocal of a jet with zero constant term",
                denominator=a0,
            )
        n = self.order
        out = [self.field.zero] * (n + 1)
        with self.field.arithmetic():
            out[0] = self.field.one / a0
            for k in range(1, n + 1):
                acc = self.field.zero
                for j in range(1, k + 1):
                    acc += self.coeffs[j] * out[k - j]
                out[k] = -acc / a0
        return Jet(self.field, tuple(out))

    def __truediv__(self, other: "Jet") -> "Jet":
        return self * other.reciprocal()

    def shift(self, places: int = 1) -> "Jet":
        """Multiply by ``z**places``: coefficients move up, the top ones drop."""
        if places < 0:
            raise ValueError("shift must be by a nonnegative power")
        if places == 0:
            return self
        zeros = (self.field.zero,) * min(places, self.order + 1)
        return Jet(self.field, zeros + self.coeffs[: self.order + 1 - places])

    def evaluate(self, z: Scalar) -> Scalar:
        z = self.field.ensure(z)
        with self.field.arithmetic():
            acc = self.field.zero
            for c in reversed(self.coeffs):
                acc = acc * z + c
            return acc

def _mode_error(a: Jet, b: Jet):
    from .field import ModeMismatchError

    raise ModeMismatchError(f"jets from different fields: {a.field!r} vs {b.field!r}")


def delta_shift(jets: Sequence[Jet] | Mapping[int, Jet], n: int) -> Jet:
    """Shifted forward difference ``z * X(n+1) - X(n)`` of a jet family."""
    try:
        here, there = jets[n], jets[n + 1]
    except (IndexError, KeyError):
        raise IndexError(f"delta needs family entries {n} and {n + 1}") from None
    return there.shift() - here


def delta2_shift(jets: Sequence[Jet] | Mapping[int, Jet], n: int) -> Jet:
    """Second shifted difference: ``z**2 X(n+2) - 2 z X(n+1) + X(n)``."""
    return delta_shift(jets, n + 1).shift() - delta_shift(jets, n)


@dataclass(frozen=True)
class PowerSeries:
    """Finite stretch of Taylor coefficients, with an optional tail rule.

    ``coeffs`` holds the known coefficients (constant term first).  ``tail``
    optionally supplies coefficients past the stored ones; model problems
    with a closed-form general term use it so remainder analysis can reach
    arbitrarily deep.
    """

    field: Field
    coeffs: tuple[Scalar, ...]
    tail: Callable[[int], Scalar] | None = None

    def __post_init__(self):
        if not self.coeffs:
            raise ValueError("a power series needs at least one coefficient")
        object.__setattr__(self, "coeffs", self.field.ensure_all(self.coeffs))

    @property
    def known_order(self) -> int:
        return len(self.coeffs) - 1

    @property
    def has_tail(self) -> bool:
        return self.tail is not None

    def coefficient(self, index: int) -> Scalar:
        if index < 0:
            raise IndexError("coefficient index must be >= 0")
        if index <= self.known_order:
            return self.coeffs[index]
        if self.tail is None:
            raise IndexError(
                f"coefficient {index} is past the stored order {self.known_order} "
                "and no tail rule is attached"
            )
        return self.field.ensure(self.tail(index))

    def partial_sum_jet(self, n: int, order: int) -> Jet:
        """Jet of the degree-``n`` partial sum, padded/truncated to ``order``."""
        coeffs = [self.coefficient(i) for i in range(min(n, order) + 1)]
        return Jet.from_coeffs(self.field, coeffs, order=order)

    def partial_sum(self, n: int, z: Scalar) -> Scalar:
        z = self.field.ensure(z)
        with self.field.arithmetic():
            acc = self.field.zero
            for i in range(n, -1, -1):
                acc = acc * z + self.coefficient(i)
            return acc

    def first_zero_coefficient(self, last_index: int) -> int | None:
        """Index of the first (exactly) zero coefficient through ``last_index``."""
        for i in range(last_index + 1):
            if self.coefficient(i) == self.field.zero:
                return i
        return None
