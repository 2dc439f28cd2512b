"""Coefficient prediction from accelerated partial sums.

Each acceleration scheme turns the partial sums of a power series into a
rational approximant that can be written as the partial sum it consumed plus
a power of the series variable times a *transformation term*.  The Taylor
coefficients of that term are predictions for the series coefficients the
approximant never saw.

Two routes are implemented and cross-check each other:

* :func:`transformation_terms` expands the terms as jets via the rearranged
  recursions, giving as many predicted coefficients as the jet order allows;
* :func:`leading_predictions` runs the dedicated scalar recursions for just
  the first prediction (the term's constant part), with no jets involved.

The family names are ``"aitken"`` (iterated delta-squared), ``"epsilon"``
(Wynn's algorithm / Pade approximants) and ``"theta-iterated"``.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dataclass_field

from ._recursions import TERM_RECURSIONS, JetOps, _Build, NumericOps, _window
from .field import BreakdownError, Field, Scalar
from .jets import Jet, PowerSeries
from .transforms import selection_indices

__all__ = [
    "PREDICTION_FAMILIES",
    "PredictionBreakdownError",
    "TransformationTerm",
    "TransformationTermTable",
    "LeadingPredictionTable",
    "canonical_family",
    "family_step",
    "transformation_terms",
    "leading_predictions",
    "predict_coefficients",
]

PREDICTION_FAMILIES = ("aitken", "epsilon", "theta-iterated")

_ALIASES = {"theta": "theta-iterated", "theta-iterated": "theta-iterated",
            "aitken": "aitken", "epsilon": "epsilon"}
_STEPS = {"aitken": 2, "epsilon": 2, "theta-iterated": 3}


def canonical_family(name: str) -> str:
    try:
        return _ALIASES[name]
    except KeyError:
        raise ValueError(f"unknown family {name!r}; expected one of {PREDICTION_FAMILIES}") from None


def family_step(family: str) -> int:
    return _STEPS[canonical_family(family)]


class PredictionBreakdownError(BreakdownError):
    """A prediction denominator broke down at a specific table position."""

    def __init__(self, family: str, k: int, n: int, reason: str):
        super().__init__(f"{family} prediction breakdown at (k={k}, n={n}): {reason}")
        self.family = family
        self.k = k
        self.n = n
        self.reason = reason


@dataclass(frozen=True)
class TransformationTerm:
    """Expansion of one transformation term and the power it is attached at.

    The approximant equals ``partial_sum(n + step*k) + z**offset * term``;
    coefficient ``j`` of ``term`` predicts series coefficient ``offset + j``.
    """

    family: str
    k: int
    n: int
    offset: int
    term: Jet


@dataclass
class TransformationTermTable:
    family: str
    order: int
    terms: dict = dataclass_field(default_factory=dict)
    failures: dict = dataclass_field(default_factory=dict)

    def has(self, k: int, n: int) -> bool:
        return (k, n) in self.terms

    def term(self, k: int, n: int) -> TransformationTerm:
        if (k, n) in self.terms:
            return self.terms[(k, n)]
        if (k, n) in self.failures:
            raise PredictionBreakdownError(self.family, k, n, self.failures[(k, n)])
        raise KeyError(f"no transformation term at ({k}, {n})")

    def __iter__(self):
        return iter(sorted(self.terms.values(), key=lambda t: (t.k, t.n)))


@dataclass
class LeadingPredictionTable:
    """First predicted coefficient per table position, from scalar recursions."""

    family: str
    entries: dict = dataclass_field(default_factory=dict)
    valid: dict = dataclass_field(default_factory=dict)
    notes: dict = dataclass_field(default_factory=dict)

    def is_valid(self, k: int, n: int) -> bool:
        return self.valid.get((k, n), False)

    def entry(self, k: int, n: int) -> Scalar:
        if not self.valid.get((k, n), False):
            raise PredictionBreakdownError(
                self.family, k, n, self.notes.get((k, n), "entry not computed")
            )
        return self.entries[(k, n)]

    def predicted_index(self, k: int, n: int) -> int:
        return n + family_step(self.family) * k + 1

    def positions(self):
        return sorted(self.entries)


def _resolved_order(series: PowerSeries, last_index: int | None) -> int:
    if last_index is None:
        return series.known_order
    if last_index < 0:
        raise ValueError("last_index must be >= 0")
    if last_index > series.known_order and not series.has_tail:
        raise ValueError(
            f"last_index {last_index} exceeds the stored coefficients and no tail rule is attached"
        )
    return last_index


def transformation_terms(
    series: PowerSeries,
    family: str,
    max_level: int,
    order: int,
    last_index: int | None = None,
) -> TransformationTermTable:
    """Expand the transformation terms of ``family`` as jets of ``order``.

    Produces every position ``(k, n)`` with ``k <= max_level`` and
    ``n + step*k <= last_index`` (default: all stored coefficients).  A
    position whose recursion hits a (near-)zero denominator is recorded in
    ``failures`` instead of aborting the rest of the table.
    """
    family = canonical_family(family)
    step = _STEPS[family]
    m = _resolved_order(series, last_index)
    if max_level < 0 or step * max_level > m:
        raise ValueError(f"{family} level {max_level} needs coefficients through {step * max_level}")
    recursion, _ = TERM_RECURSIONS[family]
    ops = JetOps(series.field, order)
    entries, failures = recursion(ops, series.coefficient, max_level, lambda k: m - step * k)
    table = TransformationTermTable(family, order)
    for (k, n), jet in entries.items():
        table.terms[(k, n)] = TransformationTerm(family, k, n, n + step * k + 1, jet)
    table.failures.update(failures)
    return table


# ---------------------------------------------------------------------------
# scalar recursions for the first predicted coefficient


def _scalar_triangle(field: Field, levels: int, width, deps, seed, step_fn):
    ops = NumericOps(field, field.zero)
    build = _Build(ops, levels, width, deps)
    build.seed(seed)
    build.run(step_fn)
    return build.result()


def leading_predictions(
    series: PowerSeries,
    family: str,
    max_level: int,
    last_index: int | None = None,
) -> LeadingPredictionTable:
    """First predicted coefficient for every reachable table position.

    Pure scalar recursions on the series coefficients; entry ``(k, n)``
    predicts the coefficient of order ``n + step*k + 1``.
    """
    family = canonical_family(family)
    step = _STEPS[family]
    fld = series.field
    m = _resolved_order(series, last_index)
    if max_level < 0 or step * max_level > m:
        raise ValueError(f"{family} level {max_level} needs coefficients through {step * max_level}")
    gamma = series.coefficient
    width = lambda k: m - step * k
    seed = {n: fld.zero for n in range(width(0) + 1)}

    if family == "aitken":
        def step_fn(k, n, cur, prev):
            hi = gamma(n + 2 * k + 2) - cur[n + 1]
            lo = gamma(n + 2 * k + 1) - cur[n]
            return cur[n + 2] + fld.div(hi * hi, lo)

        deps = lambda k, n: _window(k, n, 3)

    elif family == "epsilon":
        def step_fn(k, n, cur, prev):
            if k == 0:
                g = gamma(n + 2)
                return fld.div(g * g, gamma(n + 1))
            hi = gamma(n + 2 * k + 2) - cur[n + 1]
            sq = hi * hi
            direct = fld.div(sq, gamma(n + 2 * k + 1) - cur[n])
            across = fld.div(sq, gamma(n + 2 * k + 1) - prev[n + 2])
            return cur[n + 2] + direct - across

        deps = lambda k, n: [] if k == 0 else _window(k, n, 3, prev_at=2)

    else:  # theta-iterated
        def step_fn(k, n, cur, prev):
            u0 = gamma(n + 3 * k + 1) - cur[n]
            u1 = gamma(n + 3 * k + 2) - cur[n + 1]
            u2 = gamma(n + 3 * k + 3) - cur[n + 2]
            num = u2 * (u1 * u1 - fld.from_int(2) * u0 * u2)
            return cur[n + 3] - fld.div(num, u0 * u1)

        deps = lambda k, n: _window(k, n, 4)

    entries, failures = _scalar_triangle(fld, max_level, width, deps, seed, step_fn)
    table = LeadingPredictionTable(family)
    for key, value in entries.items():
        table.entries[key] = value
        table.valid[key] = True
    for key, reason in failures.items():
        table.valid[key] = False
        table.notes[key] = reason
    return table


def predict_coefficients(
    series: PowerSeries,
    family: str,
    last_index: int,
    count: int,
) -> tuple[tuple[int, Scalar], ...]:
    """Predict the ``count`` coefficients after ``last_index``.

    Uses the family's selection rule to pick the deepest transformation term
    reachable from coefficients ``0..last_index``, expands it with two guard
    orders of headroom, and reads the predictions off its Taylor
    coefficients.  The first prediction equals the corresponding
    :func:`leading_predictions` entry exactly.
    """
    if count < 1:
        raise ValueError("count must be >= 1")
    family = canonical_family(family)
    step = _STEPS[family]
    k, n = selection_indices(step, last_index)
    table = transformation_terms(
        series, family, max_level=k, order=count + 2, last_index=last_index
    )
    term = table.term(k, n)  # raises PredictionBreakdownError if that cell broke
    return tuple((last_index + 1 + j, term.term.coeffs[j]) for j in range(count))
