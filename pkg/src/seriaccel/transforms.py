"""Classical scalar sequence transformations and their support machinery.

Implemented here:

* Aitken's iterated delta-squared process, in the textbook form and in the
  rearranged form whose update reads three entries ahead;
* Wynn's epsilon algorithm with its auxiliary odd columns, plus both
  cross-rule forms that skip the odd columns entirely;
* Brezinski's theta algorithm (with the modified odd-column variant) and the
  iterated theta transformation, again in textbook and rearranged forms;
* the approximant selection rules, a Pade solver used as an independent
  oracle, and a convergence-type classifier.

Every transformation returns a :class:`TransformTable` with per-entry
validity flags: a (near-)zero denominator marks the entry invalid instead of
raising, and invalidity propagates to every entry that would read it.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dataclass_field
from fractions import Fraction

from .field import BreakdownError, Field, Scalar
from .jets import Jet, PowerSeries

__all__ = [
    "ScalarSequence",
    "ModelSequence",
    "TransformTable",
    "PadeRational",
    "ConvergenceReport",
    "SelectionError",
    "DegeneratePadeError",
    "AITKEN_CLASSIC",
    "AITKEN_REARRANGED",
    "EPSILON",
    "EPSILON_CROSS",
    "THETA",
    "THETA_ITERATED_CLASSIC",
    "THETA_ITERATED_REARRANGED",
    "aitken_table",
    "epsilon_table",
    "epsilon_cross_table",
    "theta_table",
    "iterated_theta_table",
    "select_approximant",
    "selection_indices",
    "pade_linear_system",
    "classify_convergence",
]

AITKEN_CLASSIC = "aitken-classic"
AITKEN_REARRANGED = "aitken-rearranged"
EPSILON = "epsilon"
EPSILON_CROSS = "epsilon-cross"
THETA = "theta"
THETA_ITERATED_CLASSIC = "theta-iterated-classic"
THETA_ITERATED_REARRANGED = "theta-iterated-rearranged"


class SelectionError(LookupError):
    """The selected table entry does not exist or was invalidated."""

    def __init__(self, message, k=None, n=None):
        super().__init__(message)
        self.k = k
        self.n = n


class DegeneratePadeError(ArithmeticError):
    """The Pade linear system is singular."""


@dataclass(frozen=True)
class ScalarSequence:
    """Elements ``s0 ... sm`` to be transformed, with an optional known limit."""

    field: Field
    entries: tuple[Scalar, ...]
    limit: Scalar | None = None

    def __post_init__(self):
        if not self.entries:
            raise ValueError("a sequence needs at least one entry")
        object.__setattr__(self, "entries", self.field.ensure_all(self.entries))
        if self.limit is not None:
            object.__setattr__(self, "limit", self.field.ensure(self.limit))

    @property
    def last_index(self) -> int:
        return len(self.entries) - 1


@dataclass(frozen=True)
class ModelSequence:
    """Geometric-remainder model ``s_n = limit + amplitude * ratio**n``.

    One delta-squared step recovers ``limit`` exactly from any three
    consecutive elements, whether the sequence converges (|ratio| < 1) or
    diverges (|ratio| > 1).
    """

    field: Field
    limit: Scalar
    amplitude: Scalar
    ratio: Scalar

    def __post_init__(self):
        object.__setattr__(self, "limit", self.field.ensure(self.limit))
        object.__setattr__(self, "amplitude", self.field.ensure(self.amplitude))
        object.__setattr__(self, "ratio", self.field.ensure(self.ratio))
        if self.amplitude == self.field.zero:
            raise ValueError("model amplitude must be nonzero")
        if abs(self.ratio) == self.field.one:
            raise ValueError("model ratio must have |ratio| != 1")

    def sequence(self, count: int) -> ScalarSequence:
        if count < 1:
            raise ValueError("count must be >= 1")
        out = []
        with self.field.arithmetic():
            power = self.field.one
            for _ in range(count):
                out.append(self.limit + self.amplitude * power)
                power = power * self.ratio
        return ScalarSequence(self.field, tuple(out), limit=self.limit)


@dataclass
class TransformTable:
    """Triangular table of transformation elements with validity flags.

    Keys are ``(k, n)``.  For the epsilon and theta algorithms ``k`` is the
    literal column subscript (odd columns are auxiliary); for the Aitken and
    iterated-theta schemes ``k`` is the iteration level.
    """

    family: str
    size: int
    entries: dict = dataclass_field(default_factory=dict)
    valid: dict = dataclass_field(default_factory=dict)
    notes: dict = dataclass_field(default_factory=dict)

    @property
    def last_index(self) -> int:
        return self.size - 1

    def has(self, k: int, n: int) -> bool:
        return (k, n) in self.entries or (k, n) in self.valid

    def is_valid(self, k: int, n: int) -> bool:
        return self.valid.get((k, n), False)

    def entry(self, k: int, n: int) -> Scalar:
        if not self.has(k, n):
            raise KeyError(f"table has no entry ({k}, {n})")
        if not self.valid[(k, n)]:
            note = self.notes.get((k, n), "breakdown")
            raise SelectionError(f"entry ({k}, {n}) is invalid: {note}", k=k, n=n)
        return self.entries[(k, n)]

    def is_auxiliary(self, k: int) -> bool:
        """Odd epsilon/theta columns approximate nothing; they are scaffolding."""
        if self.family in (EPSILON, THETA):
            return k % 2 == 1
        return False

    def _put(self, key, value, ok: bool, note: str | None = None):
        self.valid[key] = ok
        if ok:
            self.entries[key] = value
        elif note:
            self.notes[key] = note

    def _inherit(self, key, deps) -> bool:
        for dep in deps:
            if not self.valid.get(dep, False):
                self._put(key, None, False, f"depends on invalid entry {dep}")
                return False
        return True

    def _checked(self, key, compute, field: Field):
        try:
            value = compute()
        except BreakdownError as exc:
            self._put(key, None, False, str(exc))
            return
        if not field.is_finite(value):
            self._put(key, None, False, "overflow")
            return
        self._put(key, value, True)


def _delta(table: TransformTable, k: int, n: int) -> Scalar:
    return table.entries[(k, n + 1)] - table.entries[(k, n)]


def aitken_table(seq: ScalarSequence, scheme: str = "classic") -> TransformTable:
    """Iterated delta-squared table; classic and rearranged updates agree."""
    if scheme not in ("classic", "rearranged"):
        raise ValueError("scheme must be 'classic' or 'rearranged'")
    fld = seq.field
    m = seq.last_index
    family = AITKEN_CLASSIC if scheme == "classic" else AITKEN_REARRANGED
    table = TransformTable(family, len(seq.entries))
    for n, s in enumerate(seq.entries):
        table._put((0, n), s, True)
    with fld.arithmetic():
        for k in range(m // 2):
            for n in range(m - 2 * (k + 1) + 1):
                key = (k + 1, n)
                if not table._inherit(key, [(k, n), (k, n + 1), (k, n + 2)]):
                    continue
                d0 = _delta(table, k, n)
                d1 = _delta(table, k, n + 1)
                dd = d1 - d0
                if scheme == "classic":
                    base, num = table.entries[(k, n)], d0 * d0
                else:
                    base, num = table.entries[(k, n + 2)], d1 * d1
                table._checked(key, lambda: base - fld.div(num, dd), fld)
    return table


def epsilon_table(seq: ScalarSequence) -> TransformTable:
    """Full epsilon table; even columns approximate, odd columns are auxiliary."""
    fld = seq.field
    m = seq.last_index
    table = TransformTable(EPSILON, len(seq.entries))
    for n, s in enumerate(seq.entries):
        table._put((0, n), s, True)
    with fld.arithmetic():
        for j in range(m):
            for n in range(m - j):
                key = (j + 1, n)
                deps = [(j, n), (j, n + 1)]
                if j >= 1:
                    deps.append((j - 1, n + 1))
                if not table._inherit(key, deps):
                    continue
                base = table.entries[(j - 1, n + 1)] if j >= 1 else fld.zero
                diff = _delta(table, j, n)
                table._checked(key, lambda: base + fld.div(fld.one, diff), fld)
    return table


def epsilon_cross_table(seq: ScalarSequence, form: str = "plain") -> TransformTable:
    """Even epsilon columns via the five-point cross rule (no odd columns).

    ``plain`` keeps the rule as a direct rearrangement; ``rearranged`` is the
    variant anchored at the entry three positions ahead.  The undefined
    column below the table is handled by a dedicated k = 0 branch instead of
    a stored infinity.
    """
    if form not in ("plain", "rearranged"):
        raise ValueError("form must be 'plain' or 'rearranged'")
    fld = seq.field
    m = seq.last_index
    table = TransformTable(EPSILON_CROSS, len(seq.entries))
    for n, s in enumerate(seq.entries):
        table._put((0, n), s, True)
    one = fld.one
    with fld.arithmetic():
        for k in range(m // 2):
            col = 2 * k
            for n in range(m - (col + 2) + 1):
                key = (col + 2, n)
                deps = [(col, n), (col, n + 1), (col, n + 2)]
                if k >= 1:
                    deps.append((col - 2, n + 2))
                if not table._inherit(key, deps):
                    continue

                def compute():
                    d0 = _delta(table, col, n)
                    d1 = _delta(table, col, n + 1)
                    denom = fld.div(one, d1) - fld.div(one, d0)
                    if k >= 1:
                        gap = table.entries[(col, n + 1)] - table.entries[(col - 2, n + 2)]
                        denom = denom + fld.div(one, gap)
                    if form == "plain":
                        return table.entries[(col, n + 1)] + fld.div(one, denom)
                    numer = fld.div(d1, d0)
                    if k >= 1:
                        numer = numer - fld.div(d1, gap)
                    return table.entries[(col, n + 2)] + fld.div(numer, denom)

                table._checked(key, compute, fld)
    return table


def theta_table(seq: ScalarSequence, modified: bool = False) -> TransformTable:
    """Theta algorithm table.

    With ``modified=True`` the odd-column update drops its carry-over term,
    which makes the even columns reproduce the iterated theta transformation.
    """
    fld = seq.field
    m = seq.last_index
    table = TransformTable(THETA, len(seq.entries))
    for n, s in enumerate(seq.entries):
        table._put((0, n), s, True)
    with fld.arithmetic():
        for k in range(m // 3 + 1):
            # odd column 2k+1
            for n in range(m - 3 * k - 1 + 1):
                key = (2 * k + 1, n)
                deps = [(2 * k, n), (2 * k, n + 1)]
                if k >= 1 and not modified:
                    deps.append((2 * k - 1, n + 1))
                if not table._inherit(key, deps):
                    continue
                diff = _delta(table, 2 * k, n)
                if modified or k == 0:
                    base = fld.zero
                else:
                    base = table.entries[(2 * k - 1, n + 1)]
                table._checked(key, lambda: base + fld.div(fld.one, diff), fld)
            # even column 2k+2
            for n in range(m - 3 * (k + 1) + 1):
                key = (2 * k + 2, n)
                deps = [
                    (2 * k, n + 1),
                    (2 * k, n + 2),
                    (2 * k + 1, n),
                    (2 * k + 1, n + 1),
                    (2 * k + 1, n + 2),
                ]
                if not table._inherit(key, deps):
                    continue

                def compute():
                    d_even = _delta(table, 2 * k, n + 1)
                    d_odd = _delta(table, 2 * k + 1, n + 1)
                    dd_odd = _delta(table, 2 * k + 1, n + 1) - _delta(table, 2 * k + 1, n)
                    return table.entries[(2 * k, n + 1)] + fld.div(d_even * d_odd, dd_odd)

                table._checked(key, compute, fld)
    return table


def iterated_theta_table(seq: ScalarSequence, scheme: str = "classic") -> TransformTable:
    """Iterated theta transformation; classic and rearranged updates agree."""
    if scheme not in ("classic", "rearranged"):
        raise ValueError("scheme must be 'classic' or 'rearranged'")
    fld = seq.field
    m = seq.last_index
    family = THETA_ITERATED_CLASSIC if scheme == "classic" else THETA_ITERATED_REARRANGED
    table = TransformTable(family, len(seq.entries))
    for n, s in enumerate(seq.entries):
        table._put((0, n), s, True)
    with fld.arithmetic():
        for k in range(m // 3):
            for n in range(m - 3 * (k + 1) + 1):
                key = (k + 1, n)
                if not table._inherit(key, [(k, n + i) for i in range(4)]):
                    continue

                def compute():
                    d0 = _delta(table, k, n)
                    d1 = _delta(table, k, n + 1)
                    d2 = _delta(table, k, n + 2)
                    dd0 = d1 - d0
                    dd1 = d2 - d1
                    if scheme == "classic":
                        num = d0 * d1 * dd1
                        den = d2 * dd0 - d0 * dd1
                        return table.entries[(k, n + 1)] - fld.div(num, den)
                    num = d2 * (d2 * dd0 + d1 * d1 - d0 * d2)
                    den = d2 * dd0 - d0 * dd1
                    return table.entries[(k, n + 3)] - fld.div(num, den)

                table._checked(key, compute, fld)
    return table


def selection_indices(step: int, m: int) -> tuple[int, int]:
    """Deepest (level, start) reachable from inputs ``s0 ... sm``."""
    k = m // step
    return k, m - step * k


_SELECTION = {
    AITKEN_CLASSIC: (2, 1),
    AITKEN_REARRANGED: (2, 1),
    EPSILON: (2, 2),
    EPSILON_CROSS: (2, 2),
    THETA: (3, 2),
    THETA_ITERATED_CLASSIC: (3, 1),
    THETA_ITERATED_REARRANGED: (3, 1),
}


def select_approximant(table: TransformTable, m: int | None = None) -> tuple[int, int, Scalar]:
    """Entry used as the approximation to the limit after ``m+1`` inputs.

    Returns ``(k, n, value)`` in the table's own indexing (so the epsilon
    and theta families report their literal column subscript).  Raises
    :class:`SelectionError` when the entry is out of range or invalid.
    """
    if m is None:
        m = table.last_index
    if m < 0 or m > table.last_index:
        raise SelectionError(f"selection index {m} outside table built from 0..{table.last_index}")
    try:
        step, key_scale = _SELECTION[table.family]
    except KeyError:
        raise SelectionError(f"no selection rule for family {table.family!r}") from None
    level, n = selection_indices(step, m)
    k = key_scale * level
    value = table.entry(k, n)  # raises SelectionError when invalid
    return k, n, value


# ---------------------------------------------------------------------------
# Pade approximants as an independent linear-algebra oracle


@dataclass(frozen=True)
class PadeRational:
    """Rational function P/Q with Q normalized to unit constant term."""

    field: Field
    numerator: tuple[Scalar, ...]
    denominator: tuple[Scalar, ...]

    def evaluate(self, z: Scalar) -> Scalar:
        fld = self.field
        z = fld.ensure(z)
        with fld.arithmetic():
            p = fld.zero
            for c in reversed(self.numerator):
                p = p * z + c
            q = fld.zero
            for c in reversed(self.denominator):
                q = q * z + c
        return fld.div(p, q)

    def taylor_jet(self, order: int) -> Jet:
        num = Jet.from_coeffs(self.field, self.numerator, order=order)
        den = Jet.from_coeffs(self.field, self.denominator, order=order)
        return num / den


def _solve_linear(fld: Field, matrix, rhs):
    """Gaussian elimination with pivoting; None when singular."""
    n = len(rhs)
    a = [list(row) + [value] for row, value in zip(matrix, rhs)]
    with fld.arithmetic():
        for col in range(n):
            pivot_row = None
            if isinstance(fld.zero, Fraction):
                for r in range(col, n):
                    if a[r][col] != 0:
                        pivot_row = r
                        break
            else:
                best = None
                for r in range(col, n):
                    mag = abs(a[r][col])
                    if not fld.is_zero(a[r][col]) and (best is None or mag > best):
                        best, pivot_row = mag, r
            if pivot_row is None:
                return None
            a[col], a[pivot_row] = a[pivot_row], a[col]
            pivot = a[col][col]
            for r in range(col + 1, n):
                if a[r][col] == fld.zero:
                    continue
                factor = a[r][col] / pivot
                for c in range(col, n + 1):
                    a[r][c] = a[r][c] - factor * a[col][c]
        solution = [fld.zero] * n
        for row in range(n - 1, -1, -1):
            acc = a[row][n]
            for c in range(row + 1, n):
                acc = acc - a[row][c] * solution[c]
            solution[row] = acc / a[row][row]
    return solution


def pade_linear_system(series: PowerSeries, l: int, m: int) -> PadeRational:
    """Solve the accuracy-through-order linear system for the [l/m] approximant.

    The Taylor expansion of the returned P/Q reproduces the input
    coefficients through order ``l + m`` whenever the system is nonsingular;
    a singular system raises :class:`DegeneratePadeError`.
    """
    if l < 0 or m < 0:
        raise ValueError("numerator and denominator degrees must be >= 0")
    fld = series.field

    def gamma(i: int) -> Scalar:
        return series.coefficient(i) if i >= 0 else fld.zero

    if m == 0:
        q = [fld.one]
    else:
        matrix = [[gamma(l + j - i) for i in range(1, m + 1)] for j in range(1, m + 1)]
        rhs = [-gamma(l + j) for j in range(1, m + 1)]
        solution = _solve_linear(fld, matrix, rhs)
        if solution is None:
            raise DegeneratePadeError(f"[{l}/{m}] linear system is singular")
        q = [fld.one] + list(solution)
    with fld.arithmetic():
        p = [
            sum((q[i] * gamma(j - i) for i in range(min(j, m) + 1)), start=fld.zero)
            for j in range(l + 1)
        ]
    return PadeRational(fld, tuple(p), tuple(q))


# ---------------------------------------------------------------------------
# convergence classification


@dataclass(frozen=True)
class ConvergenceReport:
    kind: str  # "linear" | "logarithmic" | "divergent" | "inconclusive"
    rho: Scalar | None = None


def classify_convergence(
    seq: ScalarSequence,
    limit: Scalar | None = None,
    tolerance: Fraction = Fraction(1, 100),
) -> ConvergenceReport:
    """Classify by the limiting ratio of consecutive distances to the limit.

    The ratio is estimated as the average over the last three available
    index pairs; the classification bands are ``|rho| < 1 - tol`` (linear),
    ``|rho - 1| < tol`` (logarithmic) and ``|rho| > 1 + tol`` (divergent).
    """
    fld = seq.field
    if len(seq.entries) < 5:
        raise ValueError("classification needs at least 5 sequence entries")
    s = seq.limit if limit is None else fld.ensure(limit)
    if s is None:
        raise ValueError("classification needs a known or estimated limit")
    m = seq.last_index
    ratios = []
    with fld.arithmetic():
        for i in range(m - 3, m):
            den = seq.entries[i] - s
            if fld.is_zero(den):
                return ConvergenceReport("inconclusive")
            ratios.append((seq.entries[i + 1] - s) / den)
        rho = sum(ratios, start=fld.zero) / fld.from_int(len(ratios))
        tol = fld.from_fraction(tolerance)
        one = fld.one
        if abs(rho) < one - tol:
            return ConvergenceReport("linear", rho)
        if abs(rho - one) < tol:
            return ConvergenceReport("logarithmic", rho)
        if abs(rho) > one + tol:
            return ConvergenceReport("divergent", rho)
    return ConvergenceReport("inconclusive", rho)
