"""Exact truncated Laurent series over Fractions: an independent expansion oracle.

The shipped code expands transformation terms via rearranged recursions whose
divisions always have unit leading terms.  This helper lets the *textbook*
recursions run directly on partial-sum polynomials instead: their divisions
cancel powers of z, so the oracle tracks the leading exponent and how far the
coefficients can be trusted after each cancellation.
"""

from fractions import Fraction

FOREVER = 10 ** 9


class Laurent:
    """coeffs[i] multiplies z**(base+i); coefficients above ``top`` are unknown."""

    __slots__ = ("base", "coeffs", "top")

    def __init__(self, base, coeffs, top):
        self.base = base
        self.coeffs = [Fraction(c) for c in coeffs]
        self.top = top

    @classmethod
    def from_polynomial(cls, coeffs):
        return cls(0, coeffs, FOREVER)

    def coefficient(self, exponent):
        assert exponent <= self.top, f"coefficient z^{exponent} not trusted (top {self.top})"
        i = exponent - self.base
        if 0 <= i < len(self.coeffs):
            return self.coeffs[i]
        return Fraction(0)

    def _cap(self, limit=80):
        if len(self.coeffs) > limit:
            del self.coeffs[limit:]
            self.top = min(self.top, self.base + limit - 1)
        return self

    def __add__(self, other):
        base = min(self.base, other.base)
        top = min(self.top, other.top)
        length = max(self.base + len(self.coeffs), other.base + len(other.coeffs)) - base
        out = [Fraction(0)] * length
        for i, c in enumerate(self.coeffs):
            out[self.base - base + i] += c
        for i, c in enumerate(other.coeffs):
            out[other.base - base + i] += c
        return Laurent(base, out, top)._cap()

    def __sub__(self, other):
        return self + Laurent(other.base, [-c for c in other.coeffs], other.top)

    def __mul__(self, other):
        base = self.base + other.base
        top = min(self.top + other.base, other.top + self.base)
        out = [Fraction(0)] * (len(self.coeffs) + len(other.coeffs) - 1 or 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    out[i + j] += a * b
        return Laurent(base, out, top)._cap()

    def reciprocal(self):
        lead = next((i for i, c in enumerate(self.coeffs) if c != 0), None)
        assert lead is not None, "reciprocal of an (apparently) zero series"
        unit = self.coeffs[lead:]
        e0 = self.base + lead
        # The inverse is an infinite series even when the input is a finite
        # polynomial, so only the materialized stretch is trustworthy.
        length = min(80, self.top - e0 + 1)
        inv = [Fraction(0)] * length
        inv[0] = 1 / unit[0]
        for k in range(1, length):
            acc = sum(unit[j] * inv[k - j] for j in range(1, min(k, len(unit) - 1) + 1))
            inv[k] = -acc / unit[0]
        top = min(self.top - 2 * e0, -e0 + length - 1)
        return Laurent(-e0, inv, top)._cap()

    def __truediv__(self, other):
        return self * other.reciprocal()


def partial_sum_laurents(coeffs, count):
    """Laurent views of the partial-sum polynomials of a coefficient list."""
    out = []
    acc = []
    for n in range(count):
        acc = acc + [coeffs[n]]
        out.append(Laurent.from_polynomial(acc))
    return out


def classic_aitken(sums, k, n):
    """Raw iterated delta-squared on exact series elements."""
    row = list(sums)
    for _ in range(k):
        nxt = []
        for j in range(len(row) - 2):
            d0 = row[j + 1] - row[j]
            dd = (row[j + 2] - row[j + 1]) - d0
            nxt.append(row[j] - (d0 * d0) / dd)
        row = nxt
    return row[n]


def classic_epsilon(sums, col, n):
    """Raw epsilon recursion, odd (Laurent-valued) columns included."""
    prev = [Laurent.from_polynomial([0]) for _ in sums]  # epsilon_{-1} = 0
    cur = list(sums)
    for _ in range(col):
        nxt = [
            prev[j + 1] + (cur[j + 1] - cur[j]).reciprocal()
            for j in range(len(cur) - 1)
        ]
        prev, cur = cur, nxt
    return cur[n]


def classic_iterated_theta(sums, k, n):
    """Raw iterated theta on exact series elements."""
    row = list(sums)
    for _ in range(k):
        nxt = []
        for j in range(len(row) - 3):
            d0 = row[j + 1] - row[j]
            d1 = row[j + 2] - row[j + 1]
            d2 = row[j + 3] - row[j + 2]
            num = d0 * d1 * (d2 - d1)
            den = d2 * (d1 - d0) - d0 * (d2 - d1)
            nxt.append(row[j + 1] - num / den)
        row = nxt
    return row[n]
