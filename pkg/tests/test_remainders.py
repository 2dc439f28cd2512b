from decimal import Decimal
from fractions import Fraction as F

import pytest

from seriaccel.field import BigFloatField, RationalField, scientific_string
from seriaccel.jets import PowerSeries
from seriaccel.prediction import PredictionBreakdownError, leading_predictions
from seriaccel.remainders import (
    evaluate_error_terms,
    evaluate_transformation_terms,
    leading_remainders,
    remainder_jets,
    remainder_value,
    series_value,
)

RAT = RationalField()
BF = BigFloatField(50)


def log_series_rational(count=13):
    tail = lambda i: F((-1) ** i, i + 1)
    return PowerSeries(RAT, tuple(tail(m) for m in range(count)), tail=tail)


def log_series_bigfloat(count=13):
    def tail(i):
        with BF.arithmetic():
            return Decimal((-1) ** i) / (i + 1)

    return PowerSeries(BF, tuple(tail(m) for m in range(count)), tail=tail)


def test_base_remainder_jet_sign_pattern():
    table = remainder_jets(log_series_rational(), "aitken", 0, order=2, n_max=0)
    assert table.term(0, 0).term.coeffs == (F(1, 2), F(-1, 3), F(1, 4))
    assert table.term(0, 0).offset == 1


def test_exact_error_expansions_level3_level3_level2():
    series = log_series_rational()
    aitken = remainder_jets(series, "aitken", 3, order=4, n_max=0).term(3, 0)
    assert aitken.offset == 7
    assert aitken.term.coeffs[:3] == (
        F(421, 16537500),
        F(-796321, 8682187500),
        F(810757427, 4051687500000),
    )
    epsilon = remainder_jets(series, "epsilon", 3, order=4, n_max=0).term(3, 0)
    assert epsilon.term.coeffs[:3] == (F(1, 9800), F(-31, 77175), F(113, 120050))
    theta = remainder_jets(series, "theta", 2, order=4, n_max=0).term(2, 0)
    assert theta.term.coeffs[:3] == (F(1, 37800), F(-19, 198450), F(1, 4725))


def test_leading_remainder_base_case():
    table = leading_remainders(log_series_rational(), "aitken", 0)
    for n in range(8):
        assert table.entry(0, n) == -F((-1) ** (n + 1), n + 2)


def test_epsilon_leading_remainder_first_step_formula():
    series = log_series_rational()
    table = leading_remainders(series, "epsilon", 1)
    c0 = lambda n: -series.coefficient(n + 1)
    for n in range(6):
        assert table.entry(1, n) == c0(n + 2) - c0(n + 1) ** 2 / c0(n)
    assert table.entry(1, 0) == F(1, 36)


@pytest.mark.parametrize("family,step", [("aitken", 2), ("epsilon", 2), ("theta-iterated", 3)])
def test_connection_identity_leading_parts(family, step):
    series = log_series_rational()
    max_level = (12 - 1) // step  # the z-independent parts need one extra coefficient
    predictions = leading_predictions(series, family, max_level)
    remainders_table = leading_remainders(series, family, max_level)
    checked = 0
    for k, n in remainders_table.positions():
        index = n + step * k + 1
        if index > 12 or not predictions.is_valid(k, n):
            continue
        assert predictions.entry(k, n) == remainders_table.entry(k, n) + series.coefficient(index)
        checked += 1
    assert checked >= 20


@pytest.mark.parametrize("family,level", [("aitken", 3), ("epsilon", 3), ("theta-iterated", 2)])
def test_remainder_jet_constant_part_matches_scalar_recursion(family, level):
    series = log_series_rational()
    jets = remainder_jets(series, family, level, order=2, n_max=1)
    scalars = leading_remainders(series, family, level)
    for term in jets:
        assert term.term.constant_term == scalars.entry(term.k, term.n)


def test_zero_leading_part_is_flagged_and_contained():
    # gamma(3) = gamma(2)**2 / gamma(1) makes the level-1 part at n = 0 vanish
    # exactly; the level-2 entry above it must break down, nothing else.
    series = PowerSeries(RAT, (F(1), F(1, 2), F(1, 2), F(1, 2), F(1, 5), F(1, 7), F(1, 11)))
    table = leading_remainders(series, "aitken", 2)
    assert table.is_valid(0, 0) and table.is_nonzero(0, 0)
    assert table.is_valid(1, 0) and not table.is_nonzero(1, 0)
    assert table.entry(1, 0) == 0
    assert not table.is_valid(2, 0)
    with pytest.raises(PredictionBreakdownError):
        table.entry(2, 0)
    assert table.is_valid(1, 1)  # the breakdown stays local to that column


def test_remainder_value_matches_reference_inputs():
    series = log_series_bigfloat()
    z = BF.parse("0.95")
    assert scientific_string(remainder_value(series, 0, z), 6) == "0.312654e0"
    assert scientific_string(remainder_value(series, 1, z), 6) == "-0.197206e0"
    assert scientific_string(remainder_value(series, 12, z), 6) == "0.378992e-1"


def test_remainder_value_needs_float_mode_and_small_z():
    with pytest.raises(ValueError):
        remainder_value(log_series_rational(), 0, F(1, 2))
    with pytest.raises(ValueError):
        remainder_value(log_series_bigfloat(), 0, BF.parse("1.05"))


def test_series_value_is_the_logarithm_quotient():
    series = log_series_bigfloat()
    z = BF.parse("0.95")
    with BF.arithmetic():
        expected = (1 + z).ln() / z
    assert abs(series_value(series, z) - expected) < Decimal("1e-45")


def test_error_term_table_zero_pattern_and_spot_cells():
    series = log_series_bigfloat()
    cells = evaluate_error_terms(series, BF.parse("0.95"), 12)
    for family, zero_rows in (("aitken", 2), ("epsilon", 2), ("theta-iterated", 3)):
        for m in range(zero_rows):
            cell = cells[family][m]
            assert cell.valid and cell.value == 0
    render = lambda fam, m: scientific_string(cells[fam][m].value, 6)
    assert render("aitken", 2) == "0.620539e-2"
    assert render("epsilon", 2) == "0.620539e-2"
    assert render("theta-iterated", 3) == "0.113587e-2"
    assert render("aitken", 6) == "0.131240e-5"
    assert render("epsilon", 6) == "0.413753e-5"
    assert render("theta-iterated", 6) == "0.137543e-5"
    assert render("epsilon", 12) == "0.808737e-10"
    assert render("theta-iterated", 12) == "-0.316716e-12"
    # Exact-arithmetic recomputation fixes the last digit of these two cells
    # (the tabulated reference prints ...0 and ...8; see the golden module).
    assert render("aitken", 10) == "0.689221e-10"
    assert render("aitken", 12) == "0.282139e-12"


def test_error_and_transformation_decompositions_are_consistent():
    # function + z**(m+1) * remainder == partial sum + z**(m+1) * term
    series = log_series_bigfloat()
    z = BF.parse("0.95")
    errors = evaluate_error_terms(series, z, 10)
    terms = evaluate_transformation_terms(series, z, 10)
    f = series_value(series, z)
    for family, first_m in (("aitken", 2), ("epsilon", 2), ("theta-iterated", 3)):
        for m in range(first_m, 11):
            with BF.arithmetic():
                left = f + errors[family][m].value
                right = series.partial_sum(m, z) + terms[family][m].value
            assert abs(left - right) < Decimal("1e-40"), (family, m)


def test_transformation_term_table_divergent_point():
    series = log_series_bigfloat(11)
    cells = evaluate_transformation_terms(series, BF.parse("5.0"), 10)
    render = lambda fam, m: scientific_string(cells[fam][m].value, 10)
    assert cells["aitken"][0].value == 0
    assert render("aitken", 3) == "0.2467105263e2"
    assert render("epsilon", 4) == "-0.1002155172e3"
    assert render("theta-iterated", 3) == "0.2480158730e2"
    assert render("theta-iterated", 10) == "-0.7279202782e6"
    # at a divergent point the terms shadow the negated partial sums
    partial = series.partial_sum(10, BF.parse("5.0"))
    with BF.arithmetic():
        ratio = abs(cells["aitken"][10].value + partial) / abs(partial)
    assert ratio < Decimal("1e-5")


def test_remainder_jets_need_tail_coefficients():
    series = PowerSeries(RAT, tuple(F(1, m + 1) for m in range(5)))
    with pytest.raises(IndexError):
        remainder_jets(series, "aitken", 1, order=6, n_max=0)


def test_corrected_cells_cross_checked_by_exact_rational_route():
    # Fully independent route to the two cells whose stored reference digits
    # disagree with recomputation: run the plain one-line delta-squared
    # iteration on exact rational partial sums at z = 19/20, then subtract a
    # 100-digit logarithm.  No remainder recursion, no shared code path.
    import decimal

    z = F(19, 20)
    sums, acc = [], F(0)
    for m in range(13):
        acc += F((-1) ** m, m + 1) * z ** m
        sums.append(acc)
    rendered = {}
    with decimal.localcontext() as ctx:
        ctx.prec = 100
        f = (decimal.Decimal(195) / 100).ln() / decimal.Decimal("0.95")
        for m, level in ((10, 5), (12, 6)):
            row = list(sums[: m + 1])
            for _ in range(level):
                row = [
                    row[j] - (row[j + 1] - row[j]) ** 2 / (row[j + 2] - 2 * row[j + 1] + row[j])
                    for j in range(len(row) - 2)
                ]
            error = decimal.Decimal(row[0].numerator) / decimal.Decimal(row[0].denominator) - f
            rendered[m] = scientific_string(error, 6)
    assert rendered[10] == "0.689221e-10"
    assert rendered[12] == "0.282139e-12"


def test_epsilon_table_error_matches_remainder_route():
    # the deepest even epsilon entry minus the function value reproduces the
    # error-term cell computed through the remainder recursion
    from seriaccel.transforms import ScalarSequence, epsilon_table

    series = log_series_bigfloat()
    z = BF.parse("0.95")
    sums = tuple(series.partial_sum(n, z) for n in range(13))
    table = epsilon_table(ScalarSequence(BF, sums))
    f = series_value(series, z)
    with BF.arithmetic():
        error = table.entry(12, 0) - f
    assert scientific_string(error, 6) == "0.808737e-10"
