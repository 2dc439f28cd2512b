"""Convergence acceleration and series-coefficient prediction.

Nonlinear sequence transformations (iterated delta-squared, Wynn's epsilon
algorithm, Brezinski's iterated theta transformation) in rearranged forms
whose rational approximants split cleanly into a partial sum plus a
transformation term.  Expanding those terms as truncated power series yields
predictions for coefficients the transformation never consumed; driving the
sibling remainder recursions with known series tails yields exact error-term
expansions for model problems.  Everything is generic over exact rational,
big-decimal and double-precision scalar fields.
"""

from .field import (
    BigFloatField,
    BreakdownError,
    Field,
    Float64Field,
    ModeMismatchError,
    ParseError,
    RationalField,
    Scalar,
    decimal_string,
    field_for_mode,
    scientific_string,
    to_fraction_string,
)
from .jets import Jet, JetBreakdownError, PowerSeries, delta2_shift, delta_shift
from .prediction import (
    PREDICTION_FAMILIES,
    LeadingPredictionTable,
    PredictionBreakdownError,
    TransformationTerm,
    TransformationTermTable,
    leading_predictions,
    predict_coefficients,
    transformation_terms,
)
from .remainders import (
    LeadingRemainderTable,
    RemainderJet,
    RemainderJetTable,
    TermCell,
    evaluate_error_terms,
    evaluate_transformation_terms,
    leading_remainders,
    remainder_jets,
    remainder_value,
    series_value,
)
from .series_library import ResolvedInput, builtin_series, load_coefficient_file, resolve_series_spec
from .transforms import (
    ConvergenceReport,
    DegeneratePadeError,
    ModelSequence,
    PadeRational,
    ScalarSequence,
    SelectionError,
    TransformTable,
    aitken_table,
    classify_convergence,
    epsilon_cross_table,
    epsilon_table,
    iterated_theta_table,
    pade_linear_system,
    select_approximant,
    selection_indices,
    theta_table,
)

__version__ = "0.1.0"
