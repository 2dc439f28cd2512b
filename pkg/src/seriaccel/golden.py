"""Reference values for the ``reproduce`` experiments, embedded as strings.

The numeric tables are compared at their printed precision: 6 significant
digits for the error-term table, 10 for the transformation-term table and
the coefficient predictions.  The exact-expansion references are exact
fractions and must match bit for bit.

Known reference discrepancy: for the error-term table, exact recomputation
(rational arithmetic for the approximants plus a 100-digit logarithm, and
independently the remainder recursions at 50+ significant digits) yields
``0.689221e-10`` for the aitken cell at m = 10 and ``0.282139e-12`` at
m = 12, while the reference strings below end in ...0 and ...8.  The
reference strings are kept verbatim, so a correct run reports exactly those
two cells as mismatches.
"""

from __future__ import annotations

TABLE1_Z = "0.95"
TABLE1_M_MAX = 12
TABLE1_DIGITS = 6
# family -> cell strings for m = 0..12
TABLE1 = {
    "aitken": (
        "0",
        "0",
        "0.620539e-2",
        "-0.230919e-2",
        "0.109322e-3",
        "-0.333267e-4",
        "0.131240e-5",
        "-0.371684e-6",
        "0.111500e-7",
        "-0.311899e-8",
        "0.689220e-10",
        "-0.199134e-10",
        "0.282138e-12",
    ),
    "epsilon": (
        "0",
        "0",
        "0.620539e-2",
        "-0.230919e-2",
        "0.156975e-3",
        "-0.466090e-4",
        "0.413753e-5",
        "-0.108095e-5",
        "0.110743e-6",
        "-0.266535e-7",
        "0.298638e-8",
        "-0.678908e-9",
        "0.808737e-10",
    ),
    "theta-iterated": (
        "0",
        "0",
        "0",
        "0.113587e-2",
        "-0.367230e-3",
        "0.148577e-3",
        "0.137543e-5",
        "-0.392983e-6",
        "0.131377e-6",
        "0.412451e-9",
        "-0.139178e-9",
        "0.475476e-10",
        "-0.316716e-12",
    ),
}

TABLE2_Z = "5.0"
TABLE2_M_MAX = 10
TABLE2_DIGITS = 10
TABLE2 = {
    "aitken": (
        "0",
        "0",
        "-0.6410256410e1",
        "0.2467105263e2",
        "-0.1002174398e3",
        "0.4205996885e3",
        "-0.1811533788e4",
        "0.7954089807e4",
        "-0.3544868723e5",
        "0.1598638127e6",
        "-0.7279202782e6",
    ),
    "epsilon": (
        "0",
        "0",
        "-0.6410256410e1",
        "0.2467105263e2",
        "-0.1002155172e3",
        "0.4205974843e3",
        "-0.1811532973e4",
        "0.7954089068e4",
        "-0.3544868703e5",
        "0.1598638125e6",
        "-0.7279202781e6",
    ),
    "theta-iterated": (
        "0",
        "0",
        "0",
        "0.2480158730e2",
        "-0.1002604167e3",
        "0.4206730769e3",
        "-0.1811533744e4",
        "0.7954089765e4",
        "-0.3544868636e5",
        "0.1598638127e6",
        "-0.7279202782e6",
    ),
}

# Exact error expansions of the level-3 / level-3 / level-2 approximants of
# the alternating logarithm series built from coefficients 0..6:
# coefficients of z**7, z**8, z**9 in (approximant - function).
EXPANSION7_LEVEL = {"aitken": 3, "epsilon": 3, "theta-iterated": 2}
EXPANSION7 = {
    "aitken": ("421/16537500", "-796321/8682187500", "810757427/4051687500000"),
    "epsilon": ("1/9800", "-31/77175", "113/120050"),
    "theta-iterated": ("1/37800", "-19/198450", "1/4725"),
}

# Predictions for coefficients 13..16 of the alternating logarithm series
# from coefficients 0..12, printed at 10 significant digits.
PREDICT13_COUNT = 4
PREDICT13_DIGITS = 10
PREDICT13 = {
    "aitken": ("-0.07142857137", "0.06666666629", "-0.06249999856", "0.05882352524"),
    "epsilon": ("-0.07142854717", "0.06666649774", "-0.06249934843", "0.05882168762"),
    "theta-iterated": ("-0.07142857148", "0.06666666684", "-0.06249999986", "0.05882352708"),
}
PREDICT13_TRUE = ("-1/14", "1/15", "-1/16", "1/17")
PREDICT13_TRUE_DECIMAL = ("-0.07142857143", "0.06666666667", "-0.06250000000", "0.05882352941")
