import cmath
import json
import math

import pytest

from mfcalc.core import SymbolDescriptor
from mfcalc.errors import HypothesisViolated, NoAnalyticitySide, SOutOfRange
from mfcalc.verify import (
    CheckReport,
    check_K2_lift,
    check_lifted_oracles,
    check_thm31,
    check_thm31_differential,
    check_wh_product,
    cor32_suite,
    matrix_json,
    thm31_hypotheses,
)

C_DOWN = cmath.exp(-0.5j * math.pi)
G_DOWN = cmath.exp(0.25j * math.pi)


def test_report_modes():
    up = CheckReport("x", {}, {"a": 1e-6, "b": 2e-6}, 1e-5)
    assert up.status == "pass" and up.max_residual == 2e-6
    low = CheckReport("x", {}, {"a": 0.5, "b": 0.05}, 0.1, "lower")
    assert low.status == "fail" and not low.passed
    assert CheckReport("x", {}, {"a": 3.0}, None, "measured").status == "measured"
    doc = json.loads(matrix_json([low.to_json()]))
    assert doc[0]["residual"] == 0.05


def test_hypothesis_names():
    assert thm31_hypotheses(C_DOWN, G_DOWN) == []
    assert "-pi < arg(c gamma) < 0" in thm31_hypotheses(C_DOWN, cmath.exp(0.75j * math.pi))
    assert "arg c != 0" in thm31_hypotheses(2.0, 1j)
    with pytest.raises(HypothesisViolated):
        check_thm31(C_DOWN, 0.5, cmath.exp(0.75j * math.pi))


def test_theorem_constant_uses_arg_in_zero_two_pi():
    good = check_thm31(C_DOWN, 0.5, G_DOWN)
    assert good.passed
    # the principal branch of c^(-s) differs by a phase only
    bad = check_thm31(C_DOWN, 0.5, G_DOWN, power="principal")
    assert bad.status == "fail"
    assert max(bad.extra["best_constant_residual"].values()) < 1e-4


def test_differential_form():
    assert check_thm31_differential(C_DOWN, G_DOWN).passed


def test_lifted_oracle_range():
    assert check_lifted_oracles(C_DOWN, -0.5, G_DOWN).passed
    with pytest.raises(SOutOfRange):
        check_lifted_oracles(C_DOWN, 0.5, G_DOWN)


def test_k2_remainder_sign():
    assert check_K2_lift(C_DOWN, -0.5, G_DOWN).passed
    flipped = check_K2_lift(C_DOWN, -0.5, G_DOWN, t_sign=1.0)
    assert flipped.max_residual > 0.1


def test_wh_product_needs_an_analytic_side():
    a = SymbolDescriptor.bessel(0.5, -1j, "+")
    b = SymbolDescriptor.bessel(-0.5, 1j, "+")
    assert check_wh_product(a, b).passed
    with pytest.raises(NoAnalyticitySide):
        check_wh_product(a, b, a_lower=False, b_upper=False)


def test_cor32_suite_passes():
    assert all(r.passed for r in cor32_suite())
