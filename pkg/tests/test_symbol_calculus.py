import cmath
import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from mfcalc.core import (
    SEGMENTS,
    AnalysisParams,
    FourierConv,
    Identity,
    MellinK,
    OperatorMatrix,
    RectanglePoint,
    Sandwich,
    Sum,
    SymbolDescriptor,
    _segment_coordinate,
)
from mfcalc.errors import ArgCOnAxis, HypothesisViolated, MissingAnalyticityFlags, UnsupportedExprShape
from mfcalc.kernels import sigma_Km
from mfcalc.symbol_calculus import (
    JumpPair,
    assemble_lifted_symbol,
    corner_residual,
    curve_to_csv,
    angle_jump_fill_forms,
    g_s_ratio,
    ident_sym_lifted,
    jump_fill_gp,
    k1_sym_lifted,
    k2_sym_lifted,
    segment_symbol,
    symbol_curve,
    symbol_Lp,
    w_syms_lifted,
)

P2 = AnalysisParams(2.0)


def pt(seg, x):
    return RectanglePoint(seg, x, 0.0)


def test_jump_fill_endpoints_and_midpoint():
    pair = JumpPair(0.0, 1.0)
    assert jump_fill_gp(pair, 2.0, np.inf) == 1.0
    assert jump_fill_gp(pair, 2.0, -np.inf) == 0.0
    assert jump_fill_gp(pair, 2.0, 40.0) == pytest.approx(1.0)
    assert jump_fill_gp(pair, 2.0, 0.0) == pytest.approx(0.5)


@given(st.floats(1.1, 8.0), st.floats(-2.0, 2.0), st.complex_numbers(max_magnitude=3), st.complex_numbers(max_magnitude=3))
def test_jump_fill_traces_arc_of_fixed_angle(p, xi, left, right):
    if abs(right - left) < 1e-3:
        return
    f = jump_fill_gp(JumpPair(left, right), p, xi)
    # the fill sees the chord [left, right] under a constant angle 2 pi/p (mod 2 pi)
    ang = cmath.phase((f - left) / (f - right))
    d = (ang - 2 * math.pi / p) % (2 * math.pi)
    assert min(d, 2 * math.pi - d) < 1e-6


def test_g_ratio_examples():
    assert g_s_ratio(1.0, -1j, 1j, [0.0])[0] == pytest.approx(-1)
    assert g_s_ratio(0.5, -1j, 1j, [0.0])[0] == pytest.approx(1j)
    # with gamma = i the pole product c gamma would be real; e^{i pi/3} keeps it off the axis
    c = cmath.exp(-0.5j * math.pi)
    g = cmath.exp(1j * math.pi / 3)
    ends = g_s_ratio(0.7, -c * g, g, np.tan(np.pi * (np.linspace(0, 1, 4001) - 0.5)))
    assert ends[0] == pytest.approx(1, abs=1e-10) and ends[-1] == pytest.approx(1, abs=1e-10)


@given(st.floats(-3, 3), st.floats(0.1, 3.0), st.floats(0.2, 2.9), st.lists(st.floats(-20, 20), min_size=1, max_size=5))
def test_g_ratio_path_matches_continuous_branch(s, r, a, pts):
    gamma = r * cmath.exp(1j * a)
    xi = np.sort(np.array(pts))
    dense = np.linspace(xi[0], xi[-1], 4000) if xi[-1] > xi[0] else xi
    path = g_s_ratio(s, -gamma, gamma, dense)
    closed = SymbolDescriptor.g_ratio(s, -gamma, gamma)(dense)
    assert np.allclose(path, closed, rtol=1e-9, atol=1e-12)


def test_symbol_Lp_examples():
    cay = Sum((FourierConv(SymbolDescriptor.cayley(1j)),))
    assert symbol_Lp(cay, P2, pt("Gamma1", 0.7))[0, 0] == pytest.approx(1)
    assert symbol_Lp(cay, P2, pt("Gamma3", 0.7))[0, 0] == pytest.approx(-1)
    assert symbol_Lp(cay, P2, pt("Gamma2plus", 1.0))[0, 0] == pytest.approx((-1 - 1j) / (-1 + 1j))
    k = Sum((MellinK(1, -1.0),))
    assert symbol_Lp(k, P2, pt("Gamma1", 0.0))[0, 0] == pytest.approx(1)
    assert symbol_Lp(k, P2, pt("Gamma3", 0.4))[0, 0] == pytest.approx(1 / math.cosh(0.4 * math.pi))
    assert symbol_Lp(k, P2, pt("Gamma2plus", 3.0))[0, 0] == 0
    assert symbol_Lp(k, P2, pt("Gamma2minus", 0.0))[0, 0] == 0


def test_k1_lifted_example_negative_one():
    pr = AnalysisParams(2.0, 0.5, gamma=1j)
    assert k1_sym_lifted(-1.0, pr, pt("Gamma1", 0.0)) == pytest.approx(1j)
    assert k1_sym_lifted(-1.0, pr, pt("Gamma3", 0.0)) == pytest.approx(1j)
    assert k1_sym_lifted(-1.0, pr, pt("Gamma2plus", 2.0)) == 0
    # for c = -1 the value on Gamma1 and Gamma3 is e^{pi s i}/sin pi(beta - i xi)
    for xi in (-1.2, 0.3):
        want = cmath.exp(0.5j * math.pi) / cmath.sin(math.pi * (0.5 - 1j * xi))
        assert k1_sym_lifted(-1.0, pr, pt("Gamma1", xi)) == pytest.approx(want)
        assert k1_sym_lifted(-1.0, pr, pt("Gamma3", xi)) == pytest.approx(want)


def test_k1_lifted_branch_for_upper_c():
    c = cmath.exp(0.75j * math.pi)
    s = 0.3
    pr = AnalysisParams(2.0, s, gamma=cmath.exp(0.625j * math.pi))
    want = cmath.exp(-s * (0.75j * math.pi - 2j * math.pi)) * sigma_Km(1, c, 0.5, 0.2)
    assert k1_sym_lifted(c, pr, pt("Gamma1", 0.2)) == pytest.approx(want)


def test_k1_lifted_errors():
    pr = AnalysisParams(2.0, 0.5, gamma=1j)
    with pytest.raises(ArgCOnAxis):
        k1_sym_lifted(2.0, pr, pt("Gamma1", 0.0))
    with pytest.raises(HypothesisViolated):
        # c gamma = -1 lies on the real axis
        k1_sym_lifted(1j, pr, pt("Gamma1", 0.0))


@pytest.mark.parametrize("c", [cmath.exp(-0.5j * math.pi), cmath.exp(0.7j), -1.3 + 0j, 2 * cmath.exp(-2.2j)])
@pytest.mark.parametrize("s", [-0.5, 0.3, 1.2])
def test_k2_lifted_is_c_derivative_of_k1_lifted(c, s):
    pr = AnalysisParams(2.0, s, gamma=cmath.exp(0.35j))
    eps = 1e-5
    for seg in ("Gamma1", "Gamma3"):
        for xi in (-0.8, 0.0, 0.6):
            w = pt(seg, xi)
            fd = (k1_sym_lifted(c + eps, pr, w) - k1_sym_lifted(c - eps, pr, w)) / (2 * eps)
            assert k2_sym_lifted(c, pr, w) == pytest.approx(fd, rel=1e-7, abs=1e-9)


def test_identity_lifted_closed_form():
    for s, p in ((0.3, 2.0), (-0.4, 3.0), (1.7, 1.5)):
        pr = AnalysisParams(p, s, gamma=cmath.exp(0.8j))
        b = 1 / p
        for xi in (-2.0, 0.0, 1.1):
            want = cmath.exp(1j * math.pi * s) * cmath.sin(math.pi * (b + s - 1j * xi)) / cmath.sin(math.pi * (b - 1j * xi))
            assert ident_sym_lifted(pr, pt("Gamma1", xi)) == pytest.approx(want)
        assert ident_sym_lifted(pr, pt("Gamma3", 0.5)) == pytest.approx(cmath.exp(1j * math.pi * s))
        g = SymbolDescriptor.g_ratio(s, -pr.gamma, pr.gamma)
        assert ident_sym_lifted(pr, pt("Gamma2plus", 1.5)) == pytest.approx(g(-1.5))
        assert ident_sym_lifted(pr, pt("Gamma2minus", 1.5)) == pytest.approx(g(1.5))


def test_fourier_lifted_is_identity_times_symbol_on_gamma2():
    a = SymbolDescriptor.rational([1, 2j], [1, 1j])
    pr = AnalysisParams(2.0, 0.4, gamma=cmath.exp(0.5j))
    for seg, sign in (("Gamma2plus", -1), ("Gamma2minus", 1)):
        w = pt(seg, 0.9)
        assert w_syms_lifted(a, pr, w, True) == pytest.approx(a(sign * 0.9) * ident_sym_lifted(pr, w))
    assert w_syms_lifted(a, pr, pt("Gamma1", np.inf), True) == pytest.approx(cmath.exp(0.8j * math.pi) * a(np.inf))


def test_angle_jump_sine_form_matches_fill_cosine_form_does_not():
    out = angle_jump_fill_forms(0.2, AnalysisParams(2.0, 0.3), np.linspace(-3, 3, 13))
    assert out["sin_max_dev"] < 1e-12
    assert out["cos_max_dev"] > 0.1


def expressions(c=cmath.exp(-0.6j)):
    a_low = SymbolDescriptor.bessel(0.0, -1j, "+")
    return [
        Sum((Identity(),)),
        Sum((FourierConv(SymbolDescriptor.cayley(1j)),)),
        Sum((FourierConv(SymbolDescriptor.piecewise(1.0, 3.0)),)),
        Sum((Identity(), MellinK(1, -1.0, 0.4))),
        Sum((Identity(), MellinK(2, c, 0.3))),
        Sum((Identity(), Sandwich(a_low, MellinK(1, c), SymbolDescriptor.cayley(1j)))),
        OperatorMatrix(
            (
                (Sum((Identity(),)), Sum((MellinK(1, c, 0.2),))),
                (Sum((MellinK(1, c, -0.2),)), Sum((Identity(),))),
            )
        ),
    ]


@given(st.floats(-0.45, 0.45), st.floats(1.3, 4.0), st.floats(0.1, 1.3), st.integers(0, 6))
def test_corner_continuity(s, p, garg, k):
    pr = AnalysisParams(p, s, gamma=cmath.exp(1j * garg))
    assert corner_residual(expressions()[k], pr) <= 1e-8
    assert corner_residual(expressions()[k], pr, lifted=False) <= 1e-8


@given(st.floats(1.2, 5.0), st.integers(0, 6), st.sampled_from(SEGMENTS), st.floats(0.01, 0.99))
def test_lifted_at_zero_smoothness_equals_unlifted(p, k, seg, v):
    pr = AnalysisParams(p, 0.0, gamma=cmath.exp(0.4j))
    x = float(_segment_coordinate(seg, np.array([v]))[0])
    e = expressions()[k]
    assert np.allclose(assemble_lifted_symbol(e, pr, pt(seg, x)), symbol_Lp(e, pr, pt(seg, x)), atol=1e-13)


def test_sandwich_symbol_is_product_of_factors():
    a = SymbolDescriptor.bessel(0.0, -1j, "+")
    b = SymbolDescriptor.cayley(2j)
    c = cmath.exp(-1.0j)
    pr = AnalysisParams(2.0, 0.2, gamma=cmath.exp(0.5j))
    for seg in SEGMENTS:
        x = 0.7
        w = pt(seg, x)
        lhs = assemble_lifted_symbol(Sum((Sandwich(a, MellinK(1, c), b),)), pr, w)[0, 0]
        rhs = w_syms_lifted(a, pr, w, False) * k1_sym_lifted(c, pr, w) * w_syms_lifted(b, pr, w, False)
        assert lhs == pytest.approx(rhs)


def test_missing_analyticity_outside_plain_range():
    c = cmath.exp(-0.6j)
    bad = Sum((Sandwich(SymbolDescriptor.cayley(1j), MellinK(1, c), SymbolDescriptor.cayley(1j)),))
    inside = AnalysisParams(2.0, 0.2, gamma=cmath.exp(0.5j))
    outside = AnalysisParams(2.0, 0.8, gamma=cmath.exp(0.5j))
    assemble_lifted_symbol(bad, inside, pt("Gamma1", 0.0))
    with pytest.raises(MissingAnalyticityFlags):
        assemble_lifted_symbol(bad, outside, pt("Gamma1", 0.0))
    good = Sum((Sandwich(SymbolDescriptor.bessel(0.3, -1j, "+"), MellinK(1, c), SymbolDescriptor.bessel(-0.3, 1j, "+")),))
    assemble_lifted_symbol(good, outside, pt("Gamma3", 0.0))


def test_unbounded_fourier_symbol_rejected():
    e = Sum((FourierConv(SymbolDescriptor.bessel(1.0, 1j, "+")),))
    with pytest.raises(UnsupportedExprShape):
        segment_symbol(e, P2, "Gamma1", [0.0])


def test_curve_csv_is_deterministic_and_complete():
    e = expressions()[6]
    pr = AnalysisParams(2.0, 0.25, gamma=cmath.exp(0.5j))
    a = curve_to_csv(symbol_curve(e, pr, 32), "0.1.0")
    b = curve_to_csv(symbol_curve(e, pr, 32), "0.1.0")
    assert a == b
    lines = a.splitlines()
    assert lines[0].startswith("# {") and lines[1] == "segment,u,coordinate,re_det,im_det"
    assert len(lines) == 2 + 4 * 32
    assert "\r" not in a
