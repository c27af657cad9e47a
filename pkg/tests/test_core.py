import cmath
import json
import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from mfcalc.core import (
    SEGMENTS,
    AdmissibleKernel,
    AnalysisParams,
    FourierConv,
    GridSpec,
    Identity,
    KernelTerm,
    MellinK,
    OperatorMatrix,
    Sandwich,
    SampledFunction,
    Sum,
    SymbolDescriptor,
    canonical_json,
    expr_hash,
    operator_from_json,
    partial_fraction_reduce,
    principal_arg,
    rectangle_path,
    segment_endpoints,
    validate_admissible_kernel,
)
from mfcalc.errors import (
    DuplicatePole,
    InvalidParams,
    NonpositiveMultiplicity,
    PoleOnPositiveAxis,
    SpecParse,
    UnsupportedExprShape,
)


def test_principal_arg_negative_real_is_pi():
    assert principal_arg(-1.0) == pytest.approx(math.pi)
    assert principal_arg(complex(-1.0, -0.0)) == pytest.approx(math.pi)


@pytest.mark.parametrize(
    "kwargs",
    [
        dict(p=1.0),
        dict(p=math.inf),
        dict(p=2.0, weight_exp=1.5),
        dict(p=2.0, weight_exp=-1.0),
        dict(p=2.0, gamma=-1j),
        dict(p=2.0, gamma=1.0),
        dict(p=2.0, gamma0=-1 - 1j),
    ],
)
def test_analysis_params_rejects_bad_values(kwargs):
    with pytest.raises(InvalidParams):
        AnalysisParams(**kwargs)


def test_analysis_params_beta_and_json_roundtrip():
    pr = AnalysisParams(p=3.0, s=0.5, weight_exp=0.5, gamma=cmath.exp(0.3j), gamma0=1j)
    assert pr.beta == pytest.approx(0.5)
    assert AnalysisParams.from_json(json.loads(json.dumps(pr.to_json()))) == pr


def test_from_json_missing_p_is_parse_error():
    with pytest.raises(SpecParse):
        AnalysisParams.from_json({"s": 0})


def test_admissible_kernel_validation():
    k = validate_admissible_kernel([(1.0, -1.0, 1), (2.0, cmath.exp(0.5j), 2)])
    assert isinstance(k, AdmissibleKernel)
    assert k(np.array([1.0]))[0] == pytest.approx((1 / 2 + 2 / (1 - cmath.exp(0.5j)) ** 2) / math.pi)
    with pytest.raises(PoleOnPositiveAxis):
        validate_admissible_kernel([(1.0, 2.0, 2)])
    with pytest.raises(PoleOnPositiveAxis):
        validate_admissible_kernel([(1.0, 2.0, 1)], lifting=True)
    validate_admissible_kernel([(1.0, 2.0, 1)])  # principal value kernel without lifting
    with pytest.raises(NonpositiveMultiplicity):
        validate_admissible_kernel([(1.0, -1.0, 0)])
    with pytest.raises(DuplicatePole):
        validate_admissible_kernel([(1.0, -1.0, 1), KernelTerm(2.0, -1.0 + 0j, 1)])


def test_partial_fractions_two_poles():
    (d1, c1), (d2, c2) = partial_fraction_reduce([-1.0, -2.0])
    assert d1 == pytest.approx(1.0) and d2 == pytest.approx(-1.0)
    with pytest.raises(DuplicatePole):
        partial_fraction_reduce([1j, 1j])


poles = st.lists(
    st.builds(lambda r, a: r * cmath.exp(1j * a), st.floats(0.3, 3.0), st.floats(0.2, 6.0)),
    min_size=2,
    max_size=6,
).filter(lambda cs: min(abs(a - b) for i, a in enumerate(cs) for b in cs[i + 1:]) > 0.2)


@given(poles, st.floats(0.1, 10.0))
def test_partial_fractions_reconstruct(cs, t):
    pf = partial_fraction_reduce(cs)
    lhs = 1.0 / np.prod([t - c for c in cs])
    rhs = sum(d / (t - c) for d, c in pf)
    scale = max(1.0, max(abs(d / (t - c)) for d, c in pf))
    assert abs(lhs - rhs) <= 1e-12 * scale
    assert abs(sum(d for d, _ in pf)) <= 1e-12 * max(1.0, max(abs(d) for d, _ in pf))


def test_symbol_limits():
    cay = SymbolDescriptor.cayley(1j)
    assert cay.limit_minus_inf() == pytest.approx(1) and cay.limit_plus_inf() == pytest.approx(1)
    assert cay(0.0) == pytest.approx(-1)
    pw = SymbolDescriptor.piecewise(2.0, 5.0)
    assert pw.limit_zero(-1) == 2 and pw.limit_zero(1) == 5
    g = SymbolDescriptor.g_ratio(0.5, -1j, 1j)
    assert g(-np.inf) == pytest.approx(1)
    assert g(np.inf) == pytest.approx(cmath.exp(1j * math.pi))
    assert g(0.0) == pytest.approx(1j)
    with pytest.raises(UnsupportedExprShape):
        SymbolDescriptor.bessel(1.0, 1j, "+")(np.inf)


def test_symbol_analyticity_flags():
    assert SymbolDescriptor.bessel(0.5, -1j, "+").is_analytic("lower")
    assert SymbolDescriptor.bessel(0.5, 1j, "+").is_analytic("upper")
    assert not SymbolDescriptor.piecewise(0, 1).is_analytic("upper")


@given(st.floats(-3, 3), st.floats(0.1, 3.0), st.floats(0.1, 3.0))
def test_symbol_json_roundtrip(s, a, b):
    sym = SymbolDescriptor.product(
        SymbolDescriptor.g_ratio(s, -a * 1j, b * 1j), SymbolDescriptor.rational([1, a], [1, b * 1j])
    )
    back = SymbolDescriptor.from_json(json.loads(json.dumps(sym.to_json())))
    xi = np.linspace(-4, 4, 9)
    assert np.allclose(back(xi), sym(xi))


def test_unknown_family_is_parse_error():
    with pytest.raises(SpecParse):
        SymbolDescriptor.from_json({"family": "spline", "params": {}})


def _sample_expr():
    return Sum(
        (
            Identity(2.0),
            FourierConv(SymbolDescriptor.cayley(1j)),
            MellinK(1, -1.0, 0.5),
            Sandwich(SymbolDescriptor.bessel(0.2, -1j, "+"), MellinK(2, 1j), SymbolDescriptor.bessel(-0.2, 1j, "+")),
        )
    )


def test_operator_json_roundtrip_and_hash():
    e = _sample_expr()
    back = operator_from_json(json.loads(canonical_json(e.to_json())))
    assert back == e
    assert expr_hash(back) == expr_hash(e)
    m = OperatorMatrix(((e, Sum((Identity(),))), (Sum((Identity(),)), e)))
    assert operator_from_json(json.loads(canonical_json(m.to_json()))) == m
    assert expr_hash(m) != expr_hash(e)


@pytest.mark.parametrize(
    "doc",
    [
        {},
        {"terms": []},
        {"terms": [{"kind": "mystery"}]},
        {"terms": [{"kind": "mellinK", "m": 1}]},
        {"terms": [[[{"kind": "identity"}]], [[{"kind": "identity"}], [{"kind": "identity"}]]]},
    ],
)
def test_operator_parse_errors(doc):
    with pytest.raises(SpecParse):
        operator_from_json(doc)


def test_mellin_k_orders():
    with pytest.raises(UnsupportedExprShape):
        MellinK(3, -1.0)


def test_rectangle_path_orientation():
    pts = rectangle_path(16)
    assert len(pts) == 64
    assert [p.segment for p in pts[::16]] == list(SEGMENTS)
    assert segment_endpoints("Gamma1") == (math.inf, -math.inf)
    assert segment_endpoints("Gamma2plus") == (math.inf, 0.0)
    assert segment_endpoints("Gamma3") == (-math.inf, math.inf)
    assert segment_endpoints("Gamma2minus") == (0.0, math.inf)
    us = [p.u for p in pts]
    assert all(b > a for a, b in zip(us, us[1:]))
    with pytest.raises(InvalidParams):
        rectangle_path(8)


def test_grid_is_symmetric_and_log_grid_matches():
    g = GridSpec(8.0, 64, "uniform")
    assert np.allclose(g.x, -g.x[::-1])
    lg = g.matching()
    assert lg.kind == "log" and np.allclose(np.log(lg.nodes), g.x)


def test_sampled_function_csv_uses_full_precision():
    g = GridSpec(1.0, 16, "uniform")
    f = SampledFunction.from_callable(g, lambda x: np.exp(1j * x) / 3)
    text = f.to_csv()
    assert "\r" not in text
    row = text.splitlines()[1].split(",")
    assert len(row[1]) >= 15
