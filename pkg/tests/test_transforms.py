import cmath
import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from mfcalc.core import AdmissibleKernel, GridSpec, KernelTerm, SampledFunction, SymbolDescriptor
from mfcalc.errors import BadGammaArg, EdgeLeakage, GridMismatch, GridTooCoarse, NonintegrableKernel, PhaseJump, ZeroBase
from mfcalc.kernels import sigma_Km
from mfcalc.transforms import (
    apply_fourier_multiplier,
    apply_mellin_multiplier,
    bessel_potential_multiplier,
    complex_power_unwrapped,
    edge_mass,
    fourier_transform_at,
    mellin_transform_numeric,
    z_beta_forward,
    z_beta_inverse,
)

UG = GridSpec(40.0, 2 ** 12, "uniform")


def gauss(x):
    return np.exp(-(x - 0.5) ** 2)


@given(st.floats(0.05, 0.95))
def test_z_beta_roundtrip(beta):
    lg = UG.matching()
    f = SampledFunction.from_callable(lg, lambda t: t ** 0.7 * np.exp(-t))
    back = z_beta_inverse(z_beta_forward(f, beta), beta)
    assert np.allclose(back.values, f.values, rtol=1e-13, atol=0)


def test_z_beta_grid_kinds():
    f = SampledFunction.from_callable(UG, gauss)
    with pytest.raises(GridMismatch):
        z_beta_forward(f, 0.5)
    with pytest.raises(GridMismatch):
        z_beta_inverse(SampledFunction.from_callable(UG.matching(), np.sin), 0.5)


def test_multiplier_one_is_identity_and_xi_is_i_derivative():
    f = SampledFunction.from_callable(UG, gauss)
    assert np.allclose(apply_fourier_multiplier(SymbolDescriptor.constant(1), f).values, f.values, atol=1e-14)
    d = apply_fourier_multiplier(lambda xi: xi, f).values
    exact = 1j * (-2 * (UG.x - 0.5)) * gauss(UG.x)
    assert np.max(np.abs(d - exact)) < 1e-10


def test_fourier_transform_of_gaussian():
    f = SampledFunction.from_callable(UG, lambda x: np.exp(-x ** 2 / 2))
    xi = np.array([-2.0, 0.0, 1.5])
    exact = math.sqrt(2 * math.pi) * np.exp(-xi ** 2 / 2)
    assert np.allclose(fourier_transform_at(f, xi), exact, atol=1e-12)


def test_restricted_multiplier_vanishes_off_half_line():
    f = SampledFunction.from_callable(UG, gauss)
    out = apply_fourier_multiplier(SymbolDescriptor.cayley(1j), f, restrict=True)
    assert np.all(out.values[UG.x <= 0] == 0)


def test_edge_leakage_detected():
    f = SampledFunction.from_callable(UG, lambda x: np.ones_like(x))
    assert edge_mass(f.values) > 0.05
    with pytest.raises(EdgeLeakage):
        apply_fourier_multiplier(SymbolDescriptor.constant(1), f)


@pytest.mark.parametrize("c", [-1.0, cmath.exp(0.6j), cmath.exp(-2.0j)])
@pytest.mark.parametrize("m", [1, 2])
def test_mellin_transform_matches_closed_form(c, m):
    k = AdmissibleKernel((KernelTerm(1.0, complex(c), m),))
    xi = np.linspace(-5, 5, 11)
    num = mellin_transform_numeric(k, 0.5, xi, GridSpec(64.0, 2 ** 14, "uniform"))
    assert np.max(np.abs(num - sigma_Km(m, c, 0.5, xi))) < 1e-8


def test_mellin_transform_guards():
    k = AdmissibleKernel((KernelTerm(1.0, -1.0 + 0j, 1),))
    with pytest.raises(NonintegrableKernel):
        mellin_transform_numeric(k, 1.2)
    with pytest.raises(GridTooCoarse):
        mellin_transform_numeric(k, 0.5, [1e4], GridSpec(64.0, 2 ** 10, "uniform"))


def test_mellin_multiplier_constant_is_identity():
    lg = UG.matching()
    f = SampledFunction.from_callable(lg, lambda t: t ** 0.8 * np.exp(-t))
    out = apply_mellin_multiplier(SymbolDescriptor.constant(1), f, 0.5)
    # t^{-beta} amplifies FFT roundoff near t = 0, so compare in the middle of the grid
    mid = np.abs(UG.x) < 10
    assert np.allclose(out.values[mid], f.values[mid], rtol=1e-10, atol=1e-13)


def test_bessel_multiplier_requires_upper_gamma():
    with pytest.raises(BadGammaArg):
        bessel_potential_multiplier(0.5, -1j, "+")
    m = bessel_potential_multiplier(0.5, 1j, "-")
    assert m(0.0) == pytest.approx(cmath.sqrt(-1j))


def test_unwrapped_power_accumulates_phase():
    xi = np.tan(np.pi * (np.linspace(0, 1, 2001)[1:-1] - 0.5))
    base = (xi - 1j) / (xi + 1j)
    vals = complex_power_unwrapped(base, 0.5)
    assert vals[0] == pytest.approx(1, abs=5e-3)
    assert vals[-1] == pytest.approx(-1, abs=5e-3)


def test_unwrapped_power_errors():
    with pytest.raises(ZeroBase):
        complex_power_unwrapped([1, 0, 1], 0.5)
    with pytest.raises(PhaseJump):
        complex_power_unwrapped([1, -1], 0.5)


@given(st.floats(-3, 3), st.floats(0.01, 3.0))
def test_unwrapped_power_matches_principal_near_positive_axis(s, r):
    base = r * np.exp(1j * np.linspace(-1.0, 1.0, 50))
    assert np.allclose(complex_power_unwrapped(base, s), base ** s, rtol=1e-12)
