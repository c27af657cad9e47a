"""Log-substitution maps, FFT multipliers, Mellin transforms and branch-tracked powers.

Fourier convention: F phi(xi) = int exp(i xi x) phi(x) dx and
F^{-1} psi(x) = (1/2pi) int exp(-i xi x) psi(xi) dxi.  With this convention
the multiplier xi corresponds to i d/dx.
"""

from __future__ import annotations

import math

import numpy as np

from ._accel import njit, prange, use_numba
from .core import AdmissibleKernel, GridSpec, SampledFunction, SymbolDescriptor, principal_arg
from .errors import (
    BadGammaArg,
    EdgeLeakage,
    GridMismatch,
    GridTooCoarse,
    NonintegrableKernel,
    PhaseJump,
    ZeroBase,
)

MultiplierSpec = SymbolDescriptor

EDGE_FRACTION = 0.05
EDGE_TOL = 1e-10


# ---------------------------------------------------------------------------
# Z_beta
# ---------------------------------------------------------------------------

def z_beta_forward(f: SampledFunction, beta: float) -> SampledFunction:
    """(Z_beta f)(xi) = exp(-beta xi) f(exp(-xi)) on the matching uniform grid."""
    if f.grid.kind != "log":
        raise GridMismatch("z_beta_forward expects a log-grid function")
    t = f.grid.nodes
    # xi = -ln t runs backwards through the symmetric grid
    vals = (t ** beta * f.values)[::-1]
    return SampledFunction(f.grid.matching(), vals)


def z_beta_inverse(g: SampledFunction, beta: float) -> SampledFunction:
    """(Z_beta^{-1} g)(t) = t^(-beta) g(-ln t) on the matching log grid."""
    if g.grid.kind != "uniform":
        raise GridMismatch("z_beta_inverse expects a uniform-grid function")
    lg = g.grid.matching()
    t = lg.nodes
    return SampledFunction(lg, t ** (-beta) * g.values[::-1])


# ---------------------------------------------------------------------------
# Fourier multipliers
# ---------------------------------------------------------------------------

def fft_frequencies(grid: GridSpec) -> np.ndarray:
    """Angular frequencies in FFT order for the uniform grid."""
    return 2.0 * math.pi * np.fft.fftfreq(grid.N, d=grid.h)


def edge_mass(values: np.ndarray, fraction: float = EDGE_FRACTION) -> float:
    a = np.abs(values)
    total = a.sum()
    if total == 0:
        return 0.0
    k = max(1, int(round(fraction * len(a))))
    return float((a[:k].sum() + a[-k:].sum()) / total)


def _check_edges(values: np.ndarray, tol: float):
    m = edge_mass(values)
    if m > tol:
        raise EdgeLeakage(f"relative mass {m:.3e} in the outer {EDGE_FRACTION:.0%} of the grid exceeds {tol:.1e}")


def _multiplier_values(m, xi: np.ndarray) -> np.ndarray:
    if isinstance(m, SymbolDescriptor):
        return np.asarray(m(xi), dtype=complex)
    if callable(m):
        return np.asarray(m(xi), dtype=complex)
    arr = np.asarray(m, dtype=complex)
    if arr.shape != xi.shape:
        raise GridMismatch("multiplier array does not match the frequency grid")
    return arr


def apply_fourier_multiplier(
    m,
    f: SampledFunction,
    restrict: bool = False,
    check_edges: bool = True,
    edge_tol: float = EDGE_TOL,
) -> SampledFunction:
    """W^0_m f = F^{-1} m F f on the periodic grid.

    With ``restrict`` the input is extended by zero from the half-line and the
    output is restricted to x > 0, i.e. the Wiener-Hopf operator W_m.
    """
    if f.grid.kind != "uniform":
        raise GridMismatch("apply_fourier_multiplier expects a uniform-grid function")
    vals = f.values
    x = f.grid.x
    if restrict:
        vals = np.where(x > 0, vals, 0.0)
    if check_edges:
        _check_edges(vals, edge_tol)
    xi = fft_frequencies(f.grid)
    # with F using exp(+i xi x), F ~ N*ifft and F^{-1} ~ fft/N; the offset phases cancel
    out = np.fft.fft(_multiplier_values(m, xi) * np.fft.ifft(vals))
    if restrict:
        out = np.where(x > 0, out, 0.0)
    return SampledFunction(f.grid, out)


def apply_mellin_multiplier(
    a, f: SampledFunction, beta: float, check_edges: bool = True, edge_tol: float = EDGE_TOL
) -> SampledFunction:
    """Mellin convolution with symbol a: Z_beta^{-1} W^0_a Z_beta f."""
    g = z_beta_forward(f, beta)
    return z_beta_inverse(apply_fourier_multiplier(a, g, check_edges=check_edges, edge_tol=edge_tol), beta)


# ---------------------------------------------------------------------------
# Mellin transform
# ---------------------------------------------------------------------------

@njit(cache=True, parallel=True)
def _dft_numba(x, vals, xi, h):
    out = np.empty(xi.shape[0], dtype=np.complex128)
    for j in prange(xi.shape[0]):
        acc = 0.0 + 0.0j
        w = xi[j]
        for k in range(x.shape[0]):
            acc += vals[k] * complex(math.cos(w * x[k]), math.sin(w * x[k]))
        out[j] = acc * h
    return out


def _dft_numpy(x, vals, xi, h, chunk=64):
    out = np.empty(xi.shape[0], dtype=complex)
    for i in range(0, len(xi), chunk):
        w = xi[i:i + chunk, None]
        out[i:i + chunk] = h * (np.exp(1j * w * x[None, :]) @ vals)
    return out


def fourier_transform_at(f: SampledFunction, xi) -> np.ndarray:
    """Trapezoidal F f(xi) = h sum exp(i xi x_k) f_k at arbitrary frequencies."""
    xi = np.ascontiguousarray(np.atleast_1d(np.asarray(xi, dtype=float)))
    x = np.ascontiguousarray(f.grid.x)
    vals = np.ascontiguousarray(f.values)
    if use_numba():
        return _dft_numba(x, vals, xi, f.grid.h)
    return _dft_numpy(x, vals, xi, f.grid.h)


def mellin_transform_numeric(kernel, beta: float, xi=None, grid: GridSpec | None = None, edge_tol: float = 1e-12):
    """M_beta K(xi) = int_0^inf t^(beta - i xi) K(t) dt/t via Z_beta and a Fourier sum.

    ``kernel`` is an ``AdmissibleKernel`` (sampled on ``grid``) or a
    log-grid ``SampledFunction``.  With ``xi=None`` the FFT frequency grid is
    used and ``(xi, values)`` is returned in increasing order; otherwise the
    values at the requested frequencies are returned.
    """
    if not (0.0 < beta < 1.0):
        raise NonintegrableKernel(f"beta must lie in (0, 1), got {beta}")
    if isinstance(kernel, AdmissibleKernel):
        g = grid or GridSpec(64.0, 2 ** 14, "uniform")
        if g.kind != "uniform":
            g = g.matching()
        x = g.x
        zf = SampledFunction(g, np.exp(-beta * x) * kernel(np.exp(-x)))
    elif isinstance(kernel, SampledFunction):
        zf = z_beta_forward(kernel, beta)
    else:
        raise TypeError("kernel must be an AdmissibleKernel or a log-grid SampledFunction")
    if edge_mass(zf.values, 0.01) > edge_tol:
        raise NonintegrableKernel("kernel times t^beta does not decay at the grid edges")
    nyq = math.pi / zf.grid.h
    if xi is None:
        freqs = fft_frequencies(zf.grid)
        vals = zf.grid.h * zf.grid.N * np.fft.ifft(zf.values) * np.exp(1j * freqs * zf.grid.x[0])
        order = np.argsort(freqs)
        return freqs[order], vals[order]
    xi = np.asarray(xi, dtype=float)
    if np.max(np.abs(xi)) > 0.5 * nyq:
        raise GridTooCoarse(f"|xi| up to {np.max(np.abs(xi)):.3g} exceeds half the Nyquist frequency {nyq:.3g}")
    return fourier_transform_at(zf, xi)


# ---------------------------------------------------------------------------
# Bessel potentials and unwrapped powers
# ---------------------------------------------------------------------------

def bessel_potential_multiplier(s: float, gamma: complex, sign: str) -> SymbolDescriptor:
    """lambda^s_{+-gamma}(xi) = (xi +- gamma)^s with the principal logarithm.

    Since Im gamma > 0 the base stays in one half-plane and the branch is
    continuous on the real line.
    """
    g = complex(gamma)
    if g == 0 or not (0.0 < principal_arg(g) < math.pi):
        raise BadGammaArg(f"need 0 < arg gamma < pi, got {g}")
    return SymbolDescriptor.bessel(s, g, sign)


def complex_power_unwrapped(base, s: float, jump_tol: float = math.pi / 2) -> np.ndarray:
    """base**s with the argument continued along the ordered samples.

    The argument starts at the principal value of the first sample.
    """
    b = np.asarray(base, dtype=complex)
    if np.any(b == 0):
        raise ZeroBase("base vanishes on the path")
    ang = np.angle(b)
    d = np.diff(ang)
    d = (d + math.pi) % (2 * math.pi) - math.pi
    if np.any(np.abs(d) >= jump_tol):
        raise PhaseJump("consecutive samples differ in argument by at least pi/2; refine the path")
    arg = np.concatenate([[ang[0]], ang[0] + np.cumsum(d)])
    return np.exp(s * (np.log(np.abs(b)) + 1j * arg))
