"""Closed-form Mellin symbols, direct quadrature for K^1_c and K^2_c, the complex
upper incomplete gamma function and the incomplete-gamma oracles for the
lifted operator Lambda^s_{-gamma} K^1_c.

Normalization: K^m_c phi(t) = (1/pi) int_0^inf tau^(m-1) phi(tau) / (t - c tau)^m dtau.
"""

from __future__ import annotations

import cmath
import math

import numpy as np

from ._accel import njit, prange, use_numba
from .core import NORMALIZATION, PI, GridSpec, SampledFunction, principal_arg
from .errors import ArgCOnAxis, BranchCut, GridMismatch, PoleHit, PVNotRequested, SOutOfRange

__all__ = [
    "NORMALIZATION",
    "PowerConvention",
    "sigma_S",
    "sigma_Km",
    "apply_K1_direct",
    "apply_K2_direct",
    "upper_incomplete_gamma",
    "scaled_upper_incomplete_gamma",
    "complex_gamma",
    "lifted_K1_lhs_oracle",
    "lifted_K1_rhs_oracle",
]


# ---------------------------------------------------------------------------
# power conventions
# ---------------------------------------------------------------------------

class PowerConvention:
    """Branch choices for powers of the pole c.

    ``principal``  |c|^z e^{iz arg c} with arg c in (-pi, pi]
    ``theorem``    arg c in (0, 2pi); the constant in
                   Lambda^s_{-gamma} K^1_c = c^{-s} K^1_c Lambda^s_{-c gamma}
                   when both Bessel potentials use the principal logarithm
    ``symbol``     arg c in [-2pi, 0); the same constant times e^{2 pi i s},
                   i.e. relative to the identity symbol normalized to 1 at
                   xi = -inf on Gamma1
    ``neg``        (-c)^z with the principal branch of -c

    For a negative real c, ``theorem`` gives |c|^{-s} e^{-i pi s} and
    ``symbol`` gives |c|^{-s} e^{i pi s}.
    """

    @staticmethod
    def _pow(c: complex, z, arg: float):
        return np.exp(np.asarray(z) * (math.log(abs(complex(c))) + 1j * arg))

    @staticmethod
    def principal(c: complex, z):
        return PowerConvention._pow(c, z, principal_arg(c))

    @staticmethod
    def theorem(c: complex, z):
        a = principal_arg(c)
        return PowerConvention._pow(c, z, a if a > 0 else a + 2 * PI)

    @staticmethod
    def symbol(c: complex, z):
        a = principal_arg(c)
        return PowerConvention._pow(c, z, a if a < 0 else a - 2 * PI)

    @staticmethod
    def neg(c: complex, z):
        return PowerConvention.principal(-complex(c), z)


# ---------------------------------------------------------------------------
# closed-form Mellin symbols
# ---------------------------------------------------------------------------

def _check_beta(beta: float):
    if not (0.0 < beta < 1.0):
        raise PoleHit(f"beta must lie in (0, 1), got {beta}")


def sigma_S(beta: float, xi):
    """Mellin symbol of the Cauchy singular integral on the half-line: -i cot pi(beta - i xi)."""
    _check_beta(beta)
    xi = np.asarray(xi, dtype=float)
    z = beta - 1j * xi
    with np.errstate(over="ignore", invalid="ignore"):
        # cot w = i (1 + e^{-2iw})/(1 - e^{-2iw}) for xi >= 0, the mirrored form otherwise
        pos = np.exp(-2j * PI * z)
        neg = np.exp(2j * PI * z)
        cot = np.where(xi >= 0, 1j * (1 + pos) / (1 - pos), 1j * (neg + 1) / (neg - 1))
    out = -1j * cot
    return out[()] if out.ndim == 0 else out


def _binom_shifted(theta, m: int):
    """binom(theta - 1, m - 1) = prod_{k=1}^{m-1} (theta - k) / (m-1)!."""
    out = np.ones_like(theta, dtype=complex)
    for k in range(1, m):
        out = out * (theta - k) / k
    return out


def sigma_Km(m: int, c: complex, beta: float, xi):
    """Mellin symbol of K^m_c (1/pi normalization).

    For 0 < +-arg c < pi the symbol is
    -binom(z-1, m-1) e^{-+ pi z i} c^{z-m} / sin(pi z),  z = beta - i xi,
    with arg c taken in (0, pi) resp. (-pi, 0); a negative real c uses the
    upper branch (both branches agree there).  For m = 1 this equals
    (-c)^{z-1}/sin(pi z).
    """
    _check_beta(beta)
    m = int(m)
    if m < 1:
        raise ValueError("m must be >= 1")
    c = complex(c)
    a = principal_arg(c)
    if a == 0.0:
        raise ArgCOnAxis("arg c = 0: K^m_c has a non-integrable singularity on the diagonal")
    xi = np.asarray(xi, dtype=float)
    z = beta - 1j * xi
    sign = 1.0 if a > 0 else -1.0
    logc = math.log(abs(c)) + 1j * a
    # 1/sin(pi z) written with the decaying exponential on each side of xi = 0
    with np.errstate(over="ignore", invalid="ignore"):
        expo = -sign * PI * 1j * z + (z - m) * logc
        pos = 2j * np.exp(-1j * PI * z + expo) / (1 - np.exp(-2j * PI * z))
        neg = -2j * np.exp(1j * PI * z + expo) / (1 - np.exp(2j * PI * z))
        core = np.where(xi >= 0, pos, neg)
    out = -_binom_shifted(z, m) * core
    return out[()] if out.ndim == 0 else out


# ---------------------------------------------------------------------------
# direct quadrature
# ---------------------------------------------------------------------------

@njit(cache=True, parallel=True)
def _kernel_sum_numba(t, tau, w, c, m, skip):
    out = np.empty(t.shape[0], dtype=np.complex128)
    for i in prange(t.shape[0]):
        acc = 0.0 + 0.0j
        ti = t[i]
        sk = skip[i]
        for j in range(tau.shape[0]):
            if j == sk:
                continue
            d = ti - c * tau[j]
            if m == 1:
                acc += w[j] / d
            else:
                acc += w[j] * tau[j] / (d * d)
        out[i] = acc
    return out


def _kernel_sum_numpy(t, tau, w, c, m, skip, chunk=256):
    out = np.empty(t.shape[0], dtype=complex)
    cols = np.arange(tau.shape[0])
    for i in range(0, t.shape[0], chunk):
        d = t[i:i + chunk, None] - c * tau[None, :]
        mask = cols[None, :] == skip[i:i + chunk, None]
        d = np.where(mask, 1.0, d)
        if m == 1:
            k = w[None, :] / d
        else:
            k = w[None, :] * tau[None, :] / (d * d)
        k = np.where(mask, 0.0, k)
        out[i:i + chunk] = k.sum(axis=1)
    return out


def _kernel_sum(t, tau, w, c, m, skip=None):
    t = np.ascontiguousarray(t, dtype=float)
    tau = np.ascontiguousarray(tau, dtype=float)
    w = np.ascontiguousarray(w, dtype=complex)
    if skip is None:
        skip = np.full(t.shape[0], -1, dtype=np.int64)
    skip = np.ascontiguousarray(skip, dtype=np.int64)
    if use_numba():
        return _kernel_sum_numba(t, tau, w, complex(c), int(m), skip)
    return _kernel_sum_numpy(t, tau, w, complex(c), int(m), skip)


def _fft_upsample(v: np.ndarray, r: int) -> np.ndarray:
    """Trigonometric interpolation onto a grid r times finer, starting at the first node."""
    n = v.shape[0]
    if r == 1:
        return v
    V = np.fft.fft(v)
    W = np.zeros(n * r, dtype=complex)
    half = n // 2
    W[:half] = V[:half]
    W[-half + 1:] = V[-half + 1:]
    # split the Nyquist bin
    W[half] = 0.5 * V[half]
    W[-half] = 0.5 * V[half]
    return np.fft.ifft(W) * r


def _upsample_factor(distance: float, h: float, target: float = 36.0, cap: int = 64) -> int:
    r = 1
    while 2.0 * PI * distance * r / h < target and r < cap:
        r *= 2
    return r


def _quadrature_nodes(f: SampledFunction, pole_distance_log: float | None):
    """Nodes tau_j and weights w_j ~ dtau * f(tau_j), refined when the pole nears the axis."""
    g = f.grid
    if g.kind == "log":
        y = g.x
        h = g.h
        r = 1 if pole_distance_log is None else _upsample_factor(pole_distance_log, h)
        # integrate in y with dtau = tau dy; tau f(tau) decays at both ends of the log grid
        wy = f.values * f.nodes
        if r > 1:
            wy = _fft_upsample(wy, r)
            h = h / r
            y = y[0] + h * np.arange(wy.shape[0])
        tau, w = np.exp(y), h * wy
    else:
        pos = g.x > 0
        tau, w = g.x[pos], g.h * f.values[pos]
    # nodes outside the support add nothing and may sit on the pole t = c tau
    keep = w != 0
    return tau[keep], w[keep]


def _output_points(f: SampledFunction, t, extend: bool):
    if t is not None:
        return np.atleast_1d(np.asarray(t, dtype=float)), None
    if f.grid.kind == "log" or extend:
        return f.grid.nodes, None
    mask = f.grid.x > 0
    return f.grid.x[mask], mask


def _wrap(f: SampledFunction, vals, t, mask):
    if t is not None:
        return vals
    if mask is None:
        return SampledFunction(f.grid, vals)
    out = np.zeros(f.grid.N, dtype=complex)
    out[mask] = vals
    return SampledFunction(f.grid, out)


def apply_K1_direct(c: complex, f: SampledFunction, pv: bool = False, t=None, extend: bool = False):
    """(1/pi) int_0^inf f(tau)/(t - c tau) dtau by the trapezoidal rule.

    On a log grid the sum runs in y = ln tau, and the samples are refined by
    trigonometric interpolation when arg c is small.  A positive real c needs
    ``pv=True``: the principal value is formed by dropping the node at the
    pole and extrapolating from steps h and 2h (log grid only).  On a uniform
    grid only tau > 0 contributes; outputs at t <= 0 are zero unless
    ``extend`` is set.  With ``t`` given, an array of values is returned.
    """
    c = complex(c)
    a = principal_arg(c)
    if a == 0.0:
        if not pv:
            raise PVNotRequested("c is real positive; request principal-value mode")
        return _wrap(f, *_pv_K1(c, f, t))
    tt, mask = _output_points(f, t, extend)
    tau, w = _quadrature_nodes(f, abs(a))
    vals = NORMALIZATION * _kernel_sum(tt, tau, w, c, 1)
    return _wrap(f, vals, t, mask)


def _pv_K1(c: complex, f: SampledFunction, t):
    g = f.grid
    if g.kind != "log":
        raise GridMismatch("principal-value mode needs a log grid")
    if t is not None:
        raise GridMismatch("principal-value mode evaluates on the grid nodes only")
    shift = math.log(c.real) / g.h
    k = int(round(shift))
    if abs(shift - k) > 1e-9:
        raise GridMismatch("ln c must be a multiple of the grid step for principal-value mode")
    tau = f.nodes
    w = g.h * f.values * tau
    idx = np.arange(g.N)
    skip = idx - k
    skip = np.where((skip >= 0) & (skip < g.N), skip, -1)
    s_h = _kernel_sum(tau, tau, w, c, 1, skip)
    # step 2h: only nodes of the same parity as the excluded one
    s_2h = np.empty(g.N, dtype=complex)
    j0 = idx - k
    for parity in (0, 1):
        rows = np.nonzero(j0 % 2 == parity)[0]
        sel = idx[parity::2]
        sub_skip = np.where(skip[rows] >= 0, (skip[rows] - parity) // 2, -1)
        s_2h[rows] = _kernel_sum(tau[rows], tau[sel], 2.0 * w[sel], c, 1, sub_skip)
    # the punctured rule has an O(h) error term -2h G'(y0); 2 S_h - S_2h removes it
    vals = NORMALIZATION * (2.0 * s_h - s_2h)
    return vals, None, None


def apply_K2_direct(c: complex, f: SampledFunction, t=None, extend: bool = False):
    """(1/pi) int_0^inf tau f(tau)/(t - c tau)^2 dtau by the trapezoidal rule."""
    c = complex(c)
    a = principal_arg(c)
    if a == 0.0:
        raise ArgCOnAxis("K^2_c needs arg c != 0")
    tt, mask = _output_points(f, t, extend)
    tau, w = _quadrature_nodes(f, abs(a))
    vals = NORMALIZATION * _kernel_sum(tt, tau, w, c, 2)
    return _wrap(f, vals, t, mask)


# ---------------------------------------------------------------------------
# complex gamma and upper incomplete gamma
# ---------------------------------------------------------------------------

_LANCZOS_G = 7.0
_LANCZOS = np.array([
    0.99999999999980993,
    676.5203681218851,
    -1259.1392167224028,
    771.32342877765313,
    -176.61502916214059,
    12.507343278686905,
    -0.13857109526572012,
    9.9843695780195716e-6,
    1.5056327351493116e-7,
])
_EULER = 0.57721566490153286061
_EPS = 1e-16
_MAXIT = 5000


@njit(cache=True)
def _gamma_scalar(z):
    z = complex(z)
    if z.real < 0.5:
        return PI / (cmath.sin(PI * z) * _gamma_scalar(1.0 - z))
    z = z - 1.0
    x = _LANCZOS[0] + 0j
    for i in range(1, 9):
        x += _LANCZOS[i] / (z + i)
    t = z + _LANCZOS_G + 0.5
    return math.sqrt(2 * PI) * cmath.exp((z + 0.5) * cmath.log(t) - t) * x


@njit(cache=True)
def _is_nonpos_int(a):
    return a.imag == 0.0 and a.real <= 0.0 and a.real == math.floor(a.real)


@njit(cache=True)
def _scaled_series(a, z):
    # e^z Gamma(a, z) = e^z Gamma(a) - z^a sum_n z^n / (a (a+1) ... (a+n))
    term = 1.0 / a
    acc = term
    n = 0
    while n < _MAXIT:
        n += 1
        term = term * z / (a + n)
        acc += term
        if abs(term) < _EPS * abs(acc):
            break
    return cmath.exp(z) * _gamma_scalar(a) - cmath.exp(a * cmath.log(z)) * acc


@njit(cache=True)
def _scaled_cf(a, z):
    # modified Lentz for Gamma(a, z) = e^{-z} z^a / (z + 1 - a - 1(1-a)/(z + 3 - a - ...))
    tiny = 1e-300
    b = z + 1.0 - a
    cc = 1.0 / tiny + 0j
    d = 1.0 / b
    h = d
    for i in range(1, _MAXIT):
        an = -i * (i - a)
        b = b + 2.0
        d = an * d + b
        if abs(d) < tiny:
            d = tiny + 0j
        cc = b + an / cc
        if abs(cc) < tiny:
            cc = tiny + 0j
        d = 1.0 / d
        delta = d * cc
        h = h * delta
        if abs(delta - 1.0) < _EPS:
            break
    return cmath.exp(a * cmath.log(z)) * h


@njit(cache=True)
def _scaled_e1_series(z):
    # e^z E_1(z) with E_1(z) = -gamma - ln z - sum_k (-z)^k / (k k!)
    acc = 0j
    term = 1.0 + 0j
    k = 0
    while k < _MAXIT:
        k += 1
        term = term * (-z) / k
        add = term / k
        acc += add
        if abs(add) < _EPS * max(abs(acc), 1.0):
            break
    return cmath.exp(z) * (-_EULER - cmath.log(z) - acc)


# Lentz converges slowly next to the negative real axis, where the series wins
# up to |z| ~ 16; in the strip |Im z| < 0.6, 14 < |z| < 21 both lose up to ~1e-8
CF_MIN_ABS = 1.5
CF_STRIP_IM = 0.6
CF_STRIP_ABS = 16.0


@njit(cache=True)
def _use_cf(z):
    r = abs(z)
    if r < CF_MIN_ABS:
        return False
    if z.real < 0.0 and abs(z.imag) < CF_STRIP_IM and r < CF_STRIP_ABS:
        return False
    return True


@njit(cache=True)
def _scaled_uigamma_scalar(a, z):
    """e^z Gamma(a, z); z must avoid the cut unless a is a positive integer."""
    a = complex(a)
    z = complex(z)
    if a.imag == 0.0 and a.real > 0.0 and a.real == math.floor(a.real) and a.real < 60:
        # Gamma(n, z) = (n-1)! e^{-z} sum_{k<n} z^k / k!
        n = int(a.real)
        acc = 0j
        term = 1.0 + 0j
        for k in range(n):
            if k > 0:
                term = term * z / k
            acc += term
        return math.gamma(n) * acc
    if _is_nonpos_int(a):
        # upward-free recurrence from Gamma(0, z): Gamma(a, z) = (Gamma(a+1, z) - z^a e^{-z}) / a
        if _use_cf(z):
            return _scaled_cf(a, z)
        val = _scaled_e1_series(z)
        k = 0.0
        while k > a.real:
            k -= 1.0
            val = (val - cmath.exp(k * cmath.log(z))) / k
        return val
    if _use_cf(z):
        return _scaled_cf(a, z)
    return _scaled_series(a, z)


@njit(cache=True, parallel=True)
def _scaled_uigamma_numba(a, z):
    out = np.empty(z.shape[0], dtype=np.complex128)
    for i in prange(z.shape[0]):
        out[i] = _scaled_uigamma_scalar(a, z[i])
    return out


def _scaled_uigamma_numpy(a: complex, z: np.ndarray) -> np.ndarray:
    """Vectorized e^z Gamma(a, z) for non-integer a (series / Lentz by mask)."""
    z = np.asarray(z, dtype=complex)
    out = np.empty_like(z)
    r = np.abs(z)
    cf = (r >= CF_MIN_ABS) & ~((z.real < 0) & (np.abs(z.imag) < CF_STRIP_IM) & (r < CF_STRIP_ABS))
    if cf.any():
        zc = z[cf]
        tiny = 1e-300
        b = zc + 1.0 - a
        cc = np.full_like(zc, 1.0 / tiny)
        d = 1.0 / b
        h = d.copy()
        active = np.ones(zc.shape, dtype=bool)
        for i in range(1, _MAXIT):
            an = -i * (i - a)
            b = b + 2.0
            d = an * d + b
            d = np.where(np.abs(d) < tiny, tiny, d)
            cc = b + an / cc
            cc = np.where(np.abs(cc) < tiny, tiny, cc)
            d = 1.0 / d
            delta = d * cc
            h = np.where(active, h * delta, h)
            active &= np.abs(delta - 1.0) >= _EPS
            if not active.any():
                break
        out[cf] = np.exp(a * np.log(zc)) * h
    ser = ~cf
    if ser.any():
        zs = z[ser]
        term = np.full_like(zs, 1.0 / a)
        acc = term.copy()
        active = np.ones(zs.shape, dtype=bool)
        n = 0
        while active.any() and n < _MAXIT:
            n += 1
            term = term * zs / (a + n)
            acc = np.where(active, acc + term, acc)
            active &= np.abs(term) >= _EPS * np.abs(acc)
        out[ser] = np.exp(zs) * complex(_gamma_scalar(a)) - np.exp(a * np.log(zs)) * acc
    return out


def _check_cut(a: complex, z: np.ndarray):
    a = complex(a)
    if a.imag == 0 and a.real > 0 and float(a.real).is_integer():
        return
    on_cut = (z.imag == 0) & (z.real <= 0)
    if np.any(on_cut):
        raise BranchCut("z on the closed negative real axis for non-integer a")


def scaled_upper_incomplete_gamma(a: complex, z):
    """e^z Gamma(a, z), finite for large |z| where Gamma(a, z) itself under/overflows."""
    a = complex(a)
    zz = np.atleast_1d(np.asarray(z, dtype=complex))
    _check_cut(a, zz)
    flat = np.ascontiguousarray(zz.ravel())
    integer_like = a.imag == 0 and float(a.real).is_integer()
    if use_numba():
        out = _scaled_uigamma_numba(a, flat)
    elif integer_like:
        out = np.array([_scaled_uigamma_scalar(a, v) for v in flat], dtype=complex)
    else:
        out = _scaled_uigamma_numpy(a, flat)
    out = out.reshape(zz.shape)
    return out[0] if np.ndim(z) == 0 else out


def upper_incomplete_gamma(a: complex, z):
    """Gamma(a, z) = int_z^inf t^(a-1) e^(-t) dt, principal branch.

    ``z = 0`` returns Gamma(a) for Re a > 0.
    """
    a = complex(a)
    zz = np.atleast_1d(np.asarray(z, dtype=complex))
    out = np.empty(zz.shape, dtype=complex)
    zero = zz == 0
    if zero.any():
        if a.real <= 0:
            raise BranchCut("Gamma(a, 0) diverges for Re a <= 0")
        out[zero] = complex_gamma(a)
    nz = ~zero
    if nz.any():
        out[nz] = np.exp(-zz[nz]) * scaled_upper_incomplete_gamma(a, zz[nz])
    return out[0] if np.ndim(z) == 0 else out


def complex_gamma(a: complex) -> complex:
    """Gamma(a) by the Lanczos approximation (g = 7, 9 terms)."""
    a = complex(a)
    if _is_nonpos_int(a):
        raise PoleHit(f"Gamma has a pole at {a}")
    return complex(_gamma_scalar(a))


# ---------------------------------------------------------------------------
# incomplete-gamma oracles for Lambda^s_{-gamma} K^1_c
# ---------------------------------------------------------------------------

def _lifted_integral(s: float, gamma: complex, c: complex, f: SampledFunction, t, chunk: int = 128):
    """int_0^inf e^{-i gamma (t - c tau)} Gamma(1+s, -i gamma (t - c tau)) f(tau) (t - c tau)^{-1-s} dtau."""
    if not (-1.0 < s < 0.0):
        raise SOutOfRange(f"the incomplete-gamma representation needs -1 < s < 0, got {s}")
    gamma = complex(gamma)
    c = complex(c)
    tau, w = _quadrature_nodes(f, abs(principal_arg(c)) if principal_arg(c) != 0 else None)
    t = np.atleast_1d(np.asarray(t, dtype=float))
    out = np.zeros(t.shape[0], dtype=complex)
    if tau.size == 0:
        return out
    a = 1.0 + s
    for i in range(0, t.shape[0], chunk):
        d = t[i:i + chunk, None] - c * tau[None, :]
        if np.any(d == 0):
            raise PoleHit("t - c tau vanishes at a quadrature node")
        zarg = -1j * gamma * d
        e = scaled_upper_incomplete_gamma(a, zarg)
        out[i:i + chunk] = (e * np.exp((-1.0 - s) * np.log(d)) * w[None, :]).sum(axis=1)
    return out


def _oracle_points(f: SampledFunction, t):
    if t is not None:
        return np.atleast_1d(np.asarray(t, dtype=float)), None
    if f.grid.kind == "log":
        return f.grid.nodes, None
    mask = f.grid.x > 0
    return f.grid.x[mask], mask


def lifted_K1_lhs_oracle(s: float, gamma: complex, c: complex, f: SampledFunction, t=None):
    """Lambda^s_{-gamma} K^1_c f written with the incomplete gamma function, -1 < s < 0.

    (e^{-pi s i/2}/pi) int_0^inf e^{-i gamma (t - c tau)} Gamma(1+s, -i gamma (t - c tau))
    f(tau) (t - c tau)^{-1-s} dtau, evaluated for t > 0.
    """
    tt, mask = _oracle_points(f, t)
    vals = cmath.exp(-0.5j * PI * s) / PI * _lifted_integral(s, gamma, c, f, tt)
    return _wrap(f, vals, t, mask)


def lifted_K1_rhs_oracle(s: float, gamma: complex, c: complex, f: SampledFunction, t=None):
    """K^1_c Lambda^s_{-c gamma} f in closed form: c^s times the left-hand oracle.

    c^s uses arg c in (0, 2pi), so a negative real c gives |c|^s e^{i pi s}.
    """
    tt, mask = _oracle_points(f, t)
    pref = complex(PowerConvention.theorem(c, s)) * cmath.exp(-0.5j * PI * s) / PI
    vals = pref * _lifted_integral(s, gamma, c, f, tt)
    return _wrap(f, vals, t, mask)
