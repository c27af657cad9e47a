"""Fredholm symbols on the rectangle, in L_p and lifted from Bessel potential spaces.

Segments and orientation (see ``core.rectangle_path``):
Gamma1: xi from +inf to -inf, Gamma2plus: eta from +inf to 0,
Gamma3: xi from -inf to +inf, Gamma2minus: eta from 0 to +inf.

A Fourier factor b enters as its jump fill b_p(inf, xi) on Gamma1, as
b(-eta) on Gamma2plus, b(eta) on Gamma2minus and b_p(0, xi) on Gamma3.  A
Mellin factor (the symbol of K^m_c at beta = (1+w)/p) enters with its
value at xi on Gamma1 and Gamma3 and vanishes on Gamma2.

Lifted symbols are normalized so that the identity symbol equals 1 at the
Gamma1/Gamma2plus corner; the operator Lambda^s_{-gamma} Lambda^{-s}_gamma
itself carries an extra constant e^{-2 pi i s} (see ``verify``).
"""

from __future__ import annotations

import cmath
import json
import math
from dataclasses import dataclass

import numpy as np

from .core import (
    PI,
    SEGMENTS,
    AnalysisParams,
    FourierConv,
    Identity,
    MellinK,
    OperatorMatrix,
    RectanglePoint,
    Sandwich,
    Sum,
    SymbolCurve,
    SymbolDescriptor,
    _segment_coordinate,
    as_matrix,
    expr_hash,
    principal_arg,
    rectangle_path,
)
from .errors import HypothesisViolated, MissingAnalyticityFlags, UnsupportedExprShape
from .kernels import PowerConvention, sigma_Km, sigma_S
from .transforms import complex_power_unwrapped

__all__ = [
    "JumpPair",
    "jump_fill_gp",
    "g_s_ratio",
    "symbol_Lp",
    "ident_sym_lifted",
    "w_syms_lifted",
    "k1_sym_lifted",
    "k2_sym_lifted",
    "angle_jump_fill_forms",
    "assemble_lifted_symbol",
    "segment_symbol",
    "symbol_curve",
    "curve_to_csv",
]


# ---------------------------------------------------------------------------
# jump fills
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class JumpPair:
    """One-sided limits (g(t-0), g(t+0)) or (g(-inf), g(+inf))."""

    left: complex
    right: complex


def cot_pi(beta: float, xi):
    """cot pi(beta - i xi), finite for all real xi including +-inf (limits +-i)."""
    with np.errstate(invalid="ignore", over="ignore"):
        return 1j * sigma_S(beta, xi)


def _fill(left, right, beta: float, xi):
    xi = np.asarray(xi, dtype=float)
    left = np.asarray(left, dtype=complex)
    right = np.asarray(right, dtype=complex)
    out = 0.5 * (right + left) - 0.5j * (right - left) * cot_pi(beta, xi)
    # exact endpoints: the arc degenerates to the one-sided limits
    out = np.where(np.isposinf(xi), right, out)
    out = np.where(np.isneginf(xi), left, out)
    return out


def jump_fill_gp(pair: JumpPair, p: float, xi):
    """(left + right)/2 - (i/2)(right - left) cot pi(1/p - i xi)."""
    out = _fill(pair.left, pair.right, 1.0 / float(p), xi)
    return out[()] if np.ndim(out) == 0 else out


# ---------------------------------------------------------------------------
# g ratios
# ---------------------------------------------------------------------------

def g_s_ratio(s: float, num_shift: complex, den_shift: complex, xi_path, lead_in: int = 512):
    """((xi + num_shift)/(xi + den_shift))^s continued along the ordered path.

    The argument is anchored at 0 at xi = -inf: a lead-in path from -inf to
    the first sample is prepended before unwrapping and removed afterwards.
    Infinite path entries are allowed; the ratio there is 1.
    """
    a = complex(num_shift)
    b = complex(den_shift)
    if a.imag == 0 or b.imag == 0:
        raise UnsupportedExprShape("g ratio shifts must lie off the real axis")
    xi = np.atleast_1d(np.asarray(xi_path, dtype=float))
    if s == 0:
        return np.ones(xi.shape, dtype=complex)

    def ratio(x):
        out = np.ones(x.shape, dtype=complex)
        fin = np.isfinite(x)
        out[fin] = (x[fin] + a) / (x[fin] + b)
        return out

    first = xi[0]
    if np.isneginf(first):
        lead = np.empty(0)
    else:
        u0 = 1.0 if np.isposinf(first) else math.atan(first) / PI + 0.5
        u = np.linspace(0.0, u0, lead_in, endpoint=False)
        lead = np.tan(PI * (u - 0.5))
        lead[0] = -np.inf
    base = np.concatenate([ratio(lead), ratio(xi)])
    vals = complex_power_unwrapped(base, s)
    return vals[lead.size:]


def _g_closed(s: float, gamma: complex):
    """g^s_{-gamma,gamma} on the branch equal to 1 at -inf."""
    return SymbolDescriptor.g_ratio(s, -gamma, gamma)


# ---------------------------------------------------------------------------
# per-factor symbols on one segment
# ---------------------------------------------------------------------------

def _limits(a: SymbolDescriptor):
    lo, hi = a.limit_minus_inf(), a.limit_plus_inf()
    if lo is None or hi is None:
        raise UnsupportedExprShape(f"{a.family} symbol has no finite limits at infinity")
    return lo, hi


def _eval_side(a: SymbolDescriptor, x: np.ndarray, side: int) -> np.ndarray:
    """a(side * x) for eta >= 0, with the one-sided limit at eta = 0."""
    out = np.asarray(a(side * x), dtype=complex).copy()
    zero = x == 0
    if zero.any():
        out[zero] = a.limit_zero(side)
    return out


def _fourier_factor(a: SymbolDescriptor, beta: float, seg: str, x: np.ndarray) -> np.ndarray:
    """W^0_a on a segment (unlifted)."""
    if seg == "Gamma1":
        lo, hi = _limits(a)
        return _fill(lo, hi, beta, x)
    if seg == "Gamma2plus":
        return _eval_side(a, x, -1)
    if seg == "Gamma2minus":
        return _eval_side(a, x, +1)
    if seg == "Gamma3":
        return _fill(a.limit_zero(-1), a.limit_zero(+1), beta, x)
    raise ValueError(seg)


def _fourier_factor_lifted(a: SymbolDescriptor, params: AnalysisParams, seg: str, x: np.ndarray) -> np.ndarray:
    """W^s_a: the unlifted rule applied to a * g^s_{-gamma,gamma}."""
    s, beta = params.s, params.beta
    g = _g_closed(s, params.gamma)
    if seg == "Gamma1":
        lo, hi = _limits(a)
        return _fill(lo, cmath.exp(2j * PI * s) * hi, beta, x)
    if seg == "Gamma2plus":
        return _eval_side(a, x, -1) * g(-x)
    if seg == "Gamma2minus":
        return _eval_side(a, x, +1) * g(x)
    if seg == "Gamma3":
        return cmath.exp(1j * PI * s) * _fill(a.limit_zero(-1), a.limit_zero(+1), beta, x)
    raise ValueError(seg)


def _mellin_symbol(m: int, c: complex, beta: float, x: np.ndarray) -> np.ndarray:
    out = np.zeros(x.shape, dtype=complex)
    fin = np.isfinite(x)
    if fin.any():
        out[fin] = sigma_Km(m, c, beta, x[fin])
    return out


def _check_lift_pole(c: complex, params: AnalysisParams):
    acg = principal_arg(complex(c) * params.gamma)
    if not (0.0 < abs(acg) < PI):
        raise HypothesisViolated(
            f"the lifted symbol of K_c needs 0 < |arg(c gamma)| < pi, got arg = {acg:.6g}",
            ["0 < |arg(c gamma)| < pi"],
        )


def _k_factor(m: int, c: complex, params: AnalysisParams, seg: str, x: np.ndarray, lifted: bool) -> np.ndarray:
    beta = params.beta
    if seg in ("Gamma2plus", "Gamma2minus"):
        return np.zeros(x.shape, dtype=complex)
    if not lifted:
        return _mellin_symbol(m, c, beta, x)
    s = params.s
    if s != 0:
        _check_lift_pole(c, params)
    kappa = complex(PowerConvention.symbol(c, -s))
    negc_s = complex(PowerConvention.neg(c, s))
    sig1 = _mellin_symbol(1, c, beta, x)
    if m == 1:
        return kappa * (sig1 if seg == "Gamma1" else negc_s * sig1)
    if m == 2:
        sig2 = _mellin_symbol(2, c, beta, x)
        if seg == "Gamma1":
            return kappa * (sig2 - s / complex(c) * sig1)
        return kappa * negc_s * sig2
    raise UnsupportedExprShape("only K^1 and K^2 have lifted symbols; reduce by partial fractions")


# ---------------------------------------------------------------------------
# public single-point symbols
# ---------------------------------------------------------------------------

def _one(omega: RectanglePoint) -> np.ndarray:
    return np.array([omega.coordinate], dtype=float)


def ident_sym_lifted(params: AnalysisParams, omega: RectanglePoint) -> complex:
    """Lifted identity: fill from 1 to e^{2 pi i s} on Gamma1, g^s_{-gamma,gamma}(-+eta)
    on Gamma2 plus/minus, e^{pi i s} on Gamma3."""
    return complex(_fourier_factor_lifted(SymbolDescriptor.constant(1.0), params, omega.segment, _one(omega))[0])


def w_syms_lifted(a: SymbolDescriptor, params: AnalysisParams, omega: RectanglePoint, lifted: bool) -> complex:
    x = _one(omega)
    if lifted:
        return complex(_fourier_factor_lifted(a, params, omega.segment, x)[0])
    return complex(_fourier_factor(a, params.beta, omega.segment, x)[0])


def k1_sym_lifted(c: complex, params: AnalysisParams, omega: RectanglePoint) -> complex:
    """c^{-s} (-c)^{beta - i xi - 1}/sin pi(beta - i xi) on Gamma1, 0 on Gamma2,
    c^{-s} (-c)^{beta + s - i xi - 1}/sin pi(beta - i xi) on Gamma3.

    (-c) uses the principal branch; c^{-s} takes arg c in [-2pi, 0).
    """
    return complex(_k_factor(1, c, params, omega.segment, _one(omega), True)[0])


def k2_sym_lifted(c: complex, params: AnalysisParams, omega: RectanglePoint) -> complex:
    """c^{-s}[sigma_2 - s c^{-1} sigma_1] on Gamma1, 0 on Gamma2, c^{-s}(-c)^s sigma_2 on Gamma3."""
    return complex(_k_factor(2, c, params, omega.segment, _one(omega), True)[0])


def angle_jump_fill_forms(alpha: float, params: AnalysisParams, xi) -> dict:
    """Lifted fill for a(-inf) = 1, a(+inf) = e^{2 pi i alpha} against two closed forms.

    ``sin_form`` uses sin pi(beta - i xi) in the denominator and follows from
    the sine addition formula; ``cos_form`` has cos in the denominator.
    """
    s, beta = params.s, params.beta
    xi = np.asarray(xi, dtype=float)
    fill = _fill(1.0, cmath.exp(2j * PI * (s + alpha)), beta, xi)
    num = np.exp(1j * PI * (s + alpha)) * np.sin(PI * (beta + s + alpha - 1j * xi))
    sin_form = num / np.sin(PI * (beta - 1j * xi))
    cos_form = num / np.cos(PI * (beta - 1j * xi))
    return {
        "fill": fill,
        "sin_form": sin_form,
        "cos_form": cos_form,
        "sin_max_dev": float(np.max(np.abs(fill - sin_form))),
        "cos_max_dev": float(np.max(np.abs(fill - cos_form))),
    }


# ---------------------------------------------------------------------------
# assembly
# ---------------------------------------------------------------------------

def _in_plain_range(params: AnalysisParams) -> bool:
    return params.beta - 1.0 < params.s < params.beta


def _check_sandwich_flags(term: Sandwich, params: AnalysisParams):
    if _in_plain_range(params):
        return
    missing = []
    if not term.a.is_analytic("lower"):
        missing.append("a must extend analytically to the lower half-plane")
    if not term.b.is_analytic("upper"):
        missing.append("b must extend analytically to the upper half-plane")
    if missing:
        raise MissingAnalyticityFlags(
            f"s = {params.s} lies outside (beta - 1, beta): " + "; ".join(missing)
        )


def _term_values(term, params: AnalysisParams, seg: str, x: np.ndarray, lifted: bool) -> np.ndarray:
    if isinstance(term, Identity):
        if lifted:
            return term.coef * _fourier_factor_lifted(SymbolDescriptor.constant(1.0), params, seg, x)
        return np.full(x.shape, term.coef, dtype=complex)
    if isinstance(term, FourierConv):
        f = _fourier_factor_lifted if lifted else (lambda a, p, sg, xx: _fourier_factor(a, p.beta, sg, xx))
        return term.coef * f(term.symbol, params, seg, x)
    if isinstance(term, MellinK):
        return term.coef * _k_factor(term.m, term.c, params, seg, x, lifted)
    if isinstance(term, Sandwich):
        if lifted:
            _check_sandwich_flags(term, params)
        inner = term.inner
        k = inner.coef * _k_factor(inner.m, inner.c, params, seg, x, lifted)
        return _fourier_factor(term.a, params.beta, seg, x) * k * _fourier_factor(term.b, params.beta, seg, x)
    raise UnsupportedExprShape(f"unsupported term {type(term).__name__}")


def segment_symbol(expr, params: AnalysisParams, seg: str, coords, lifted: bool = True) -> np.ndarray:
    """Symbol matrices (len(coords), N, N) on one segment."""
    mat = as_matrix(expr)
    x = np.atleast_1d(np.asarray(coords, dtype=float))
    n = mat.size
    out = np.zeros((x.size, n, n), dtype=complex)
    for i, row in enumerate(mat.entries):
        for j, entry in enumerate(row):
            for term in entry.terms:
                out[:, i, j] += _term_values(term, params, seg, x, lifted)
    return out


def assemble_lifted_symbol(expr, params: AnalysisParams, omega: RectanglePoint) -> np.ndarray:
    """N x N lifted symbol d0 I^s + W^s_{a0} + sum W^0_a K^{1,s}_c W^0_b at omega."""
    return segment_symbol(expr, params, omega.segment, [omega.coordinate], lifted=True)[0]


def symbol_Lp(expr, params: AnalysisParams, omega: RectanglePoint) -> np.ndarray:
    """Unlifted symbol in the weighted L_p space (s is ignored)."""
    return segment_symbol(expr, params, omega.segment, [omega.coordinate], lifted=False)[0]


def _det(values: np.ndarray) -> np.ndarray:
    if values.shape[1] == 1:
        return values[:, 0, 0].copy()
    return np.linalg.det(values)


def corner_residual(expr, params: AnalysisParams, lifted: bool = True) -> float:
    """Largest entry mismatch between the end of each segment and the start of the next."""
    worst = 0.0
    for k, seg in enumerate(SEGMENTS):
        nxt = SEGMENTS[(k + 1) % 4]
        end = _segment_coordinate(seg, np.array([1.0]))
        start = _segment_coordinate(nxt, np.array([0.0]))
        a = segment_symbol(expr, params, seg, end, lifted)[0]
        b = segment_symbol(expr, params, nxt, start, lifted)[0]
        worst = max(worst, float(np.max(np.abs(a - b))))
    return worst


def symbol_curve(expr, params: AnalysisParams, resolution: int, lifted: bool = True) -> SymbolCurve:
    pts = rectangle_path(resolution)
    R = int(resolution)
    blocks = []
    for k, seg in enumerate(SEGMENTS):
        coords = np.array([p.coordinate for p in pts[k * R:(k + 1) * R]])
        blocks.append(segment_symbol(expr, params, seg, coords, lifted))
    values = np.concatenate(blocks, axis=0)
    return SymbolCurve(
        points=tuple(pts),
        values=values,
        det=_det(values),
        corner_residual=corner_residual(expr, params, lifted),
        params=params,
        expr_hash=expr_hash(as_matrix(expr) if not isinstance(expr, (Sum, OperatorMatrix)) else expr),
        resolution=R,
        lifted=lifted,
    )


def _fmt(x: float) -> str:
    return "%.17g" % x


def curve_to_csv(curve: SymbolCurve, version: str) -> str:
    """'# ' + JSON metadata line, then segment,u,coordinate,re_det,im_det rows."""
    meta = {
        "version": version,
        "expr_hash": curve.expr_hash,
        "resolution": curve.resolution,
        "lifted": curve.lifted,
        "corner_residual": curve.corner_residual,
        "params": curve.params.to_json() if curve.params is not None else None,
        "size": int(curve.values.shape[1]),
    }
    lines = ["# " + json.dumps(meta, sort_keys=True, separators=(",", ":")), "segment,u,coordinate,re_det,im_det"]
    for pt, d in zip(curve.points, curve.det):
        coord = pt.coordinate
        cs = "inf" if coord == math.inf else ("-inf" if coord == -math.inf else _fmt(coord))
        lines.append(f"{pt.segment},{_fmt(pt.u)},{cs},{_fmt(d.real)},{_fmt(d.imag)}")
    return "\n".join(lines) + "\n"
