"""Ellipticity, winding numbers and Fredholm indices from sampled symbols."""

from __future__ import annotations

import math
import os

import numpy as np

from .core import (
    SEGMENTS,
    AnalysisParams,
    IndexReport,
    RectanglePoint,
    SymbolCurve,
    _segment_coordinate,
    rectangle_path,
)
from .errors import InvalidParams, NonIntegerWinding, NotElliptic, PhaseJump, ResolutionCap
from .symbol_calculus import corner_residual, segment_symbol

__all__ = [
    "ELLIPTIC_TOL",
    "ellipticity_infimum",
    "ellipticity_argmin",
    "winding_number",
    "fredholm_index",
    "local_invertibility_at_zero",
    "resolution_cap",
]

ELLIPTIC_TOL = 1e-8  # relative to max |det|
WINDING_TOL = 0.1
DEFAULT_CAP = 2 ** 14


def resolution_cap() -> int:
    return int(os.environ.get("MF_RESOLUTION_CAP", DEFAULT_CAP))


def _det_of(curve) -> np.ndarray:
    if isinstance(curve, SymbolCurve):
        return np.asarray(curve.det, dtype=complex)
    return np.asarray(curve, dtype=complex)


def ellipticity_infimum(curve) -> float:
    """min |det| over the samples."""
    return float(np.min(np.abs(_det_of(curve))))


def ellipticity_argmin(curve: SymbolCurve) -> RectanglePoint:
    return curve.points[int(np.argmin(np.abs(curve.det)))]


def _check_elliptic(curve, tol: float):
    d = np.abs(_det_of(curve))
    inf, sup = float(d.min()), float(d.max())
    if sup == 0 or inf <= tol * sup:
        argmin = curve.points[int(np.argmin(d))] if isinstance(curve, SymbolCurve) else int(np.argmin(d))
        raise NotElliptic(f"inf |det| = {inf:.3e} (max {sup:.3e})", inf_abs_det=inf, argmin=argmin)


def winding_number(curve, tol: float = ELLIPTIC_TOL) -> int:
    """Winding of det about 0 along the closed sampled path.

    ``curve`` is a ``SymbolCurve`` or an array of det samples whose
    successor of the last sample is the first.
    """
    _check_elliptic(curve, tol)
    d = _det_of(curve)
    ang = np.angle(np.concatenate([d, d[:1]]))
    step = np.diff(ang)
    step = (step + math.pi) % (2 * math.pi) - math.pi
    if np.any(np.abs(step) >= math.pi / 2):
        raise PhaseJump("argument of det jumps by at least pi/2 between samples")
    w = float(step.sum()) / (2 * math.pi)
    k = int(round(w))
    if abs(w - k) > WINDING_TOL:
        raise NonIntegerWinding(f"winding {w:.4f} is not close to an integer")
    return k


MAX_PHASE_STEP = math.pi / 8
MIN_STEP_WIDTH = 1e-13
MAX_BISECTIONS = 60


def _det_matrix(vals: np.ndarray) -> np.ndarray:
    return vals[:, 0, 0].copy() if vals.shape[1] == 1 else np.linalg.det(vals)


def _segment_adaptive(expr, params, seg: str, resolution: int, lifted: bool):
    """Samples of det on one closed segment, bisected until every phase step is small.

    Returns (v, det) including both endpoints v = 0 and v = 1.
    """
    v = np.linspace(0.0, 1.0, resolution + 1)
    det = _det_matrix(segment_symbol(expr, params, seg, _segment_coordinate(seg, v), lifted))
    for _ in range(MAX_BISECTIONS):
        step = np.abs(np.angle(det[1:] / det[:-1])) if np.all(det != 0) else None
        if step is None:
            break
        bad = np.nonzero((step > MAX_PHASE_STEP) & (np.diff(v) > MIN_STEP_WIDTH))[0]
        if bad.size == 0:
            break
        mid = 0.5 * (v[bad] + v[bad + 1])
        dm = _det_matrix(segment_symbol(expr, params, seg, _segment_coordinate(seg, mid), lifted))
        v = np.insert(v, bad + 1, mid)
        det = np.insert(det, bad + 1, dm)
    return v, det


def _adaptive_trace(expr, params, resolution: int, lifted: bool, tol: float):
    """Total argument increment / 2 pi along the rectangle with adaptive sampling."""
    total = 0.0
    inf, sup, argmin = math.inf, 0.0, None
    prev_end = None
    first_start = None
    for seg in SEGMENTS:
        v, det = _segment_adaptive(expr, params, seg, resolution, lifted)
        a = np.abs(det)
        k = int(np.argmin(a))
        if a[k] < inf:
            inf = float(a[k])
            argmin = RectanglePoint(seg, float(_segment_coordinate(seg, v[k:k + 1])[0]), float(v[k]))
        sup = max(sup, float(a.max()))
        if inf == 0.0:
            break
        step = np.angle(det[1:] / det[:-1])
        if np.any(np.abs(step) > MAX_PHASE_STEP):
            raise NotElliptic(
                f"argument of det jumps on {seg} at sample spacing {MIN_STEP_WIDTH:g}; det vanishes on the path",
                inf_abs_det=inf,
                argmin=argmin,
            )
        total += float(step.sum())
        if prev_end is not None:
            total += float(np.angle(det[0] / prev_end))
        else:
            first_start = det[0]
        prev_end = det[-1]
    if sup == 0 or inf <= tol * sup:
        raise NotElliptic(f"inf |det| = {inf:.3e} (max {sup:.3e})", inf_abs_det=inf, argmin=argmin)
    total += float(np.angle(first_start / prev_end))
    return total / (2 * math.pi), inf, argmin


def fredholm_index(
    expr,
    params: AnalysisParams,
    resolution: int = 64,
    lifted: bool = True,
    cap: int | None = None,
    tol: float = ELLIPTIC_TOL,
) -> IndexReport:
    """Index = -winding of det of the symbol.

    Each base resolution is refined by bisection wherever the argument of
    det moves by more than pi/8 between samples.  The base resolution is
    doubled until three successive resolutions give the same winding;
    exceeding the cap raises ``ResolutionCap``.
    """
    cap = resolution_cap() if cap is None else int(cap)
    R = int(resolution)
    if R < 16:
        raise InvalidParams("resolution must be an integer >= 16")
    history: list[int] = []
    while True:
        if R > cap:
            raise ResolutionCap(f"winding not stable below resolution cap {cap} (history {history})")
        w_real, inf, argmin = _adaptive_trace(expr, params, R, lifted, tol)
        w = int(round(w_real))
        if abs(w_real - w) > WINDING_TOL:
            history.clear()
            R *= 2
            continue
        history.append(w)
        if len(history) >= 3 and history[-1] == history[-2] == history[-3]:
            break
        R *= 2
    return IndexReport(
        inf_abs_det=inf,
        elliptic=True,
        winding=w,
        index=-w,
        corner_residual=corner_residual(expr, params, lifted),
        resolution=R,
        argmin=argmin,
    )


def local_invertibility_at_zero(expr, params: AnalysisParams, resolution: int = 1024, lifted: bool = True) -> dict:
    """Invertibility of the symbol on Gamma1 alone (the point t = 0)."""
    pts = [p for p in rectangle_path(resolution) if p.segment == "Gamma1"]
    coords = np.array([p.coordinate for p in pts] + [-np.inf])
    vals = segment_symbol(expr, params, "Gamma1", coords, lifted)
    det = vals[:, 0, 0] if vals.shape[1] == 1 else np.linalg.det(vals)
    a = np.abs(det)
    k = int(np.argmin(a))
    sup = float(a.max())
    inf = float(a[k])
    return {
        "locally_invertible": bool(sup > 0 and inf > ELLIPTIC_TOL * sup),
        "inf_abs_det": inf,
        "argmin_xi": float(coords[k]),
    }
