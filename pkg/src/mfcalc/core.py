"""Domain types, operator expressions, partial fractions and the rectangle path."""

from __future__ import annotations

import hashlib
import json
import math
from dataclasses import dataclass, field
from typing import Iterable, Sequence, Union

import numpy as np

from .errors import (
    DuplicatePole,
    GridMismatch,
    InvalidParams,
    NonpositiveMultiplicity,
    PoleOnPositiveAxis,
    SpecParse,
    UnsupportedExprShape,
)

PI = math.pi
NORMALIZATION = 1.0 / PI  # K^m_c carries 1/pi in front of the integral

Number = Union[int, float, complex]


def principal_arg(z: complex) -> float:
    """Argument in (-pi, pi]."""
    a = math.atan2(complex(z).imag, complex(z).real)
    if a <= -PI:
        a += 2 * PI
    return a


def as_complex(v) -> complex:
    if isinstance(v, (list, tuple)):
        if len(v) != 2:
            raise SpecParse(f"complex value must be [re, im], got {v!r}")
        return complex(float(v[0]), float(v[1]))
    return complex(v)


def complex_to_json(z: complex) -> list[float]:
    z = complex(z)
    return [float(z.real), float(z.imag)]


# ---------------------------------------------------------------------------
# analysis parameters
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class AnalysisParams:
    """Function-space setting: L_p weight, smoothness s and lifting parameters.

    ``weight_exp`` is the exponent of the power weight t**weight_exp; the
    complex Bessel-potential parameter is ``gamma``.  The two are kept apart.
    """

    p: float
    s: float = 0.0
    weight_exp: float = 0.0
    gamma: complex = 1j
    gamma0: complex | None = None

    def __post_init__(self):
        p = float(self.p)
        if not (1.0 < p < math.inf):
            raise InvalidParams(f"p must satisfy 1 < p < inf, got {self.p}")
        w = float(self.weight_exp)
        if not (-1.0 < w < p - 1.0):
            raise InvalidParams(f"weight exponent must satisfy -1 < w < p-1, got {w} for p={p}")
        if not math.isfinite(float(self.s)):
            raise InvalidParams("s must be finite")
        g = complex(self.gamma)
        if not (0.0 < principal_arg(g) < PI) or g == 0:
            raise InvalidParams(f"gamma must satisfy 0 < arg gamma < pi, got {g}")
        object.__setattr__(self, "p", p)
        object.__setattr__(self, "s", float(self.s))
        object.__setattr__(self, "weight_exp", w)
        object.__setattr__(self, "gamma", g)
        if self.gamma0 is not None:
            g0 = complex(self.gamma0)
            if not (0.0 < principal_arg(g0) < PI) or g0 == 0:
                raise InvalidParams(f"gamma0 must satisfy 0 < arg gamma0 < pi, got {g0}")
            object.__setattr__(self, "gamma0", g0)

    @property
    def beta(self) -> float:
        return (1.0 + self.weight_exp) / self.p

    def to_json(self) -> dict:
        out = {
            "p": self.p,
            "s": self.s,
            "weight_exp": self.weight_exp,
            "gamma": complex_to_json(self.gamma),
        }
        if self.gamma0 is not None:
            out["gamma0"] = complex_to_json(self.gamma0)
        return out

    @classmethod
    def from_json(cls, d: dict) -> "AnalysisParams":
        try:
            return cls(
                p=float(d["p"]),
                s=float(d.get("s", 0.0)),
                weight_exp=float(d.get("weight_exp", 0.0)),
                gamma=as_complex(d.get("gamma", [0.0, 1.0])),
                gamma0=as_complex(d["gamma0"]) if d.get("gamma0") is not None else None,
            )
        except (KeyError, TypeError, ValueError) as exc:
            raise SpecParse(f"bad space block: {exc}") from exc


# ---------------------------------------------------------------------------
# admissible kernels and partial fractions
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class KernelTerm:
    d: complex
    c: complex
    m: int = 1


@dataclass(frozen=True)
class AdmissibleKernel:
    """Kernel of the operator sum_j d_j K^{m_j}_{c_j}.

    As a Mellin convolution kernel this is (1/pi) sum_j d_j / (u - c_j)^{m_j}.
    """

    terms: tuple[KernelTerm, ...]

    def __call__(self, u):
        u = np.asarray(u, dtype=complex)
        out = np.zeros_like(u)
        for t in self.terms:
            out += t.d / (u - t.c) ** t.m
        return NORMALIZATION * out


def validate_admissible_kernel(terms: Iterable, lifting: bool = False, tol: float = 1e-14) -> AdmissibleKernel:
    """Check pole/multiplicity constraints and normalize poles.

    ``terms`` holds ``KernelTerm`` objects or ``(d, c, m)`` tuples.  Poles are
    stored with their argument in (-pi, pi].
    """
    parsed: list[KernelTerm] = []
    for t in terms:
        if isinstance(t, KernelTerm):
            d, c, m = t.d, t.c, t.m
        else:
            d, c, m = t
        if int(m) != m or int(m) <= 0:
            raise NonpositiveMultiplicity(f"multiplicity must be a positive integer, got {m}")
        c = complex(c)
        if c == 0:
            raise PoleOnPositiveAxis("pole at the origin is not admissible")
        r, a = abs(c), principal_arg(c)
        c = complex(r * math.cos(a), r * math.sin(a)) if a != PI else complex(-r, 0.0)
        on_axis = abs(a) <= tol
        if on_axis and (lifting or int(m) >= 2):
            raise PoleOnPositiveAxis(f"pole {c} lies on the positive half-axis (arg c = 0)")
        parsed.append(KernelTerm(complex(d), c, int(m)))
    if not parsed:
        raise InvalidParams("kernel needs at least one term")
    for i in range(len(parsed)):
        for j in range(i + 1, len(parsed)):
            if abs(parsed[i].c - parsed[j].c) <= tol * max(1.0, abs(parsed[i].c)):
                raise DuplicatePole(f"poles {parsed[i].c} and {parsed[j].c} coincide")
    return AdmissibleKernel(tuple(parsed))


def partial_fraction_reduce(poles: Sequence[complex]) -> list[tuple[complex, complex]]:
    """Coefficients d_j with 1/prod(t - c_k) = sum_j d_j/(t - c_j)."""
    cs = [complex(c) for c in poles]
    if len(cs) < 2:
        raise InvalidParams("partial fractions need at least two poles")
    for i in range(len(cs)):
        for j in range(i + 1, len(cs)):
            if cs[i] == cs[j]:
                raise DuplicatePole(f"duplicate pole {cs[i]}")
    out = []
    for j, cj in enumerate(cs):
        prod = 1.0 + 0j
        for k, ck in enumerate(cs):
            if k != j:
                prod *= cj - ck
        out.append((1.0 / prod, cj))
    return out


# ---------------------------------------------------------------------------
# symbol descriptors (closed families of Fourier multipliers)
# ---------------------------------------------------------------------------

_FAMILIES = ("constant", "rational", "cayley", "piecewise", "bessel", "g_ratio", "product")


def _log_branch_offset(num_shift: complex, den_shift: complex) -> int:
    # integer k so that exp(s(Log(xi+a) - Log(xi+b)) + 2 pi i s k) -> 1 at xi = -inf
    sa = 1 if num_shift.imag > 0 else -1
    sb = 1 if den_shift.imag > 0 else -1
    return -(sa - sb) // 2


@dataclass(frozen=True)
class SymbolDescriptor:
    """A named closed-form multiplier a(xi) with parameters.

    Families
    --------
    constant   value
    rational   num, den (polynomial coefficients, highest degree first)
    cayley     gamma -> (xi - gamma)/(xi + gamma)
    piecewise  left (xi < 0), right (xi > 0)
    bessel     r, gamma, sign -> (xi + sign*gamma)^r, principal branch
    g_ratio    s, num_shift, den_shift -> ((xi+num_shift)/(xi+den_shift))^s,
               continuous branch equal to 1 at xi = -inf
    product    factors
    """

    family: str
    params: tuple = field(default_factory=tuple)

    # construction helpers -------------------------------------------------
    @staticmethod
    def constant(value: Number) -> "SymbolDescriptor":
        return SymbolDescriptor("constant", (("value", complex(value)),))

    @staticmethod
    def rational(num: Sequence[Number], den: Sequence[Number]) -> "SymbolDescriptor":
        return SymbolDescriptor(
            "rational", (("num", tuple(complex(x) for x in num)), ("den", tuple(complex(x) for x in den)))
        )

    @staticmethod
    def cayley(gamma: Number = 1j) -> "SymbolDescriptor":
        return SymbolDescriptor("cayley", (("gamma", complex(gamma)),))

    @staticmethod
    def piecewise(left: Number, right: Number) -> "SymbolDescriptor":
        return SymbolDescriptor("piecewise", (("left", complex(left)), ("right", complex(right))))

    @staticmethod
    def bessel(r: float, gamma: Number, sign: str) -> "SymbolDescriptor":
        if sign not in ("+", "-"):
            raise SpecParse("bessel sign must be '+' or '-'")
        return SymbolDescriptor("bessel", (("r", float(r)), ("gamma", complex(gamma)), ("sign", sign)))

    @staticmethod
    def g_ratio(s: float, num_shift: Number, den_shift: Number) -> "SymbolDescriptor":
        return SymbolDescriptor(
            "g_ratio", (("s", float(s)), ("num_shift", complex(num_shift)), ("den_shift", complex(den_shift)))
        )

    @staticmethod
    def product(*factors: "SymbolDescriptor") -> "SymbolDescriptor":
        return SymbolDescriptor("product", (("factors", tuple(factors)),))

    def __post_init__(self):
        if self.family not in _FAMILIES:
            raise SpecParse(f"unknown symbol family {self.family!r}")
        if self.family == "g_ratio":
            for key in ("num_shift", "den_shift"):
                if self.p[key].imag == 0:
                    raise InvalidParams(f"g_ratio {key} must be off the real axis")

    @property
    def p(self) -> dict:
        return dict(self.params)

    # evaluation ----------------------------------------------------------
    def __call__(self, xi):
        xi_arr = np.asarray(xi, dtype=float)
        scalar = xi_arr.ndim == 0
        xi_arr = np.atleast_1d(xi_arr)
        out = np.empty(xi_arr.shape, dtype=complex)
        fin = np.isfinite(xi_arr)
        out[fin] = self._eval_finite(xi_arr[fin])
        if (~fin).any():
            lo, hi = self.limit_minus_inf(), self.limit_plus_inf()
            neg = ~fin & (xi_arr < 0)
            pos = ~fin & (xi_arr > 0)
            if (neg.any() and lo is None) or (pos.any() and hi is None):
                raise UnsupportedExprShape(f"{self.family} symbol is unbounded at infinity")
            out[neg] = lo
            out[pos] = hi
        return out[0] if scalar else out

    def _eval_finite(self, xi: np.ndarray) -> np.ndarray:
        p = self.p
        f = self.family
        if f == "constant":
            return np.full(xi.shape, p["value"], dtype=complex)
        if f == "rational":
            return np.polyval(np.array(p["num"]), xi) / np.polyval(np.array(p["den"]), xi)
        if f == "cayley":
            g = p["gamma"]
            return (xi - g) / (xi + g)
        if f == "piecewise":
            out = np.where(xi < 0, p["left"], p["right"]).astype(complex)
            out[xi == 0] = 0.5 * (p["left"] + p["right"])
            return out
        if f == "bessel":
            z = xi + (p["gamma"] if p["sign"] == "+" else -p["gamma"])
            return np.exp(p["r"] * np.log(z.astype(complex)))
        if f == "g_ratio":
            a, b, s = p["num_shift"], p["den_shift"], p["s"]
            k = _log_branch_offset(a, b)
            return np.exp(s * (np.log(xi + a) - np.log(xi + b)) + 2j * PI * s * k)
        if f == "product":
            out = np.ones(xi.shape, dtype=complex)
            for fac in p["factors"]:
                out *= fac._eval_finite(xi)
            return out
        raise SpecParse(f"unknown family {f}")

    # limits --------------------------------------------------------------
    def _inf_limit(self, sign: int):
        p, f = self.p, self.family
        if f == "constant":
            return p["value"]
        if f == "rational":
            num = np.trim_zeros(np.array(p["num"]), "f")
            den = np.trim_zeros(np.array(p["den"]), "f")
            if len(num) > len(den):
                return None
            if len(num) < len(den):
                return 0j
            return complex(num[0] / den[0])
        if f == "cayley":
            return 1 + 0j
        if f == "piecewise":
            return p["right"] if sign > 0 else p["left"]
        if f == "bessel":
            return 1 + 0j if p["r"] == 0 else None
        if f == "g_ratio":
            if sign < 0:
                return 1 + 0j
            k = _log_branch_offset(p["num_shift"], p["den_shift"])
            return complex(np.exp(2j * PI * p["s"] * k))
        if f == "product":
            out = 1 + 0j
            for fac in p["factors"]:
                v = fac._inf_limit(sign)
                if v is None:
                    return None
                out *= v
            return out
        return None

    def limit_minus_inf(self):
        return self._inf_limit(-1)

    def limit_plus_inf(self):
        return self._inf_limit(+1)

    def limit_zero(self, side: int) -> complex:
        """One-sided limit at 0 (side=-1 for 0-0, +1 for 0+0)."""
        if self.family == "piecewise":
            return self.p["right"] if side > 0 else self.p["left"]
        if self.family == "product":
            out = 1 + 0j
            for fac in self.p["factors"]:
                out *= fac.limit_zero(side)
            return out
        return complex(self._eval_finite(np.array([0.0]))[0])

    # analyticity ---------------------------------------------------------
    @property
    def analytic(self) -> str:
        """'both', 'upper', 'lower' or 'none': half-plane of bounded analytic extension."""
        p, f = self.p, self.family
        if f == "constant":
            return "both"
        if f == "piecewise":
            return "both" if p["left"] == p["right"] else "none"
        if f == "rational":
            num = np.trim_zeros(np.array(p["num"]), "f")
            den = np.trim_zeros(np.array(p["den"]), "f")
            if len(num) > len(den):
                return "none"
            if len(den) <= 1:
                return "both"
            roots = np.roots(den)
            if np.all(roots.imag < 0):
                return "upper"
            if np.all(roots.imag > 0):
                return "lower"
            return "none"
        if f == "cayley":
            return "upper" if p["gamma"].imag > 0 else "lower"
        if f == "bessel":
            if p["r"] == 0:
                return "both"
            shift = p["gamma"] if p["sign"] == "+" else -p["gamma"]
            return "upper" if shift.imag > 0 else "lower"
        if f == "g_ratio":
            a, b = p["num_shift"], p["den_shift"]
            if p["s"] == 0:
                return "both"
            if a.imag > 0 and b.imag > 0:
                return "upper"
            if a.imag < 0 and b.imag < 0:
                return "lower"
            return "none"
        if f == "product":
            flags = {fac.analytic for fac in p["factors"]}
            flags.discard("both")
            if not flags:
                return "both"
            return flags.pop() if len(flags) == 1 else "none"
        return "none"

    def is_analytic(self, side: str) -> bool:
        return self.analytic in ("both", side)

    # serialization -------------------------------------------------------
    def to_json(self) -> dict:
        params = {}
        for key, v in self.params:
            if key == "factors":
                params[key] = [f.to_json() for f in v]
            elif isinstance(v, complex):
                params[key] = complex_to_json(v)
            elif isinstance(v, tuple):
                params[key] = [complex_to_json(x) for x in v]
            else:
                params[key] = v
        return {"family": self.family, "params": params}

    @staticmethod
    def from_json(d: dict) -> "SymbolDescriptor":
        try:
            fam = d["family"]
            prm = d.get("params", {})
            if fam == "constant":
                return SymbolDescriptor.constant(as_complex(prm["value"]))
            if fam == "rational":
                return SymbolDescriptor.rational([as_complex(x) for x in prm["num"]], [as_complex(x) for x in prm["den"]])
            if fam == "cayley":
                return SymbolDescriptor.cayley(as_complex(prm.get("gamma", [0.0, 1.0])))
            if fam == "piecewise":
                return SymbolDescriptor.piecewise(as_complex(prm["left"]), as_complex(prm["right"]))
            if fam == "bessel":
                return SymbolDescriptor.bessel(float(prm["r"]), as_complex(prm["gamma"]), prm["sign"])
            if fam == "g_ratio":
                return SymbolDescriptor.g_ratio(float(prm["s"]), as_complex(prm["num_shift"]), as_complex(prm["den_shift"]))
            if fam == "product":
                return SymbolDescriptor.product(*[SymbolDescriptor.from_json(x) for x in prm["factors"]])
        except (KeyError, TypeError, ValueError) as exc:
            raise SpecParse(f"bad symbol descriptor {d!r}: {exc}") from exc
        raise SpecParse(f"unknown symbol family {d.get('family')!r}")


ONE = SymbolDescriptor.constant(1.0)


# ---------------------------------------------------------------------------
# operator expressions
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Identity:
    coef: complex = 1.0 + 0j

    def to_json(self):
        return {"kind": "identity", "coef": complex_to_json(self.coef)}


@dataclass(frozen=True)
class FourierConv:
    symbol: SymbolDescriptor
    coef: complex = 1.0 + 0j

    def to_json(self):
        out = {"kind": "fourier", "symbol": self.symbol.to_json()}
        if self.coef != 1:
            out["coef"] = complex_to_json(self.coef)
        return out


@dataclass(frozen=True)
class MellinK:
    m: int
    c: complex
    coef: complex = 1.0 + 0j

    def __post_init__(self):
        if self.m not in (1, 2):
            raise UnsupportedExprShape("MellinK supports m in {1, 2}; reduce higher orders by partial fractions")
        if complex(self.c) == 0:
            raise PoleOnPositiveAxis("c = 0 is not admissible")
        object.__setattr__(self, "c", complex(self.c))
        object.__setattr__(self, "coef", complex(self.coef))

    def to_json(self):
        return {"kind": "mellinK", "m": self.m, "c": complex_to_json(self.c), "coef": complex_to_json(self.coef)}


@dataclass(frozen=True)
class Sandwich:
    a: SymbolDescriptor
    inner: MellinK
    b: SymbolDescriptor

    def to_json(self):
        return {"kind": "sandwich", "a": self.a.to_json(), "k": self.inner.to_json(), "b": self.b.to_json()}


Term = Union[Identity, FourierConv, MellinK, Sandwich]


@dataclass(frozen=True)
class Sum:
    terms: tuple

    def to_json(self):
        return {"terms": [t.to_json() for t in self.terms]}


@dataclass(frozen=True)
class OperatorMatrix:
    """N x N matrix of ``Sum`` entries."""

    entries: tuple  # tuple of tuples of Sum

    @property
    def size(self) -> int:
        return len(self.entries)

    def to_json(self):
        return {"terms": [[e.to_json()["terms"] for e in row] for row in self.entries]}


OperatorExpr = Union[Sum, OperatorMatrix]


def as_matrix(expr) -> OperatorMatrix:
    if isinstance(expr, OperatorMatrix):
        return expr
    if isinstance(expr, Sum):
        return OperatorMatrix(((expr,),))
    if isinstance(expr, (Identity, FourierConv, MellinK, Sandwich)):
        return OperatorMatrix(((Sum((expr,)),),))
    raise UnsupportedExprShape(f"not an operator expression: {type(expr).__name__}")


def _term_from_json(d: dict) -> Term:
    try:
        kind = d["kind"]
        if kind == "identity":
            return Identity(as_complex(d.get("coef", [1.0, 0.0])))
        if kind == "fourier":
            return FourierConv(SymbolDescriptor.from_json(d["symbol"]), as_complex(d.get("coef", [1.0, 0.0])))
        if kind == "mellinK":
            return MellinK(int(d["m"]), as_complex(d["c"]), as_complex(d.get("coef", [1.0, 0.0])))
        if kind == "sandwich":
            inner = _term_from_json(d["k"])
            if not isinstance(inner, MellinK):
                raise SpecParse("sandwich 'k' must be a mellinK term")
            return Sandwich(SymbolDescriptor.from_json(d["a"]), inner, SymbolDescriptor.from_json(d["b"]))
    except (KeyError, TypeError, ValueError) as exc:
        raise SpecParse(f"bad operator term {d!r}: {exc}") from exc
    raise SpecParse(f"unknown term kind {d.get('kind')!r}")


def operator_from_json(d: dict) -> OperatorExpr:
    if not isinstance(d, dict) or "terms" not in d:
        raise SpecParse("operator block needs a 'terms' array")
    terms = d["terms"]
    if not isinstance(terms, list) or not terms:
        raise SpecParse("'terms' must be a nonempty array")
    if all(isinstance(t, dict) for t in terms):
        return Sum(tuple(_term_from_json(t) for t in terms))
    # matrix: rows of entries, each entry a list of terms
    rows = []
    for row in terms:
        if not isinstance(row, list):
            raise SpecParse("matrix operator rows must be arrays")
        rows.append(tuple(Sum(tuple(_term_from_json(t) for t in entry)) for entry in row))
    n = len(rows)
    if any(len(r) != n for r in rows):
        raise SpecParse("matrix operator must be square")
    return OperatorMatrix(tuple(rows))


def canonical_json(obj) -> str:
    return json.dumps(obj, sort_keys=True, separators=(",", ":"))


def expr_hash(expr: OperatorExpr) -> str:
    return hashlib.sha256(canonical_json(expr.to_json()).encode()).hexdigest()[:16]


# ---------------------------------------------------------------------------
# the rectangle
# ---------------------------------------------------------------------------

SEGMENTS = ("Gamma1", "Gamma2plus", "Gamma3", "Gamma2minus")


@dataclass(frozen=True)
class RectanglePoint:
    """A point of the rectangle.

    ``coordinate`` is xi on Gamma1/Gamma3 and eta >= 0 on Gamma2plus/minus;
    infinite values are allowed and mark the corners.  ``u`` is the global
    path parameter in [0, 1).
    """

    segment: str
    coordinate: float
    u: float

    def to_json(self):
        return {"segment": self.segment, "coordinate": _float_json(self.coordinate), "u": self.u}


def _float_json(x: float):
    if math.isinf(x):
        return "inf" if x > 0 else "-inf"
    return x


def _segment_coordinate(segment: str, v: np.ndarray) -> np.ndarray:
    """Map local parameter v in [0, 1] to the coordinate, following the orientation.

    Gamma1: xi from +inf to -inf; Gamma2plus: eta from +inf to 0;
    Gamma3: xi from -inf to +inf; Gamma2minus: eta from 0 to +inf.
    """
    v = np.asarray(v, dtype=float)
    with np.errstate(over="ignore"):
        if segment == "Gamma1":
            x = np.tan(PI * (0.5 - v))
            x = np.where(v == 0, np.inf, np.where(v == 1, -np.inf, x))
        elif segment == "Gamma3":
            x = np.tan(PI * (v - 0.5))
            x = np.where(v == 0, -np.inf, np.where(v == 1, np.inf, x))
        elif segment == "Gamma2plus":
            x = np.tan(0.5 * PI * (1.0 - v))
            x = np.where(v == 0, np.inf, np.where(v == 1, 0.0, x))
        elif segment == "Gamma2minus":
            x = np.tan(0.5 * PI * v)
            x = np.where(v == 0, 0.0, np.where(v == 1, np.inf, x))
        else:
            raise ValueError(segment)
    return x


def segment_endpoints(segment: str) -> tuple[float, float]:
    a, b = _segment_coordinate(segment, np.array([0.0, 1.0]))
    return float(a), float(b)


def rectangle_path(resolution: int) -> list[RectanglePoint]:
    """Closed discretization of the rectangle with ``resolution`` samples per segment.

    The path is closed: the successor of the last point is the first point,
    so each corner appears exactly once (as the first sample of a segment).
    """
    if int(resolution) != resolution or resolution < 16:
        raise InvalidParams("resolution must be an integer >= 16")
    resolution = int(resolution)
    v = np.arange(resolution) / resolution
    pts: list[RectanglePoint] = []
    for k, seg in enumerate(SEGMENTS):
        coords = _segment_coordinate(seg, v)
        for j in range(resolution):
            pts.append(RectanglePoint(seg, float(coords[j]), float((k + v[j]) / 4.0)))
    return pts


# ---------------------------------------------------------------------------
# curves and reports
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class SymbolCurve:
    points: tuple
    values: np.ndarray  # (M, N, N) complex
    det: np.ndarray  # (M,) complex
    corner_residual: float
    params: AnalysisParams | None
    expr_hash: str
    resolution: int
    lifted: bool = True

    def __len__(self):
        return len(self.points)


@dataclass
class IndexReport:
    inf_abs_det: float
    elliptic: bool
    winding: int | None
    index: int | None
    corner_residual: float
    resolution: int
    argmin: RectanglePoint | None = None

    def to_json(self) -> dict:
        return {
            "inf_abs_det": self.inf_abs_det,
            "elliptic": self.elliptic,
            "winding": self.winding,
            "index": self.index,
            "corner_residual": self.corner_residual,
            "resolution": self.resolution,
            "argmin": self.argmin.to_json() if self.argmin is not None else None,
        }


# ---------------------------------------------------------------------------
# sampled functions
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class GridSpec:
    """Cell-centred uniform grid on (-L, L) (kind='uniform') or t = exp(x) (kind='log').

    The grid is symmetric under x -> -x, so the log grid maps onto the
    uniform grid exactly under xi = -ln t.
    """

    L: float = 64.0
    N: int = 2 ** 14
    kind: str = "uniform"

    def __post_init__(self):
        if self.N <= 0 or (self.N & (self.N - 1)) != 0:
            raise GridMismatch(f"node count must be a power of two, got {self.N}")
        if self.kind not in ("uniform", "log"):
            raise GridMismatch(f"unknown grid kind {self.kind!r}")

    @property
    def h(self) -> float:
        return 2.0 * self.L / self.N

    @property
    def x(self) -> np.ndarray:
        return -self.L + self.h * (np.arange(self.N) + 0.5)

    @property
    def nodes(self) -> np.ndarray:
        return np.exp(self.x) if self.kind == "log" else self.x

    def matching(self) -> "GridSpec":
        return GridSpec(self.L, self.N, "uniform" if self.kind == "log" else "log")


@dataclass(frozen=True)
class SampledFunction:
    grid: GridSpec
    values: np.ndarray

    def __post_init__(self):
        v = np.asarray(self.values, dtype=complex)
        if v.shape != (self.grid.N,):
            raise GridMismatch(f"expected {self.grid.N} values, got shape {v.shape}")
        object.__setattr__(self, "values", v)

    @property
    def nodes(self) -> np.ndarray:
        return self.grid.nodes

    @classmethod
    def from_callable(cls, grid: GridSpec, fn) -> "SampledFunction":
        return cls(grid, np.asarray(fn(grid.nodes), dtype=complex))

    def to_csv(self) -> str:
        lines = ["node,re,im"]
        for x, v in zip(self.nodes, self.values):
            lines.append(f"{x:.17g},{v.real:.17g},{v.imag:.17g}")
        return "\n".join(lines) + "\n"
