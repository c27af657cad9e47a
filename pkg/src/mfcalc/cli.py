"""Command-line front end.

Exit codes: 0 success, 1 spec parse error, 2 hypothesis or parameter
violation, 3 numerical failure (including failed verification checks),
4 symbol not elliptic.
"""

from __future__ import annotations

import cmath
import json
import math
import sys
from concurrent.futures import ThreadPoolExecutor

import click
import numpy as np

from . import __version__
from .core import (
    AnalysisParams,
    Identity,
    MellinK,
    OperatorMatrix,
    Sum,
    as_complex,
    canonical_json,
    complex_to_json,
    expr_hash,
    operator_from_json,
)
from .errors import AlphaOnAxis, HypothesisError, MFError, NotElliptic, NumericalError, SpecParse
from .fredholm import fredholm_index
from .symbol_calculus import curve_to_csv, symbol_curve

DEFAULT_SWEEP_GAMMA = cmath.exp(0.4j)


# ---------------------------------------------------------------------------
# spec handling
# ---------------------------------------------------------------------------

def parse_complex(text: str) -> complex:
    """'re,im' or a Python complex literal such as '0.5+0.8j'."""
    try:
        if "," in text:
            re_, im_ = text.split(",")
            return complex(float(re_), float(im_))
        return complex(text.replace(" ", ""))
    except ValueError as exc:
        raise SpecParse(f"cannot parse complex number {text!r}") from exc


def load_spec(path: str):
    try:
        with open(path, encoding="utf-8") as fh:
            data = json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise SpecParse(f"cannot read spec {path}: {exc}") from exc
    if not isinstance(data, dict) or "operator" not in data:
        raise SpecParse("spec needs an 'operator' block")
    space = data.get("space", {})
    if not isinstance(space, dict):
        raise SpecParse("'space' must be an object")
    return space, operator_from_json(data["operator"])


def build_params(space: dict, p=None, s=None, gamma=None) -> AnalysisParams:
    try:
        g0 = space.get("gamma0")
        return AnalysisParams(
            p=float(p if p is not None else space.get("p", 2.0)),
            s=float(s if s is not None else space.get("s", 0.0)),
            weight_exp=float(space.get("weight_exp", 0.0)),
            gamma=parse_complex(gamma) if gamma is not None else as_complex(space.get("gamma", [0.0, 1.0])),
            gamma0=as_complex(g0) if g0 is not None else None,
        )
    except (TypeError, ValueError) as exc:
        raise SpecParse(f"bad 'space' block: {exc}") from exc


def corner_system(alpha: float) -> OperatorMatrix:
    """[[I, k(K_{e^{ia}} + K_{e^{-ia}})], [-k(K_{e^{ia}} + K_{e^{-ia}}), I]] with k = 1/(2 pi)."""
    a = float(alpha)
    if not (0.0 < abs(a) < math.pi):
        raise AlphaOnAxis(f"need 0 < |alpha| < pi, got {a}")
    k = 1.0 / (2.0 * math.pi)

    def pair(sign):
        return Sum((MellinK(1, cmath.exp(1j * a), sign * k), MellinK(1, cmath.exp(-1j * a), sign * k)))

    ident = Sum((Identity(),))
    return OperatorMatrix(((ident, pair(1.0)), (pair(-1.0), ident)))


def _emit(text: str, out: str | None):
    if out:
        with open(out, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _run(fn):
    """Map library errors to exit codes."""
    try:
        return fn()
    except MFError as exc:
        click.echo(f"error: {type(exc).__name__}: {exc}", err=True)
        sys.exit(exc.exit_code)


# ---------------------------------------------------------------------------
# commands
# ---------------------------------------------------------------------------

@click.group()
@click.version_option(__version__, prog_name="mfcalc")
def main():
    """Fredholm symbols and indices of Mellin and Fourier convolution operators."""


def _space_options(fn):
    fn = click.option("--gamma", default=None, help="lifting parameter, 're,im' or '0.5+0.8j'")(fn)
    fn = click.option("--s", "s", type=float, default=None, help="smoothness parameter")(fn)
    fn = click.option("--p", "p", type=float, default=None, help="Lebesgue exponent")(fn)
    return fn


@main.command("symbol")
@click.option("--spec", "spec_file", required=True, type=click.Path(dir_okay=False))
@_space_options
@click.option("--resolution", type=int, default=256, show_default=True, help="samples per segment")
@click.option("--lifted/--unlifted", default=True, show_default=True)
@click.option("--format", "fmt", type=click.Choice(["csv", "json"]), default="csv", show_default=True)
@click.option("--out", default=None, type=click.Path(dir_okay=False))
def cmd_symbol(spec_file, p, s, gamma, resolution, lifted, fmt, out):
    """Sample det of the symbol along the rectangle."""

    def go():
        space, expr = load_spec(spec_file)
        params = build_params(space, p, s, gamma)
        curve = symbol_curve(expr, params, resolution, lifted=lifted)
        if fmt == "csv":
            _emit(curve_to_csv(curve, __version__), out)
        else:
            doc = {
                "version": __version__,
                "expr_hash": curve.expr_hash,
                "params": params.to_json(),
                "resolution": curve.resolution,
                "lifted": curve.lifted,
                "corner_residual": curve.corner_residual,
                "points": [pt.to_json() for pt in curve.points],
                "det": [complex_to_json(d) for d in curve.det],
            }
            _emit(canonical_json(doc) + "\n", out)

    _run(go)


@main.command("index")
@click.option("--spec", "spec_file", required=True, type=click.Path(dir_okay=False))
@_space_options
@click.option("--resolution", type=int, default=64, show_default=True, help="starting samples per segment")
@click.option("--lifted/--unlifted", default=True, show_default=True)
@click.option("--out", default=None, type=click.Path(dir_okay=False))
def cmd_index(spec_file, p, s, gamma, resolution, lifted, out):
    """Ellipticity, winding number and Fredholm index as JSON."""

    def go():
        space, expr = load_spec(spec_file)
        params = build_params(space, p, s, gamma)
        meta = {"version": __version__, "expr_hash": expr_hash(expr), "params": params.to_json()}
        try:
            rep = fredholm_index(expr, params, resolution, lifted=lifted)
        except NotElliptic as exc:
            doc = {
                **meta,
                "elliptic": False,
                "inf_abs_det": exc.inf_abs_det,
                "argmin": exc.argmin.to_json() if hasattr(exc.argmin, "to_json") else exc.argmin,
                "winding": None,
                "index": None,
            }
            _emit(canonical_json(doc) + "\n", out)
            sys.exit(NotElliptic.exit_code)
        _emit(canonical_json({**meta, **rep.to_json()}) + "\n", out)

    _run(go)


@main.command("verify")
@click.option("--suite", "suites", multiple=True, help="suite name; repeat for several (default: all)")
@click.option("--out", default=None, type=click.Path(dir_okay=False))
def cmd_verify(suites, out):
    """Run numerical identity checks and print the verification matrix."""
    from .verify import SUITES, matrix_json, verification_matrix

    def go():
        unknown = [s for s in suites if s not in SUITES]
        if unknown:
            raise SpecParse(f"unknown suite(s) {unknown}; choose from {sorted(SUITES)}")
        rows = verification_matrix(suites or None)
        _emit(matrix_json(rows) + "\n", out)
        failed = [r for r in rows if r["status"] == "fail"]
        if failed:
            click.echo(f"{len(failed)} check(s) failed", err=True)
            sys.exit(3)

    _run(go)


def _parse_list(text: str) -> list[float]:
    try:
        return [float(v) for v in text.split(",") if v.strip()]
    except ValueError as exc:
        raise SpecParse(f"bad number list {text!r}") from exc


def sweep_row(alpha: float, p: float, s: float, gamma: complex, resolution: int) -> dict:
    params = AnalysisParams(p=p, s=s, gamma=gamma)
    row = {"alpha": alpha, "p": p, "s": s, "elliptic": "", "index": "", "inf_abs_det": float("nan"), "status": "ok"}
    try:
        rep = fredholm_index(corner_system(alpha), params, resolution)
        row.update(elliptic="true", index=str(rep.index), inf_abs_det=rep.inf_abs_det)
    except NotElliptic as exc:
        row.update(elliptic="false", inf_abs_det=exc.inf_abs_det, status="not_elliptic")
    except (HypothesisError, NumericalError) as exc:
        row.update(status=type(exc).__name__)
    return row


def sweep_table(alphas, ps, ss, gamma: complex, resolution: int, workers: int = 1) -> str:
    for a in alphas:
        if not (0.0 < abs(a) < math.pi):
            raise AlphaOnAxis(f"need 0 < |alpha| < pi, got {a}")
    jobs = [(a, p, s) for a in alphas for p in ps for s in ss]
    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            rows = list(pool.map(lambda j: sweep_row(*j, gamma, resolution), jobs))
    else:
        rows = [sweep_row(*j, gamma, resolution) for j in jobs]
    lines = ["alpha,p,s,elliptic,index,inf_abs_det,status"]
    for r in rows:
        lines.append(
            "%.17g,%.17g,%.17g,%s,%s,%.17g,%s"
            % (r["alpha"], r["p"], r["s"], r["elliptic"], r["index"], r["inf_abs_det"], r["status"])
        )
    return "\n".join(lines) + "\n"


def default_alphas(count: int = 25, lo: float = 0.1, hi: float = math.pi - 0.1) -> list[float]:
    return [float(a) for a in np.linspace(lo, hi, count)]


@main.command("corner-sweep")
@click.option("--alphas", default=None, help="comma-separated angles (default: 25 points in [0.1, pi - 0.1])")
@click.option("--ps", default="1.5,2,3", show_default=True)
@click.option("--ss", default="-0.5,0,0.5", show_default=True)
@click.option("--gamma", default=None, help="lifting parameter (default e^{0.4i})")
@click.option("--resolution", type=int, default=64, show_default=True)
@click.option("--workers", type=int, default=1, show_default=True)
@click.option("--out", default=None, type=click.Path(dir_okay=False))
def cmd_corner_sweep(alphas, ps, ss, gamma, resolution, workers, out):
    """Index table of the 2x2 corner system over (alpha, p, s)."""

    def go():
        al = _parse_list(alphas) if alphas else default_alphas()
        g = parse_complex(gamma) if gamma else DEFAULT_SWEEP_GAMMA
        _emit(sweep_table(al, _parse_list(ps), _parse_list(ss), g, resolution, workers), out)

    _run(go)


if __name__ == "__main__":  # pragma: no cover
    main()
