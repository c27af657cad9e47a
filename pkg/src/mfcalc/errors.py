"""Exception hierarchy.

Every error carries an ``exit_code`` used by the CLI:
1 parse, 2 hypothesis/parameter violation, 3 numerical, 4 not elliptic.
"""

from __future__ import annotations


class MFError(Exception):
    exit_code = 3


class SpecParse(MFError):
    exit_code = 1


# -- hypothesis / parameter violations (exit 2) --------------------------

class HypothesisError(MFError):
    exit_code = 2


class InvalidParams(HypothesisError):
    pass


class DuplicatePole(HypothesisError):
    pass


class PoleOnPositiveAxis(HypothesisError):
    pass


class NonpositiveMultiplicity(HypothesisError):
    pass


class BadGammaArg(HypothesisError):
    pass


class ArgCOnAxis(HypothesisError):
    pass


class PVNotRequested(HypothesisError):
    pass


class SOutOfRange(HypothesisError):
    pass


class HypothesisViolated(HypothesisError):
    def __init__(self, message: str, failed: list[str] | None = None):
        super().__init__(message)
        self.failed = list(failed or [])


class NonintegrableKernel(HypothesisError):
    pass


class MissingAnalyticityFlags(HypothesisError):
    pass


class UnsupportedExprShape(HypothesisError):
    pass


class AlphaOnAxis(HypothesisError):
    pass


class NoAnalyticitySide(HypothesisError):
    pass


# -- numerical failures (exit 3) -----------------------------------------

class NumericalError(MFError):
    exit_code = 3


class GridMismatch(NumericalError):
    pass


class GridTooCoarse(NumericalError):
    pass


class EdgeLeakage(NumericalError):
    pass


class ZeroBase(NumericalError):
    pass


class PhaseJump(NumericalError):
    pass


class BranchCut(NumericalError):
    pass


class PoleHit(NumericalError):
    pass


class NonIntegerWinding(NumericalError):
    pass


class ResolutionCap(NumericalError):
    pass


# -- ellipticity (exit 4) ------------------------------------------------

class NotElliptic(MFError):
    exit_code = 4

    def __init__(self, message: str, inf_abs_det: float = 0.0, argmin=None):
        super().__init__(message)
        self.inf_abs_det = inf_abs_det
        self.argmin = argmin
