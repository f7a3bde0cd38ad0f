"""Exception hierarchy shared by the pipeline and the CLI exit codes."""


class RatCurveError(Exception):
    """Base class."""


class DegenerateCurveError(RatCurveError, ValueError):
    """Input violates a curve invariant (dependent or non-coprime components, improper)."""


class VerificationError(RatCurveError):
    """An internal consistency check or an independent oracle disagreed."""


class StructuralError(VerificationError):
    """A Smith form does not have the predicted shape."""


class AnalysisIncomplete(RatCurveError):
    """A search bound or recursion depth was exhausted."""
