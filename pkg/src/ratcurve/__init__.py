"""Exact singularity analysis of rational planar curves."""
from .errors import AnalysisIncomplete, DegenerateCurveError, RatCurveError, StructuralError, VerificationError
from .mubasis import CurveSpec, MuBasis, Syzygy, compute_mubasis, implicitize, verify_mubasis
from .poly import BiHPoly, HPoly, UPoly
from .singularity import AnalysisReport, Options, SingularityNode, analyze, build_FG, main_smith

__all__ = [
    "AnalysisIncomplete",
    "AnalysisReport",
    "BiHPoly",
    "CurveSpec",
    "DegenerateCurveError",
    "HPoly",
    "MuBasis",
    "Options",
    "RatCurveError",
    "SingularityNode",
    "StructuralError",
    "Syzygy",
    "UPoly",
    "VerificationError",
    "analyze",
    "build_FG",
    "compute_mubasis",
    "implicitize",
    "main_smith",
    "verify_mubasis",
]
