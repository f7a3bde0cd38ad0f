"""Reference curves with hand-checkable singularity structure."""
from __future__ import annotations

from .mubasis import CurveSpec

GOLDEN = {
    # one cusp at (0,0,1), parameter t = 0 counted twice
    "cusp": ("t^2*v", "t^3", "v^3"),
    # one node at (0,0,1), parameters t = v and t = -v
    "node": ("(t^2-v^2)*v", "t*(t^2-v^2)", "v^3"),
    # smooth conic
    "conic": ("t^2", "t*v", "v^2"),
    # tacnode at (0,0,1) with a double point in its first neighborhood,
    # plus a cusp at (0,1,1) with parameter (1:0)
    "tacnode": ("t^2*v^2-v^4", "t^4-t^2*v^2", "t^4+t*v^3+v^4"),
}


def golden_curve(name: str) -> CurveSpec:
    return CurveSpec.from_strings(*GOLDEN[name])
