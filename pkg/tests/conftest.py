import random

import pytest

from ratcurve.errors import DegenerateCurveError
from ratcurve.golden import golden_curve
from ratcurve.mubasis import CurveSpec, check_proper, compute_mubasis
from ratcurve.parse import parse_hpoly, parse_upoly
from ratcurve.poly import HPoly


def H(text, variables=("t", "v")):
    return parse_hpoly(text, variables)


def U(text):
    return parse_upoly(text)


def random_proper_curve(rng: random.Random, n: int, bound: int = 3) -> CurveSpec:
    """Draw integer coefficients until the curve is valid and properly parametrized."""
    while True:
        comps = [HPoly(n, [rng.randint(-bound, bound) for _ in range(n + 1)]) for _ in range(3)]
        curve = CurveSpec(*comps)
        try:
            curve.validate()
            basis = compute_mubasis(curve)
        except DegenerateCurveError:
            continue
        if check_proper(curve, basis).proper:
            return curve


@pytest.fixture(params=["cusp", "node", "conic", "tacnode"])
def golden(request):
    return request.param, golden_curve(request.param)


_ACCEPTANCE = pytest.StashKey[list]()


@pytest.fixture
def acceptance_log(request):
    """Lines recorded by the acceptance suite; echoed in the terminal summary."""
    return request.config.stash.setdefault(_ACCEPTANCE, [])


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    lines = config.stash.get(_ACCEPTANCE, [])
    if not lines:
        return
    terminalreporter.section("acceptance criteria")
    for line in sorted(lines, key=lambda s: int(s.split()[1])):
        terminalreporter.write_line(line)
