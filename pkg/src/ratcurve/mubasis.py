"""Rational planar curves, their mu-bases and implicit equations."""
from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from gmpy2 import mpq

from .errors import DegenerateCurveError
from .factor import squarefree_part
from .linalg import kernel, rank
from .multipoly import TriPoly, berkowitz_det
from .parse import parse_hpoly
from .poly import HPoly, ZERO, _primitive_scale, fmt_q, hgcd, hgcd_many, qq
from .polymat import CheckReport


@dataclass(frozen=True)
class CurveSpec:
    """Parametrization ``P(t,v) = (a, b, c)`` by binary forms of one degree ``n``."""

    a: HPoly
    b: HPoly
    c: HPoly

    @property
    def n(self) -> int:
        return max(f.degree for f in self.components)

    @property
    def components(self) -> tuple[HPoly, HPoly, HPoly]:
        return (self.a, self.b, self.c)

    def validate(self) -> "CurveSpec":
        degs = {f.degree for f in self.components if not f.is_zero}
        if len(degs) != 1:
            raise DegenerateCurveError(f"components must share one degree, got {sorted(degs)}")
        n = degs.pop()
        if n < 1:
            raise DegenerateCurveError("parametrization is constant")
        rows = [[f[i] for i in range(n + 1)] if not f.is_zero else [ZERO] * (n + 1) for f in self.components]
        if rank(rows) < 3:
            raise DegenerateCurveError("components linearly dependent")
        if hgcd_many(self.components).degree > 0:
            raise DegenerateCurveError("components share a common factor")
        return self

    def dot(self, A: HPoly, B: HPoly, C: HPoly) -> HPoly:
        return A * self.a + B * self.b + C * self.c

    def at(self, point) -> tuple[mpq, mpq, mpq]:
        return tuple(f.eval_at(point) if not f.is_zero else ZERO for f in self.components)

    def substitute(self, a, b, c, d) -> "CurveSpec":
        """Reparametrize by ``(t, v) -> (a t + b v, c t + d v)``."""
        return CurveSpec(*(f.substitute_linear(a, b, c, d) for f in self.components))

    def transform(self, M: Sequence[Sequence]) -> "CurveSpec":
        """Apply a 3x3 projective change of coordinates ``X' = M X``."""
        out = []
        for row in M:
            acc = HPoly.zero()
            for coef, f in zip(row, self.components):
                if qq(coef) and not f.is_zero:
                    acc = acc + f * qq(coef)
            out.append(acc)
        return CurveSpec(*out)

    def to_json(self) -> dict:
        return {
            "degree": self.n,
            "a": [fmt_q(x) for x in _padded(self.a, self.n)],
            "b": [fmt_q(x) for x in _padded(self.b, self.n)],
            "c": [fmt_q(x) for x in _padded(self.c, self.n)],
        }

    def to_text(self) -> tuple[str, str, str]:
        return tuple(f.to_str() for f in self.components)

    @classmethod
    def from_json(cls, data: dict) -> "CurveSpec":
        """Accepts coefficient lists (ascending in ``t``) or polynomial strings."""
        if not isinstance(data, dict):
            raise DegenerateCurveError("curve description must be a JSON object")
        missing = [k for k in ("a", "b", "c") if k not in data]
        if missing:
            raise DegenerateCurveError(f"missing component(s) {missing}")
        deg = data.get("degree")
        comps = []
        for key in ("a", "b", "c"):
            val = data[key]
            if isinstance(val, str):
                f = parse_hpoly(val)
                if f.is_zero and deg is not None:
                    f = HPoly.zero()
            elif isinstance(val, list):
                d = len(val) - 1 if deg is None else deg
                if len(val) != d + 1:
                    raise DegenerateCurveError(f"component {key} needs {d + 1} coefficients, got {len(val)}")
                f = HPoly(d, [qq(x) for x in val])
            else:
                raise DegenerateCurveError(f"component {key} must be a list or a string")
            comps.append(f)
        if deg is not None:
            for key, f in zip("abc", comps):
                if not f.is_zero and f.degree != deg:
                    raise DegenerateCurveError(f"component {key} has degree {f.degree}, expected {deg}")
        return cls(*comps)

    @classmethod
    def from_strings(cls, a: str, b: str, c: str) -> "CurveSpec":
        return cls(parse_hpoly(a), parse_hpoly(b), parse_hpoly(c))


def _padded(f: HPoly, n: int):
    return list(f.coeffs) if not f.is_zero else [ZERO] * (n + 1)


@dataclass(frozen=True)
class Syzygy:
    """A moving line ``(A, B, C)`` with ``A a + B b + C c == 0``."""

    A: HPoly
    B: HPoly
    C: HPoly

    @property
    def degree(self) -> int:
        return max(f.degree for f in self.components)

    @property
    def components(self):
        return (self.A, self.B, self.C)

    def is_zero(self) -> bool:
        return all(f.is_zero for f in self.components)

    def pad(self) -> tuple[list, list, list]:
        d = self.degree
        return tuple(_padded(f, d) for f in self.components)

    def cross(self, other: "Syzygy") -> tuple[HPoly, HPoly, HPoly]:
        p, q = self.components, other.components
        return (p[1] * q[2] - p[2] * q[1], p[2] * q[0] - p[0] * q[2], p[0] * q[1] - p[1] * q[0])

    def at(self, point) -> tuple[mpq, mpq, mpq]:
        return tuple(f.eval_at(point) if not f.is_zero else ZERO for f in self.components)

    def scaled(self, f: HPoly) -> "Syzygy":
        return Syzygy(*(g * f for g in self.components))

    def __add__(self, other: "Syzygy") -> "Syzygy":
        return Syzygy(*(x + y for x, y in zip(self.components, other.components)))

    def to_text(self) -> list[str]:
        return [f.to_str() for f in self.components]


@dataclass(frozen=True)
class MuBasis:
    p: Syzygy
    q: Syzygy

    @property
    def mu(self) -> int:
        return self.p.degree


def _syzygy_system(curve: CurveSpec, d: int) -> list[list[mpq]]:
    n = curve.n
    rows = []
    comps = [_padded(f, n) for f in curve.components]
    for e in range(d + n + 1):
        row = []
        for comp in comps:
            for i in range(d + 1):
                j = e - i
                row.append(comp[j] if 0 <= j <= n else ZERO)
        rows.append(row)
    return rows


def _vec_to_syzygy(vec: Sequence[mpq], d: int) -> Syzygy:
    k = d + 1
    return Syzygy(*(HPoly(d, vec[i * k : (i + 1) * k]) for i in range(3)))


def _normalize_vec(vec: Sequence[mpq]) -> list[mpq]:
    s = _primitive_scale(vec)
    first = next(x for x in vec if x)
    if first < 0:
        s = -s
    return [x * s for x in vec]


def compute_mubasis(curve: CurveSpec) -> MuBasis:
    """Lowest-degree syzygy ``p`` and a complementary ``q`` of degree ``n - mu``.

    For each degree ``d`` the syzygies form the kernel of an exact linear
    system in the coefficients of ``(A, B, C)``; ``p`` is the first kernel
    vector at the smallest admissible ``d`` and ``q`` the first kernel vector
    at degree ``n - mu`` outside the span of the multiples of ``p``.
    """
    curve.validate()
    n = curve.n
    p = None
    mu = None
    for d in range(0, n + 1):
        ker = kernel(_syzygy_system(curve, d))
        if ker:
            mu = d
            if 2 * d == n:
                if len(ker) != 2:
                    raise DegenerateCurveError("unexpected syzygy dimension")
                return MuBasis(
                    _vec_to_syzygy(_normalize_vec(ker[0]), d), _vec_to_syzygy(_normalize_vec(ker[1]), d)
                )
            p_vec = _normalize_vec(ker[0])
            p = _vec_to_syzygy(p_vec, d)
            break
    if p is None:
        raise DegenerateCurveError("no syzygy found")
    dq = n - mu
    ker = kernel(_syzygy_system(curve, dq))
    multiples = []
    for i in range(dq - mu + 1):
        mono = HPoly.monomial(1, i, dq - mu)
        m = p.scaled(mono)
        multiples.append([x for comp in m.pad() for x in comp])
    base = rank(multiples)
    for vec in ker:
        if rank(multiples + [vec]) > base:
            return MuBasis(p, _vec_to_syzygy(_normalize_vec(vec), dq))
    raise DegenerateCurveError("could not complete the mu-basis")


def _cross_ratio(cross, comps) -> tuple[bool, mpq | None]:
    k = None
    for x, y in zip(cross, comps):
        if y.is_zero:
            if not x.is_zero:
                return False, None
            continue
        if x.is_zero:
            return False, None
        if x.degree != y.degree:
            return False, None
        i = next(i for i, c in enumerate(y.coeffs) if c)
        ratio = x.coeffs[i] / y.coeffs[i]
        if x != y * ratio:
            return False, None
        if k is None:
            k = ratio
        elif k != ratio:
            return False, None
    return k is not None and k != 0, k


def verify_mubasis(curve: CurveSpec, basis: MuBasis) -> CheckReport:
    """Check the syzygy identities, the degree sum and ``p x q = k P``."""
    issues = []
    for name, s in (("p", basis.p), ("q", basis.q)):
        if s.is_zero() or not curve.dot(*s.components).is_zero:
            issues.append(f"{name} is not a syzygy")
    if basis.p.degree + basis.q.degree != curve.n:
        issues.append(f"deg p + deg q = {basis.p.degree + basis.q.degree} != {curve.n}")
    ok_cross, k = _cross_ratio(basis.p.cross(basis.q), curve.components)
    if not ok_cross:
        issues.append("p x q is not a nonzero constant multiple of P")
    detail = "; ".join(issues) if issues else f"k = {fmt_q(k)}"
    rep = CheckReport("mu-basis", not issues, detail, issues)
    rep.k = k
    return rep


def _moving_line_tri(s: Syzygy) -> list[TriPoly]:
    """Coefficients (descending in ``s``) of ``A x + B y + C w``."""
    A, B, C = s.pad()
    d = s.degree
    return [TriPoly.linear(A[i], B[i], C[i]) for i in range(d, -1, -1)]


def implicitize(basis: MuBasis) -> TriPoly:
    """Implicit equation as the resultant of the two moving lines."""
    f = _moving_line_tri(basis.p)
    g = _moving_line_tri(basis.q)
    m, k = len(f) - 1, len(g) - 1
    size = m + k
    zero = TriPoly()
    rows = []
    for i in range(k):
        rows.append([zero] * i + f + [zero] * (size - m - 1 - i))
    for i in range(m):
        rows.append([zero] * i + g + [zero] * (size - k - 1 - i))
    return berkowitz_det(rows).primitive()


# deterministic lines (pairs of points) used to measure implicit degree
_PROBE_LINES = (
    ((1, 2, 3), (-2, 1, 5)),
    ((3, -1, 2), (1, 4, -3)),
    ((2, 5, -1), (-3, 2, 7)),
)


def implicit_degree(f: TriPoly) -> int:
    """Degree of the reduced curve ``f = 0`` (squarefree part, sampled on lines)."""
    best = 0
    for p, q in _PROBE_LINES:
        r = f.restrict_to_line(p, q)
        if r.is_zero:
            continue
        best = max(best, squarefree_part(r).degree)
    return best


@dataclass
class ProperReport:
    proper: bool
    implicit_degree: int
    fiber_degree: int
    detail: str


_FIBER_SAMPLES = ((mpq(2), mpq(1)), (mpq(-3), mpq(2)), (mpq(5), mpq(-7)))


def fiber_degree(curve: CurveSpec, basis: MuBasis) -> int:
    """Number of parameters over a sample point: ``deg gcd(p(s0).P, q(s0).P)``, minimized."""
    best = None
    for pt in _FIBER_SAMPLES:
        lp = curve.dot(*(HPoly.const(x) for x in basis.p.at(pt)))
        lq = curve.dot(*(HPoly.const(x) for x in basis.q.at(pt)))
        if lp.is_zero and lq.is_zero:
            continue
        g = hgcd(lp, lq)
        best = g.degree if best is None else min(best, g.degree)
    return best if best is not None else 0


def check_proper(curve: CurveSpec, basis: MuBasis) -> ProperReport:
    """Generic injectivity: implicit degree ``n`` and one parameter per generic point."""
    f = implicitize(basis)
    deg = implicit_degree(f)
    fib = fiber_degree(curve, basis)
    ok = deg == curve.n and fib == 1
    return ProperReport(ok, deg, fib, f"implicit degree {deg} (n = {curve.n}), generic fiber {fib}")
