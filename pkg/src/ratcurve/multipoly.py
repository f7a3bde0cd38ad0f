"""Sparse polynomials in ``(x, y, w)`` for implicit equations."""
from __future__ import annotations

from typing import Iterable

from gmpy2 import mpq

from .poly import HPoly, ZERO, _format_terms, qq


class TriPoly:
    """Sparse trivariate polynomial ``{(i, j, k): coef}`` for ``x^i y^j w^k``."""

    __slots__ = ("terms",)

    def __init__(self, terms: dict | None = None):
        self.terms = {k: qq(c) for k, c in (terms or {}).items() if c}

    @classmethod
    def const(cls, c) -> "TriPoly":
        return cls({(0, 0, 0): c})

    @classmethod
    def linear(cls, a, b, c) -> "TriPoly":
        return cls({(1, 0, 0): a, (0, 1, 0): b, (0, 0, 1): c})

    @property
    def is_zero(self) -> bool:
        return not self.terms

    def total_degree(self) -> int:
        return max((sum(k) for k in self.terms), default=-1)

    def is_homogeneous(self) -> bool:
        return len({sum(k) for k in self.terms}) <= 1

    def __eq__(self, other):
        return isinstance(other, TriPoly) and self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __add__(self, other: "TriPoly") -> "TriPoly":
        out = dict(self.terms)
        for k, c in other.terms.items():
            out[k] = out.get(k, ZERO) + c
        return TriPoly(out)

    def __neg__(self):
        return TriPoly({k: -c for k, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if not isinstance(other, TriPoly):
            c = qq(other)
            return TriPoly({k: v * c for k, v in self.terms.items()})
        out: dict = {}
        for (a, b, c), x in self.terms.items():
            for (d, e, f), y in other.terms.items():
                k = (a + d, b + e, c + f)
                out[k] = out.get(k, ZERO) + x * y
        return TriPoly(out)

    __rmul__ = __mul__

    def __call__(self, x, y, w):
        return sum((c * x ** i * y ** j * w ** k for (i, j, k), c in self.terms.items()), ZERO)

    def diff(self, var: int) -> "TriPoly":
        out = {}
        for k, c in self.terms.items():
            if k[var]:
                nk = list(k)
                nk[var] -= 1
                out[tuple(nk)] = c * k[var]
        return TriPoly(out)

    def compose(self, a: HPoly, b: HPoly, c: HPoly) -> HPoly:
        """``f(a, b, c)`` for binary forms of a common degree."""
        cache: dict = {}

        def pw(f, i, tag):
            key = (tag, i)
            if key not in cache:
                cache[key] = f ** i
            return cache[key]

        acc = HPoly.zero()
        for (i, j, k), coef in self.terms.items():
            acc = acc + pw(a, i, 0) * pw(b, j, 1) * pw(c, k, 2) * coef
        return acc

    def restrict_to_line(self, p: Iterable, q: Iterable) -> HPoly:
        """Binary form ``f(lam * p + mu * q)`` in ``(lam, mu)`` -> ``(t, v)``."""
        p, q = list(p), list(q)
        forms = [HPoly(1, (qq(q[i]), qq(p[i]))) for i in range(3)]
        return self.compose(*forms)

    def primitive(self) -> "TriPoly":
        if self.is_zero:
            return self
        from .poly import _primitive_scale

        s = _primitive_scale(self.terms.values())
        lead = self.terms[max(self.terms)]
        return self * (s if lead > 0 else -s)

    def to_str(self) -> str:
        keys = sorted(self.terms, reverse=True)
        return _format_terms([(self.terms[k], (("x", k[0]), ("y", k[1]), ("w", k[2]))) for k in keys])

    def __repr__(self):
        return f"TriPoly({self.to_str()!r})"


def berkowitz_det(M: list[list[TriPoly]]) -> TriPoly:
    """Division-free determinant (Berkowitz) over a commutative ring."""
    n = len(M)
    if n == 0:
        return TriPoly.const(1)
    one = TriPoly.const(1)
    zero = TriPoly()
    # characteristic polynomial coefficients, built on leading principal blocks
    vect = [one, -M[0][0]]
    for r in range(1, n):
        # Toeplitz column for block r
        R = [M[r][j] for j in range(r)]  # row r, cols < r
        C = [M[i][r] for i in range(r)]  # col r, rows < r
        A = [row[:r] for row in M[:r]]
        a = M[r][r]
        col = [one, -a]
        x = C
        for _ in range(r):
            s = zero
            for i in range(r):
                s = s + R[i] * x[i]
            col.append(-s)
            x = [sum((A[i][j] * x[j] for j in range(r)), zero) for i in range(r)]
        new = []
        for i in range(r + 2):
            acc = zero
            for j in range(min(i + 1, len(vect))):
                if i - j < len(col):
                    acc = acc + col[i - j] * vect[j]
            new.append(acc)
        vect = new
    det = vect[n]
    return det if n % 2 == 0 else -det
