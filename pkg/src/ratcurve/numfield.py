"""Arithmetic in a simple algebraic extension ``QQ[x]/(phi)``.

Elements are :class:`UPoly` residues of degree below ``deg phi``.  A rational
polynomial evaluated at the root ``theta = x mod phi`` is simply its residue,
so parameters that are irrational roots need no numerics at all.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from gmpy2 import mpq

from .poly import HPoly, UPoly, upoly_xgcd


@dataclass(frozen=True)
class NumberField:
    """The field ``QQ[x]/(modulus)`` for an irreducible ``modulus``."""

    modulus: UPoly

    def __post_init__(self):
        if self.modulus.degree < 1:
            raise ValueError("modulus must have positive degree")
        object.__setattr__(self, "modulus", self.modulus.monic())

    @property
    def degree(self) -> int:
        return self.modulus.degree

    def reduce(self, f: UPoly) -> UPoly:
        if f.degree < self.modulus.degree:
            return f
        return f % self.modulus

    def const(self, c) -> UPoly:
        return UPoly.const(c)

    def gen(self) -> UPoly:
        return self.reduce(UPoly.x())

    def mul(self, a: UPoly, b: UPoly) -> UPoly:
        return self.reduce(a * b)

    def inv(self, a: UPoly) -> UPoly:
        if a.is_zero:
            raise ZeroDivisionError("inverse of zero in a number field")
        d, s, _ = upoly_xgcd(a, self.modulus)
        if d.degree != 0:
            raise ArithmeticError("modulus is reducible")
        return self.reduce(s * (1 / d.lc))

    def is_rational(self, a: UPoly) -> bool:
        return a.degree <= 0

    # -- polynomials over the field, coefficient lists in ascending t -----
    def poly(self, cs: Sequence[UPoly]) -> list[UPoly]:
        out = [self.reduce(c) for c in cs]
        while out and out[-1].is_zero:
            out.pop()
        return out

    def padd(self, f, g):
        n = max(len(f), len(g))
        zero = UPoly()
        return self.poly([(f[i] if i < len(f) else zero) + (g[i] if i < len(g) else zero) for i in range(n)])

    def pscale(self, f, c):
        return self.poly([self.mul(x, c) for x in f])

    def pmul(self, f, g):
        if not f or not g:
            return []
        out = [UPoly()] * (len(f) + len(g) - 1)
        for i, a in enumerate(f):
            if a.is_zero:
                continue
            for j, b in enumerate(g):
                if not b.is_zero:
                    out[i + j] = out[i + j] + a * b
        return self.poly(out)

    def pdivmod(self, f, g):
        if not g:
            raise ZeroDivisionError("polynomial division by zero")
        r = list(f)
        dg = len(g) - 1
        if len(r) - 1 < dg:
            return [], self.poly(r)
        inv = self.inv(g[-1])
        q = [UPoly()] * (len(r) - dg)
        for k in range(len(r) - 1 - dg, -1, -1):
            c = self.mul(r[k + dg], inv)
            q[k] = c
            if not c.is_zero:
                for j in range(dg + 1):
                    if not g[j].is_zero:
                        r[k + j] = self.reduce(r[k + j] - c * g[j])
        return self.poly(q), self.poly(r[:dg])

    def pmonic(self, f):
        if not f:
            return f
        return self.pscale(f, self.inv(f[-1]))

    def pgcd(self, f, g):
        """Monic gcd of polynomials over the field."""
        f, g = self.poly(f), self.poly(g)
        while g:
            f, g = g, self.pdivmod(f, g)[1]
        return self.pmonic(f)

    def peval_rational_poly(self, f: UPoly) -> UPoly:
        """The residue of ``f`` at ``theta``."""
        return self.reduce(f)


@dataclass(frozen=True)
class KForm:
    """Binary form with coefficients in a number field: ``v^vv * core(t)`` of ``degree``."""

    field: NumberField
    degree: int
    core: tuple  # ascending coefficients of the t-chart, v-free part

    @classmethod
    def from_coeffs(cls, field: NumberField, degree: int, cs: Sequence[UPoly]) -> "KForm":
        return cls(field, degree, tuple(field.poly(cs)))

    @classmethod
    def from_hpoly(cls, field: NumberField, f: HPoly) -> "KForm":
        return cls.from_coeffs(field, f.degree, [UPoly.const(c) for c in f.coeffs])

    @property
    def is_zero(self) -> bool:
        return not self.core

    @property
    def val_v(self) -> int:
        return self.degree - (len(self.core) - 1)

    def gcd(self, other: "KForm") -> "KForm":
        """Monic gcd form; degree is the number of common roots with multiplicity."""
        if self.is_zero:
            return other
        if other.is_zero:
            return self
        core = self.field.pgcd(list(self.core), list(other.core))
        k = min(self.val_v, other.val_v)
        return KForm(self.field, len(core) - 1 + k, tuple(core))

    def multiplicity_at(self, theta: UPoly) -> int:
        """Order of vanishing at ``(theta : 1)``."""
        lin = [self.field.reduce(-theta), UPoly.const(1)]
        f = list(self.core)
        e = 0
        while f:
            q, r = self.field.pdivmod(f, lin)
            if r:
                break
            f = q
            e += 1
        return e

    def divide_linear(self, theta: UPoly) -> "KForm":
        """Exact quotient by ``t - theta*v``."""
        q, r = self.field.pdivmod(list(self.core), [self.field.reduce(-theta), UPoly.const(1)])
        if r:
            raise ArithmeticError("form does not vanish at the given parameter")
        return KForm(self.field, self.degree - 1, tuple(q))

    def divide_v(self) -> "KForm":
        if self.val_v < 1:
            raise ArithmeticError("form does not vanish at (1:0)")
        return KForm(self.field, self.degree - 1, self.core)

    def is_rational(self) -> bool:
        return all(c.degree <= 0 for c in self.core)

    def to_hpoly(self) -> HPoly:
        if not self.is_rational():
            raise ValueError("form has irrational coefficients")
        cs = [c[0] for c in self.core] + [mpq(0)] * self.val_v
        return HPoly(self.degree, cs)

    def monic_equal(self, other: "KForm") -> bool:
        if self.degree != other.degree:
            return False
        a = self.field.pmonic(list(self.core))
        b = self.field.pmonic(list(other.core))
        return a == b


def rank_over(field: NumberField, rows: list[list[UPoly]]) -> int:
    """Rank of a matrix with entries in the field (Gaussian elimination)."""
    a = [[field.reduce(x) for x in r] for r in rows]
    if not a:
        return 0
    m, n = len(a), len(a[0])
    rk = 0
    for c in range(n):
        p = next((i for i in range(rk, m) if not a[i][c].is_zero), None)
        if p is None:
            continue
        a[rk], a[p] = a[p], a[rk]
        inv = field.inv(a[rk][c])
        for i in range(rk + 1, m):
            if not a[i][c].is_zero:
                f = field.mul(a[i][c], inv)
                a[i] = [field.reduce(x - f * y) if not y.is_zero else x for x, y in zip(a[i], a[rk])]
        rk += 1
        if rk == m:
            break
    return rk
