"""Exact univariate, homogeneous and bihomogeneous polynomials over QQ.

Three dense representations share one coefficient type (``gmpy2.mpq``):

* :class:`UPoly`  -- ``c0 + c1*x + ... + cd*x^d``.
* :class:`HPoly`  -- a binary form ``sum c_i t^i v^(d-i)`` of fixed degree ``d``.
* :class:`BiHPoly` -- a bihomogeneous form in ``(s,u; t,v)``; cell ``[i][j]``
  holds the coefficient of ``s^i u^(ds-i) t^j v^(dt-j)``.

All values are immutable.  The zero form is explicit: ``HPoly.zero()`` has
degree ``-1`` and acts as the additive identity for every degree.
"""
from __future__ import annotations

from fractions import Fraction
from functools import reduce
from math import gcd as igcd
from typing import Iterable, Sequence

from gmpy2 import mpq, mpz

Q = mpq
ZERO = mpq(0)
ONE = mpq(1)


def qq(x) -> mpq:
    """Coerce ``x`` (int, str ``"p/q"``, Fraction, mpq) to an exact rational."""
    if isinstance(x, float):
        raise TypeError("floating point coefficients are not accepted")
    if isinstance(x, str):
        x = x.strip()
        if not x:
            raise ValueError("empty coefficient string")
        return mpq(Fraction(x))
    if isinstance(x, Fraction):
        return mpq(x.numerator, x.denominator)
    return mpq(x)


def fmt_q(x) -> str:
    """Canonical text for a rational: ``"p"`` or ``"p/q"``."""
    x = mpq(x)
    if x.denominator == 1:
        return str(x.numerator)
    return f"{x.numerator}/{x.denominator}"


def _lcm(a: int, b: int) -> int:
    return a // igcd(a, b) * b


def _primitive_scale(coeffs: Iterable[mpq]) -> mpq:
    """Scalar turning ``coeffs`` into coprime integers (sign left unchanged)."""
    dens = 1
    nums = 0
    cs = [c for c in coeffs if c]
    if not cs:
        return ONE
    for c in cs:
        dens = _lcm(dens, int(c.denominator))
    for c in cs:
        nums = igcd(nums, int(c.numerator * (dens // int(c.denominator))))
    return mpq(dens, nums)


# ---------------------------------------------------------------------------
# Univariate
# ---------------------------------------------------------------------------


class UPoly:
    """Dense univariate polynomial, coefficients in ascending powers."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable = ()):
        cs = [qq(c) for c in coeffs]
        while cs and not cs[-1]:
            cs.pop()
        self.coeffs: tuple = tuple(cs)

    @classmethod
    def _raw(cls, cs: list) -> "UPoly":
        while cs and not cs[-1]:
            cs.pop()
        obj = object.__new__(cls)
        obj.coeffs = tuple(cs)
        return obj

    @classmethod
    def const(cls, c) -> "UPoly":
        return cls((c,))

    @classmethod
    def x(cls) -> "UPoly":
        return cls((0, 1))

    @classmethod
    def monomial(cls, c, k: int) -> "UPoly":
        return cls([0] * k + [c])

    # -- basic properties -------------------------------------------------
    @property
    def is_zero(self) -> bool:
        return not self.coeffs

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    @property
    def lc(self) -> mpq:
        return self.coeffs[-1] if self.coeffs else ZERO

    def __getitem__(self, k: int) -> mpq:
        return self.coeffs[k] if 0 <= k < len(self.coeffs) else ZERO

    def __len__(self):
        return len(self.coeffs)

    def __eq__(self, other):
        if isinstance(other, UPoly):
            return self.coeffs == other.coeffs
        if isinstance(other, (int, Fraction)) or type(other) is type(ZERO):
            return self.coeffs == UPoly.const(other).coeffs
        return NotImplemented

    def __hash__(self):
        return hash(("UPoly", self.coeffs))

    def __repr__(self):
        return f"UPoly({self.to_str()!r})"

    def to_str(self, var: str = "t") -> str:
        terms = [(c, k) for k, c in enumerate(self.coeffs) if c]
        return _format_terms([(c, ((var, k),)) for c, k in reversed(terms)])

    # -- arithmetic -------------------------------------------------------
    def __neg__(self):
        return UPoly._raw([-c for c in self.coeffs])

    def __add__(self, other):
        if not isinstance(other, UPoly):
            other = UPoly.const(other)
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        cs = list(a)
        for i, c in enumerate(b):
            cs[i] = cs[i] + c
        return UPoly._raw(cs)

    __radd__ = __add__

    def __sub__(self, other):
        if not isinstance(other, UPoly):
            other = UPoly.const(other)
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if not isinstance(other, UPoly):
            c = qq(other)
            if not c:
                return UPoly()
            return UPoly._raw([x * c for x in self.coeffs])
        a, b = self.coeffs, other.coeffs
        if not a or not b:
            return UPoly()
        out = [ZERO] * (len(a) + len(b) - 1)
        for i, x in enumerate(a):
            if not x:
                continue
            for j, y in enumerate(b):
                out[i + j] += x * y
        return UPoly._raw(out)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        out = UPoly.const(1)
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def __divmod__(self, other: "UPoly"):
        if other.is_zero:
            raise ZeroDivisionError("polynomial division by zero")
        r = list(self.coeffs)
        db = other.degree
        if len(r) - 1 < db:
            return UPoly(), self
        inv = 1 / other.lc
        q = [ZERO] * (len(r) - db)
        b = other.coeffs
        for k in range(len(r) - 1 - db, -1, -1):
            c = r[k + db] * inv
            q[k] = c
            if c:
                for j in range(db + 1):
                    r[k + j] -= c * b[j]
        return UPoly._raw(q), UPoly._raw(r[:db])

    def __floordiv__(self, other):
        return divmod(self, other)[0]

    def __mod__(self, other):
        return divmod(self, other)[1]

    def exquo(self, other: "UPoly") -> "UPoly":
        """Exact quotient; raises ``ArithmeticError`` when ``other`` does not divide."""
        q, r = divmod(self, other)
        if not r.is_zero:
            raise ArithmeticError("inexact polynomial division")
        return q

    def divides(self, other: "UPoly") -> bool:
        """True when ``self`` divides ``other``."""
        if self.is_zero:
            return other.is_zero
        return divmod(other, self)[1].is_zero

    # -- evaluation and calculus -----------------------------------------
    def __call__(self, x):
        acc = ZERO
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def derivative(self) -> "UPoly":
        return UPoly._raw([k * c for k, c in enumerate(self.coeffs)][1:])

    def compose(self, other: "UPoly") -> "UPoly":
        acc = UPoly()
        for c in reversed(self.coeffs):
            acc = acc * other + c
        return acc

    # -- normalization ----------------------------------------------------
    def monic(self) -> "UPoly":
        if self.is_zero:
            return self
        return self * (1 / self.lc)

    def primitive(self) -> "UPoly":
        """Integer coefficients with gcd 1 and positive leading coefficient."""
        if self.is_zero:
            return self
        s = _primitive_scale(self.coeffs)
        if self.lc < 0:
            s = -s
        return self * s

    def content_int(self) -> tuple[int, ...]:
        return tuple(int(c.numerator) for c in self.primitive().coeffs)


def upoly_gcd(f: UPoly, g: UPoly) -> UPoly:
    """Monic gcd over QQ (zero only when both inputs are zero)."""
    while not g.is_zero:
        f, g = g, (f % g)
        if not g.is_zero:
            g = g.monic()
    return f.monic()


def upoly_xgcd(f: UPoly, g: UPoly) -> tuple[UPoly, UPoly, UPoly]:
    """Return ``(d, a, b)`` with ``a*f + b*g = d`` and ``d`` monic."""
    r0, r1 = f, g
    a0, a1 = UPoly.const(1), UPoly()
    b0, b1 = UPoly(), UPoly.const(1)
    while not r1.is_zero:
        q, r = divmod(r0, r1)
        r0, r1 = r1, r
        a0, a1 = a1, a0 - q * a1
        b0, b1 = b1, b0 - q * b1
    if r0.is_zero:
        return r0, a0, b0
    inv = 1 / r0.lc
    return r0 * inv, a0 * inv, b0 * inv


def upoly_resultant(f: UPoly, g: UPoly) -> mpq:
    """Sylvester resultant ``Res(f, g)`` via the Euclidean recurrence."""
    if f.is_zero or g.is_zero:
        return ZERO
    m, n = f.degree, g.degree
    if n == 0:
        return g.lc ** m
    if m == 0:
        return f.lc ** n
    r = f % g
    if r.is_zero:
        return ZERO
    sign = -1 if (m * n) % 2 else 1
    return sign * g.lc ** (m - r.degree) * upoly_resultant(g, r)


# ---------------------------------------------------------------------------
# Binary forms
# ---------------------------------------------------------------------------


class HPoly:
    """Binary form ``sum_i c_i t^i v^(d-i)`` of degree ``d``.

    The zero form has ``degree == -1`` and no coefficients; a list of all-zero
    coefficients is collapsed to it on construction.
    """

    __slots__ = ("degree", "coeffs")

    def __init__(self, degree: int, coeffs: Iterable = ()):
        cs = tuple(qq(c) for c in coeffs)
        if not any(cs):
            self.degree, self.coeffs = -1, ()
            return
        if len(cs) != degree + 1:
            raise ValueError(f"form of degree {degree} needs {degree + 1} coefficients, got {len(cs)}")
        self.degree, self.coeffs = degree, cs

    @classmethod
    def _raw(cls, degree: int, cs: Sequence) -> "HPoly":
        obj = object.__new__(cls)
        if not any(cs):
            obj.degree, obj.coeffs = -1, ()
        else:
            obj.degree, obj.coeffs = degree, tuple(cs)
        return obj

    @classmethod
    def zero(cls) -> "HPoly":
        return cls._raw(-1, ())

    @classmethod
    def const(cls, c) -> "HPoly":
        return cls(0, (c,))

    @classmethod
    def t(cls) -> "HPoly":
        return cls(1, (0, 1))

    @classmethod
    def v(cls) -> "HPoly":
        return cls(1, (1, 0))

    @classmethod
    def monomial(cls, c, i: int, degree: int) -> "HPoly":
        """``c * t^i * v^(degree-i)``."""
        cs = [0] * (degree + 1)
        cs[i] = c
        return cls(degree, cs)

    @classmethod
    def from_chart_t(cls, f: UPoly, degree: int | None = None) -> "HPoly":
        """Homogenize ``f(t)`` with ``v``; default degree is ``deg f``."""
        if f.is_zero:
            return cls.zero()
        d = f.degree if degree is None else degree
        if f.degree > d:
            raise ValueError("degree too small for homogenization")
        return cls._raw(d, list(f.coeffs) + [ZERO] * (d - f.degree))

    @classmethod
    def from_chart_v(cls, f: UPoly, degree: int | None = None) -> "HPoly":
        """Homogenize ``f(v)`` (the chart ``t = 1``) with ``t``."""
        if f.is_zero:
            return cls.zero()
        d = f.degree if degree is None else degree
        if f.degree > d:
            raise ValueError("degree too small for homogenization")
        cs = list(f.coeffs) + [ZERO] * (d - f.degree)
        return cls._raw(d, cs[::-1])

    @classmethod
    def linear(cls, a, b) -> "HPoly":
        """``a*t + b*v``."""
        return cls(1, (b, a))

    # -- properties -------------------------------------------------------
    @property
    def is_zero(self) -> bool:
        return self.degree < 0

    def __getitem__(self, i: int) -> mpq:
        return self.coeffs[i] if 0 <= i < len(self.coeffs) else ZERO

    @property
    def lc(self) -> mpq:
        """Coefficient of the highest nonzero power of ``t``."""
        for c in reversed(self.coeffs):
            if c:
                return c
        return ZERO

    def val_v(self) -> int:
        """Multiplicity of ``v`` as a factor (the root ``(1:0)``)."""
        if self.is_zero:
            raise ValueError("valuation of the zero form")
        top = max(i for i, c in enumerate(self.coeffs) if c)
        return self.degree - top

    def val_t(self) -> int:
        if self.is_zero:
            raise ValueError("valuation of the zero form")
        return min(i for i, c in enumerate(self.coeffs) if c)

    def chart_t(self) -> UPoly:
        """Dehomogenize at ``v = 1``."""
        return UPoly._raw(list(self.coeffs))

    def chart_v(self) -> UPoly:
        """Dehomogenize at ``t = 1`` as a polynomial in ``v``."""
        return UPoly._raw(list(self.coeffs[::-1]))

    def __eq__(self, other):
        if not isinstance(other, HPoly):
            return NotImplemented
        return self.degree == other.degree and self.coeffs == other.coeffs

    def __hash__(self):
        return hash(("HPoly", self.degree, self.coeffs))

    def __repr__(self):
        return f"HPoly({self.to_str()!r})"

    def __str__(self):
        return self.to_str()

    def to_str(self, vars: tuple[str, str] = ("t", "v")) -> str:
        if self.is_zero:
            return "0"
        d = self.degree
        terms = []
        for i in range(d, -1, -1):
            c = self.coeffs[i]
            if c:
                terms.append((c, ((vars[0], i), (vars[1], d - i))))
        return _format_terms(terms)

    # -- arithmetic -------------------------------------------------------
    def __neg__(self):
        return HPoly._raw(self.degree, [-c for c in self.coeffs])

    def __add__(self, other: "HPoly") -> "HPoly":
        if other.is_zero:
            return self
        if self.is_zero:
            return other
        if self.degree != other.degree:
            raise ValueError(f"cannot add forms of degree {self.degree} and {other.degree}")
        return HPoly._raw(self.degree, [a + b for a, b in zip(self.coeffs, other.coeffs)])

    def __sub__(self, other: "HPoly") -> "HPoly":
        return self + (-other)

    def __mul__(self, other):
        if not isinstance(other, HPoly):
            c = qq(other)
            return HPoly._raw(self.degree, [x * c for x in self.coeffs]) if c else HPoly.zero()
        if self.is_zero or other.is_zero:
            return HPoly.zero()
        a, b = self.coeffs, other.coeffs
        out = [ZERO] * (len(a) + len(b) - 1)
        for i, x in enumerate(a):
            if not x:
                continue
            for j, y in enumerate(b):
                out[i + j] += x * y
        return HPoly._raw(self.degree + other.degree, out)

    __rmul__ = __mul__

    def __pow__(self, k: int) -> "HPoly":
        out = HPoly.const(1)
        for _ in range(k):
            out = out * self
        return out

    def exquo(self, other: "HPoly") -> "HPoly":
        """Exact quotient; ``ArithmeticError`` if ``other`` does not divide ``self``."""
        if other.is_zero:
            raise ZeroDivisionError("division by the zero form")
        if self.is_zero:
            return self
        d = self.degree - other.degree
        if d < 0:
            raise ArithmeticError("inexact division of forms (degree)")
        q, r = divmod(self.chart_t(), other.chart_t())
        if not r.is_zero or q.degree > d:
            raise ArithmeticError("inexact division of forms")
        return HPoly.from_chart_t(q, d)

    def divides(self, other: "HPoly") -> bool:
        """True when ``self`` divides ``other``."""
        try:
            other.exquo(self)
        except ArithmeticError:
            return False
        return True

    def __call__(self, t, v):
        d = self.degree
        return sum((c * t ** i * v ** (d - i) for i, c in enumerate(self.coeffs) if c), ZERO)

    def eval_at(self, point) -> mpq:
        t, v = (qq(x) for x in point)
        if not t and not v:
            raise ValueError("(0,0) is not a point of the projective line")
        return self(t, v)

    def substitute_linear(self, a, b, c, d) -> "HPoly":
        """Form ``f(a*t + b*v, c*t + d*v)``."""
        if self.is_zero:
            return self
        lt = HPoly.linear(a, b)
        lv = HPoly.linear(c, d)
        acc = HPoly.zero()
        n = self.degree
        for i, coef in enumerate(self.coeffs):
            if coef:
                acc = acc + (lt ** i) * (lv ** (n - i)) * coef
        if acc.is_zero:
            return acc
        return HPoly._raw(n, acc.coeffs) if acc.degree == n else acc

    # -- normalization ----------------------------------------------------
    def normalize(self) -> "HPoly":
        """Primitive integer coefficients, positive leading coefficient."""
        if self.is_zero:
            return self
        s = _primitive_scale(self.coeffs)
        if self.lc < 0:
            s = -s
        return self * s

    def is_unit(self) -> bool:
        return self.degree == 0

    def same_up_to_unit(self, other: "HPoly") -> bool:
        return self.normalize() == other.normalize()


def hgcd(f: HPoly, g: HPoly) -> HPoly:
    """Normalized gcd of two binary forms.

    The chart ``v = 1`` carries every root but ``(1:0)``; that one is the
    common power of ``v``.
    """
    if f.is_zero and g.is_zero:
        raise ValueError("gcd of two zero forms")
    if f.is_zero:
        return g.normalize()
    if g.is_zero:
        return f.normalize()
    core = upoly_gcd(f.chart_t(), g.chart_t())
    k = min(f.val_v(), g.val_v())
    return (HPoly.from_chart_t(core) * HPoly.v() ** k).normalize()


def hlcm(f: HPoly, g: HPoly) -> HPoly:
    if f.is_zero or g.is_zero:
        return HPoly.zero()
    return (f * g).exquo(hgcd(f, g)).normalize()


def hgcd_many(forms: Iterable[HPoly]) -> HPoly:
    forms = [f for f in forms if not f.is_zero]
    if not forms:
        return HPoly.zero()
    return reduce(hgcd, forms).normalize()


def hprod(forms: Iterable[HPoly]) -> HPoly:
    out = HPoly.const(1)
    for f in forms:
        out = out * f
    return out


def sylvester_rows(f: Sequence, g: Sequence) -> list[list[mpq]]:
    """Sylvester matrix of two coefficient lists given in descending powers."""
    m, n = len(f) - 1, len(g) - 1
    size = m + n
    rows = []
    for i in range(n):
        rows.append([ZERO] * i + list(f) + [ZERO] * (size - m - 1 - i))
    for i in range(m):
        rows.append([ZERO] * i + list(g) + [ZERO] * (size - n - 1 - i))
    return rows


def hresultant(f: HPoly, g: HPoly) -> mpq:
    """Resultant of two binary forms at their own degrees (Sylvester determinant).

    Roots at ``(1:0)`` are accounted for, unlike a resultant of the charts.
    """
    from .linalg import det

    if f.is_zero and g.is_zero:
        raise ValueError("resultant of two zero forms")
    if f.is_zero or g.is_zero:
        return ZERO
    if f.degree == 0 and g.degree == 0:
        return mpq(1)
    return det(sylvester_rows(f.coeffs[::-1], g.coeffs[::-1]))


def restrict_to(d: HPoly, h: HPoly) -> HPoly:
    """Part of ``d`` supported on the roots of ``h`` (the ``d^Q`` of a point)."""
    if d.is_zero:
        raise ValueError("restriction of the zero form")
    part = HPoly.const(1)
    g = hgcd(d, h)
    while g.degree > 0:
        part = part * g
        d = d.exquo(g)
        g = hgcd(d, g)
    return part.normalize()


# ---------------------------------------------------------------------------
# Bihomogeneous forms
# ---------------------------------------------------------------------------


class BiHPoly:
    """Bihomogeneous form; ``grid[i][j]`` multiplies ``s^i u^(ds-i) t^j v^(dt-j)``."""

    __slots__ = ("dsu", "dtv", "grid")

    def __init__(self, dsu: int, dtv: int, grid: Iterable[Iterable]):
        g = tuple(tuple(qq(c) for c in row) for row in grid)
        if not any(any(row) for row in g):
            self.dsu, self.dtv, self.grid = -1, -1, ()
            return
        if len(g) != dsu + 1 or any(len(row) != dtv + 1 for row in g):
            raise ValueError("grid shape does not match bidegree")
        self.dsu, self.dtv, self.grid = dsu, dtv, g

    @classmethod
    def _raw(cls, dsu: int, dtv: int, grid) -> "BiHPoly":
        obj = object.__new__(cls)
        g = tuple(tuple(row) for row in grid)
        if not any(any(row) for row in g):
            obj.dsu, obj.dtv, obj.grid = -1, -1, ()
        else:
            obj.dsu, obj.dtv, obj.grid = dsu, dtv, g
        return obj

    @classmethod
    def zero(cls) -> "BiHPoly":
        return cls._raw(-1, -1, ())

    @classmethod
    def outer(cls, fsu: HPoly, gtv: HPoly) -> "BiHPoly":
        """Product ``f(s,u) * g(t,v)``."""
        if fsu.is_zero or gtv.is_zero:
            return cls.zero()
        return cls._raw(fsu.degree, gtv.degree, [[a * b for b in gtv.coeffs] for a in fsu.coeffs])

    @classmethod
    def cayley(cls) -> "BiHPoly":
        """``s*v - t*u``."""
        return cls(1, 1, [[0, -1], [1, 0]])

    @property
    def is_zero(self) -> bool:
        return self.dsu < 0

    def __eq__(self, other):
        if not isinstance(other, BiHPoly):
            return NotImplemented
        return (self.dsu, self.dtv, self.grid) == (other.dsu, other.dtv, other.grid)

    def __hash__(self):
        return hash(("BiHPoly", self.dsu, self.dtv, self.grid))

    def __repr__(self):
        return f"BiHPoly({self.to_str()!r})"

    def to_str(self) -> str:
        if self.is_zero:
            return "0"
        terms = []
        for i in range(self.dsu, -1, -1):
            for j in range(self.dtv, -1, -1):
                c = self.grid[i][j]
                if c:
                    terms.append((c, (("s", i), ("u", self.dsu - i), ("t", j), ("v", self.dtv - j))))
        return _format_terms(terms)

    def __neg__(self):
        return BiHPoly._raw(self.dsu, self.dtv, [[-c for c in row] for row in self.grid])

    def __add__(self, other: "BiHPoly") -> "BiHPoly":
        if other.is_zero:
            return self
        if self.is_zero:
            return other
        if (self.dsu, self.dtv) != (other.dsu, other.dtv):
            raise ValueError("cannot add bihomogeneous forms of different bidegree")
        return BiHPoly._raw(
            self.dsu, self.dtv, [[a + b for a, b in zip(r1, r2)] for r1, r2 in zip(self.grid, other.grid)]
        )

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, HPoly):
            raise TypeError("use BiHPoly.outer to lift a binary form")
        if not isinstance(other, BiHPoly):
            c = qq(other)
            if not c:
                return BiHPoly.zero()
            return BiHPoly._raw(self.dsu, self.dtv, [[x * c for x in row] for row in self.grid])
        if self.is_zero or other.is_zero:
            return BiHPoly.zero()
        ds, dt = self.dsu + other.dsu, self.dtv + other.dtv
        out = [[ZERO] * (dt + 1) for _ in range(ds + 1)]
        for i, r1 in enumerate(self.grid):
            for j, a in enumerate(r1):
                if not a:
                    continue
                for k, r2 in enumerate(other.grid):
                    row = out[i + k]
                    for l, b in enumerate(r2):
                        if b:
                            row[j + l] += a * b
        return BiHPoly._raw(ds, dt, out)

    __rmul__ = __mul__

    def swap(self) -> "BiHPoly":
        """Exchange the roles of ``(s,u)`` and ``(t,v)``."""
        if self.is_zero:
            return self
        return BiHPoly._raw(self.dtv, self.dsu, list(zip(*self.grid)))

    def tv_coeffs(self) -> list[HPoly]:
        """Coefficient of ``t^j v^(dt-j)`` as a form in ``(s,u)``, for each ``j``."""
        if self.is_zero:
            return []
        return [HPoly._raw(self.dsu, [row[j] for row in self.grid]) for j in range(self.dtv + 1)]

    def substitute_tv(self, a, b, c, d) -> "BiHPoly":
        """``f(s,u; a t + b v, c t + d v)``."""
        if self.is_zero:
            return self
        rows = []
        for row in self.su_coeffs():
            g = row.substitute_linear(a, b, c, d) if not row.is_zero else row
            rows.append(list(g.coeffs) if not g.is_zero else [ZERO] * (self.dtv + 1))
        return BiHPoly._raw(self.dsu, self.dtv, rows)

    def su_coeffs(self) -> list[HPoly]:
        if self.is_zero:
            return []
        return [HPoly._raw(self.dtv, list(row)) for row in self.grid]

    def eval_su(self, point) -> HPoly:
        """Specialize ``(s,u)``; returns a form in ``(t,v)``."""
        s0, u0 = (qq(x) for x in point)
        if not s0 and not u0:
            raise ValueError("(0,0) is not a point of the projective line")
        if self.is_zero:
            return HPoly.zero()
        w = [s0 ** i * u0 ** (self.dsu - i) for i in range(self.dsu + 1)]
        cs = [sum((w[i] * self.grid[i][j] for i in range(self.dsu + 1)), ZERO) for j in range(self.dtv + 1)]
        return HPoly._raw(self.dtv, cs)

    def eval_tv(self, point) -> HPoly:
        return self.swap().eval_su(point)

    def divide_by_cayley(self) -> "BiHPoly":
        """Exact quotient by ``s*v - t*u``; ``ArithmeticError`` if it does not divide."""
        if self.is_zero:
            return self
        ds, dt = self.dsu, self.dtv
        if ds < 1 or dt < 1:
            raise ArithmeticError("form does not vanish on the diagonal")
        f = self.grid
        # f[i][j] = Q[i-1][j] - Q[i][j-1]
        q = [[ZERO] * dt for _ in range(ds)]
        for i in range(ds):
            for j in range(1, dt + 1):
                above = q[i - 1][j] if (i >= 1 and j < dt) else ZERO
                q[i][j - 1] = above - f[i][j]
        out = BiHPoly._raw(ds - 1, dt - 1, q)
        if out * BiHPoly.cayley() != self:
            raise ArithmeticError("form does not vanish on the diagonal (s:u) = (t:v)")
        return out

    def exquo(self, other: "BiHPoly") -> "BiHPoly":
        """Exact division, treating ``self`` as a polynomial in ``t`` over ``QQ[s,u]``."""
        if other.is_zero:
            raise ZeroDivisionError("division by the zero form")
        if self.is_zero:
            return self
        ds, dt = self.dsu - other.dsu, self.dtv - other.dtv
        if ds < 0 or dt < 0:
            raise ArithmeticError("inexact division (bidegree)")
        rem = [list(c) for c in zip(*self.grid)]  # rem[j] = coefficients in s of t^j
        rem = [HPoly._raw(self.dsu, col) for col in rem]
        den = other.tv_coeffs()
        top_d = max(j for j, c in enumerate(den) if not c.is_zero)
        quo = [HPoly.zero()] * (dt + 1)
        for j in range(len(rem) - 1, top_d - 1, -1):
            if rem[j].is_zero:
                continue
            k = j - top_d
            if k > dt:
                raise ArithmeticError("inexact division")
            c = rem[j].exquo(den[top_d])
            quo[k] = c
            for l, dc in enumerate(den):
                if not dc.is_zero:
                    rem[k + l] = rem[k + l] - c * dc
        if any(not r.is_zero for r in rem):
            raise ArithmeticError("inexact division")
        grid = [[ZERO] * (dt + 1) for _ in range(ds + 1)]
        for j, c in enumerate(quo):
            if c.is_zero:
                continue
            for i, x in enumerate(c.coeffs):
                grid[i][j] = x
        return BiHPoly._raw(ds, dt, grid)


# ---------------------------------------------------------------------------
# formatting
# ---------------------------------------------------------------------------


def _format_terms(terms) -> str:
    """Render ``[(coef, ((var, exp), ...)), ...]`` as ``2*t^2*v - 3/2*v^3``."""
    if not terms:
        return "0"
    out = []
    for k, (c, powers) in enumerate(terms):
        mono = "*".join(v if e == 1 else f"{v}^{e}" for v, e in powers if e)
        neg = c < 0
        a = -c if neg else c
        if mono:
            body = mono if a == 1 else f"{fmt_q(a)}*{mono}"
        else:
            body = fmt_q(a)
        if k == 0:
            out.append(("-" if neg else "") + body)
        else:
            out.append((" - " if neg else " + ") + body)
    return "".join(out)
