"""Factorization over QQ and real root isolation.

Squarefree decomposition (Yun) and Sturm-sequence isolation are implemented
here.  Splitting a squarefree part into irreducibles is delegated to sympy's
integer factorization; :func:`rational_roots` gives an independent check.
"""
from __future__ import annotations

from fractions import Fraction

from gmpy2 import mpq

from .poly import HPoly, UPoly, ZERO, upoly_gcd


def squarefree_decomposition(f: UPoly) -> list[tuple[UPoly, int]]:
    """Yun's algorithm: monic ``(g_k, k)`` with ``f = lc * prod g_k^k``."""
    if f.is_zero:
        raise ValueError("squarefree decomposition of zero")
    f = f.monic()
    out: list[tuple[UPoly, int]] = []
    if f.degree == 0:
        return out
    df = f.derivative()
    a = upoly_gcd(f, df)
    b = f.exquo(a)
    c = df.exquo(a)
    k = 1
    while b.degree > 0:
        d = c - b.derivative()
        g = upoly_gcd(b, d)
        if g.degree > 0:
            out.append((g, k))
        b = b.exquo(g)
        c = d.exquo(g)
        k += 1
    return out


def squarefree_part(f):
    """Product of the distinct irreducible factors (primitive, positive lc)."""
    if isinstance(f, HPoly):
        if f.is_zero:
            raise ValueError("squarefree part of zero")
        out = HPoly.const(1)
        for g, _ in factor_h(f):
            out = out * g
        return out.normalize()
    if f.is_zero:
        raise ValueError("squarefree part of zero")
    out = UPoly.const(1)
    for g, _ in squarefree_decomposition(f):
        out = out * g
    return out.primitive()


def _to_sympy(f: UPoly):
    from sympy import Poly, Rational, Symbol

    x = Symbol("x")
    return Poly([Rational(int(c.numerator), int(c.denominator)) for c in reversed(f.coeffs)], x, domain="QQ")


def _irreducible_split(f: UPoly) -> list[UPoly]:
    """Split a squarefree primitive polynomial into irreducible factors."""
    if f.degree <= 1:
        return [f.primitive()]
    if f.degree > 3:
        return _sympy_split(f)
    found = []
    rest = f
    for r in rational_roots(f):
        lin = UPoly([-r, 1]).primitive()
        found.append(lin)
        rest = rest.exquo(lin)
    if rest.degree <= 1:
        if rest.degree == 1:
            found.append(rest.primitive())
        return found
    # no rational roots and degree <= 3: irreducible
    return found + [rest.primitive()]


def _sympy_split(f: UPoly) -> list[UPoly]:
    _, facs = _to_sympy(f).factor_list()
    return [UPoly([mpq(int(c.p), int(c.q)) for c in reversed(g.all_coeffs())]).primitive() for g, _ in facs]


def _sort_key_u(f: UPoly):
    return (f.degree, tuple(f.coeffs))


def factor_rational(f: UPoly) -> list[tuple[UPoly, int]]:
    """Irreducible factors with multiplicities, primitive and positive-leading.

    The product of ``g**k`` equals ``f`` up to a nonzero rational constant.
    """
    if f.is_zero:
        raise ValueError("factorization of zero")
    out = []
    for g, k in squarefree_decomposition(f):
        for h in _irreducible_split(g.primitive()):
            out.append((h, k))
    out.sort(key=lambda p: (_sort_key_u(p[0]), p[1]))
    return out


def factor_h(f: HPoly) -> list[tuple[HPoly, int]]:
    """Factor a binary form; the root ``(1:0)`` appears as the factor ``v``."""
    if f.is_zero:
        raise ValueError("factorization of zero")
    out = []
    k = f.val_v()
    if k:
        out.append((HPoly.v(), k))
    core = f.chart_t()
    for g, m in factor_rational(core):
        if g.degree > 0:
            out.append((HPoly.from_chart_t(g).normalize(), m))
    out.sort(key=lambda p: (p[0].degree, p[0].coeffs, p[1]))
    return out


def _divisors(n: int) -> list[int]:
    from sympy import divisors

    return divisors(abs(n))


def rational_roots(f: UPoly) -> list[mpq]:
    """All rational roots, by the rational-root theorem (ascending, no repeats).

    Only feasible for moderate integer coefficients; used as an oracle and for
    the pre-split of small factors.
    """
    if f.is_zero:
        raise ValueError("roots of zero")
    g = f.primitive()
    roots = []
    if g[0] == 0:
        roots.append(mpq(0))
        k = next(i for i, c in enumerate(g.coeffs) if c)
        g = UPoly(g.coeffs[k:])
    if g.degree < 1:
        return roots
    a0 = int(g[0])
    an = int(g.lc)
    if max(abs(a0), abs(an)) > 10**12:
        # divisor enumeration is infeasible; fall back to linear factors
        poly = _to_sympy(g)
        for h, _ in poly.factor_list()[1]:
            if h.degree() == 1:
                c1, c0 = h.all_coeffs()
                roots.append(mpq(-Fraction(int(c0.p), int(c0.q)) / Fraction(int(c1.p), int(c1.q))))
        return sorted(set(roots))
    cands = set()
    for p in _divisors(a0):
        for q in _divisors(an):
            cands.add(mpq(p, q))
            cands.add(mpq(-p, q))
    roots.extend(r for r in cands if g(r) == 0)
    return sorted(set(roots))


# ---------------------------------------------------------------------------
# Sturm isolation
# ---------------------------------------------------------------------------


def sturm_sequence(f: UPoly) -> list[UPoly]:
    seq = [f, f.derivative()]
    while not seq[-1].is_zero:
        r = seq[-2] % seq[-1]
        if r.is_zero:
            break
        seq.append(-r)
    return seq


def _sign_changes(seq: list[UPoly], x) -> int:
    signs = [s(x) for s in seq]
    signs = [s for s in signs if s]
    return sum(1 for a, b in zip(signs, signs[1:]) if (a > 0) != (b > 0))


def _cauchy_bound(f: UPoly) -> mpq:
    lc = abs(f.lc)
    return 1 + max((abs(c) / lc for c in f.coeffs[:-1]), default=ZERO)


def isolate_real_roots(f: UPoly) -> list[tuple[mpq, mpq]]:
    """Disjoint closed intervals with rational endpoints, one real root each.

    Intervals are ascending.  An exact rational root ``r`` is returned as the
    degenerate interval ``(r, r)``.
    """
    if f.is_zero:
        raise ValueError("roots of zero")
    if upoly_gcd(f, f.derivative()).degree > 0:
        raise ValueError("input is not squarefree")
    if f.degree < 1:
        return []
    seq = sturm_sequence(f)
    bound = _cauchy_bound(f)
    out: list[tuple[mpq, mpq]] = []
    stack = [(-bound, bound)]
    while stack:
        lo, hi = stack.pop()
        n = _sign_changes(seq, lo) - _sign_changes(seq, hi)  # roots in (lo, hi]
        if n == 0:
            continue
        if n == 1:
            if f(hi) == 0:
                out.append((hi, hi))
            else:
                out.append((lo, hi))
            continue
        mid = (lo + hi) / 2
        stack.append((mid, hi))
        stack.append((lo, mid))
    out.sort()
    # make the closed intervals pairwise disjoint
    changed = True
    while changed:
        changed = False
        for i in range(len(out)):
            lo, hi = out[i]
            if lo == hi:
                continue
            touch = (i > 0 and out[i - 1][1] >= lo) or (i + 1 < len(out) and out[i + 1][0] <= hi)
            if touch:
                out[i] = _bisect_once(f, seq, lo, hi)
                changed = True
    return out


def _bisect_once(f: UPoly, seq, lo, hi):
    mid = (lo + hi) / 2
    if f(mid) == 0:
        return mid, mid
    if _sign_changes(seq, lo) - _sign_changes(seq, mid) == 1:
        return lo, mid
    return mid, hi


def refine_interval(f: UPoly, lo, hi, width) -> tuple[mpq, mpq]:
    """Bisect an isolating interval until it is narrower than ``width``."""
    lo, hi = mpq(lo), mpq(hi)
    if lo == hi:
        return lo, hi
    flo = f(lo)
    while hi - lo > width:
        mid = (lo + hi) / 2
        fm = f(mid)
        if fm == 0:
            return mid, mid
        if (fm > 0) == (flo > 0):
            lo, flo = mid, fm
        else:
            hi = mid
    return lo, hi
