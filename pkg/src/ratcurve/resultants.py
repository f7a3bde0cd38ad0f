"""Bezout and hybrid Bezout resultant matrices.

The symmetric Bezout matrix of two bihomogeneous forms eliminates ``(t,v)``:
with ``F = sum f_i t^i v^(m-i)`` and ``G = sum g_i t^i v^(m-i)``,

    (F(t) G(x) - F(x) G(t)) / (t - x) = sum_{a,b} B[a][b] t^a x^b,

so ``B[a][b] = sum_{j <= min(a,b)} c(a+b+1-j, j)`` with
``c(i, j) = f_i g_j - f_j g_i``.  Entries are forms in ``(s,u)``.

Hybrid Bezout matrices for unequal degrees are defined by the companion
factorization ``B(Q,P) = T_m . J Q(C^T) J`` where ``C`` is the companion
matrix of ``P / p0``.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from gmpy2 import mpq

from .linalg import det, identity, matmul
from .poly import BiHPoly, HPoly, UPoly, ZERO, hgcd, qq, sylvester_rows
from .polymat import CheckReport, HPolyMat, check_chain_products, snf_homogeneous


class DegreeError(ValueError):
    """Inputs violate a degree precondition."""


# ---------------------------------------------------------------------------
# Sylvester
# ---------------------------------------------------------------------------


def resultant_sylvester(f: UPoly, g: UPoly) -> mpq:
    """``Res(f, g)`` as the Sylvester determinant at the actual degrees."""
    if f.is_zero or g.is_zero:
        return ZERO
    if f.degree == 0 and g.degree == 0:
        return mpq(1)
    return det(sylvester_rows(f.coeffs[::-1], g.coeffs[::-1]))


# ---------------------------------------------------------------------------
# symmetric Bezout matrix
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class BezoutMatrix:
    """Bezout matrix of ``(F, G)`` eliminating ``(t,v)``; entries in ``(s,u)``."""

    matrix: HPolyMat
    F: BiHPoly
    G: BiHPoly

    @property
    def size(self) -> int:
        return self.matrix.rows


def _tv_coeff_lists(F: BiHPoly, G: BiHPoly):
    if F.is_zero and G.is_zero:
        raise DegreeError("both forms are zero")
    m = F.dtv if not F.is_zero else G.dtv
    if not F.is_zero and not G.is_zero and F.dtv != G.dtv:
        raise DegreeError(f"(t,v)-degrees differ: {F.dtv} vs {G.dtv}")
    fs = F.tv_coeffs() if not F.is_zero else [HPoly.zero()] * (m + 1)
    gs = G.tv_coeffs() if not G.is_zero else [HPoly.zero()] * (m + 1)
    return m, fs, gs


def bezout_entries(fs: Sequence[HPoly], gs: Sequence[HPoly]) -> list[list[HPoly]]:
    """Bezout matrix from coefficient lists (ascending powers of the eliminated variable)."""
    m = len(fs) - 1
    c: dict = {}
    for i in range(m + 1):
        for j in range(i):
            c[i, j] = fs[i] * gs[j] - fs[j] * gs[i]
    out = []
    for a in range(m):
        row = []
        for b in range(m):
            acc = HPoly.zero()
            for j in range(min(a, b) + 1):
                i = a + b + 1 - j
                if i <= m:
                    acc = acc + c[i, j]
            row.append(acc)
        out.append(row)
    return out


def bezout_matrix(F: BiHPoly, G: BiHPoly) -> BezoutMatrix:
    """Symmetric Bezout matrix of two forms of equal ``(t,v)``-degree ``m >= 1``."""
    m, fs, gs = _tv_coeff_lists(F, G)
    if m < 1:
        raise DegreeError("Bezout matrix needs (t,v)-degree at least 1")
    return BezoutMatrix(HPolyMat(bezout_entries(fs, gs)), F, G)


def bezout_entry_formula(fs: Sequence[HPoly], gs: Sequence[HPoly]) -> list[list[HPoly]]:
    """Independent closed-form construction, 1-indexed ``i, j = 1..m``.

    ``b_ij = sum_{k=1}^{min(i, m+1-j)} f_{j+k-1} g_{i-k} - f_{i-k} g_{j+k-1}``
    with ``f``, ``g`` coefficient lists in ascending powers.  Agrees entrywise
    with :func:`bezout_entries`.
    """
    m = len(fs) - 1
    out = [[HPoly.zero()] * m for _ in range(m)]
    for i in range(1, m + 1):
        for j in range(1, m + 1):
            acc = HPoly.zero()
            for k in range(1, min(i, m + 1 - j) + 1):
                acc = acc + fs[j + k - 1] * gs[i - k] - fs[i - k] * gs[j + k - 1]
            out[i - 1][j - 1] = acc
    return out


def bezout_bihpoly(F: BiHPoly, G: BiHPoly) -> list[list[HPoly]]:
    """Bezout matrix via the Cayley quotient computed on the full bihomogeneous data.

    The quotient ``(F(s;t)G(s;x) - F(s;x)G(s;t)) / (t - x)`` is formed by
    synthetic division, without the closed-form index bookkeeping; used to
    cross-check :func:`bezout_matrix`.
    """
    m, fs, gs = _tv_coeff_lists(F, G)
    # numerator N[i][j]: coefficient of t^i x^j
    N = [[fs[i] * gs[j] - fs[j] * gs[i] for j in range(m + 1)] for i in range(m + 1)]
    # N = (t - x) Q gives N[i][j] = Q[i-1][j] - Q[i][j-1]; sweep i upward
    Q = [[HPoly.zero()] * m for _ in range(m)]
    for i in range(m):
        for j in range(1, m + 1):
            above = Q[i - 1][j] if (i >= 1 and j < m) else HPoly.zero()
            Q[i][j - 1] = above - N[i][j]
    # verify
    for i in range(m + 1):
        for j in range(m + 1):
            lhs = (Q[i - 1][j] if (1 <= i <= m and j < m) else HPoly.zero()) - (
                Q[i][j - 1] if (i < m and 1 <= j <= m) else HPoly.zero()
            )
            if lhs != N[i][j]:
                raise ArithmeticError("Cayley quotient is not exact")
    return Q


# ---------------------------------------------------------------------------
# companion machinery (coefficients in QQ)
# ---------------------------------------------------------------------------


def _desc(P: UPoly) -> list[mpq]:
    """Coefficients ``p_0..p_n`` with ``p_0`` the leading one."""
    return list(P.coeffs[::-1])


def companion(P: UPoly) -> list[list[mpq]]:
    """Companion matrix: ``p0`` on the subdiagonal, last column ``-p_n .. -p_1``."""
    if P.is_zero or P.degree < 1:
        raise DegreeError("companion matrix needs a polynomial of positive degree")
    p = _desc(P)
    n = P.degree
    M = [[ZERO] * n for _ in range(n)]
    for i in range(1, n):
        M[i][i - 1] = p[0]
    for i in range(n):
        M[i][n - 1] = -p[n - i]
    return M


def eval_poly_at_matrix(Q: UPoly, M) -> list[list[mpq]]:
    """Horner evaluation ``Q(M)``."""
    n = len(M)
    acc = [[ZERO] * n for _ in range(n)]
    for c in reversed(Q.coeffs):
        acc = matmul(acc, M)
        for i in range(n):
            acc[i][i] += c
    return acc


def reversal(n: int) -> list[list[mpq]]:
    return [[mpq(int(i + j == n - 1)) for j in range(n)] for i in range(n)]


def companion_H(Q: UPoly, P: UPoly) -> list[list[mpq]]:
    """``J . Q(C^T) . J`` with ``C`` the companion matrix of ``P / p0``."""
    if P.is_zero or P.degree < 1:
        raise DegreeError("P must have positive degree")
    C = companion(P * (1 / P.lc))
    CT = [list(r) for r in zip(*C)]
    J = reversal(P.degree)
    return matmul(matmul(J, eval_poly_at_matrix(Q, CT)), J)


def T_matrix(P: UPoly, m: int) -> list[list[mpq]]:
    """Upper triangular Toeplitz block of ``p_0..p_{m-1}`` padded by the identity."""
    n = P.degree
    p = _desc(P)
    T = identity(n)
    for i in range(m):
        for j in range(i, m):
            T[i][j] = p[j - i]
    return T


def hybrid_bezout(Q: UPoly, P: UPoly) -> list[list[mpq]]:
    """Hybrid Bezout matrix ``T_m . H(Q, P)`` of size ``deg P``."""
    if P.is_zero or P.degree < 1:
        raise DegreeError("P must have positive degree")
    m = 0 if Q.is_zero else Q.degree
    if m > P.degree:
        raise DegreeError(f"deg Q = {m} exceeds deg P = {P.degree}")
    return matmul(T_matrix(P, m), companion_H(Q, P))


# ---------------------------------------------------------------------------
# hybrid Bezout over QQ[s,u]
# ---------------------------------------------------------------------------


def _interpolate(xs: Sequence[mpq], ys: Sequence[mpq]) -> UPoly:
    """Newton interpolation through the given nodes."""
    n = len(xs)
    coef = list(ys)
    for j in range(1, n):
        for i in range(n - 1, j - 1, -1):
            coef[i] = (coef[i] - coef[i - 1]) / (xs[i] - xs[i - j])
    out = UPoly()
    for i in range(n - 1, -1, -1):
        out = out * UPoly([-xs[i], 1]) + coef[i]
    return out


def _sample_points(avoid: HPoly, count: int) -> list[mpq]:
    pts, k = [], 0
    while len(pts) < count:
        x = mpq(k // 2 + 1) * (1 if k % 2 == 0 else -1) if k else mpq(0)
        k += 1
        if avoid.is_zero or avoid.eval_at((x, 1)) != 0:
            pts.append(x)
    return pts


def hybrid_bezout_bihpoly(Q: BiHPoly, P: BiHPoly, q_degree: int | None = None, p_degree: int | None = None) -> HPolyMat:
    """Hybrid Bezout matrix eliminating ``(t,v)``; entries are forms in ``(s,u)``.

    ``Q`` and ``P`` are read as polynomials in ``t`` of formal degrees ``m``
    and ``n`` with coefficients in ``QQ[s,u]``.  Entries are recovered by
    sampling ``s`` (with ``u = 1``) away from the roots of the leading
    coefficient, computing ``T_m H`` over ``QQ`` and interpolating; extra
    samples confirm the result.  Rows ``1..m`` are forms of degree
    ``deg_su Q + deg_su P``; the remaining rows have degree ``deg_su Q``.
    """
    n = P.dtv if p_degree is None else p_degree
    m = (0 if Q.is_zero else Q.dtv) if q_degree is None else q_degree
    if m > n:
        raise DegreeError(f"deg Q = {m} exceeds deg P = {n}")
    pc = P.tv_coeffs()
    qc = Q.tv_coeffs() if not Q.is_zero else [HPoly.zero()]
    lead = pc[n] if n < len(pc) else HPoly.zero()
    if lead.is_zero:
        raise DegreeError("leading coefficient of P vanishes identically")
    dq = 0 if Q.is_zero else Q.dsu
    dp = P.dsu
    row_deg = [dq + dp if i < m else dq for i in range(n)]
    need = max(row_deg) + 1
    xs = _sample_points(lead, need + 2)

    def at(x):
        pu = UPoly([c.eval_at((x, 1)) if not c.is_zero else ZERO for c in pc])
        qu = UPoly([c.eval_at((x, 1)) if not c.is_zero else ZERO for c in qc])
        if pu.degree != n:
            raise ArithmeticError("sample hit a root of the leading coefficient")
        if not qu.is_zero and qu.degree > m:
            raise ArithmeticError("Q exceeds its formal degree")
        return _hybrid_formal(qu, pu, m)

    samples = [at(x) for x in xs]
    entries = []
    for i in range(n):
        row = []
        for j in range(n):
            ys = [S[i][j] for S in samples]
            poly = _interpolate(xs[: row_deg[i] + 1], ys[: row_deg[i] + 1])
            for x, y in zip(xs[row_deg[i] + 1 :], ys[row_deg[i] + 1 :]):
                if poly(x) != y:
                    raise ArithmeticError("hybrid Bezout entry is not a polynomial of the expected degree")
            row.append(HPoly.from_chart_t(poly, row_deg[i]) if not poly.is_zero else HPoly.zero())
        entries.append(row)
    return HPolyMat(entries)


def _hybrid_formal(Q: UPoly, P: UPoly, m: int) -> list[list[mpq]]:
    """``T_m H(Q, P)`` with ``m`` the formal degree of ``Q`` (may exceed its true degree)."""
    return matmul(T_matrix(P, m), companion_H(Q, P))


# ---------------------------------------------------------------------------
# product divisibility for hybrid matrices
# ---------------------------------------------------------------------------


def _lift(f) -> BiHPoly:
    if isinstance(f, BiHPoly):
        return f
    if isinstance(f, UPoly):
        return BiHPoly.outer(HPoly.const(1), HPoly.from_chart_t(f))
    raise TypeError("expected UPoly or BiHPoly")


def _hybrid_snf(Q: BiHPoly, P: BiHPoly, m: int) -> list[HPoly]:
    M = hybrid_bezout_bihpoly(Q, P, q_degree=m)
    if M.is_zero():
        return [HPoly.zero()] * M.rows
    return snf_homogeneous(M).invariant_factors


def check_product_factor_divisibility(f, g, h, max_k: int = 3) -> CheckReport:
    """Invariant factors of ``B(f,h)``, ``B(g,h)``, ``B(fg,h)`` obey the product rule.

    Inputs are polynomials in ``t``: either :class:`UPoly` or :class:`BiHPoly`
    (coefficients forms in ``(s,u)``).  The divisibility is allowed a power
    ``h0^l`` of the leading coefficient of ``h``; the smallest such ``l`` is
    reported and must not exceed ``deg f + deg g``.
    """
    F, G, H = _lift(f), _lift(g), _lift(h)
    m = F.dtv if not F.is_zero else 0
    n = G.dtv if not G.is_zero else 0
    if m + n > H.dtv:
        raise DegreeError("deg f + deg g must not exceed deg h")
    h0 = H.tv_coeffs()[H.dtv]
    if h0.is_zero:
        raise DegreeError("leading coefficient of h is zero")
    alpha = _hybrid_snf(F, H, m)
    beta = _hybrid_snf(G, H, n)
    gamma = _hybrid_snf(F * G, H, m + n)
    bound = m + n

    def unit_power(lhs: HPoly, rhs: HPoly):
        for l in range(bound + 1):
            if lhs.divides(rhs * h0 ** l):
                return l
        return None

    viol, worst = check_chain_products(alpha, beta, gamma, H.dtv, unit_power=unit_power, max_k=max_k, one=HPoly.const(1))
    return CheckReport(
        "product-factor-divisibility",
        not viol,
        f"max h0 exponent {worst} (bound {bound})" if not viol else f"{len(viol)} violations",
        viol,
    )
