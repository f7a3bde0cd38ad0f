"""Independent verification routines for the singularity pipeline.

Every routine returns a :class:`CheckReport`; none of them raises on a
mathematical mismatch (only on malformed input).
"""
from __future__ import annotations

import random
from typing import Iterable, Sequence

from gmpy2 import mpq

from .errors import DegenerateCurveError
from .mubasis import CurveSpec, MuBasis, Syzygy, compute_mubasis
from .numfield import KForm
from .poly import BiHPoly, HPoly, hgcd, restrict_to
from .polymat import CheckReport, HPolyMat, det_factors, hdet, rank_at, snf_homogeneous
from .resultants import DegreeError, bezout_matrix, hybrid_bezout_bihpoly
from .singularity import (
    AnalysisReport,
    CurveAnalysis,
    OriginForm,
    Param,
    PointClass,
    analyze_curve,
    budget_lhs,
    move_to_origin,
    moving_line_form,
    tree_budget,
)

ONE = HPoly.const(1)


def _fmt(fs: Iterable[HPoly]) -> str:
    return "[" + ", ".join(f.to_str(("s", "u")) for f in fs) + "]"


def _fmt_tv(fs: Iterable[HPoly]) -> str:
    return "[" + ", ".join(f.to_str(("t", "v")) for f in fs) + "]"


def _snf(M: HPolyMat) -> list[HPoly]:
    if M.is_zero():
        return [HPoly.zero()] * M.rows
    return snf_homogeneous(M).invariant_factors


def restricted_chain(factors: Sequence[HPoly], H: HPoly) -> list[HPoly]:
    """Non-unit parts of the ``H``-restrictions of a chain, in order.

    A zero factor restricts to ``H`` itself only in the sense of divisibility;
    zeros are dropped here and compared separately by callers.
    """
    out = []
    for f in factors:
        if f.is_zero:
            continue
        g = restrict_to(f, H)
        if g.degree > 0:
            out.append(g)
    return out


def generic_leading(Q: BiHPoly, P: BiHPoly, p_degree: int, tries: int = 20) -> tuple[BiHPoly, BiHPoly]:
    """Shear ``v -> v + lam t`` until ``P`` has a nonzero ``t^p_degree`` coefficient.

    A linear change of the eliminated variables multiplies a resultant matrix
    by invertible constant matrices, so Smith forms in ``(s,u)`` are unchanged.
    """
    for k in range(tries + 1):
        lam = (k + 1) // 2 * (1 if k % 2 else -1)
        P2 = P.substitute_tv(1, 0, lam, 1) if lam else P
        cs = P2.tv_coeffs()
        if len(cs) > p_degree and not cs[p_degree].is_zero:
            Q2 = Q.substitute_tv(1, 0, lam, 1) if lam else Q
            return Q2, P2
    raise DegreeError("no shear gives a nonzero leading coefficient")


def hybrid(Q: BiHPoly, P: BiHPoly, q_degree: int, p_degree: int) -> HPolyMat:
    Q2, P2 = generic_leading(Q, P, p_degree)
    return hybrid_bezout_bihpoly(Q2, P2, q_degree=q_degree, p_degree=p_degree)


# ---------------------------------------------------------------------------
# h block
# ---------------------------------------------------------------------------


def moving_form(s_su: Sequence[HPoly], curve: CurveSpec) -> BiHPoly:
    return moving_line_form(Syzygy(*s_su), curve).divide_by_cayley()


def h_block_check(origin: OriginForm) -> CheckReport:
    """Hybrid Smith form of ``B(h(t,v), L)`` carries ``r - 1`` copies of ``h``."""
    a, c, h = origin.a, origin.c, origin.h
    moved = origin.curve()
    r = h.degree
    L = moving_form((c, HPoly.zero(), -(a * h)), moved)
    hb = BiHPoly.outer(ONE, h)
    try:
        M = hybrid(hb, L, r, L.dtv)
    except DegreeError as exc:
        return CheckReport("h-block", False, f"hybrid matrix unavailable: {exc}")
    fs = _snf(M)
    H = h.normalize()
    restricted = restricted_chain(fs, H)
    copies = sum(1 for f in restricted if f == H)
    total = sum(f.degree for f in restricted)
    ok = copies == r - 1 and len(restricted) == r - 1 and total == r * (r - 1)
    return CheckReport(
        "h-block",
        ok,
        f"h = {H}: {copies} trailing copies (want {r - 1}), restricted degree {total} (want {r * (r - 1)})",
    )


# ---------------------------------------------------------------------------
# syzygy invariance
# ---------------------------------------------------------------------------


def cross_factor(curve: CurveSpec, s1: Syzygy, s2: Syzygy) -> HPoly:
    """``D`` with ``s1 x s2 = D . P`` (zero when the pair is dependent)."""
    cr = s1.cross(s2)
    if all(x.is_zero for x in cr):
        return HPoly.zero()
    i = next(i for i, f in enumerate(curve.components) if not f.is_zero)
    D = cr[i].exquo(curve.components[i])
    for x, f in zip(cr, curve.components):
        want = D * f if not f.is_zero else HPoly.zero()
        if x.is_zero != want.is_zero or (not x.is_zero and not (x - want).is_zero):
            raise ArithmeticError("cross product is not a multiple of P")
    return D


def _pair_chain(curve: CurveSpec, s1: Syzygy, s2: Syzygy) -> list[HPoly]:
    F = moving_line_form(s1, curve).divide_by_cayley()
    G = moving_line_form(s2, curve).divide_by_cayley()
    return _snf(bezout_matrix(F, G).matrix)


def syzygy_invariance_check(
    curve: CurveSpec,
    basis: MuBasis,
    alt_syzygies: Sequence[tuple[Syzygy, Syzygy]] | None = None,
    analysis: CurveAnalysis | None = None,
    include_ml: bool = True,
) -> list[CheckReport]:
    """Restricted Smith forms agree for every admissible pair of syzygies.

    The default alternatives are the pair ``(M, L)`` built at each rational
    singular point and the swapped basis ``(q, p)``.  A pair whose cross
    product shares a root with a point's parameters is rejected as failing
    the precondition, which is reported separately from a mismatch.
    """
    an = analysis or analyze_curve(curve)
    base = an.ms.smith.invariant_factors
    pairs = list(alt_syzygies or [])
    if alt_syzygies is None:
        pairs.append((basis.q, basis.p))
    reports = []
    for idx, (s1, s2) in enumerate(pairs):
        D = cross_factor(curve, s1, s2)
        for cls in an.classes:
            H = cls.formula
            if D.is_zero or hgcd(D, H).degree > 0:
                reports.append(CheckReport("syzygy-invariance", False, f"pair {idx}: precondition fails at {H} (dependent pair)", ["precondition"]))
                continue
            got = restricted_chain(_pair_chain(curve, s1, s2), H)
            want = restricted_chain(base, H)
            reports.append(CheckReport("syzygy-invariance", got == want, f"pair {idx} at {H}: {_fmt(got)} vs {_fmt(want)}"))
    if include_ml:
        for cls in an.classes:
            if cls.point is None:
                continue
            reports.extend(ml_checks(curve, cls, base))
    return reports


def ml_checks(curve: CurveSpec, cls: PointClass, base: Sequence[HPoly]) -> list[CheckReport]:
    """``(M, L)`` at one rational point: restricted Smith form and determinant split."""
    origin = move_to_origin(curve, cls.point)
    moved = origin.curve()
    a, b, c, h = origin.a, origin.b, origin.c, origin.h
    H = cls.formula
    M = moving_form((-b, a, HPoly.zero()), moved)
    L = moving_form((c, HPoly.zero(), -(a * h)), moved)
    out = []
    BML = bezout_matrix(M, L).matrix
    got = restricted_chain(_snf(BML), H)
    want = restricted_chain(base, H)
    out.append(CheckReport("syzygy-invariance", got == want, f"(M, L) at {H}: {_fmt(got)} vs {_fmt(want)}"))
    # M = h(t,v) * Mbar with Mbar the Cayley quotient of a(s)b(t) - b(s)a(t)
    Mbar = (BiHPoly.outer(a, b) - BiHPoly.outer(b, a)).divide_by_cayley() if a.degree > 0 else None
    if Mbar is None:
        out.append(CheckReport("ml-split", True, "a is constant: M = 0 up to the h factor, split trivial"))
        return out
    if not (Mbar * BiHPoly.outer(ONE, h) - M).is_zero:
        out.append(CheckReport("ml-split", False, "M != Mbar * h"))
        return out
    try:
        n1 = L.dtv
        A1 = hybrid(Mbar, L, Mbar.dtv, n1)
        A2 = hybrid(BiHPoly.outer(ONE, h), L, h.degree, n1)
    except DegreeError as exc:
        out.append(CheckReport("ml-split", False, f"hybrid matrices unavailable: {exc}"))
        return out
    lhs = hdet(BML)
    rhs = hdet(A1) * hdet(A2)
    ok = lhs.normalize() == rhs.normalize() if not lhs.is_zero else rhs.is_zero
    out.append(CheckReport("ml-split", ok, f"det B(M,L) vs det B(Mbar,L) det B(h,L) at {H}: {'equal' if ok else 'differ'} up to unit"))
    return out


def random_unimodular_mixes(basis: MuBasis, count: int, seed: int = 0) -> list[tuple[Syzygy, Syzygy]]:
    """Pairs ``(alpha p, beta q + g p)`` with nonzero constants and a random form ``g``."""
    rng = random.Random(seed)
    p, q = basis.p, basis.q
    gap = q.degree - p.degree
    out = []
    for _ in range(count):
        alpha = mpq(rng.choice([-3, -2, -1, 1, 2, 3]))
        beta = mpq(rng.choice([-2, -1, 1, 2]))
        g = HPoly(gap, [mpq(rng.randint(-3, 3)) for _ in range(gap + 1)])
        s1 = Syzygy(*(f * alpha if not f.is_zero else f for f in p.components))
        if g.is_zero:
            s2 = Syzygy(*(f * beta if not f.is_zero else f for f in q.components))
        else:
            s2 = Syzygy(*(_lin(fq * beta if not fq.is_zero else fq, fp * g if not fp.is_zero else HPoly.zero())
                          for fq, fp in zip(q.components, p.components)))
        out.append((s1, s2))
    return out


def _lin(x: HPoly, y: HPoly) -> HPoly:
    if x.is_zero:
        return y
    if y.is_zero:
        return x
    return x + y


# ---------------------------------------------------------------------------
# symmetry
# ---------------------------------------------------------------------------


def _slice(F: BiHPoly, par: Param) -> KForm:
    """``F(theta; t, v)`` over the parameter's field."""
    cs = [par.eval(c) for c in F.tv_coeffs()]
    return KForm.from_coeffs(par.field, F.dtv, cs)


def symmetry_check(analysis: CurveAnalysis) -> list[CheckReport]:
    """``F`` and ``G`` vanish at every pair of parameters of one point.

    Over the parameter's field, ``gcd(F(theta; .), G(theta; .))`` must equal the
    inversion form at ``theta`` with the factor ``(t - theta v)`` removed once.
    Pairs of rational parameters are also evaluated directly in both orders.
    """
    fg = analysis.fg
    out = []
    if not analysis.classes:
        res = hdet(analysis.ms.bezout)
        out.append(CheckReport("symmetry", res.degree == 0, f"no singular classes; Bezout determinant {res}"))
        return out
    for cls in analysis.classes:
        for par in cls.params:
            g = _slice(fg.F, par).gcd(_slice(fg.G, par))
            inv = par.inversion
            want = inv.divide_v() if par.at_infinity else inv.divide_linear(par.theta)
            ok = g.monic_equal(want)
            out.append(CheckReport("symmetry", ok, f"{par.phi}: common roots of F, G slices {'match' if ok else 'differ from'} the inversion form"))
        pts = _rational_params(cls.formula)
        mult = {pt: _mult_at(cls.formula, pt) for pt in pts}
        for p1 in pts:
            for p2 in pts:
                if p1 == p2 and mult[p1] < 2:
                    continue  # the diagonal is a common root only for repeated parameters
                vals = [fg.F.eval_su(p1).eval_at(p2), fg.G.eval_su(p1).eval_at(p2)]
                ok = all(v == 0 for v in vals)
                out.append(CheckReport("symmetry", ok, f"F, G at ({_pt(p1)}; {_pt(p2)}) = {[str(v) for v in vals]}"))
    return out


def _mult_at(H: HPoly, pt) -> int:
    lin = HPoly.linear(pt[1], -pt[0])
    e = 0
    while lin.divides(H):
        H = H.exquo(lin)
        e += 1
    return e


def _pt(p) -> str:
    return f"{p[0]}:{p[1]}"


def _rational_params(H: HPoly) -> list[tuple]:
    from .factor import factor_h

    out = []
    for phi, _ in factor_h(H):
        if phi.degree != 1:
            continue
        a, b = phi.coeffs[1], phi.coeffs[0]  # a t + b v
        out.append((-b / a, mpq(1)) if a else (mpq(1), mpq(0)))
    return out


# ---------------------------------------------------------------------------
# budget
# ---------------------------------------------------------------------------


def budget_check(report: AnalysisReport) -> CheckReport:
    n = report.curve.n
    lhs = budget_lhs(report.d_chain)
    rhs = (n - 1) * (n - 2)
    tb = tree_budget(report.tree)
    ok = lhs == rhs == tb
    return CheckReport("budget", ok, f"sum (k-1) deg d_k = {lhs}, (n-1)(n-2) = {rhs}, tree total = {tb}")


# ---------------------------------------------------------------------------
# the four resultant matrices
# ---------------------------------------------------------------------------


def _strip_units(fs: Sequence[HPoly]) -> list[HPoly]:
    return [f for f in fs if f.is_zero or f.degree > 0]


def compare_four_matrices(curve: CurveSpec, basis: MuBasis | None = None, analysis: CurveAnalysis | None = None) -> list[CheckReport]:
    """Smith forms of four resultant matrices built from syzygies times ``P``.

    1. hybrid ``B_{s,u}(p.P, q.P)``   (entries in ``t,v``; logged only)
    2. ``B_{t,v}(p.P, q.P)``          (entries in ``s,u``)
    3. ``B_{s,u}(L1.P, L2.P)``        with ``L1 = (c,0,-a)``, ``L2 = (0,c,-b)``
    4. ``B_{t,v}(L1.P, L2.P)``
    """
    basis = basis or compute_mubasis(curve)
    an = analysis or analyze_curve(curve)
    a, b, c = curve.components
    pP = moving_line_form(basis.p, curve)
    qP = moving_line_form(basis.q, curve)
    z = HPoly.zero()
    l1 = moving_line_form(Syzygy(c, z, -a), curve)
    l2 = moving_line_form(Syzygy(z, c, -b), curve)
    out = []

    form2 = _snf(bezout_matrix(pP, qP).matrix)
    main = list(an.ms.smith.invariant_factors)
    ok2 = form2 == main + [HPoly.zero()]
    out.append(CheckReport("four-matrices:form2", ok2, f"form 2 {_fmt(form2)}; main {_fmt(main)} plus a zero"))

    form4 = _snf(bezout_matrix(l1, l2).matrix)
    form3 = _snf(bezout_matrix(l1.swap(), l2.swap()).matrix)
    ok34 = form3 == form4
    out.append(CheckReport("four-matrices:3vs4", ok34, f"form 3 {_fmt(form3)}; form 4 {_fmt(form4)}"))

    cn = c.normalize()
    divided = []
    ok_c = True
    for f in form4:
        if f.is_zero:
            divided.append(f)
        elif cn.divides(f):
            divided.append(f.exquo(cn).normalize())
        else:
            ok_c = False
            divided.append(f)
    ok24 = ok_c and divided == form2
    out.append(CheckReport("four-matrices:2vs4", ok24, f"form 4 / c = {_fmt(divided)}; form 2 {_fmt(form2)}"))

    # form 1: logged, never asserted
    try:
        H1 = hybrid(pP.swap(), qP.swap(), basis.mu, curve.n - basis.mu)
        form1 = _snf(H1)
        agree = _strip_units(form1) == _strip_units(form2)[-len(_strip_units(form1)) :] if form1 else False
        detail = f"form 1 {_fmt_tv(form1)} ({'agrees with' if agree else 'differs from'} form 2 tail)"
    except (DegreeError, ArithmeticError) as exc:
        detail = f"form 1 unavailable: {exc}"
    out.append(CheckReport("four-matrices:form1-log", True, detail))
    return out


# ---------------------------------------------------------------------------
# statements at singular parameters
# ---------------------------------------------------------------------------


def singular_parameter_checks(curve: CurveSpec, basis: MuBasis | None = None, analysis: CurveAnalysis | None = None, tree_height: int | None = None) -> list[CheckReport]:
    """Inversion formula as a gcd, rank drop, determinant-factor divisibility, trivial tree shape."""
    an = analysis or analyze_curve(curve)
    basis = basis or an.basis
    n = curve.n
    B = an.ms.bezout
    out = []
    D = det_factors(B)
    full = bezout_matrix(moving_line_form(basis.p, curve), moving_line_form(basis.q, curve)).matrix
    for cls in an.classes:
        r = cls.order
        H = cls.formula
        for pt in _rational_params(H):
            lp = _eval_line(curve, basis.p, pt)
            lq = _eval_line(curve, basis.q, pt)
            g = hgcd(lp, lq)
            ok = g.normalize() == H
            out.append(CheckReport("param:gcd", ok, f"param {_pt(pt)}: gcd = {g}, formula {H}"))
            rk = rank_at(B, pt)
            out.append(CheckReport("param:rank", rk == n - r, f"param {_pt(pt)}: rank {rk}, want n - r = {n - r}"))
            rk_full = rank_at(full, pt)
            out.append(CheckReport("param:rank", rk_full == n - r, f"param {_pt(pt)}: size-{n} matrix rank {rk_full}, deficiency {n - rk_full}"))
        k = n - r + 1
        if k <= len(D):
            ok = H.divides(D[k - 1])
            out.append(CheckReport("param:det-factor", ok, f"{H} | D_{k} = {D[k - 1]}: {ok}"))
        else:
            out.append(CheckReport("param:det-factor", False, f"D_{k} unavailable (rank {len(D)})"))
    if tree_height == 0 or (tree_height is None and all(not c.psi for c in an.classes)):
        got = _snf(full)
        want = list(an.ms.smith.invariant_factors) + [HPoly.zero()]
        out.append(CheckReport("param:shape", got == want, f"{_fmt(got)} vs {_fmt(want)}"))
    return out


def _eval_line(curve: CurveSpec, s: Syzygy, pt) -> HPoly:
    vals = s.at(pt)
    acc = HPoly.zero()
    for c, f in zip(vals, curve.components):
        if c and not f.is_zero:
            acc = _lin(acc, f * c)
    return acc


def all_checks(curve: CurveSpec, report: AnalysisReport | None = None) -> list[CheckReport]:
    """Everything the ``verify`` command runs."""
    from .singularity import analyze

    report = report or analyze(curve)
    an = analyze_curve(curve)
    out = list(report.verifications)
    out.append(budget_check(report))
    out.extend(symmetry_check(an))
    out.extend(singular_parameter_checks(curve, an.basis, an, max((r.height() for r in report.tree), default=0)))
    out.extend(syzygy_invariance_check(curve, an.basis, analysis=an))
    out.extend(syzygy_invariance_check(curve, an.basis, random_unimodular_mixes(an.basis, 3), analysis=an, include_ml=False))
    for cls in an.classes:
        if cls.point is not None:
            out.append(h_block_check(move_to_origin(curve, cls.point)))
    out.extend(compare_four_matrices(curve, an.basis, an))
    return out
