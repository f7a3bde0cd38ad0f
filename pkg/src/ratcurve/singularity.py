"""Singularities of a rational planar curve from one Smith normal form.

Pipeline
--------
1. ``F = p.P / (sv - tu)`` and ``G = q.P / (sv - tu)`` from a mu-basis.
2. The Bezout matrix of ``(F, G)`` in ``(t,v)`` has Smith form
   ``1, .., 1, d_{n-mu}, d_{n-mu} d_{n-mu-1}, ..`` with ``mu`` leading ones.
3. Irreducible factors of the last invariant factor are grouped into points;
   each point of order ``r`` takes its inversion formula ``h`` out of ``d_r``
   and the rest of its share of the chain describes infinitely near points.
4. Rational points are moved to ``(0,0,1)`` and blown up; the blown-up curve
   restricted to the point's parameters yields the next neighborhood.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

from gmpy2 import mpq

from .errors import AnalysisIncomplete, DegenerateCurveError, StructuralError, VerificationError
from .factor import factor_h, isolate_real_roots
from .mubasis import CurveSpec, MuBasis, Syzygy, check_proper, compute_mubasis, implicitize, verify_mubasis
from .numfield import KForm, NumberField, rank_over
from .poly import BiHPoly, HPoly, UPoly, ZERO, _primitive_scale, fmt_q, hgcd, hgcd_many, restrict_to
from .polymat import CheckReport, HPolyMat, SmithForm, snf_homogeneous
from .resultants import bezout_matrix


# ---------------------------------------------------------------------------
# F and G
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class FGPair:
    """``F = p.P/(sv-tu)`` and ``G = q.P/(sv-tu)``; bidegrees ``(mu-1, n-1)`` and ``(n-mu-1, n-1)``."""

    F: BiHPoly
    G: BiHPoly
    n: int
    mu: int


def moving_line_form(s: Syzygy, curve: CurveSpec) -> BiHPoly:
    """``s(s,u) . P(t,v)`` as a bihomogeneous form."""
    acc = BiHPoly.zero()
    for g, f in zip(s.components, curve.components):
        if not g.is_zero and not f.is_zero:
            acc = acc + BiHPoly.outer(g, f)
    return acc


def build_FG(curve: CurveSpec, basis: MuBasis) -> FGPair:
    try:
        F = moving_line_form(basis.p, curve).divide_by_cayley()
        G = moving_line_form(basis.q, curve).divide_by_cayley()
    except ArithmeticError as exc:
        raise VerificationError(f"division by sv - tu failed (invalid syzygy): {exc}") from exc
    return FGPair(F, G, curve.n, basis.mu)


def pair_forms(curve: CurveSpec, s1: Syzygy, s2: Syzygy) -> tuple[BiHPoly, BiHPoly]:
    """Cayley quotients for an arbitrary pair of syzygies."""
    return (moving_line_form(s1, curve).divide_by_cayley(), moving_line_form(s2, curve).divide_by_cayley())


# ---------------------------------------------------------------------------
# the main Smith form
# ---------------------------------------------------------------------------


@dataclass
class MainSmith:
    bezout: HPolyMat
    smith: SmithForm
    d_chain: dict  # k -> HPoly (in s,u), k = 2..n-mu

    @property
    def last(self) -> HPoly:
        return self.smith.invariant_factors[-1]

    def chain_list(self) -> list[HPoly]:
        return [self.d_chain[k] for k in sorted(self.d_chain)]


def split_chain(factors: Sequence[HPoly], n: int, mu: int) -> dict:
    """Read ``d_k`` off invariant factors ``1^mu, d_{n-mu}, d_{n-mu} d_{n-mu-1}, ..``."""
    size = len(factors)
    if size != n - 1:
        raise StructuralError(f"expected {n - 1} invariant factors, got {size}")
    if any(f.is_zero for f in factors):
        raise DegenerateCurveError("Bezout determinant vanishes identically (improper parametrization)")
    for i in range(min(mu, size)):
        if factors[i].degree != 0:
            raise StructuralError(f"invariant factor {i + 1} is {factors[i]}, expected a unit (mu = {mu})")
    out = {}
    prev = HPoly.const(1)
    for j in range(mu, size):
        k = n - j  # factors[j] is alpha_{j+1}; d_k = alpha_{n+1-k} / alpha_{n-k}
        out[k] = factors[j].exquo(prev).normalize()
        prev = factors[j]
    return out


def main_smith(fg: FGPair) -> MainSmith:
    if fg.n < 2:
        raise DegenerateCurveError("degree must be at least 2")
    B = bezout_matrix(fg.F, fg.G).matrix
    if B.is_zero():
        raise DegenerateCurveError("Bezout matrix vanishes (improper parametrization)")
    sf = snf_homogeneous(B)
    return MainSmith(B, sf, split_chain(sf.invariant_factors, fg.n, fg.mu))


def budget_lhs(d_chain: dict) -> int:
    return sum((k - 1) * d.degree for k, d in d_chain.items())


# ---------------------------------------------------------------------------
# parameters and point classes
# ---------------------------------------------------------------------------


@dataclass
class Param:
    """A parameter class: the roots of one irreducible form ``phi``."""

    phi: HPoly
    field: NumberField
    theta: UPoly | None  # None encodes (1:0)
    inversion: KForm  # gcd(p(theta).P, q(theta).P) over the field
    multiplicity: int  # order of theta in the inversion form

    @property
    def at_infinity(self) -> bool:
        return self.theta is None

    def eval(self, f: HPoly) -> UPoly:
        """``f(theta)`` in the field (``f(1,0)`` at infinity)."""
        if f.is_zero:
            return UPoly()
        if self.theta is None:
            return UPoly.const(f.eval_at((1, 0)))
        return self.field.reduce(f.chart_t())

    def lift_form(self, cs: Sequence[UPoly], degree: int) -> KForm:
        return KForm.from_coeffs(self.field, degree, cs)


def _line_form(curve: CurveSpec, par: Param, s: Syzygy) -> KForm:
    """``s(theta) . P(t,v)`` over the parameter's field."""
    vals = [par.eval(g) for g in s.components]
    n = curve.n
    cs = []
    for j in range(n + 1):
        acc = UPoly()
        for val, f in zip(vals, curve.components):
            if not f.is_zero and f[j]:
                acc = acc + val * f[j]
        cs.append(acc)
    return KForm.from_coeffs(par.field, n, cs)


def make_param(curve: CurveSpec, basis: MuBasis, phi: HPoly) -> Param:
    if phi == HPoly.v():
        field = NumberField(UPoly.x())
        par = Param(phi, field, None, None, 0)  # type: ignore[arg-type]
    else:
        field = NumberField(phi.chart_t())
        par = Param(phi, field, field.gen(), None, 0)  # type: ignore[arg-type]
    lp = _line_form(curve, par, basis.p)
    lq = _line_form(curve, par, basis.q)
    inv = lp.gcd(lq)
    par.inversion = inv
    par.multiplicity = inv.val_v if par.theta is None else inv.multiplicity_at(par.theta)
    return par


def _shares_root(par: Param, phi: HPoly) -> bool:
    """Does ``phi`` vanish at some root of ``par``'s inversion form?"""
    inv = par.inversion
    if phi == HPoly.v():
        return inv.val_v > 0
    other = KForm.from_hpoly(par.field, phi)
    core_other = KForm(par.field, len(other.core) - 1, other.core)
    core_inv = KForm(par.field, len(inv.core) - 1, inv.core)
    return core_inv.gcd(core_other).degree > 0


def point_of(curve: CurveSpec, par: Param):
    """Rational coordinates of ``P(theta)`` as a primitive integer triple, or None."""
    vals = [par.eval(f) for f in curve.components]
    piv = next((v for v in vals if not v.is_zero), None)
    if piv is None:
        raise StructuralError("parametrization vanishes at a parameter")
    inv = par.field.inv(piv)
    ratios = [par.field.mul(v, inv) for v in vals]
    if any(r.degree > 0 for r in ratios):
        return None
    return primitive_int([r[0] for r in ratios])


def primitive_int(vec: Sequence) -> tuple[int, ...]:
    vec = [mpq(x) for x in vec]
    s = _primitive_scale(vec)
    lead = next(x for x in vec if x)
    if lead < 0:
        s = -s
    return tuple(int(x * s) for x in vec)


@dataclass
class PointClass:
    """One singular point, or a set of conjugate singular points."""

    params: list[Param]
    formula: HPoly  # product of phi^multiplicity
    order: int
    point: tuple | None
    npoints: int
    orders: dict = field(default_factory=dict)
    psi: dict = field(default_factory=dict)  # k -> HPoly, nontrivial entries only
    restricted: dict = field(default_factory=dict)  # k -> d_k^Q


class _UnionFind:
    def __init__(self, n):
        self.p = list(range(n))

    def find(self, i):
        while self.p[i] != i:
            self.p[i] = self.p[self.p[i]]
            i = self.p[i]
        return i

    def union(self, i, j):
        a, b = self.find(i), self.find(j)
        if a != b:
            self.p[max(a, b)] = min(a, b)


def singular_points(
    curve: CurveSpec,
    basis: MuBasis,
    ms: MainSmith,
    restrict: HPoly | None = None,
) -> list[PointClass]:
    """Group the factors of the last invariant factor into singular points.

    With ``restrict`` only factors dividing that form are considered (used
    on blown-up curves, where only the parameters of one point matter).
    """
    last = ms.last
    if last.degree == 0:
        return []
    phis = [phi for phi, _ in factor_h(last)]
    if restrict is not None:
        phis = [phi for phi in phis if phi.divides(restrict)]
    params = [make_param(curve, basis, phi) for phi in phis]
    uf = _UnionFind(len(params))
    for i, par in enumerate(params):
        for j, phi in enumerate(phis):
            if i != j and _shares_root(par, phi):
                uf.union(i, j)
    groups: dict = {}
    for i in range(len(params)):
        groups.setdefault(uf.find(i), []).append(params[i])
    factors = ms.smith.invariant_factors
    out = []
    for members in groups.values():
        orders = {par.inversion.degree for par in members}
        if len(orders) != 1:
            raise VerificationError(f"parameters of one point disagree on the order: {sorted(orders)}")
        r = orders.pop()
        if r < 2:
            raise StructuralError(f"factor {members[0].phi} of the last invariant factor lies on a smooth point")
        H = HPoly.const(1)
        for par in members:
            H = H * par.phi ** par.multiplicity
        H = H.normalize()
        if H.degree % r:
            raise StructuralError(f"inversion formula degree {H.degree} not a multiple of the order {r}")
        cls = PointClass(members, H, r, point_of(curve, members[0]), H.degree // r)
        cls.orders["gcd"] = r
        cls.orders["divisibility"] = 1 + sum(1 for f in factors if H.divides(f))
        ranks = {rank_over(par.field, _eval_matrix(ms.bezout, par)) for par in members}
        if len(ranks) == 1:
            cls.orders["rank"] = curve.n - ranks.pop()
        else:
            cls.orders["rank"] = None
        if len(set(cls.orders.values())) != 1:
            raise VerificationError(f"order routes disagree at {H}: {cls.orders}")
        _psi_from_chain(cls, ms.d_chain)
        out.append(cls)
    out.sort(key=lambda c: (-c.order, c.formula.degree, c.formula.coeffs))
    return out


def _eval_matrix(M: HPolyMat, par: Param) -> list[list[UPoly]]:
    return [[par.eval(e) for e in row] for row in M.entries]


def _psi_from_chain(cls: PointClass, d_chain: dict) -> None:
    H, r = cls.formula, cls.order
    for k, d in sorted(d_chain.items()):
        dq = restrict_to(d, H)
        cls.restricted[k] = dq
        if k > r:
            if dq.degree:
                raise StructuralError(f"d_{k} meets a point of order {r}: {dq}")
        elif k == r:
            try:
                psi = dq.exquo(H).normalize()
            except ArithmeticError:
                raise StructuralError(f"inversion formula {H} does not divide d_{r}^Q = {dq}") from None
            if psi.degree:
                cls.psi[k] = psi
        elif dq.degree:
            cls.psi[k] = dq
    if r not in d_chain:
        raise StructuralError(f"order {r} exceeds the chain length")


# ---------------------------------------------------------------------------
# coordinate moves and blow-ups
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class OriginForm:
    """``M.P = (a h, b h, c)`` with ``gcd(a,b) = gcd(h,c) = gcd(a,h) = 1``."""

    a: HPoly
    b: HPoly
    c: HPoly
    h: HPoly
    transform: tuple  # 3x3 rational rows
    shear: tuple  # ("x", m) or ("y", m)

    def curve(self) -> CurveSpec:
        return CurveSpec(self.a * self.h, self.b * self.h, self.c)


def _shear_order(bound: int):
    yield 0
    for m in range(1, bound + 1):
        yield m
        yield -m


def move_to_origin(curve: CurveSpec, point: Sequence[int], coord_bound: int = 20) -> OriginForm:
    """Send ``point`` to ``(0,0,1)`` and split off the inversion formula ``h``."""
    Q = [int(x) for x in point]
    k = 2 if Q[2] else (1 if Q[1] else 0)
    others = [i for i in range(3) if i != k]
    rows = []
    for i in others:
        row = [0, 0, 0]
        row[i] += Q[k]
        row[k] -= Q[i]
        rows.append(row)
    last = [0, 0, 0]
    last[k] = 1
    rows.append(last)
    moved = curve.transform(rows)
    X, Y, W = moved.components
    if X.is_zero and Y.is_zero:
        raise DegenerateCurveError("curve collapses onto the point")
    h = hgcd(X, Y)
    if h.degree < 1:
        raise VerificationError(f"{tuple(Q)} is not on the curve")
    if hgcd(h, W).degree > 0:
        raise VerificationError("inversion formula shares a root with the third coordinate")
    tried = []
    for kind in ("x", "y"):
        for m in _shear_order(coord_bound):
            if kind == "x":
                S = [[1, m, 0], [0, 1, 0], [0, 0, 1]]
            else:
                S = [[m, 1, 0], [1, 0, 0], [0, 0, 1]]  # swap, then y -> y + m x
            sx = X * mpq(S[0][0]) + Y * mpq(S[0][1]) if (S[0][0] or S[0][1]) else HPoly.zero()
            sy = X * mpq(S[1][0]) + Y * mpq(S[1][1])
            if X.is_zero or Y.is_zero:
                sx = _lin(X, Y, S[0][0], S[0][1])
                sy = _lin(X, Y, S[1][0], S[1][1])
            if sx.is_zero or sy.is_zero:
                tried.append((kind, m))
                continue
            a = sx.exquo(h)
            b = sy.exquo(h)
            if hgcd(a, h).degree == 0:
                total = [[sum(mpq(S[i][j]) * rows[j][l] for j in range(3)) for l in range(3)] for i in range(3)]
                return OriginForm(a, b, W, h, tuple(tuple(r) for r in total), (kind, m))
            tried.append((kind, m))
    raise AnalysisIncomplete(f"no shear with |m| <= {coord_bound} separates a from h; tried {len(tried)} transforms")


def _lin(X: HPoly, Y: HPoly, p, q) -> HPoly:
    acc = HPoly.zero()
    if p and not X.is_zero:
        acc = acc + X * mpq(p)
    if q and not Y.is_zero:
        acc = acc + Y * mpq(q)
    return acc


@dataclass(frozen=True)
class BlowUp:
    curve: CurveSpec
    removed: HPoly


def blow_up(origin: OriginForm) -> BlowUp:
    """The quadratic transform ``(a^2 h, b c, c a)`` with common factors removed."""
    a, b, c, h = origin.a, origin.b, origin.c, origin.h
    comps = [a * a * h, b * c, c * a]
    g = hgcd_many(comps)
    comps = [f.exquo(g) for f in comps]
    new = CurveSpec(*comps)
    try:
        new.validate()
    except DegenerateCurveError as exc:
        raise DegenerateCurveError(f"degenerate blow-up: {exc}") from exc
    return BlowUp(new, g)


# ---------------------------------------------------------------------------
# the tree
# ---------------------------------------------------------------------------


@dataclass
class SingularityNode:
    level: int
    order: int
    formula: HPoly
    point: tuple | None = None
    npoints: int = 1
    intervals: list | None = None
    children: list = field(default_factory=list)
    ancestor_order: int | None = None
    attributed: bool = True
    bridge: dict | None = None

    def walk(self):
        yield self
        for c in self.children:
            yield from c.walk()

    def height(self) -> int:
        return 1 + max((c.height() for c in self.children), default=-1)


@dataclass
class Options:
    max_depth: int = 8
    coord_bound: int = 20
    isolate_roots: bool = True
    confirm_leaves: bool = False
    check_proper: bool = True


@dataclass
class CurveAnalysis:
    curve: CurveSpec
    basis: MuBasis
    fg: FGPair
    ms: MainSmith
    classes: list


def analyze_curve(curve: CurveSpec, restrict: HPoly | None = None, check_proper_flag: bool = True) -> CurveAnalysis:
    curve.validate()
    basis = compute_mubasis(curve)
    rep = verify_mubasis(curve, basis)
    if not rep.ok:
        raise VerificationError(f"mu-basis contract failed: {rep.detail}")
    if check_proper_flag:
        pr = check_proper(curve, basis)
        if not pr.proper:
            raise DegenerateCurveError(f"improper parametrization: {pr.detail}")
    fg = build_FG(curve, basis)
    ms = main_smith(fg)
    classes = singular_points(curve, basis, ms, restrict=restrict)
    return CurveAnalysis(curve, basis, fg, ms, classes)


def _intervals(formula: HPoly) -> list:
    inf, finite = False, []
    for phi, _ in factor_h(formula):
        if phi == HPoly.v():
            inf = True
            continue
        core = phi.chart_t()
        if core.degree == 1:
            r = -core[0] / core[1]
            finite.append((r, r))
        else:
            finite.extend(isolate_real_roots(core))
    finite.sort()
    out = [("inf", "inf")] if inf else []
    return out + [(fmt_q(lo), fmt_q(hi)) for lo, hi in finite]


def _node_for(cls: PointClass, level: int, opts: Options, ancestor: int | None) -> SingularityNode:
    return SingularityNode(
        level=level,
        order=cls.order,
        formula=cls.formula,
        point=cls.point,
        npoints=cls.npoints,
        intervals=_intervals(cls.formula) if opts.isolate_roots else None,
        ancestor_order=ancestor,
    )


def attribute_infinitely_near(
    curve: CurveSpec,
    cls: PointClass,
    node: SingularityNode,
    opts: Options,
    depth: int = 0,
    log: list | None = None,
) -> None:
    """Fill ``node.children`` by blowing up ``cls`` (recursively)."""
    log = log if log is not None else []
    if not cls.psi and not opts.confirm_leaves:
        return
    if cls.point is None:
        # conjugate points: no rational centre to blow up
        for k in sorted(cls.psi, reverse=True):
            node.children.append(
                SingularityNode(
                    level=node.level + 1,
                    order=k,
                    formula=cls.psi[k],
                    npoints=0,
                    intervals=_intervals(cls.psi[k]) if opts.isolate_roots else None,
                    ancestor_order=node.ancestor_order or node.order,
                    attributed=False,
                )
            )
        log.append(CheckReport("blow-up", True, f"unattributed-by-blow-up at {cls.formula}: irrational point"))
        return
    if depth >= opts.max_depth:
        raise AnalysisIncomplete(f"maximum blow-up depth {opts.max_depth} reached at {cls.formula}")
    origin = move_to_origin(curve, cls.point, opts.coord_bound)
    if origin.h.normalize() != cls.formula:
        raise VerificationError(f"origin form h = {origin.h} differs from the inversion formula {cls.formula}")
    bu = blow_up(origin)
    sub = analyze_curve(bu.curve, restrict=cls.formula, check_proper_flag=opts.check_proper)
    bridge = {}
    ok = True
    for k in sorted(set(cls.psi) | set(sub.ms.d_chain)):
        got = restrict_to(sub.ms.d_chain[k], cls.formula) if k in sub.ms.d_chain else HPoly.const(1)
        want = cls.psi.get(k, HPoly.const(1))
        bridge[k] = (str(want), str(got))
        ok = ok and got == want
    node.bridge = bridge
    if not ok:
        raise VerificationError(f"blow-up chain does not match the infinitely near factors at {cls.formula}: {bridge}")
    log.append(CheckReport("bridge", True, f"{cls.formula}: {bridge}"))
    for sc in sub.classes:
        if sc.order > node.order:
            raise VerificationError(f"infinitely near order {sc.order} exceeds parent order {node.order}")
        child = _node_for(sc, node.level + 1, opts, node.ancestor_order or node.order)
        node.children.append(child)
        attribute_infinitely_near(bu.curve, sc, child, opts, depth + 1, log)


@dataclass
class AnalysisReport:
    curve: CurveSpec
    basis: MuBasis
    smith: list
    d_chain: dict
    tree: list
    budget: dict
    verifications: list
    implicit: object = None

    @property
    def mu(self) -> int:
        return self.basis.mu

    def nodes(self):
        for root in self.tree:
            yield from root.walk()


def tree_budget(tree: list) -> int:
    return sum((nd.order - 1) * nd.formula.degree for root in tree for nd in root.walk())


def chain_from_tree(tree: list, ks) -> dict:
    out = {k: HPoly.const(1) for k in ks}
    for root in tree:
        for nd in root.walk():
            if nd.order in out:
                out[nd.order] = out[nd.order] * nd.formula
            else:
                out[nd.order] = nd.formula
    return {k: v.normalize() for k, v in out.items()}


def analyze(curve: CurveSpec, opts: Options | None = None) -> AnalysisReport:
    """Full pipeline: mu-basis, Smith form, singular points, infinitely near points."""
    opts = opts or Options()
    top = analyze_curve(curve, check_proper_flag=opts.check_proper)
    checks: list[CheckReport] = [verify_mubasis(curve, top.basis)]
    checks.append(CheckReport("smith-shape", True, f"{top.basis.mu} leading units, chain length {len(top.ms.d_chain)}"))
    tree = []
    for cls in top.classes:
        node = _node_for(cls, 0, opts, None)
        attribute_infinitely_near(curve, cls, node, opts, 0, checks)
        tree.append(node)
        checks.append(CheckReport("order-routes", True, f"{cls.formula}: {cls.orders}"))
    n = curve.n
    lhs = budget_lhs(top.ms.d_chain)
    rhs = (n - 1) * (n - 2)
    tb = tree_budget(tree)
    budget = {"lhs": lhs, "rhs": rhs, "tree": tb, "ok": lhs == rhs == tb}
    checks.append(CheckReport("budget", budget["ok"], f"sum (k-1) deg d_k = {lhs}, (n-1)(n-2) = {rhs}, tree = {tb}"))
    rebuilt = chain_from_tree(tree, top.ms.d_chain.keys())
    chain_ok = all(rebuilt.get(k, HPoly.const(1)) == d for k, d in top.ms.d_chain.items()) and all(
        k in top.ms.d_chain or v.degree == 0 for k, v in rebuilt.items()
    )
    checks.append(CheckReport("chain-from-tree", chain_ok, "d_k equals the product of order-k node formulas"))
    for root in tree:
        for nd in root.walk():
            for ch in nd.children:
                if ch.order > nd.order:
                    checks.append(CheckReport("order-monotone", False, f"{ch.order} > {nd.order}"))
    f = implicitize(top.basis)
    for nd in tree:
        if nd.point is not None:
            checks.append(implicit_multiplicity_check(nd.point, nd.order, f))
    return AnalysisReport(
        curve=curve,
        basis=top.basis,
        smith=list(top.ms.smith.invariant_factors),
        d_chain=dict(top.ms.d_chain),
        tree=tree,
        budget=budget,
        verifications=checks,
        implicit=f,
    )


def implicit_multiplicity_check(point, r: int, f) -> CheckReport:
    """All partials of order ``< r`` vanish at ``point`` and some order-``r`` partial does not."""
    x, y, w = (mpq(c) for c in point)
    layer = [f]
    seen = {(0, 0, 0): f}
    for order in range(1, r + 1):
        nxt = {}
        for key, g in seen.items():
            if sum(key) != order - 1:
                continue
            for var in range(3):
                k2 = list(key)
                k2[var] += 1
                k2 = tuple(k2)
                if k2 not in nxt:
                    nxt[k2] = g.diff(var)
        seen.update(nxt)
    low = [k for k in seen if sum(k) < r and seen[k](x, y, w) != 0]
    top = [k for k in seen if sum(k) == r and seen[k](x, y, w) != 0]
    ok = not low and bool(top)
    detail = f"point {tuple(point)}, order {r}: " + ("multiplicity confirmed" if ok else f"nonzero low partials {low}, order-r nonzero {len(top)}")
    return CheckReport("implicit-multiplicity", ok, detail)
