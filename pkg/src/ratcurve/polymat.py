"""Polynomial matrices and their Smith normal forms.

``PolyMat`` holds univariate entries, ``HPolyMat`` holds binary forms.  The
homogeneous Smith form is assembled from the two affine charts: invariant
factor quotients are computed in each chart, homogenized at their own
degree and merged by lcm.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from functools import reduce
from itertools import combinations
from typing import Callable, Sequence

from gmpy2 import mpq

from .poly import HPoly, UPoly, ZERO, _primitive_scale, hgcd, hlcm, upoly_gcd, upoly_xgcd


class SingularInputError(ValueError):
    """A square matrix required to be nonsingular is not."""


def _upoly_norm(f: UPoly) -> UPoly:
    return f.primitive()


# ---------------------------------------------------------------------------
# containers
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class PolyMat:
    """Rectangular matrix of :class:`UPoly` entries."""

    entries: tuple

    def __init__(self, entries: Sequence[Sequence]):
        rows = tuple(tuple(e if isinstance(e, UPoly) else UPoly.const(e) for e in r) for r in entries)
        if not rows or not rows[0]:
            raise ValueError("empty matrix")
        if any(len(r) != len(rows[0]) for r in rows):
            raise ValueError("ragged matrix")
        object.__setattr__(self, "entries", rows)

    @property
    def rows(self) -> int:
        return len(self.entries)

    @property
    def cols(self) -> int:
        return len(self.entries[0])

    def __getitem__(self, ij):
        i, j = ij
        return self.entries[i][j]

    @classmethod
    def identity(cls, n: int) -> "PolyMat":
        return cls([[UPoly.const(int(i == j)) for j in range(n)] for i in range(n)])

    @classmethod
    def diag(cls, ds: Sequence[UPoly]) -> "PolyMat":
        n = len(ds)
        return cls([[ds[i] if i == j else UPoly() for j in range(n)] for i in range(n)])

    def __matmul__(self, other: "PolyMat") -> "PolyMat":
        if self.cols != other.rows:
            raise ValueError("shape mismatch")
        cols = list(zip(*other.entries))
        out = []
        for r in self.entries:
            row = []
            for c in cols:
                acc = UPoly()
                for x, y in zip(r, c):
                    if not x.is_zero and not y.is_zero:
                        acc = acc + x * y
                row.append(acc)
            out.append(row)
        return PolyMat(out)

    def is_zero(self) -> bool:
        return all(e.is_zero for r in self.entries for e in r)

    def evaluate(self, x) -> list[list[mpq]]:
        return [[e(x) for e in r] for r in self.entries]

    def to_json(self, var: str = "t") -> dict:
        return {"rows": self.rows, "cols": self.cols, "entries": [[e.to_str(var) for e in r] for r in self.entries]}


@dataclass(frozen=True)
class HPolyMat:
    """Rectangular matrix of binary forms (entries may differ in degree)."""

    entries: tuple

    def __init__(self, entries: Sequence[Sequence[HPoly]]):
        rows = tuple(tuple(r) for r in entries)
        if not rows or not rows[0]:
            raise ValueError("empty matrix")
        if any(len(r) != len(rows[0]) for r in rows):
            raise ValueError("ragged matrix")
        object.__setattr__(self, "entries", rows)

    @property
    def rows(self) -> int:
        return len(self.entries)

    @property
    def cols(self) -> int:
        return len(self.entries[0])

    def __getitem__(self, ij):
        i, j = ij
        return self.entries[i][j]

    def is_zero(self) -> bool:
        return all(e.is_zero for r in self.entries for e in r)

    def chart_t(self) -> PolyMat:
        return PolyMat([[e.chart_t() for e in r] for r in self.entries])

    def chart_v(self) -> PolyMat:
        return PolyMat([[e.chart_v() for e in r] for r in self.entries])

    def evaluate(self, point) -> list[list[mpq]]:
        return [[e.eval_at(point) if not e.is_zero else ZERO for e in r] for r in self.entries]

    def map(self, fn: Callable[[HPoly], HPoly]) -> "HPolyMat":
        return HPolyMat([[fn(e) for e in r] for r in self.entries])

    def transpose(self) -> "HPolyMat":
        return HPolyMat(list(zip(*self.entries)))

    def __neg__(self):
        return self.map(lambda e: -e)

    def to_json(self, vars=("s", "u")) -> dict:
        return {"rows": self.rows, "cols": self.cols, "entries": [[e.to_str(vars) for e in r] for r in self.entries]}


@dataclass
class SmithForm:
    """Invariant factor chain, zeros at the tail; optional unimodular transforms."""

    invariant_factors: list
    left: PolyMat | None = None
    right: PolyMat | None = None

    @property
    def rank(self) -> int:
        return sum(1 for f in self.invariant_factors if not f.is_zero)

    def chain_ok(self) -> bool:
        fs = self.invariant_factors
        nz = [f for f in fs if not f.is_zero]
        if fs[: len(nz)] != nz:
            return False
        return all(a.divides(b) for a, b in zip(nz, nz[1:]))


@dataclass
class CheckReport:
    """Outcome of a verification routine."""

    name: str
    ok: bool
    detail: str = ""
    failures: list = field(default_factory=list)

    def as_dict(self) -> dict:
        return {"name": self.name, "status": "pass" if self.ok else "fail", "detail": self.detail}


# ---------------------------------------------------------------------------
# univariate Smith form
# ---------------------------------------------------------------------------


def snf_univariate(A: PolyMat, track_transforms: bool = False) -> SmithForm:
    """Smith normal form over ``QQ[t]`` by gcd-pivot elimination.

    The pivot is the lowest-degree nonzero entry of the active block, ties
    broken by (row, column).  With ``track_transforms`` the returned ``left``
    and ``right`` satisfy ``left @ A @ right == diag(invariant_factors)``.
    """
    if A.is_zero():
        raise ValueError("Smith form of the zero matrix")
    m, n = A.rows, A.cols
    M = [list(r) for r in A.entries]
    L = [list(r) for r in PolyMat.identity(m).entries] if track_transforms else None
    R = [list(r) for r in PolyMat.identity(n).entries] if track_transforms else None

    def row_axpy(dst, src, q):  # row dst -= q * row src
        M[dst] = [x - q * y if not y.is_zero else x for x, y in zip(M[dst], M[src])]
        if L is not None:
            L[dst] = [x - q * y if not y.is_zero else x for x, y in zip(L[dst], L[src])]
        # rescaling by a rational is unimodular and keeps coefficients small
        c = _primitive_scale(a for e in M[dst] for a in e.coeffs)
        if c != 1:
            M[dst] = [x * c for x in M[dst]]
            if L is not None:
                L[dst] = [x * c for x in L[dst]]

    def col_axpy(dst, src, q):  # col dst -= q * col src
        for r in M:
            if not r[src].is_zero:
                r[dst] = r[dst] - q * r[src]
        if R is not None:
            for r in R:
                if not r[src].is_zero:
                    r[dst] = r[dst] - q * r[src]
        c = _primitive_scale(a for r in M for a in r[dst].coeffs)
        if c != 1:
            for r in M:
                r[dst] = r[dst] * c
            if R is not None:
                for r in R:
                    r[dst] = r[dst] * c

    def swap_rows(i, j):
        M[i], M[j] = M[j], M[i]
        if L is not None:
            L[i], L[j] = L[j], L[i]

    def swap_cols(i, j):
        for r in M:
            r[i], r[j] = r[j], r[i]
        if R is not None:
            for r in R:
                r[i], r[j] = r[j], r[i]

    diag: list[UPoly] = []
    for k in range(min(m, n)):
        while True:
            best = None
            for i in range(k, m):
                for j in range(k, n):
                    e = M[i][j]
                    if not e.is_zero and (best is None or e.degree < best[0]):
                        best = (e.degree, i, j)
            if best is None:
                break
            _, i, j = best
            if i != k:
                swap_rows(i, k)
            if j != k:
                swap_cols(j, k)
            piv = M[k][k]
            dirty = False
            for i in range(k + 1, m):
                if not M[i][k].is_zero:
                    q, r = divmod(M[i][k], piv)
                    row_axpy(i, k, q)
                    dirty = dirty or not r.is_zero
            for j in range(k + 1, n):
                if not M[k][j].is_zero:
                    q, r = divmod(M[k][j], piv)
                    col_axpy(j, k, q)
                    dirty = dirty or not r.is_zero
            if dirty:
                continue
            bad = next(
                ((i, j) for i in range(k + 1, m) for j in range(k + 1, n) if not piv.divides(M[i][j])),
                None,
            )
            if bad is None:
                break
            # pull the offending row into the pivot row and retry
            i = bad[0]
            M[k] = [x + y for x, y in zip(M[k], M[i])]
            if L is not None:
                L[k] = [x + y for x, y in zip(L[k], L[i])]
        if M[k][k].is_zero:
            break
        c = 1 / M[k][k].lc
        M[k] = [x * c for x in M[k]]
        if L is not None:
            L[k] = [x * c for x in L[k]]
        diag.append(M[k][k])
    factors = diag + [UPoly()] * (min(m, n) - len(diag))
    sf = SmithForm(factors)
    if track_transforms:
        sf.left, sf.right = PolyMat(L), PolyMat(R)
    return sf


# ---------------------------------------------------------------------------
# Smith form by localization
# ---------------------------------------------------------------------------


def bareiss(A: PolyMat) -> tuple[int, UPoly]:
    """Fraction-free elimination: the rank and one nonzero maximal minor.

    Every intermediate entry is a minor of ``A``, so sizes stay bounded.
    """
    M = [list(r) for r in A.entries]
    m, n = A.rows, A.cols
    prev = UPoly.const(1)
    k = 0
    for k in range(min(m, n)):
        hit = next(((i, j) for j in range(k, n) for i in range(k, m) if not M[i][j].is_zero), None)
        if hit is None:
            return k, prev
        i, j = hit
        M[k], M[i] = M[i], M[k]
        if j != k:
            for row in M:
                row[k], row[j] = row[j], row[k]
        piv = M[k][k]
        for i in range(k + 1, m):
            for j in range(k + 1, n):
                M[i][j] = (piv * M[i][j] - M[i][k] * M[k][j]).exquo(prev)
            M[i][k] = UPoly()
        prev = piv
    return min(m, n), prev


def _split_val(f: UPoly, pi: UPoly, cap: int) -> tuple[int, UPoly]:
    """``(e, g)`` with ``f = pi^e g`` and ``pi`` not dividing ``g`` (``e`` capped)."""
    e = 0
    while e < cap:
        q, r = divmod(f, pi)
        if not r.is_zero:
            break
        f, e = q, e + 1
    return e, f


def _inverse_mod_power(w: UPoly, pi: UPoly, N: int) -> UPoly:
    """Inverse of ``w`` modulo ``pi^N``: invert mod ``pi``, then Newton-lift."""
    d, y, _ = upoly_xgcd(w % pi, pi)
    if d.degree != 0:
        raise ArithmeticError("local Smith form: pivot is not a unit")
    y = y * (1 / d.lc)
    k = 1
    two = UPoly.const(2)
    while k < N:
        k = min(2 * k, N)
        mk = pi**k
        y = (y * (two - (w * y) % mk)) % mk
    return y


def _local_exponents(entries, pi: UPoly, N: int, r: int) -> list[int]:
    """Exponents of ``pi`` in the first ``r`` invariant factors, computed mod ``pi^N``.

    Exact as long as ``N`` exceeds every exponent, which holds when ``N - 1``
    bounds the valuation of a nonzero maximal minor.
    """
    mod = pi**N
    M = [[e % mod for e in row] for row in entries]
    rows = list(range(len(M)))
    cols = list(range(len(M[0]))) if M else []
    exps = []
    for _ in range(r):
        best = None
        for i in rows:
            for j in cols:
                if M[i][j].is_zero:
                    continue
                e, _g = _split_val(M[i][j], pi, N)
                if best is None or e < best[0]:
                    best = (e, i, j)
                    if e == 0:
                        break
            if best is not None and best[0] == 0:
                break
        if best is None or best[0] >= N:
            raise ArithmeticError("local Smith form: precision exhausted")
        e, i, j = best
        _, w = _split_val(M[i][j], pi, N)
        winv = _inverse_mod_power(w, pi, N)
        rows.remove(i)
        cols.remove(j)
        for i2 in rows:
            x = M[i2][j]
            if x.is_zero:
                continue
            ex, xq = _split_val(x, pi, N)
            f = (xq * pi ** (ex - e) * winv) % mod
            for c in cols:
                if not M[i][c].is_zero:
                    M[i2][c] = (M[i2][c] - f * M[i][c]) % mod
            M[i2][j] = UPoly()
        exps.append(e)
    return exps


def snf_local(A: PolyMat) -> SmithForm:
    """Invariant factors (monic) prime by prime, without transforms.

    A nonzero maximal minor is factored; for each prime the exponents come
    from elimination modulo a power of it.  Avoids the coefficient growth of
    Euclidean elimination.
    """
    from .factor import factor_rational

    if A.is_zero():
        raise ValueError("Smith form of the zero matrix")
    r, minor = bareiss(A)
    exact = A.rows == A.cols == r  # the minor is the determinant, so D_r itself
    if not exact:
        # a second minor trims factors that are not in D_r
        flipped = PolyMat([list(reversed(row)) for row in reversed(A.entries)])
        _, other = bareiss(flipped)
        minor = upoly_gcd(minor, other)
    factors = [UPoly.const(1)] * r
    if minor.degree > 0:
        for pi, m in factor_rational(minor):
            pi = pi.monic()
            if exact and m == 1:
                factors[-1] = factors[-1] * pi
                continue
            for k, e in enumerate(_local_exponents(A.entries, pi, m + 1, r)):
                if e:
                    factors[k] = factors[k] * pi**e
    return SmithForm(factors + [UPoly()] * (min(A.rows, A.cols) - r))


def snf_univariate_normalized(A: PolyMat, track_transforms: bool = False) -> SmithForm:
    """As :func:`snf_univariate`, with factors primitive and positive-leading."""
    sf = snf_univariate(A, track_transforms)
    if not track_transforms:
        sf.invariant_factors = [f if f.is_zero else _upoly_norm(f) for f in sf.invariant_factors]
    return sf


# ---------------------------------------------------------------------------
# homogeneous Smith form
# ---------------------------------------------------------------------------


def _quotients(fs: list[UPoly]) -> list[UPoly]:
    out, prev = [], UPoly.const(1)
    for f in fs:
        if f.is_zero:
            out.append(f)
        else:
            out.append(f.exquo(prev))
            prev = f
    return out


def snf_homogeneous_euclid(A: HPolyMat) -> SmithForm:
    """Homogeneous Smith form from Euclidean elimination in both charts.

    Kept as an independent route; :func:`snf_homogeneous` is the default.
    """
    if A.is_zero():
        raise ValueError("Smith form of the zero matrix")
    bar = _quotients(snf_univariate(A.chart_t()).invariant_factors)
    hat = _quotients(snf_univariate(A.chart_v()).invariant_factors)
    out: list[HPoly] = []
    acc = HPoly.const(1)
    for b, h in zip(bar, hat):
        if b.is_zero or h.is_zero:
            if not (b.is_zero and h.is_zero):
                raise ArithmeticError("chart ranks disagree")
            out.append(HPoly.zero())
            continue
        d = hlcm(HPoly.from_chart_t(b), HPoly.from_chart_v(h))
        acc = (acc * d).normalize()
        out.append(acc)
    return SmithForm(out)


def snf_homogeneous(A: HPolyMat) -> SmithForm:
    """Homogeneous Smith form: finite primes from the ``t`` chart, ``v`` from the other."""
    if A.is_zero():
        raise ValueError("Smith form of the zero matrix")
    finite = snf_local(A.chart_t()).invariant_factors
    Av = A.chart_v()
    r, minor = bareiss(Av)
    x = UPoly.x()
    m = next(i for i, c in enumerate(minor.coeffs) if c)
    at_inf = _local_exponents(Av.entries, x, m + 1, r) if m else [0] * r
    out = []
    for k, f in enumerate(finite):
        if f.is_zero:
            out.append(HPoly.zero())
            continue
        out.append((HPoly.from_chart_t(f) * HPoly.v() ** at_inf[k]).normalize())
    if sum(1 for f in out if not f.is_zero) != r:
        raise ArithmeticError("chart ranks disagree")
    return SmithForm(out)


def d_chain(sf: SmithForm) -> list[HPoly]:
    """Successive quotients of the nonzero invariant factors."""
    out, prev = [], HPoly.const(1)
    for f in sf.invariant_factors:
        if f.is_zero:
            break
        out.append(f.exquo(prev).normalize())
        prev = f
    return out


# ---------------------------------------------------------------------------
# determinant factors
# ---------------------------------------------------------------------------


def _all_minors(entries, k_max: int, add, mul, neg, zero):
    """``{k: [k x k minors]}`` by memoized Laplace expansion."""
    m, n = len(entries), len(entries[0])
    memo: dict = {}

    def minor(rows: tuple, cols: tuple):
        key = (rows, cols)
        if key in memo:
            return memo[key]
        if len(rows) == 1:
            val = entries[rows[0]][cols[0]]
        else:
            r0, rest = rows[0], rows[1:]
            val = zero
            for idx, c in enumerate(cols):
                e = entries[r0][c]
                if e.is_zero:
                    continue
                sub = minor(rest, cols[:idx] + cols[idx + 1 :])
                if sub.is_zero:
                    continue
                term = mul(e, sub)
                val = add(val, neg(term) if idx % 2 else term)
        memo[key] = val
        return val

    out = {}
    for k in range(1, k_max + 1):
        out[k] = [minor(rs, cs) for rs in combinations(range(m), k) for cs in combinations(range(n), k)]
    return out


MINOR_CUTOFF = 6


def det_factors(A, cutoff: int = MINOR_CUTOFF) -> list:
    """Determinant factors ``D_1..D_rank`` (normalized).

    Exhaustive minors for ``min(rows, cols) <= cutoff``; above that they are
    read off the Smith form.
    """
    if A.is_zero():
        raise ValueError("determinant factors of the zero matrix")
    homog = isinstance(A, HPolyMat)
    size = min(A.rows, A.cols)
    if size > cutoff:
        sf = snf_homogeneous(A) if homog else snf_local(A)
        out, acc = [], (HPoly.const(1) if homog else UPoly.const(1))
        for f in sf.invariant_factors:
            if f.is_zero:
                break
            acc = acc * f
            out.append(acc.normalize() if homog else acc.primitive())
        return out
    if homog:
        minors = _all_minors(A.entries, size, lambda a, b: a + b, lambda a, b: a * b, lambda a: -a, HPoly.zero())
        g = lambda xs: reduce(hgcd, [x for x in xs if not x.is_zero]).normalize()
    else:
        minors = _all_minors(A.entries, size, lambda a, b: a + b, lambda a, b: a * b, lambda a: -a, UPoly())
        g = lambda xs: reduce(upoly_gcd, [x for x in xs if not x.is_zero]).primitive()
    out = []
    for k in range(1, size + 1):
        nz = [x for x in minors[k] if not x.is_zero]
        if not nz:
            break
        out.append(g(nz))
    return out


def hdet(A: HPolyMat) -> HPoly:
    """Determinant of a square matrix of forms (entries must grade consistently)."""
    if A.rows != A.cols:
        raise ValueError("determinant of a non-square matrix")
    n = A.rows
    E = A.entries
    memo: dict = {(): HPoly.const(1)}

    # expand along rows n-k .. n-1 over column subsets
    def minor(cols: tuple) -> HPoly:
        if cols in memo:
            return memo[cols]
        r = n - len(cols)
        val = HPoly.zero()
        for idx, c in enumerate(cols):
            e = E[r][c]
            if e.is_zero:
                continue
            sub = minor(cols[:idx] + cols[idx + 1 :])
            if sub.is_zero:
                continue
            term = e * sub
            val = val + (-term if idx % 2 else term)
        memo[cols] = val
        return val

    return minor(tuple(range(n)))


# ---------------------------------------------------------------------------
# evaluation rank
# ---------------------------------------------------------------------------


def rank_at(A: HPolyMat, point) -> int:
    """Exact rank after substituting ``point`` into every entry."""
    from .linalg import rank

    return rank(A.evaluate(point))


# ---------------------------------------------------------------------------
# verification helpers
# ---------------------------------------------------------------------------


def _index_tuples(size: int, k: int):
    return combinations(range(1, size + 1), k)


def check_chain_products(alpha, beta, gamma, size: int, unit_power=None, max_k: int = 3, one=None):
    """Check ``prod alpha_i * prod beta_j | (extra) * prod gamma_{i+j-t}`` for all tuples.

    ``unit_power(lhs, rhs)`` may return the smallest power of an auxiliary
    element making ``lhs | aux^l * rhs``; it defaults to plain divisibility.
    Returns ``(violations, worst_l)``.
    """
    violations = []
    worst = 0
    for k in range(1, min(size, max_k) + 1):
        for I in _index_tuples(size, k):
            for J in _index_tuples(size, k):
                idx = [i + j - (t + 1) for t, (i, j) in enumerate(zip(I, J))]
                if any(x > size for x in idx):
                    continue
                lhs = one
                for i in I:
                    lhs = lhs * alpha[i - 1]
                for j in J:
                    lhs = lhs * beta[j - 1]
                rhs = one
                for x in idx:
                    rhs = rhs * gamma[x - 1]
                if rhs.is_zero:
                    continue
                if unit_power is None:
                    if not lhs.divides(rhs):
                        violations.append((I, J))
                else:
                    l = unit_power(lhs, rhs)
                    if l is None:
                        violations.append((I, J))
                    else:
                        worst = max(worst, l)
    return violations, worst


def check_product_divisibility(A: PolyMat, B: PolyMat, max_k: int = 3) -> CheckReport:
    """Invariant factors of ``A``, ``B`` and ``A @ B`` obey the product divisibility."""
    from .linalg import det as qdet

    if A.rows != A.cols or B.rows != B.cols or A.rows != B.rows:
        raise ValueError("square matrices of equal size required")
    sa = snf_univariate(A).invariant_factors
    sb = snf_univariate(B).invariant_factors
    if any(f.is_zero for f in sa) or any(f.is_zero for f in sb):
        raise SingularInputError("product divisibility needs nonsingular inputs")
    sg = snf_univariate(A @ B).invariant_factors
    viol, _ = check_chain_products(sa, sb, sg, A.rows, max_k=max_k, one=UPoly.const(1))
    return CheckReport(
        "product-divisibility",
        not viol,
        "all hold" if not viol else f"{len(viol)} violations",
        viol,
    )


def check_cayley_padding(F, G) -> CheckReport:
    """Smith form of ``B((sv-tu)F, (sv-tu)G)`` is that of ``B(F, G)`` plus a zero."""
    from .poly import BiHPoly
    from .resultants import bezout_matrix

    if F.dtv != G.dtv:
        raise ValueError("F and G must have the same (t,v)-degree")
    cay = BiHPoly.cayley()
    small = bezout_matrix(F, G).matrix
    big = bezout_matrix(cay * F, cay * G).matrix
    if small.is_zero():
        s_small = [HPoly.zero()] * small.rows
    else:
        s_small = snf_homogeneous(small).invariant_factors
    if big.is_zero():
        s_big = [HPoly.zero()] * big.rows
    else:
        s_big = snf_homogeneous(big).invariant_factors
    ok = s_big == list(s_small) + [HPoly.zero()]
    return CheckReport(
        "cayley-padding",
        ok,
        f"S(B(F,G)) = {[str(f) for f in s_small]}, S(B(cF,cG)) = {[str(f) for f in s_big]}",
    )
