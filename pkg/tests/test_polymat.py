import random

import pytest

from conftest import H, U
from ratcurve.golden import golden_curve
from ratcurve.linalg import det
from ratcurve.poly import BiHPoly, HPoly, UPoly
from ratcurve.polymat import (
    HPolyMat,
    PolyMat,
    check_cayley_padding,
    check_product_divisibility,
    det_factors,
    hdet,
    rank_at,
    bareiss,
    snf_homogeneous,
    snf_homogeneous_euclid,
    snf_local,
    snf_univariate,
)
from ratcurve.mubasis import CurveSpec
from ratcurve.singularity import analyze_curve, blow_up, move_to_origin


def rand_upoly(rng, deg):
    return UPoly([rng.randint(-3, 3) for _ in range(deg + 1)])


def rand_mat(rng, n, deg):
    return PolyMat([[rand_upoly(rng, rng.randint(0, deg)) for _ in range(n)] for _ in range(n)])


def elementary(rng, n):
    E = [[UPoly.const(int(i == j)) for j in range(n)] for i in range(n)]
    i, j = rng.sample(range(n), 2)
    E[i][j] = rand_upoly(rng, 1)
    return PolyMat(E)


class TestUnivariate:
    def test_already_diagonal(self):
        sf = snf_univariate(PolyMat.diag([U("t"), U("t^2")]))
        assert sf.invariant_factors == [U("t"), U("t^2")]

    def test_reorder(self):
        sf = snf_univariate(PolyMat([[U("t"), UPoly()], [UPoly(), UPoly.const(1)]]))
        assert sf.invariant_factors == [UPoly.const(1), U("t")]

    def test_minor_oracle(self):
        # D1 = t and D2 = t^2, so the chain is (t, t)
        A = PolyMat([[U("t"), U("t^2")], [U("t^2"), U("t^3+t")]])
        sf = snf_univariate(A)
        assert det_factors(A) == [U("t"), U("t^2")]
        assert sf.invariant_factors == [U("t"), U("t")]

    def test_zero_matrix(self):
        with pytest.raises(ValueError):
            snf_univariate(PolyMat([[UPoly()]]))

    def test_rank_deficient(self):
        A = PolyMat([[U("t"), U("t^2")], [U("1"), U("t")]])
        sf = snf_univariate(A)
        assert sf.invariant_factors[-1].is_zero
        assert sf.rank == 1

    def test_transforms(self):
        rng = random.Random(11)
        for _ in range(20):
            A = rand_mat(rng, 3, 2)
            if A.is_zero():
                continue
            sf = snf_univariate(A, track_transforms=True)
            assert sf.left @ A @ sf.right == PolyMat.diag(sf.invariant_factors)
            for T in (sf.left, sf.right):
                d = _det_poly(T)
                assert d.degree == 0 and not d.is_zero

    def test_equivalent_matrices(self):
        rng = random.Random(12)
        for _ in range(15):
            A = rand_mat(rng, 3, 2)
            if A.is_zero():
                continue
            B = elementary(rng, 3) @ A @ elementary(rng, 3)
            assert snf_univariate(A).invariant_factors == snf_univariate(B).invariant_factors


def _det_poly(T: PolyMat) -> UPoly:
    from ratcurve.polymat import _all_minors

    minors = _all_minors(T.entries, T.rows, lambda a, b: a + b, lambda a, b: a * b, lambda a: -a, UPoly())
    return minors[T.rows][0]


class TestDetFactors:
    def test_identity(self):
        I = PolyMat.identity(3)
        assert det_factors(I) == [UPoly.const(1)] * 3

    def test_scalar_diag(self):
        assert det_factors(PolyMat.diag([U("t"), U("t")])) == [U("t"), U("t^2")]

    def test_cross_oracle(self):
        rng = random.Random(13)
        for _ in range(20):
            A = rand_mat(rng, 3, 2)
            if A.is_zero():
                continue
            sf = snf_univariate(A)
            acc = UPoly.const(1)
            D = det_factors(A)
            for k, f in enumerate(sf.invariant_factors):
                if f.is_zero:
                    break
                acc = acc * f
                assert D[k] == acc.primitive()


class TestHomogeneous:
    def test_mixed_charts(self):
        A = HPolyMat([[H("t"), HPoly.zero()], [HPoly.zero(), H("t*v")]])
        assert snf_homogeneous(A).invariant_factors == [H("t"), H("t*v")]

    def test_degree_conservation(self):
        A = HPolyMat([[H("t^2*v"), H("v^3")], [H("t^3"), H("t*v^2")]])
        fs = snf_homogeneous(A).invariant_factors
        d = hdet(A)
        assert sum(f.degree for f in fs) == d.degree
        prod = fs[0] * fs[1]
        assert prod.normalize() == d.normalize()

    def test_cusp_bezout(self):
        an = analyze_curve(golden_curve("cusp"))
        B = an.ms.bezout
        fs = snf_homogeneous(B).invariant_factors
        assert fs == [HPoly.const(1), H("s^2", ("s", "u"))]
        assert det_factors(B) == fs[:1] + [fs[1]]

    def test_charts_agree(self):
        A = HPolyMat([[H("t^2 - v^2"), H("t*v")], [H("t^2"), H("v^2")]])
        fs = snf_homogeneous(A).invariant_factors
        chart = snf_univariate(A.chart_t()).invariant_factors
        assert [f.chart_t().monic() for f in fs] == [g.monic() for g in chart]


class TestRank:
    def test_identity(self):
        A = HPolyMat([[HPoly.const(1), HPoly.zero()], [HPoly.zero(), HPoly.const(1)]])
        assert rank_at(A, (3, 7)) == 2

    def test_diag(self):
        A = HPolyMat([[H("t"), HPoly.zero()], [HPoly.zero(), H("v")]])
        assert rank_at(A, (0, 1)) == 1

    def test_cusp(self):
        # rank n - r = 1 at the cusp parameter
        an = analyze_curve(golden_curve("cusp"))
        assert rank_at(an.ms.bezout, (0, 1)) == 1

    def test_zero_point(self):
        A = HPolyMat([[H("t")]])
        with pytest.raises(ValueError):
            rank_at(A, (0, 0))


class TestProductDivisibility:
    def test_identity(self):
        I = PolyMat.identity(2)
        assert check_product_divisibility(I, I).ok

    def test_diag(self):
        A = PolyMat.diag([UPoly.const(1), U("t")])
        assert check_product_divisibility(A, A).ok

    def test_random(self):
        rng = random.Random(14)
        done = 0
        while done < 15:
            A, B = rand_mat(rng, 3, 2), rand_mat(rng, 3, 2)
            try:
                rep = check_product_divisibility(A, B)
            except ValueError:
                continue
            assert rep.ok, rep.failures
            done += 1

    def test_singular_rejected(self):
        A = PolyMat([[U("t"), U("t")], [U("t"), U("t")]])
        with pytest.raises(ValueError):
            check_product_divisibility(A, A)


class TestCayleyPadding:
    def test_linear(self):
        F = BiHPoly.outer(HPoly.const(1), H("t"))
        G = BiHPoly.outer(HPoly.const(1), H("v"))
        assert check_cayley_padding(F, G).ok

    def test_equal(self):
        F = BiHPoly.outer(H("s+u", ("s", "u")), H("t^2 - v^2"))
        assert check_cayley_padding(F, F).ok

    def test_degree_mismatch(self):
        with pytest.raises(ValueError):
            check_cayley_padding(BiHPoly.outer(HPoly.const(1), H("t")), BiHPoly.outer(HPoly.const(1), H("t^2")))


class TestLocal:
    def test_bareiss_rank_and_minor(self):
        A = PolyMat([[U("t"), U("t^2")], [U("t"), U("t^2")]])
        r, m = bareiss(A)
        assert r == 1 and m == U("t")
        r, m = bareiss(PolyMat([[U("t"), U("1")], [U("0"), U("t")]]))
        assert r == 2 and m.monic() == U("t^2")

    def test_repeated_prime(self):
        A = PolyMat([[U("t^2"), U("t")], [U("0"), U("t^3")]])
        assert snf_local(A).invariant_factors == [U("t"), U("t^4")]

    def test_rank_deficient(self):
        A = PolyMat([[U("t"), U("t"), U("0")], [U("t^2"), U("t^2"), U("0")]])
        assert snf_local(A).invariant_factors == [U("t"), UPoly()]

    def test_matches_euclid_univariate(self):
        rng = random.Random(41)
        for _ in range(60):
            A = rand_mat(rng, rng.randint(1, 4), 3)
            if A.is_zero():
                continue
            want = [f if f.is_zero else f.monic() for f in snf_univariate(A).invariant_factors]
            assert snf_local(A).invariant_factors == want

    def test_matches_euclid_homogeneous(self):
        rng = random.Random(42)
        for _ in range(40):
            n, d = rng.randint(1, 4), rng.randint(0, 3)
            A = HPolyMat([[HPoly(d, [rng.randint(-2, 2) for _ in range(d + 1)]) for _ in range(n)] for _ in range(n)])
            if A.is_zero():
                continue
            assert snf_homogeneous(A).invariant_factors == snf_homogeneous_euclid(A).invariant_factors

    def test_second_blow_up_of_ramphoid(self):
        # Euclidean elimination stalls on this one; the local route does not
        c = CurveSpec.from_strings("t^4*v", "t^5 + t^2*v^3", "v^5")
        restrict = None
        for _ in range(2):
            cls = next(k for k in analyze_curve(c, restrict=restrict).classes if H("t").divides(k.formula))
            restrict = cls.formula
            c = blow_up(move_to_origin(c, cls.point)).curve
        assert c.n == 11
        classes = analyze_curve(c, restrict=restrict).classes
        assert [(k.order, k.formula, k.psi) for k in classes] == [(2, H("t^2"), {})]
