import random

import pytest
from gmpy2 import mpq

from conftest import H, U
from ratcurve.golden import golden_curve
from ratcurve.linalg import det, identity, matmul
from ratcurve.poly import BiHPoly, HPoly, UPoly, hresultant
from ratcurve.polymat import hdet
from ratcurve.resultants import (
    DegreeError,
    _tv_coeff_lists,
    bezout_bihpoly,
    bezout_entries,
    bezout_entry_formula,
    bezout_matrix,
    check_product_factor_divisibility,
    companion,
    companion_H,
    eval_poly_at_matrix,
    hybrid_bezout,
    resultant_sylvester,
    reversal,
)
from ratcurve.singularity import analyze_curve


def rand_poly(rng, deg, monic=False):
    cs = [rng.randint(-4, 4) for _ in range(deg)] + [1 if monic else rng.choice([-3, -2, -1, 1, 2, 3])]
    return UPoly(cs)


def rand_bihpoly(rng, dsu, dtv):
    return BiHPoly(dsu, dtv, [[rng.randint(-3, 3) for _ in range(dtv + 1)] for _ in range(dsu + 1)])


class TestBezout:
    def test_linear(self):
        F = BiHPoly.outer(HPoly.const(1), H("t"))
        G = BiHPoly.outer(HPoly.const(1), H("v"))
        assert bezout_matrix(F, G).matrix.entries == ((HPoly.const(1),),)

    def test_identical(self):
        F = BiHPoly.outer(H("s", ("s", "u")), H("t^2 + v^2"))
        assert bezout_matrix(F, F).matrix.is_zero()

    def test_degree_mismatch(self):
        with pytest.raises(DegreeError):
            bezout_matrix(BiHPoly.outer(HPoly.const(1), H("t")), BiHPoly.outer(HPoly.const(1), H("t^2")))

    def test_cusp_determinant(self):
        an = analyze_curve(golden_curve("cusp"))
        D = hdet(an.ms.bezout)
        for s0 in range(-3, 4):
            pt = (mpq(s0), mpq(1))
            res = hresultant(an.fg.F.eval_su(pt), an.fg.G.eval_su(pt))
            assert abs(res) == abs(D.eval_at(pt))

    def test_resultant_random(self):
        rng = random.Random(21)
        for _ in range(15):
            F, G = rand_bihpoly(rng, 1, 3), rand_bihpoly(rng, 2, 3)
            if F.is_zero or G.is_zero:
                continue
            D = hdet(bezout_matrix(F, G).matrix)
            vals = []
            for s0 in range(4):
                pt = (mpq(s0), mpq(1))
                vals.append((D.eval_at(pt) if not D.is_zero else 0, hresultant(F.eval_su(pt), G.eval_su(pt))))
            assert all(abs(a) == abs(b) for a, b in vals)

    def test_symmetry_and_swap(self):
        rng = random.Random(22)
        F, G = rand_bihpoly(rng, 1, 3), rand_bihpoly(rng, 1, 3)
        B = bezout_matrix(F, G).matrix
        assert B.transpose().entries == B.entries
        assert bezout_matrix(G, F).matrix.entries == (-B).entries

    def test_entry_formula(self):
        rng = random.Random(23)
        for _ in range(10):
            F, G = rand_bihpoly(rng, 2, 4), rand_bihpoly(rng, 1, 4)
            _, fs, gs = _tv_coeff_lists(F, G)
            a = bezout_entries(fs, gs)
            assert a == bezout_entry_formula(fs, gs)
            assert a == bezout_bihpoly(F, G)


class TestCompanion:
    def test_definition(self):
        assert companion(U("t^2 - 1")) == [[0, 1], [1, 0]]

    def test_identity_eval(self):
        M = [[mpq(1), mpq(2)], [mpq(3), mpq(4)]]
        assert eval_poly_at_matrix(U("t"), M) == M

    def test_zero(self):
        with pytest.raises(DegreeError):
            companion(UPoly())

    def test_resultant_identity(self):
        rng = random.Random(24)
        for _ in range(50):
            n = rng.randint(1, 4)
            m = rng.randint(0, 4)
            P, Q = rand_poly(rng, n), rand_poly(rng, m)
            p0 = P.lc
            C = companion(P * (1 / p0))
            lhs = p0 ** m * det(eval_poly_at_matrix(Q, C))
            assert lhs == resultant_sylvester(P, Q)
            assert lhs == (-1) ** (m * n) * resultant_sylvester(Q, P)

    def test_H_unit(self):
        assert companion_H(UPoly.const(1), U("t^3 - 2*t + 5")) == identity(3)

    def test_reversal_involution(self):
        J = reversal(4)
        assert matmul(J, J) == identity(4)

    def test_H_product(self):
        rng = random.Random(25)
        for _ in range(40):
            n = rng.randint(2, 5)
            a = rng.randint(0, n)
            b = rng.randint(0, n - a)
            P, Q, R = rand_poly(rng, n), rand_poly(rng, a), rand_poly(rng, b)
            assert companion_H(Q * R, P) == matmul(companion_H(Q, P), companion_H(R, P))


class TestHybrid:
    def test_unit(self):
        assert det(hybrid_bezout(UPoly.const(1), U("2*t^3 - t + 1"))) == 1

    def test_equal(self):
        P = U("t^2 - 3*t + 1")
        assert det(hybrid_bezout(P, P)) == 0

    def test_shared_root(self):
        assert det(hybrid_bezout(U("t-1"), U("t^2-1"))) == 0

    def test_degree_order(self):
        with pytest.raises(DegreeError):
            hybrid_bezout(U("t^3"), U("t^2+1"))

    def test_determinant(self):
        rng = random.Random(26)
        for _ in range(50):
            n = rng.randint(1, 5)
            m = rng.randint(0, n)
            P, Q = rand_poly(rng, n), rand_poly(rng, m)
            d = det(hybrid_bezout(Q, P))
            res = resultant_sylvester(P, Q)
            assert abs(d) == abs(res)


class TestProductFactors:
    def test_units(self):
        assert check_product_factor_divisibility(UPoly.const(1), UPoly.const(1), U("t^3 - t + 2")).ok

    def test_monic(self):
        rng = random.Random(27)
        for _ in range(6):
            f, g, h = rand_poly(rng, 1, True), rand_poly(rng, 2, True), rand_poly(rng, 4, True)
            rep = check_product_factor_divisibility(f, g, h)
            assert rep.ok and rep.detail.startswith("max h0 exponent 0")

    def test_random(self):
        rng = random.Random(28)
        for _ in range(6):
            f, g, h = rand_poly(rng, 2), rand_poly(rng, 2), rand_poly(rng, 5)
            assert check_product_factor_divisibility(f, g, h).ok

    def test_bivariate(self):
        rng = random.Random(29)
        f = rand_bihpoly(rng, 1, 1)
        g = rand_bihpoly(rng, 1, 1)
        h = BiHPoly.outer(HPoly.const(1), H("t^3 - 2*t*v^2 + v^3"))
        assert check_product_factor_divisibility(f, g, h).ok

    def test_degree_precondition(self):
        with pytest.raises(DegreeError):
            check_product_factor_divisibility(U("t^2"), U("t^2"), U("t^3 + 1"))
