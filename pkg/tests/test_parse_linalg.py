import random

import pytest
from gmpy2 import mpq

from ratcurve.linalg import det, kernel, matmul, rank
from ratcurve.multipoly import TriPoly, berkowitz_det
from ratcurve.numfield import KForm, NumberField, rank_over
from ratcurve.parse import PolyParseError, parse_hpoly, parse_upoly
from ratcurve.poly import HPoly, UPoly


class TestParse:
    def test_rational_coefficients(self):
        f = parse_hpoly("t^2*v - 3/2*v^3")
        assert f.degree == 3
        assert f.coeffs == (mpq(-3, 2), 0, 1, 0)

    def test_parentheses_and_powers(self):
        assert parse_hpoly("(t+v)^2") == parse_hpoly("t^2 + 2*t*v + v^2")

    def test_juxtaposition(self):
        assert parse_hpoly("2t v") == parse_hpoly("2*t*v")

    def test_su_variables(self):
        assert parse_hpoly("s*u", ("s", "u")).coeffs == (0, 1, 0)

    def test_not_homogeneous(self):
        with pytest.raises(PolyParseError):
            parse_hpoly("t^2 + v")

    def test_error_position(self):
        with pytest.raises(PolyParseError) as info:
            parse_hpoly("t^2 +\n  * v^2")
        assert info.value.line == 2
        assert info.value.col >= 1

    def test_unknown_symbol(self):
        with pytest.raises(PolyParseError):
            parse_hpoly("t*x")

    def test_upoly(self):
        assert parse_upoly("t^2 - 1") == UPoly([-1, 0, 1])


class TestLinalg:
    def test_det_int_entries(self):
        assert det([[2, 1], [1, 1]]) == 1

    def test_det_singular(self):
        assert det([[1, 2], [2, 4]]) == 0

    def test_rank_and_kernel(self):
        A = [[1, 2, 3], [2, 4, 6], [1, 0, 1]]
        assert rank(A) == 2
        for v in kernel(A):
            assert all(x == 0 for x in matmul(A, [[x] for x in v]) for x in x)

    def test_berkowitz_matches_det(self):
        rng = random.Random(3)
        for _ in range(40):
            n = rng.randint(1, 5)
            M = [[rng.randint(-5, 5) for _ in range(n)] for _ in range(n)]
            T = [[TriPoly.const(x) for x in row] for row in M]
            got = berkowitz_det(T)
            want = det(M)
            assert (got.terms.get((0, 0, 0), 0)) == want


class TestNumberField:
    def test_inverse(self):
        K = NumberField(UPoly([-2, 0, 1]))  # sqrt 2
        a = UPoly([1, 1])  # 1 + sqrt 2
        assert K.mul(a, K.inv(a)) == UPoly.const(1)

    def test_gcd_over_field(self):
        K = NumberField(UPoly([-2, 0, 1]))
        f = KForm.from_hpoly(K, parse_hpoly("t^2 - 2*v^2"))
        g = KForm.from_hpoly(K, parse_hpoly("t^3 - 2*t*v^2 + t^2*v - 2*v^3"))
        assert f.gcd(g).degree == 2
        assert f.multiplicity_at(K.gen()) == 1

    def test_divide_linear(self):
        K = NumberField(UPoly([-2, 0, 1]))
        f = KForm.from_hpoly(K, parse_hpoly("t^2 - 2*v^2"))
        q = f.divide_linear(K.gen())
        assert q.degree == 1
        assert q.multiplicity_at(K.reduce(-K.gen())) == 1

    def test_rank_over(self):
        K = NumberField(UPoly([-2, 0, 1]))
        r = K.gen()
        rows = [[r, UPoly.const(2)], [UPoly.const(1), r]]  # det = r^2 - 2 = 0
        assert rank_over(K, rows) == 1

    def test_to_hpoly(self):
        K = NumberField(UPoly([0, 1]))
        f = parse_hpoly("t*v^2 - v^3")
        assert KForm.from_hpoly(K, f).to_hpoly() == f
