import dataclasses

import pytest

from conftest import H
from ratcurve.checks import (
    all_checks,
    singular_parameter_checks,
    budget_check,
    compare_four_matrices,
    cross_factor,
    h_block_check,
    random_unimodular_mixes,
    restricted_chain,
    symmetry_check,
    syzygy_invariance_check,
)
from ratcurve.golden import golden_curve
from ratcurve.mubasis import CurveSpec, compute_mubasis
from ratcurve.poly import HPoly
from ratcurve.singularity import analyze, analyze_curve, move_to_origin

HARD = {
    "ramphoid": ("t^4*v", "t^5 + t^2*v^3", "v^5"),
    "triple": ("t^3*v - t*v^3", "t^4 - t^2*v^2", "v^4 + t^4"),
    "sqrt2node": ("(t^2-2*v^2)*v", "t*(t^2-2*v^2)", "v^3"),
}


def hard(name):
    return CurveSpec.from_strings(*HARD[name])


class TestRestrictedChain:
    def test_keeps_only_h_part(self):
        S = lambda x: H(x, ("s", "u"))
        fs = [HPoly.const(1), S("s*(s+u)"), S("s^3*(s+u)")]
        assert restricted_chain(fs, S("s")) == [S("s"), S("s^3")]


class TestHBlock:
    @pytest.mark.parametrize("name", ["cusp", "node", "tacnode"])
    def test_golden(self, name):
        an = analyze_curve(golden_curve(name))
        for cls in an.classes:
            if cls.point is not None:
                assert h_block_check(move_to_origin(golden_curve(name), cls.point)).ok

    @pytest.mark.parametrize("name", sorted(HARD))
    def test_hard(self, name):
        c = hard(name)
        for cls in analyze_curve(c).classes:
            if cls.point is not None:
                assert h_block_check(move_to_origin(c, cls.point)).ok


class TestSyzygyInvariance:
    @pytest.mark.parametrize("name", ["cusp", "node", "tacnode"])
    def test_default_pairs(self, name):
        c = golden_curve(name)
        reps = syzygy_invariance_check(c, compute_mubasis(c))
        assert reps and all(r.ok for r in reps)

    def test_dependent_pair_rejected(self):
        c = golden_curve("cusp")
        b = compute_mubasis(c)
        assert cross_factor(c, b.p, b.p).is_zero
        (rep,) = syzygy_invariance_check(c, b, [(b.p, b.p)], include_ml=False)
        assert not rep.ok and rep.failures == ["precondition"]

    def test_cross_factor_of_basis_is_constant(self, golden):
        _, c = golden
        b = compute_mubasis(c)
        assert cross_factor(c, b.p, b.q).degree == 0

    def test_unimodular_mixes(self):
        c = golden_curve("tacnode")
        b = compute_mubasis(c)
        mixes = random_unimodular_mixes(b, 5, seed=7)
        reps = syzygy_invariance_check(c, b, mixes, include_ml=False)
        assert len(reps) == 5 * len(analyze_curve(c).classes)
        assert all(r.ok for r in reps)


class TestSymmetry:
    @pytest.mark.parametrize("name", ["cusp", "node", "tacnode"])
    def test_golden(self, name):
        reps = symmetry_check(analyze_curve(golden_curve(name)))
        assert reps and all(r.ok for r in reps)

    def test_irrational(self):
        reps = symmetry_check(analyze_curve(hard("sqrt2node")))
        assert reps and all(r.ok for r in reps)


class TestBudget:
    def test_golden(self, golden):
        _, c = golden
        assert budget_check(analyze(c)).ok

    def test_detects_missing_node(self):
        rep = analyze(golden_curve("tacnode"))
        broken = dataclasses.replace(rep, tree=rep.tree[:1])
        assert not budget_check(broken).ok


class TestFourMatrices:
    def test_golden(self, golden):
        _, c = golden
        reps = compare_four_matrices(c)
        assert [r.name for r in reps] == [
            "four-matrices:form2",
            "four-matrices:3vs4",
            "four-matrices:2vs4",
            "four-matrices:form1-log",
        ]
        assert all(r.ok for r in reps)


class TestSingularParameters:
    def test_cusp(self):
        reps = singular_parameter_checks(golden_curve("cusp"), tree_height=0)
        names = [r.name for r in reps]
        assert names.count("param:rank") == 2 and "param:shape" in names
        assert all(r.ok for r in reps)

    def test_tacnode(self):
        c = golden_curve("tacnode")
        reps = singular_parameter_checks(c, tree_height=1)
        assert all(r.ok for r in reps)
        assert "param:shape" not in [r.name for r in reps]


class TestAll:
    @pytest.mark.parametrize("name", sorted(HARD))
    def test_hard_curves_clean(self, name):
        c = hard(name)
        fails = [r for r in all_checks(c) if not r.ok]
        assert fails == []
