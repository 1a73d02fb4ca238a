import json
import random

import pytest

from traceideal.core import GF, QQ
from traceideal.errors import NotArtinianLocal, UnsupportedFamily
from traceideal.families import artinian_family, non_monomial_family, quotient, random_ideal, random_module
from traceideal.quotient import RIdeal, double_annihilator, ideal_equal
from traceideal.syzygy import PolyMatrix, PresentedModule, presentation_of_ideal
from traceideal.trace import (
    CONSISTENT,
    GORENSTEIN,
    NOT_GORENSTEIN,
    compare_trace_double_ann,
    gorenstein_by_socle,
    gorenstein_by_trace,
    is_trace_ideal,
    module_annihilator,
    monomial_ideals,
    random_element,
    trace_ideal,
    trace_of_ideal,
    verify_equivalences,
)


def module(R, rows):
    S = R.ambient
    return PresentedModule(R, PolyMatrix.from_rows(S, [[S.parse(e) for e in r] for r in rows]))


class TestTraceIdeal:
    def test_binomial_ideal_module(self):
        R = quotient(QQ, "x,y,z", [])
        M = module(R, [["z"], ["-y"]])
        assert ideal_equal(trace_ideal(M), R.ideal("y", "z"))

    def test_cyclic_depth_zero(self, depth_zero_ring):
        R = depth_zero_ring
        assert ideal_equal(trace_ideal(module(R, [["x", "y"]])), R.ideal("x"))

    def test_free_and_zero_modules(self, semigroup_ring):
        assert trace_ideal(PresentedModule.free(semigroup_ring, 2)).is_unit()
        R = semigroup_ring
        zero = PresentedModule(R, PolyMatrix(R.ambient, 0, 0, ()))
        assert trace_ideal(zero).is_zero()

    def test_trace_of_ideal_examples(self, depth_zero_ring, semigroup_ring):
        R = quotient(QQ, "x,y,z", [])
        assert ideal_equal(trace_of_ideal(R, R.ideal("x*y", "x*z")), R.ideal("y", "z"))
        D = depth_zero_ring
        assert ideal_equal(trace_of_ideal(D, D.ideal("y")), D.ideal("x", "y"))
        E = semigroup_ring
        assert ideal_equal(trace_of_ideal(E, E.ideal("b")), E.ideal("b", "c^2"))
        assert trace_of_ideal(E, E.zero_ideal()).is_zero()

    def test_is_trace_ideal_examples(self, depth_zero_ring):
        D = depth_zero_ring
        assert is_trace_ideal(D, D.ideal("x"))
        assert not is_trace_ideal(D, D.ideal("y"))
        R = quotient(QQ, "x,y,z", [])
        assert not is_trace_ideal(R, R.ideal("x*y", "x*z"))

    @pytest.mark.parametrize("variables", ["x,y", "x,y,z"])
    def test_grade_two(self, variables):
        R = quotient(QQ, variables, [])
        assert is_trace_ideal(R, R.ideal("x", "y"))


class TestGorenstein:
    def test_socle_examples(self, semigroup_ring):
        v = gorenstein_by_socle(quotient(QQ, "x,y", ["x^2", "y^2"]))
        assert (v.decision, v.socle_dim) == (GORENSTEIN, 1)
        v = gorenstein_by_socle(semigroup_ring)
        assert (v.decision, v.socle_dim) == (NOT_GORENSTEIN, 2)
        assert not ideal_equal(v.witness_trace, v.witness)
        assert gorenstein_by_socle(quotient(QQ, "x", ["x^5"])).decision == GORENSTEIN

    @pytest.mark.parametrize("seed", [0, 1, 17])
    def test_trace_semigroup(self, semigroup_ring, seed):
        R = semigroup_ring
        v = gorenstein_by_trace(R, samples=10, seed=seed)
        assert v.decision == NOT_GORENSTEIN
        assert str(v) == "NotGorenstein witness=(b) socle_dim=2"
        assert ideal_equal(v.witness_double_annihilator, R.ideal("b", "c^2"))
        assert not ideal_equal(trace_of_ideal(R, v.witness), v.witness)

    def test_trace_consistent(self):
        v = gorenstein_by_trace(quotient(QQ, "x,y", ["x^2", "y^2"]), samples=100)
        assert v.decision == CONSISTENT and v.socle_decision == GORENSTEIN
        assert gorenstein_by_trace(quotient(QQ, "x", ["x^3"]), samples=10).decision == CONSISTENT

    def test_report_json(self, semigroup_ring):
        payload = json.loads(gorenstein_by_trace(semigroup_ring, samples=5, seed=3).to_json())
        assert payload["seed"] == 3 and payload["witness"] == "(b)"
        assert {"ring", "method", "decision", "socle_dim", "checked_count"} <= set(payload)

    def test_requires_artinian(self, depth_zero_ring):
        for fn in (gorenstein_by_socle, gorenstein_by_trace, verify_equivalences):
            with pytest.raises(NotArtinianLocal):
                fn(depth_zero_ring)
        with pytest.raises(NotArtinianLocal):
            gorenstein_by_socle(quotient(QQ, "x", ["x^2 - 1"]))

    def test_decisions_agree_across_family(self):
        for R in artinian_family() + non_monomial_family() + artinian_family(GF(5))[5:9]:
            soc = gorenstein_by_socle(R)
            tr = gorenstein_by_trace(R, samples=10)
            if soc.decision == GORENSTEIN:
                assert tr.decision == CONSISTENT
            else:
                assert tr.decision == NOT_GORENSTEIN


class TestEquivalences:
    def test_square_zero_pair(self):
        R = quotient(QQ, "x,y", ["x^2", "y^2"])
        report = verify_equivalences(R)
        assert report.consistent and report.all_pass
        assert report.ideal_count == 6
        assert {str(I) for I in monomial_ideals(R)} == {"(0)", "(x*y)", "(x)", "(y)", "(y, x)", "(1)"}

    def test_semigroup(self, semigroup_ring):
        report = verify_equivalences(semigroup_ring)
        assert report.consistent and not report.all_pass
        assert "(b)" in report.failing

    def test_truncated_line(self):
        report = verify_equivalences(quotient(QQ, "x", ["x^4"]))
        assert report.consistent and report.ideal_count == 5

    def test_non_monomial_rejected(self):
        with pytest.raises(UnsupportedFamily):
            verify_equivalences(non_monomial_family()[0])

    def test_too_large_rejected(self):
        with pytest.raises(UnsupportedFamily):
            monomial_ideals(quotient(QQ, "x,y", ["x^4", "y^4"]))


class TestCompare:
    def test_cyclic(self):
        R = quotient(QQ, "x", ["x^4"])
        cmp = compare_trace_double_ann(module(R, [["x"]]))
        assert cmp.relation == "Equal"
        assert ideal_equal(cmp.trace, R.ideal("x^3"))

    def test_direct_sum(self, semigroup_ring):
        R = semigroup_ring
        cmp = compare_trace_double_ann(module(R, [["b", "0"], ["0", "c"]]))
        assert cmp.relation == "StrictlyContained"
        assert ideal_equal(cmp.trace, R.ideal("b", "c"))
        assert cmp.double_annihilator.is_unit()
        assert cmp.double_annihilator.contains(cmp.witness) and not cmp.trace.contains(cmp.witness)
        assert module_annihilator(module(R, [["b", "0"], ["0", "c"]])).is_zero()

    def test_free(self, semigroup_ring):
        cmp = compare_trace_double_ann(PresentedModule.free(semigroup_ring))
        assert cmp.relation == "Equal" and cmp.trace.is_unit()

    def test_requires_artinian(self, depth_zero_ring):
        with pytest.raises(NotArtinianLocal):
            compare_trace_double_ann(module(depth_zero_ring, [["x"]]))


FAMILY = artinian_family() + non_monomial_family() + artinian_family(GF(32003))[::4]


def test_principal_trace_is_double_annihilator():
    for R in FAMILY:
        rng = random.Random(0)
        elems = [R.ambient.monomial(m) for m in R.standard_monomials()]
        elems += [random_element(R, rng) for _ in range(50)]
        for r in elems:
            I = RIdeal(R, [r])
            assert ideal_equal(trace_of_ideal(R, I), double_annihilator(R, I)), f"({r}) in {R}"


def test_trace_sandwich_and_idempotence():
    rng = random.Random(1)
    for k in range(120):
        R = FAMILY[k % len(FAMILY)]
        I = random_ideal(R, rng, max_gens=3)
        tr = trace_of_ideal(R, I)
        assert I.issubset(tr) and tr.issubset(double_annihilator(R, I))
        assert ideal_equal(trace_of_ideal(R, tr), tr)


def test_trace_of_presented_ideal_matches():
    rng = random.Random(2)
    for R in FAMILY:
        I = random_ideal(R, rng)
        gens = list(I.canonical_generators())
        if gens:
            assert ideal_equal(trace_ideal(presentation_of_ideal(R, gens)), trace_of_ideal(R, I))


def test_module_containment_over_nonmonomial_rings():
    rng = random.Random(3)
    for R in non_monomial_family() + non_monomial_family(GF(7)):
        for _ in range(10):
            cmp = compare_trace_double_ann(random_module(R, rng))
            assert cmp.trace.issubset(cmp.double_annihilator)
