from fractions import Fraction

import pytest

from zformcert.arith import is_squarefree_int
from zformcert.fields import SignVector
from zformcert.quadratic import (
    certify_quadratic,
    delta_f,
    quad_field,
    segment_bound_check,
)

SQUAREFREE_TO_100 = [D for D in range(2, 101) if is_squarefree_int(D)]


def test_quad_field_congruence_rule():
    assert quad_field(2).field.defining.coefficients == (-2, 0, 1)
    assert quad_field(5).field.defining.coefficients == (-1, -1, 1)
    assert quad_field(13).field.defining.coefficients == (-3, -1, 1)


def test_invalid_d_rejected():
    for bad in (1, 4, 12, -3):
        with pytest.raises(ValueError):
            quad_field(bad)


class TestDeltaF:
    def test_d2(self):
        assert delta_f(2).coords == (Fraction(0), Fraction(1, 4))

    def test_d5(self):
        # (1/5)sqrt5 expressed over (1, tau) with tau = (1+sqrt5)/2
        assert delta_f(5).coords == (Fraction(-1, 5), Fraction(2, 5))

    @pytest.mark.parametrize("D", [2, 3, 5, 7, 13, 21, 94])
    def test_defining_identities(self, D):
        qf = quad_field(D)
        d = delta_f(D)
        assert d.trace() == 0
        assert (d * qf.tau).trace() == 1
        assert d.signature() == SignVector((-1, 1))

    def test_trace_one_on_every_shift(self):
        for D in (2, 13, 30):
            qf = quad_field(D)
            d = delta_f(D)
            for a in range(-40, 41):
                assert (d * qf.tau.shift(a)).trace() == 1

    def test_trace_one_across_sweep(self):
        for D in SQUAREFREE_TO_100:
            qf = quad_field(D)
            d = delta_f(D)
            for a in (-3, -1, 0, 2):
                assert (d * qf.tau.shift(a)).trace() == 1


class TestCertify:
    def test_d2(self):
        v = certify_quadratic(2)
        assert v.verdict == "obstruction"
        assert v.shift == 0 and v.norm_alpha == -2
        assert v.alpha.coords == (Fraction(0), Fraction(1))

    def test_d5_exceptional(self):
        assert certify_quadratic(5).verdict == "exceptional"

    def test_d13(self):
        v = certify_quadratic(13)
        assert v.shift == 0 and v.norm_alpha == -3

    def test_sweep_exceptional_only_5(self):
        exceptional = [D for D in SQUAREFREE_TO_100 if certify_quadratic(D).verdict == "exceptional"]
        assert exceptional == [5]

    def test_witness_contract_on_sweep(self):
        for D in SQUAREFREE_TO_100[:20]:
            v = certify_quadratic(D)
            if v.verdict != "obstruction":
                continue
            assert (v.delta * v.alpha).trace() == 1
            assert v.delta.signature() == v.alpha.signature() == v.epsilon
            assert abs(v.norm_alpha) != 1


class TestSegmentBound:
    @pytest.mark.parametrize(
        "D,passes", [(2, True), (5, True), (3, False), (13, False), (94, False)]
    )
    def test_examples(self, D, passes):
        res = segment_bound_check(D)
        assert res.passes is passes

    def test_exact_spreads(self):
        assert segment_bound_check(2).spread_squared == 8
        assert segment_bound_check(5).spread_squared == 5
        assert segment_bound_check(13).spread_squared == 13

    def test_sweep_passes_only_2_and_5(self):
        winners = [D for D in SQUAREFREE_TO_100 if segment_bound_check(D).passes]
        assert winners == [2, 5]


def test_three_segment_points_for_d2():
    # the shifts -1, 0, 1 of tau all carry mixed signs when D = 2
    qf = quad_field(2)
    for a in (-1, 0, 1):
        assert qf.tau.shift(a).signature() == SignVector((-1, 1))
