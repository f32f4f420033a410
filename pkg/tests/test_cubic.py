from fractions import Fraction

import pytest

from zformcert.cubic import (
    CONE_C1,
    CONE_C2,
    CONE_D1,
    CONE_D2,
    candidate_cubics,
    certify_cubic,
    construct_deltas,
    filter_by_bounds,
    find_root_in_field,
    recognize_cyclotomic7,
    shortest_beta,
)
from zformcert.errors import DegreeError, NotTotallyRealError, ReducibleError
from zformcert.fields import NumberField
from zformcert.lattices import gauss_reduce, lambda_basis
from zformcert.polynomials import parse_polynomial

SURVIVORS = [
    "x^3-2x^2-x+1",
    "x^3-3x^2+1",
    "x^3-4x^2+x+1",
    "x^3-4x^2+3x+1",
    "x^3-5x^2+4x+1",
]


class TestCandidates:
    def test_twenty_four(self):
        cands = candidate_cubics()
        assert len(cands) == 24
        assert len(set(c.coefficients for c in cands)) == 24

    def test_construction_constraints(self):
        for p in candidate_cubics():
            assert abs(p.coefficients[0]) == 1  # |m(0)| = 1
            assert abs(p(1)) == 1

    def test_five_survivors(self):
        surv = filter_by_bounds(candidate_cubics())
        assert sorted(p.text() for p in surv) == sorted(SURVIVORS)


class TestShortestBeta:
    def test_zeta7(self, zeta7_field):
        beta = shortest_beta(zeta7_field)
        from zformcert.lattices import projected_inner

        assert projected_inner(beta, beta) == Fraction(14, 3)
        order = zeta7_field.sorted_embedding_indices(beta)
        assert zeta7_field.embedding_floor(beta, order[0]) == -1

    def test_postconditions_generic(self, cubic_pool):
        extra = NumberField.from_polynomial(parse_polynomial("x^3-3x-1"))
        for field in cubic_pool[:6] + [extra]:
            beta = shortest_beta(field)
            assert not beta.is_rational
            order = field.sorted_embedding_indices(beta)
            assert field.embedding_floor(beta, order[0]) == -1  # min value in (-1, 0)
            u, _ = gauss_reduce(lambda_basis(field))
            from zformcert.lattices import projected_inner

            assert projected_inner(beta, beta) == u.norm_sq()


class TestConstructDeltas:
    def test_zeta7_pair(self, zeta7_field):
        L = lambda_basis(zeta7_field)
        u, _ = gauss_reduce(L)
        pair = construct_deltas(zeta7_field, u)
        x = u.representative
        for delta in (pair.delta1, pair.delta2):
            assert delta.trace() == 0
            assert (delta * x).trace() == 1
            # linearity: every integer shift pairs to 1 as well
            for t in (-3, 1, 7):
                assert (delta * x.shift(-t)).trace() == 1

    def test_functional_orthogonality(self, zeta7_field):
        # rho(delta1).u = 1 and rho(delta1).v1 = 0, as trace products
        L = lambda_basis(zeta7_field)
        u, _ = gauss_reduce(L)
        pair = construct_deltas(zeta7_field, u)
        geo = pair.geometry
        v1 = L.vector(geo.v1_coords).representative
        assert (pair.delta1 * u.representative).trace() == 1
        assert (pair.delta1 * v1).trace() == 0
        v2 = L.vector(geo.v2_coords).representative
        assert (pair.delta2 * u.representative).trace() == 1
        assert (pair.delta2 * v2).trace() == 0

    def test_geometry_invariants(self, cubic_pool):
        for field in cubic_pool[:8]:
            L = lambda_basis(field)
            u, _ = gauss_reduce(L)
            pair = construct_deltas(field, u)
            geo = pair.geometry
            assert geo.line_dist_sq >= Fraction(3, 4) * geo.u_norm_sq
            perm = geo.perm_desc
            assert CONE_C1.contains(L.vector(geo.v1_coords).representative, perm)
            assert CONE_C2.contains(L.vector(geo.v2_coords).representative, perm)

    def test_cone_membership_equals_signature(self, cubic_pool):
        # the rotated-cone predicate and the sign pattern are equivalent
        for field in cubic_pool[:8]:
            L = lambda_basis(field)
            u, _ = gauss_reduce(L)
            pair = construct_deltas(field, u)
            perm = pair.geometry.perm_desc
            sig1 = tuple(pair.delta1.signature()[i] for i in perm)
            sig2 = tuple(pair.delta2.signature()[i] for i in perm)
            assert CONE_D1.contains(pair.delta1, perm) == (sig1 == (1, 1, -1))
            assert CONE_D2.contains(pair.delta2, perm) == (sig2 == (1, -1, -1))

    def test_rejects_non_shortest(self, zeta7_field):
        L = lambda_basis(zeta7_field)
        u, v = gauss_reduce(L)
        long_vec = L.vector((u.coords[0] + 5 * v.coords[0], u.coords[1] + 5 * v.coords[1]))
        with pytest.raises(ValueError):
            construct_deltas(zeta7_field, long_vec)


class TestRecognition:
    @pytest.mark.parametrize("text", SURVIVORS[:1] + ["x^3+x^2-2x-1", "x^3-x^2-2x+1"])
    def test_recognizes_presentations(self, text):
        field = NumberField.from_polynomial(parse_polynomial(text))
        assert recognize_cyclotomic7(field) is not None

    def test_rejects_other_fields(self):
        field = NumberField.from_polynomial(parse_polynomial("x^3-3x^2+1"))
        assert recognize_cyclotomic7(field) is None

    def test_found_root_is_exact(self, zeta7_field):
        target = parse_polynomial("x^3-2x^2-x+1")
        gamma = find_root_in_field(zeta7_field, target)
        assert gamma is not None
        value = zeta7_field.zero()
        power = zeta7_field.one()
        for c in target.coefficients:
            value = value + power.scale(c)
            power = power * gamma
        assert value.is_zero

    def test_no_root_in_wrong_field(self):
        field = NumberField.from_polynomial(parse_polynomial("x^3-3x^2+1"))
        assert find_root_in_field(field, parse_polynomial("x^3+x^2-2x-1")) is None


class TestCertify:
    @pytest.mark.parametrize(
        "text,norm",
        [("x^3-3x^2+1", 3), ("x^3-4x^2+x+1", 5), ("x^3-5x^2+4x+1", 3)],
    )
    def test_eliminated_cubics(self, text, norm):
        v = certify_cubic(parse_polynomial(text))
        assert v.verdict == "obstruction"
        assert abs(v.norm_alpha) == norm
        assert v.shift == 2  # the witness is beta - 2
        assert (v.delta * v.alpha).trace() == 1

    @pytest.mark.parametrize(
        "text", ["x^3-2x^2-x+1", "x^3-4x^2+3x+1", "x^3+x^2-2x-1"]
    )
    def test_exceptional(self, text):
        v = certify_cubic(parse_polynomial(text))
        assert v.verdict == "exceptional"
        assert v.exceptional_generator is not None

    def test_exceptional_segments_all_units(self, zeta7_field):
        v = certify_cubic(zeta7_field.defining)
        seg1, seg2 = v.segment_shifts
        for t in seg1 + seg2:
            assert v.beta.shift(-t).is_unit()

    def test_generic_field_end_to_end(self):
        from zformcert.certificates import certificate_from_cubic, verify_certificate

        v = certify_cubic(parse_polynomial("x^3-3x-1"))
        assert v.verdict == "obstruction"
        assert v.epsilon == v.alpha.signature() == v.delta.signature()
        assert abs(v.norm_alpha) not in (0, 1)
        assert verify_certificate(certificate_from_cubic(v)).ok

    def test_output_is_deterministic(self):
        from zformcert.certificates import certificate_from_cubic, serialize

        for text in ("x^3-3x^2+1", "x^3-3x-1", "x^3-7x-2"):
            first = serialize(certificate_from_cubic(certify_cubic(parse_polynomial(text))))
            second = serialize(certificate_from_cubic(certify_cubic(parse_polynomial(text))))
            assert first == second

    def test_input_validation(self):
        with pytest.raises(DegreeError):
            certify_cubic(parse_polynomial("x^2-2"))
        with pytest.raises(ReducibleError):
            certify_cubic(parse_polynomial("x^3-x"))
        with pytest.raises(NotTotallyRealError):
            certify_cubic(parse_polynomial("x^3-2"))

    def test_witness_segment_pairing(self, cubic_pool):
        for field in cubic_pool[:6]:
            v = certify_cubic(field.defining)
            if v.verdict != "obstruction":
                continue
            pair = v.witness_pair
            expected = pair.delta1 if v.segment == 1 else pair.delta2
            assert v.delta == expected
            assert v.shift in v.segment_shifts[v.segment - 1]
