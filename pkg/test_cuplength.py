"""
Tests for zero-divisors, the cup-length search, the symplectic fast path and the parity oracle.
"""

from fractions import Fraction
from math import comb

import pytest
from hypothesis import given, strategies as st

from src.algebra.cuplength import (
    CupLengthCertificate, cuplength_lower_bound, evaluate, lucas_oracle, power_cuplength,
    symplectic_fastpath, verify_certificate, zero_divisor_generators
)
from src.algebra.fields import F2, Q
from src.algebra.rings import RingHom, TensorRing, build_exterior, build_point, build_truncated, identity_hom
from src.algebra.serialization import CERTIFICATE_SCHEMA, certificate_to_json, validate_document
from src.utils.errors import CertificateMismatch, InvalidField, PullbackMismatch, TopPowerVanishes


def projective_pair(n: int, m: int, field=F2):
    source, target = build_truncated(1, n + 1, field, "x"), build_truncated(1, m + 1, field, "y")
    restriction = RingHom(source, target, {"x": target.generator("y")})
    return TensorRing(source, target), restriction


def complex_projective_pair(n: int, m: int):
    source, target = build_truncated(2, n + 1, Q, "x"), build_truncated(2, m + 1, Q, "y")
    restriction = RingHom(source, target, {"x": target.generator("y")})
    return TensorRing(source, target), restriction


class TestZeroDivisors:

    def test_projective_generators(self):
        tensor_ring, restriction = projective_pair(3, 2)
        zero_divisors = zero_divisor_generators(tensor_ring, restriction)
        assert [g.degree for g in zero_divisors] == [1, 3]
        for element in zero_divisors.elements:
            assert evaluate(tensor_ring, restriction, element).is_zero()

    def test_identity_has_only_diagonal_generators(self):
        ring = build_exterior(2, Q)
        tensor_ring = TensorRing(ring, ring)
        zero_divisors = zero_divisor_generators(tensor_ring, identity_hom(ring))
        assert len(zero_divisors) == 2

    def test_default_cap(self):
        tensor_ring, restriction = complex_projective_pair(2, 1)
        assert zero_divisor_generators(tensor_ring, restriction).default_max_factors() == 3


class TestSearch:

    @pytest.mark.parametrize("n,m", [(3, 2), (4, 2), (5, 3), (6, 2), (7, 4)])
    def test_projective_search_reaches_parity_bound(self, n, m):
        tensor_ring, restriction = projective_pair(n, m)
        certificate = cuplength_lower_bound(zero_divisor_generators(tensor_ring, restriction))
        assert certificate.k >= lucas_oracle(n, m)
        assert verify_certificate(certificate)
        assert not certificate.product.is_zero()

    def test_desk_case(self):
        tensor_ring, restriction = projective_pair(3, 2)
        certificate = cuplength_lower_bound(zero_divisor_generators(tensor_ring, restriction))
        assert certificate.k == 3
        assert certificate.bound_implied == 4

    def test_thread_count_does_not_change_result(self):
        tensor_ring, restriction = projective_pair(6, 3)
        zero_divisors = zero_divisor_generators(tensor_ring, restriction)
        single = cuplength_lower_bound(zero_divisors, threads=1)
        pooled = cuplength_lower_bound(zero_divisors, threads=4)
        assert (single.k, single.labels) == (pooled.k, pooled.labels)
        assert single.product == pooled.product

    def test_max_factors_caps_search(self):
        tensor_ring, restriction = projective_pair(5, 3)
        certificate = cuplength_lower_bound(zero_divisor_generators(tensor_ring, restriction), max_factors=2)
        assert certificate.k == 2

    def test_torus_against_point(self):
        torus, point = build_exterior(3, Q), build_point(Q)
        collapse = RingHom(torus, point, {name: point.zero() for name in torus.names})
        tensor_ring = TensorRing(torus, point)
        certificate = cuplength_lower_bound(zero_divisor_generators(tensor_ring, collapse))
        assert certificate.k == 3

    def test_certificate_json(self):
        tensor_ring, restriction = projective_pair(3, 2)
        certificate = cuplength_lower_bound(zero_divisor_generators(tensor_ring, restriction))
        document = certificate_to_json(certificate)
        validate_document(document, CERTIFICATE_SCHEMA)
        assert list(document) == ["k", "factors", "product", "bound"]
        assert document["bound"] == "TC >= 4"

    def test_tampered_certificate(self):
        tensor_ring, restriction = projective_pair(3, 2)
        certificate = cuplength_lower_bound(zero_divisor_generators(tensor_ring, restriction))
        tampered = CupLengthCertificate(certificate.k, certificate.factors, certificate.labels, tensor_ring.one())
        assert not verify_certificate(tampered)
        with pytest.raises(CertificateMismatch):
            verify_certificate(tampered, enforce=True)


class TestSymplecticFastPath:

    @pytest.mark.parametrize("n,m", [(n, m) for n in range(1, 5) for m in range(1, n + 1)])
    def test_complex_projective_coefficient(self, n, m):
        tensor_ring, restriction = complex_projective_pair(n, m)
        x, y = restriction.source.generator("x"), restriction.target.generator("y")
        certificate = symplectic_fastpath(x, y, n, m, restriction, tensor_ring)
        assert certificate.k == n + m
        assert certificate.coefficient == Fraction((-1) ** m * comb(n + m, m))
        assert verify_certificate(certificate)

    def test_point_subspace(self):
        source, point = build_truncated(2, 3, Q, "x"), build_point(Q)
        collapse = RingHom(source, point, {"x": point.zero()})
        certificate = symplectic_fastpath(source.generator("x"), point.zero(), 2, 0, collapse)
        assert certificate.k == 2
        assert certificate.coefficient == 1

    def test_pullback_mismatch(self):
        tensor_ring, restriction = complex_projective_pair(2, 1)
        x, y = restriction.source.generator("x"), restriction.target.generator("y")
        with pytest.raises(PullbackMismatch):
            symplectic_fastpath(x, y.scale(2), 2, 1, restriction, tensor_ring)

    def test_top_power_vanishes(self):
        tensor_ring, restriction = complex_projective_pair(2, 1)
        x, y = restriction.source.generator("x"), restriction.target.generator("y")
        with pytest.raises(TopPowerVanishes):
            symplectic_fastpath(x, y, 3, 1, tensor_ring=tensor_ring)

    def test_needs_rationals(self):
        source = build_truncated(2, 2, F2, "x")
        with pytest.raises(InvalidField):
            symplectic_fastpath(source.generator("x"), source.generator("x"), 1, 1)


class TestParityOracle:

    @pytest.mark.parametrize("n,m,expected", [(3, 2, 3), (2, 1, 3), (4, 2, 6), (7, 7, 7)])
    def test_values(self, n, m, expected):
        assert lucas_oracle(n, m) == expected

    @given(st.integers(min_value=1, max_value=6), st.integers(min_value=1, max_value=6))
    def test_power_of_diagonal_class_matches_oracle(self, a, b):
        n, m = max(a, b), min(a, b)
        tensor_ring, restriction = projective_pair(n, m)
        z = zero_divisor_generators(tensor_ring, restriction).generators[0].element
        assert power_cuplength(z).k == lucas_oracle(n, m)

    @given(st.integers(min_value=1, max_value=20), st.integers(min_value=0, max_value=20))
    def test_oracle_bounds(self, n, m):
        k = lucas_oracle(n, m)
        assert max(n, m) <= k <= n + m
