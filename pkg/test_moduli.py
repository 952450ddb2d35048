#!/usr/bin/env python3
"""
Tests for tangent spaces, rigidity verdicts, the stratum invariant and the
first-order transport.
"""

import random

import pytest
from sympy.polys.domains import QQ

import moduli
from algebra_core import MulTable, abelian, direct_sum, dual_numbers, leibniz2, matrix_algebra, sl2, split_etale
from exact_linalg import identity, span_contains
from identities import InconsistentComputationError, OffVarietyError
from moduli import (
    block_profile_prediction, orbit_tangent, random_endomorphism, resolve_theory, rigidity_verdict,
    semisimple_locus_check, stratum_invariant, transport_derivative, transport_derivative_check,
    variety_tangent,
)


def test_theory_aliases():
    assert resolve_theory("alg") == "hochschild"
    assert resolve_theory("comm") == "harrison"
    assert resolve_theory("leib") == "leibniz"
    assert resolve_theory("lie") == "ce"
    assert resolve_theory("ce") == "ce"
    with pytest.raises(ValueError):
        resolve_theory("jordan")


def test_rigidity_verdicts():
    """(point, theory, variety tangent, orbit tangent, rigid)."""
    cases = [
        (matrix_algebra(2), "alg", 13, 13, True),
        (split_etale(2), "alg", 4, 4, True),
        (split_etale(3), "comm", 9, 9, True),
        (dual_numbers(), "alg", 4, 3, False),
        (dual_numbers(), "comm", 4, 3, False),
        (sl2(), "lie", 6, 6, True),
        (leibniz2(), "leib", 3, 2, False),
    ]
    for x, theory, variety, orbit, rigid in cases:
        v = rigidity_verdict(x, theory)
        assert (v.variety_tangent_dim, v.orbit_tangent_dim, v.rigid_in_moduli) == (variety, orbit, rigid), x.name
        assert v.stack_tangent_dim == variety - orbit
        assert v.orbit_open == rigid


def test_predictions_are_recorded():
    v = rigidity_verdict(matrix_algebra(2), "alg")
    assert (v.predicted_dim, v.predicted_by) == (13, "separable")
    v = rigidity_verdict(split_etale(3), "comm")
    assert (v.predicted_dim, v.predicted_by) == (9, "etale")
    v = rigidity_verdict(sl2(), "lie")
    assert (v.predicted_dim, v.predicted_by) == (6, "semisimple")
    assert rigidity_verdict(dual_numbers(), "alg").predicted_dim is None


def test_block_profile_prediction():
    x = direct_sum(matrix_algebra(2), split_etale(1))
    assert block_profile_prediction((2, 1)) == 22
    assert rigidity_verdict(x, "alg").variety_tangent_dim == 22


def test_prime_field_verdict_is_advisory():
    v = rigidity_verdict(dual_numbers(), "alg", "prime")
    assert v.advisory
    assert v.predicted_dim is None
    assert v.variety_tangent_dim == 4


def test_off_variety_verdict_raises():
    with pytest.raises(OffVarietyError):
        rigidity_verdict(sl2(), "alg")
    with pytest.raises(OffVarietyError):
        rigidity_verdict(matrix_algebra(2), "comm")


def test_stratum_invariant():
    m2 = stratum_invariant(matrix_algebra(2), "alg")
    assert (m2.rank_d2, m2.c2_dim, m2.c3_dim) == (51, 64, 256)
    assert stratum_invariant(split_etale(2), "alg").rank_d2 == 4
    assert stratum_invariant(sl2(), "lie").c2_dim == 9


def test_orbit_tangent_lies_in_variety_tangent():
    for x, theory in [(dual_numbers(), "alg"), (leibniz2(), "leib"), (sl2(), "lie"), (dual_numbers(), "comm")]:
        variety, orbit = variety_tangent(x, theory), orbit_tangent(x, theory)
        assert orbit.dim <= variety.dim
        assert span_contains(variety.basis, orbit.basis)


def test_semisimple_locus():
    assert semisimple_locus_check(sl2())
    assert not semisimple_locus_check(direct_sum(sl2(), abelian(1)))


def test_transport_derivative_is_minus_d1():
    rng = random.Random(42)
    table = MulTable(2, tuple(QQ(rng.randint(-2, 2)) for _ in range(8)))
    for x in [dual_numbers(), sl2(), leibniz2(), table]:
        for _ in range(20):
            assert transport_derivative_check(x, random_endomorphism(x.dim, rng))


def test_transport_derivative_of_identity_direction():
    """f = 1 rescales mu by 1/(1+t): the derivative is -mu."""
    x = dual_numbers()
    assert transport_derivative(x, identity(2)) == [-c for c in x.vector()]


def test_orbit_tangent_contains_the_first_order_transport():
    for x, theory in [(matrix_algebra(2), "alg"), (split_etale(3), "comm"), (sl2(), "lie"), (leibniz2(), "leib")]:
        orbit = orbit_tangent(x, theory)
        for f in (identity(x.dim), random_endomorphism(x.dim, random.Random(x.dim))):
            assert span_contains(orbit.basis, [transport_derivative(x, f)])


def test_orbit_tangent_rejects_a_stray_derivative(monkeypatch):
    """abelian(2) has a zero orbit tangent, so any nonzero derivative is inconsistent."""
    monkeypatch.setattr(moduli, "transport_derivative", lambda x, f: [QQ.one] + [QQ.zero] * 7)
    with pytest.raises(InconsistentComputationError):
        orbit_tangent(abelian(2), "alg")
