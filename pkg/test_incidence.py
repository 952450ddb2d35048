#!/usr/bin/env python3
"""
Tests for the bilinear incidence maps, the quadric family and fibre bases.
"""

import random

import pytest
from sympy.polys.domains import QQ

from algebra_core import (
    BUILDERS, DimensionMismatchError, MulTable, build, dual_numbers, leibniz2, matrix_algebra, sl2, split_etale,
    transport,
)
from cohomology import d2_hochschild, d2_leibniz
from equivariance import random_invertible
from exact_linalg import kernel_basis, same_span, span_contains
from identities import assoc_residual, is_associative, is_leibniz, leibniz_residual
from incidence import (
    b_bilinear, beta, build_q_family, fiber_as, fiber_leib, hochschild_pair_matrix, incidence_member_as,
    leib_pair_matrix,
)


def random_table(n, rng):
    return MulTable(n, tuple(QQ(rng.choice((-1, 0, 0, 1))) for _ in range(n**3)))


def test_diagonal_recovers_residuals():
    rng = random.Random(11)
    for x in [matrix_algebra(2), sl2(), random_table(2, rng), random_table(3, rng)]:
        assert beta(x, x) == assoc_residual(x)
        assert b_bilinear(x, x) == leibniz_residual(x)


def test_maps_reject_mixed_dimensions():
    with pytest.raises(DimensionMismatchError):
        beta(dual_numbers(), sl2())


def test_q_family_reproduces_beta():
    rng = random.Random(3)
    x, y = random_table(2, rng), random_table(2, rng)
    q = build_q_family(2)
    b = beta(x, y)
    for phi in q.phis():
        assert q.pairing(phi, x, y) == b.t(*phi)
        assert set(q.entries(phi).values()) <= {1, -1}


def test_q_family_needs_positive_dimension():
    with pytest.raises(ValueError):
        build_q_family(0)


def test_sym_matrix_is_symmetric():
    q = build_q_family(2)
    phi = (0, 1, 1, 0)
    s = q.sym_matrix(phi)
    assert s.to_dense().to_Matrix() == s.to_dense().to_Matrix().T


def test_diagonal_slice_is_associativity():
    rng = random.Random(5)
    points = [matrix_algebra(2), dual_numbers(), sl2(), leibniz2()] + [random_table(2, rng) for _ in range(30)]
    for x in points:
        assert incidence_member_as(x, x) == is_associative(x)


def test_associative_fiber_is_hochschild_cocycles():
    """fiber_as(x) is ker d2 of the Hochschild slice and contains x itself."""
    cases = [(dual_numbers(), 4), (split_etale(2), 4), (matrix_algebra(2), 13)]
    for x, dim in cases:
        fiber = fiber_as(x)
        assert fiber.dim == dim
        assert same_span(fiber.vectors, kernel_basis(d2_hochschild(x)))
        assert span_contains(fiber.vectors, [x.vector()])


def test_pair_matrices_match_differentials():
    x = sl2()
    assert leib_pair_matrix(x).to_dense().to_Matrix() == d2_leibniz(x).to_dense().to_Matrix()
    y = dual_numbers()
    assert hochschild_pair_matrix(y).to_dense().to_Matrix() == d2_hochschild(y).to_dense().to_Matrix()


def test_leibniz_fiber_is_leibniz_cocycles():
    for x, dim in [(sl2(), 6), (leibniz2(), 3)]:
        fiber = fiber_leib(x)
        assert fiber.dim == dim
        assert same_span(fiber.vectors, kernel_basis(d2_leibniz(x)))
        assert span_contains(fiber.vectors, [x.vector()])


def small_builder_points(max_dim=3):
    """Every builder output of dimension at most max_dim, once each."""
    seen = {}
    for name in BUILDERS:
        for arg in (None, "1", "2", "3"):
            x = build(name, arg)
            if x.dim <= max_dim:
                seen.setdefault(x.coeffs, x)
    return list(seen.values())


def test_fibers_follow_transported_points():
    """On each variety the fibres stay the d2 kernels, with constant dimension, along 20 transports."""
    rng = random.Random(17)
    for x in small_builder_points():
        associative, leibniz = is_associative(x), is_leibniz(x)
        base_as = fiber_as(x).dim if associative else None
        base_leib = fiber_leib(x).dim if leibniz else None
        for _ in range(20):
            y = transport(random_invertible(x.dim, rng), x)
            if associative:
                fiber = fiber_as(y)
                assert same_span(fiber.vectors, kernel_basis(d2_hochschild(y)))
                assert fiber.dim == base_as, x.name
            if leibniz:
                fiber = fiber_leib(y)
                assert same_span(fiber.vectors, kernel_basis(d2_leibniz(y)))
                assert fiber.dim == base_leib, x.name
