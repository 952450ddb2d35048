#!/usr/bin/env python3
"""
Tests for the exact scalar and matrix layer.
"""

import random

import pytest
from sympy.polys.domains import GF, QQ

from exact_linalg import (
    PRIME, PRIME_FIELD, RATIONAL, SingularMatrixError, certified_rank, column_space_basis, determinant,
    entries, field_domain, format_scalar, identity, inverse, kernel_basis, mat_vec, matmul, matrix,
    parse_scalar, rank, rank_mod_p, same_span, span_contains, symmetrize, to_rows, to_scalar, trace,
)


def test_scalar_literals():
    """Literals parse to QQ and render back in lowest terms."""
    cases = [
        ("3", QQ(3), "3"),
        ("-2/4", QQ(-1, 2), "-1/2"),
        (" 6 / 3 ", QQ(2), "2"),
        ("0", QQ(0), "0"),
    ]
    for text, value, rendered in cases:
        assert parse_scalar(text) == value
        assert format_scalar(value) == rendered


@pytest.mark.parametrize("text", ["1/0", "abc", "1.5", "", "2/-3"])
def test_bad_literals_are_rejected(text):
    with pytest.raises(ValueError):
        parse_scalar(text)


def test_to_scalar_accepts_mixed_inputs():
    assert to_scalar(5) == QQ(5)
    assert to_scalar("7/3") == QQ(7, 3)
    assert to_scalar(QQ(1, 2)) == QQ(1, 2)
    assert field_domain(RATIONAL) == QQ
    assert field_domain(PRIME_FIELD).characteristic() == PRIME
    with pytest.raises(ValueError):
        field_domain("real")


def test_rank_and_kernel():
    m = matrix([[1, 2, 3], [2, 4, 6], [1, 0, 1]])
    assert rank(m) == 2
    kernel = kernel_basis(m)
    assert len(kernel) == 1
    assert not any(mat_vec(m, kernel[0]))


def test_kernel_of_zero_and_full_rank():
    assert len(kernel_basis(matrix([[0, 0], [0, 0]]))) == 2
    assert kernel_basis(identity(3)) == []


def test_rank_with_fractions():
    m = matrix([[QQ(1, 2), QQ(1, 3)], [QQ(3, 2), 1]])
    assert rank(m) == 1


def test_rank_mod_p_is_a_lower_bound():
    """A multiple of PRIME vanishes modulo PRIME but not over QQ."""
    m = matrix([[PRIME, 0], [0, 1]])
    assert rank_mod_p(m) == 1
    assert rank(m) == 2


def test_certified_rank_paths():
    m = matrix([[1, 2], [2, 4]])
    assert certified_rank(m, 1) == (1, "prime-certified")
    assert certified_rank(m, 2) == (1, "rational")
    drops = matrix([[PRIME, 0], [0, 1]])
    assert certified_rank(drops, 2) == (2, "rational")
    with pytest.raises(ValueError):
        certified_rank(identity(3), 2)


def test_determinant_and_inverse():
    m = matrix([[2, 1], [QQ(1, 2), 3]])
    assert determinant(m) == QQ(11, 2)
    assert to_rows(matmul(m, inverse(m))) == to_rows(identity(2))
    assert determinant(matrix([[1, 2], [2, 4]])) == 0


def test_inverse_of_singular_matrix_raises():
    with pytest.raises(SingularMatrixError):
        inverse(matrix([[1, 2], [2, 4]]))


def test_trace_and_symmetrize():
    m = matrix([[1, 2], [0, 3]])
    assert trace(m) == 4
    assert entries(symmetrize(m)) == {(0, 0): QQ(1), (0, 1): QQ(1), (1, 0): QQ(1), (1, 1): QQ(3)}


def test_symmetrize_fails_in_characteristic_two():
    with pytest.raises(ValueError):
        symmetrize(matrix([[1, 1], [0, 1]], GF(2)))


def test_spans():
    a = [[QQ(1), QQ(0), QQ(1)], [QQ(0), QQ(1), QQ(1)]]
    b = [[QQ(1), QQ(1), QQ(2)], [QQ(1), QQ(-1), QQ(0)]]
    assert same_span(a, b)
    assert span_contains(a, [[QQ(2), QQ(3), QQ(5)]])
    assert not span_contains(a, [[QQ(0), QQ(0), QQ(1)]])
    image = column_space_basis(matrix([[1, 1], [1, 1], [0, 0]]))
    assert len(image) == 1


def random_rational_matrix(rng, rows, cols):
    return matrix([[QQ(rng.randint(-4, 4), rng.randint(1, 3)) for _ in range(cols)] for _ in range(rows)])


def test_determinant_literal():
    """The Killing Gram of sl2 in the basis (h, e, f)."""
    assert determinant(matrix([[8, 0, 0], [0, 0, 4], [0, 4, 0]])) == -128


def test_determinant_is_multiplicative():
    rng = random.Random(31)
    for n in (1, 2, 3, 4):
        for _ in range(20):
            a, b = random_rational_matrix(rng, n, n), random_rational_matrix(rng, n, n)
            assert determinant(matmul(a, b)) == determinant(a) * determinant(b)


def test_rank_plus_nullity_is_column_count():
    rng = random.Random(32)
    for _ in range(40):
        rows, cols = rng.randint(1, 5), rng.randint(1, 5)
        m = random_rational_matrix(rng, rows, cols)
        if rng.random() < 0.5 and rows > 1:
            # force a dependent row
            dense = to_rows(m)
            dense[-1] = [2 * v for v in dense[0]]
            m = matrix(dense)
        kernel = kernel_basis(m)
        assert rank(m) + len(kernel) == cols
        assert all(not any(mat_vec(m, v)) for v in kernel)


def test_symmetrize_preserves_the_quadratic_form():
    rng = random.Random(33)
    for n in (1, 2, 3):
        for _ in range(20):
            m = random_rational_matrix(rng, n, n)
            v = [QQ(rng.randint(-5, 5), rng.randint(1, 4)) for _ in range(n)]

            def form(a):
                return sum((x * y for x, y in zip(v, mat_vec(a, v))), QQ.zero)

            assert form(m) == form(symmetrize(m))
