#!/usr/bin/env python3
"""
Tests for the degree <= 2 complexes and their dimensions.
"""

import pytest
from sympy import eye

from algebra_core import MulTable, abelian, direct_sum, dual_numbers, leibniz2, matrix_algebra, sl2, split_etale
from cohomology import (
    cochain_symmetry, cohomology_summary, complex_slice, d0_commutator, d0_right, d1_matrix, d2_hochschild,
    d2_leibniz, derivations, harrison_z2, skew_inclusion, skew_projection, symmetric_inclusion,
    symmetric_projection,
)
from exact_linalg import PRIME_FIELD, is_zero, kernel_basis, matmul, rank, span_contains, to_rows, transpose
from identities import OffVarietyError


def dims(summary):
    return summary.z1, summary.b1, summary.z2, summary.b2, summary.h2


def test_dual_numbers_hochschild():
    s = cohomology_summary(dual_numbers(), "hochschild")
    assert dims(s) == (1, 0, 4, 3, 1)
    assert s.center_dim == 2
    assert s.derivations_dim == 1


def test_dual_numbers_harrison():
    s = cohomology_summary(dual_numbers(), "harrison")
    assert s.z2 == 4
    assert s.b2 == 3
    assert s.c2_dim == 6


def test_leibniz2():
    s = cohomology_summary(leibniz2(), "leibniz")
    assert (s.z1, s.b2, s.z2, s.h2) == (2, 2, 3, 1)


def test_matrix_algebra_is_rigid():
    s = cohomology_summary(matrix_algebra(2), "hochschild")
    assert s.z2 == s.b2 == 13
    assert s.center_dim == 1
    assert s.rank_d2 == 51


def test_split_etale_has_no_h2():
    for n in (2, 3):
        s = cohomology_summary(split_etale(n), "hochschild")
        assert s.h2 == 0
        assert s.z1 == 0
    for n in (2, 3, 4):
        s = cohomology_summary(split_etale(n), "harrison")
        assert s.z2 == s.b2 == n * n


def test_sl2_ce_and_leibniz():
    ce = cohomology_summary(sl2(), "ce")
    assert (ce.z1, ce.b1, ce.z2, ce.b2) == (3, 3, 6, 6)
    assert ce.center_dim == 0
    assert ce.c2_dim == 9
    # every Leibniz 2-cocycle of sl2 is a coboundary
    leib = cohomology_summary(sl2(), "leibniz")
    assert dims(leib) == (3, 3, 6, 6, 0)
    assert leib.h1 == 0
    assert leib.rank_d2 == 21
    assert leib.c2_dim == 27


def test_sl2_plus_sl2_ce():
    s = cohomology_summary(direct_sum(sl2(), sl2()), "ce")
    assert s.c2_dim == 90
    assert s.z2 == s.b2 == 30


def test_complex_property_at_many_points():
    cases = [
        (matrix_algebra(2), "hochschild"),
        (dual_numbers(), "harrison"),
        (leibniz2(), "leibniz"),
        (sl2(), "ce"),
        (direct_sum(sl2(), abelian(1)), "leibniz"),
    ]
    for x, theory in cases:
        s = complex_slice(x, theory)
        assert is_zero(matmul(s.d1, s.d0))
        assert is_zero(matmul(s.d2, s.d1))


def test_d0_kernels_are_center_and_annihilator():
    assert rank(d0_commutator(matrix_algebra(2))) == 3
    assert is_zero(d0_commutator(split_etale(3)))
    assert is_zero(d0_right(abelian(2)))
    assert not is_zero(d0_right(leibniz2()))


def test_differentials_have_documented_shapes():
    x = sl2()
    assert d1_matrix(x).shape == (27, 9)
    assert d2_hochschild(x).shape == (81, 27)
    assert d2_leibniz(x).shape == (81, 27)


def test_subspace_maps_are_mutually_inverse():
    for n in (2, 3):
        for inc, proj, dim in [
            (symmetric_inclusion(n), symmetric_projection(n), n * n * (n + 1) // 2),
            (skew_inclusion(n), skew_projection(n), n * n * (n - 1) // 2),
        ]:
            assert inc.shape == (n**3, dim)
            square = matmul(proj, inc)
            assert square.to_dense().to_Matrix() == eye(dim)


def test_harrison_cocycles_are_symmetric_hochschild_cocycles():
    x = dual_numbers()
    z2 = harrison_z2(x)
    hoch = complex_slice(x, "hochschild")
    for v in z2.basis:
        assert all(v[(i * 2 + j) * 2 + l] == v[(j * 2 + i) * 2 + l] for i in range(2) for j in range(2) for l in range(2))
    assert span_contains(kernel_basis(hoch.d2), z2.basis)


def test_ce_image_is_alternating():
    s = complex_slice(sl2(), "ce")
    assert s.image_symmetry == "alternating"
    for col in to_rows(transpose(s.d2)):
        if any(col):
            assert cochain_symmetry(col, 3) == "alternating"


def test_derivations():
    assert derivations(sl2(), "ce").dim == 3
    assert derivations(split_etale(3)).dim == 0
    assert derivations(abelian(2), "leibniz").dim == 4


def test_off_variety_requests_raise():
    nonassoc = MulTable.from_entries(2, {(0, 0, 1): 1, (1, 0, 0): 1})
    with pytest.raises(OffVarietyError):
        cohomology_summary(nonassoc, "hochschild")
    with pytest.raises(OffVarietyError):
        cohomology_summary(nonassoc, "leibniz")
    with pytest.raises(OffVarietyError):
        cohomology_summary(matrix_algebra(2), "harrison")
    with pytest.raises(OffVarietyError):
        cohomology_summary(leibniz2(), "ce")


def test_unknown_theory():
    with pytest.raises(ValueError):
        complex_slice(sl2(), "poisson")


def test_prime_field_agrees_on_small_points():
    for x, theory in [(dual_numbers(), "hochschild"), (sl2(), "ce"), (leibniz2(), "leibniz")]:
        exact = cohomology_summary(x, theory)
        modular = cohomology_summary(x, theory, PRIME_FIELD)
        assert dims(exact) == dims(modular)
        assert modular.rank_path == "prime"


def test_screen_dimension_selects_the_certified_path(monkeypatch):
    monkeypatch.setenv("STRUCTCONST_SCREEN_DIM", "2")
    rigid = cohomology_summary(matrix_algebra(2), "hochschild")
    assert rigid.rank_path == "prime-certified"
    assert rigid.rank_d2 == 51
    # h2 = 1 leaves a gap between the bound and the rank
    assert cohomology_summary(dual_numbers(), "hochschild").rank_path == "rational"
