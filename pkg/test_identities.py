#!/usr/bin/env python3
"""
Tests for variety membership and residual witnesses.
"""

import pytest

from algebra_core import MulTable, abelian, direct_sum, dual_numbers, leibniz2, matrix_algebra, sl2, split_etale
from identities import (
    KINDS, OffVarietyError, assoc_residual, is_associative, is_commutative, is_leibniz, is_lie, jacobi_residual,
    leibniz_residual, membership, require, residual_report,
)


def non_leibniz():
    """e0 e0 = e1, e1 e0 = e0: neither associative nor Leibniz."""
    return MulTable.from_entries(2, {(0, 0, 1): 1, (1, 0, 0): 1}, "nonleib")


def square_zero():
    """e0 e0 = e1 and nothing else: associative and Leibniz."""
    return MulTable.from_entries(2, {(0, 0, 1): 1}, "square_zero")


def test_membership_table():
    """(associative, commutative, leibniz, lie) for the standard points."""
    cases = [
        (matrix_algebra(2), (True, False, False, False)),
        (split_etale(3), (True, True, False, False)),
        (dual_numbers(), (True, True, False, False)),
        (sl2(), (False, False, True, True)),
        (leibniz2(), (True, True, True, False)),
        (abelian(2), (True, True, True, True)),
        (square_zero(), (True, True, True, False)),
        (non_leibniz(), (False, False, False, False)),
    ]
    for x, (assoc, comm, leib, lie) in cases:
        assert is_associative(x) == assoc, x.name
        assert is_commutative(x) == comm, x.name
        assert is_leibniz(x) == leib, x.name
        assert is_lie(x) == lie, x.name


def test_membership_flags_cover_every_kind():
    flags = membership(sl2())
    assert set(flags) == set(KINDS)
    assert flags["skew"] and flags["jacobi"] and not flags["symmetric"]


def test_leibniz_witness_is_first_violation():
    """The first failing triple of the fixture is (e0, e1, e0)."""
    report = residual_report(non_leibniz(), "leibniz")
    assert not report.is_member
    coords, value = report.witness
    assert coords == (0, 1, 0, 1)
    assert value == -1
    assert report.as_dict()["witness"] == {"index": [0, 1, 0, 1], "value": "-1"}


def test_residuals_vanish_on_their_varieties():
    assert assoc_residual(matrix_algebra(2)).is_zero()
    assert leibniz_residual(leibniz2()).is_zero()
    assert jacobi_residual(sl2()).is_zero()
    assert leibniz_residual(direct_sum(sl2(), abelian(1))).is_zero()


def test_combined_reports():
    report = residual_report(dual_numbers(), "lie")
    assert not report.is_member
    assert report.violations > 0
    assert residual_report(split_etale(2), "commutative").is_member


def test_require_raises_with_kind_and_witness():
    with pytest.raises(OffVarietyError) as info:
        require(non_leibniz(), "associative")
    assert info.value.kind == "associative"
    assert info.value.witness is not None
    require(sl2(), "lie")


def test_unknown_kind():
    with pytest.raises(ValueError):
        residual_report(sl2(), "jordan")
