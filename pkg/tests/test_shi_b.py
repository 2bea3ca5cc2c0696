from __future__ import annotations

import pytest

from quasiperiod.arrangement import delete
from quasiperiod.counting import count_complement
from quasiperiod.errors import (
    BadDimension,
    IndexOutOfRange,
    InvalidIndices,
    NotParallel,
    OrientationError,
    ParseError,
)
from quasiperiod.polyalg import X
from quasiperiod.shi_b import (
    ShiHyperplane,
    ShiKind,
    audit_validity,
    base_closed_form,
    build_shi_b,
    deletion_closed_form,
    is_deletion_polynomial,
    is_pair_deletion_polynomial,
    pair_deletion_closed_form,
    pair_deletion_count,
    parallel_pairs,
    parse_hyperplane_expr,
    restriction_closed_form,
    shi_hyperplanes,
    verify_family,
)

H = ShiHyperplane
K = ShiKind
Q = X


@pytest.mark.parametrize("m,n", [(2, 8), (3, 18), (4, 32), (5, 50)])
def test_hyperplane_count(m, n):
    assert len(build_shi_b(m)) == n == 2 * m + 2 * m * (m - 1)


def test_degenerate_dimension():
    with pytest.raises(BadDimension):
        build_shi_b(1)
    assert len(build_shi_b(1, allow_degenerate=True)) == 2
    assert base_closed_form(1, allow_degenerate=True).odd == Q - 2


def test_index_validation():
    with pytest.raises(InvalidIndices):
        H(K.DIFF0, 2, 1)
    with pytest.raises(InvalidIndices):
        H(K.XI0, 1, 2)
    with pytest.raises(InvalidIndices):
        H(K.DIFF0, 1, 5).validate(3)
    with pytest.raises(InvalidIndices):
        restriction_closed_form(3, H(K.XI1, 4))


def test_restriction_examples():
    f = restriction_closed_form(2, H(K.XI0, 1))
    assert f.odd == f.even == Q - 3
    f = restriction_closed_form(3, H(K.DIFF0, 1, 2))
    assert f.odd == (Q - 5) * (Q - 4)
    assert f.even == (Q - 5) ** 2 + (Q - 5) + 1
    f = restriction_closed_form(2, H(K.SUM0, 1, 2))
    assert f.odd == f.even == Q - 4


def test_base_examples():
    assert base_closed_form(2).odd == (Q - 4) ** 2
    assert base_closed_form(3).even == (Q - 6) ** 3


def test_deletion_examples():
    f = deletion_closed_form(2, H(K.XI0, 1))
    assert f.odd == f.even == (Q - 4) ** 2 + (Q - 3)
    f = deletion_closed_form(3, H(K.DIFF1, 1, 3))
    assert f.odd == f.even == (Q - 6) ** 3 + (Q - 6) * (Q - 5)
    assert not deletion_closed_form(3, H(K.DIFF0, 1, 2)).is_polynomial()


def test_classifier_examples():
    assert is_deletion_polynomial(3, H(K.DIFF0, 1, 3))
    assert not is_deletion_polynomial(3, H(K.DIFF0, 1, 2))
    assert is_deletion_polynomial(4, H(K.SUM1, 2, 4))
    assert is_pair_deletion_polynomial(3, H(K.DIFF0, 1, 3), H(K.DIFF1, 1, 3))
    assert not is_pair_deletion_polynomial(3, H(K.SUM0, 1, 2), H(K.SUM1, 1, 2))
    assert is_pair_deletion_polynomial(4, H(K.SUM0, 1, 4), H(K.SUM1, 1, 4))


def test_not_parallel():
    with pytest.raises(NotParallel):
        is_pair_deletion_polynomial(3, H(K.SUM0, 1, 2), H(K.SUM1, 1, 3))
    with pytest.raises(NotParallel):
        pair_deletion_closed_form(3, H(K.XI0, 1), H(K.XI0, 1))


def test_pair_counts():
    assert pair_deletion_count(2, H(K.XI0, 1), H(K.XI1, 1), 9) == 37
    assert pair_deletion_count(2, H(K.DIFF0, 1, 2), H(K.DIFF1, 1, 2), 9) == 36
    assert pair_deletion_count(2, H(K.SUM0, 1, 2), H(K.SUM1, 1, 2), 8) == 25
    b2 = build_shi_b(2)
    for h0, h1, q in [(H(K.XI0, 1), H(K.XI1, 1), 9), (H(K.SUM0, 1, 2), H(K.SUM1, 1, 2), 8)]:
        assert count_complement(delete(delete(b2, h0), h1), q).value == pair_deletion_count(2, h0, h1, q)


@pytest.mark.parametrize("m", [2, 3, 4, 5, 6])
def test_index_rules_agree_with_closed_form_algebra(m):
    for h in shi_hyperplanes(m):
        assert is_deletion_polynomial(m, h) == deletion_closed_form(m, h).is_polynomial(), h
    for h0, h1 in parallel_pairs(m):
        assert is_pair_deletion_polynomial(m, h0, h1) == pair_deletion_closed_form(m, h0, h1).is_polynomial()


def test_polynomial_family_size_m3():
    assert sum(is_deletion_polynomial(3, h) for h in shi_hyperplanes(3)) == 14


@pytest.mark.parametrize("m", [2, 3, 4, 5])
def test_closed_forms_are_monic_of_degree_m_minus_1(m):
    for h in shi_hyperplanes(m):
        f = restriction_closed_form(m, h)
        for p in (f.odd, f.even):
            assert p.degree == m - 1 and p.is_monic()


@pytest.mark.parametrize("m", [2, 3])
def test_verify_family_all_pass(m):
    rows = list(verify_family(m, range(2 * m + 2, 2 * m + 13)))
    assert len(rows) == len(build_shi_b(m)) * 11
    assert all(r.ok for r in rows)


def test_audit_measures_validity_threshold():
    for m in (2, 3):
        rows = audit_validity(m)
        base = next(r for r in rows if r["hyperplane"] == "base")
        assert base["min_valid_q"] == 2 * m
        assert max(r["min_valid_q"] for r in rows) == 2 * m


def test_parse_examples():
    assert parse_hyperplane_expr("x2-x5=0", 5) == H(K.DIFF0, 2, 5)
    assert parse_hyperplane_expr("x4+x1=1", 4) == H(K.SUM1, 1, 4)
    assert parse_hyperplane_expr("x3 - x1 = 0", 3) == H(K.DIFF0, 1, 3)
    assert parse_hyperplane_expr("x2=1", 3) == H(K.XI1, 2)
    with pytest.raises(IndexOutOfRange):
        parse_hyperplane_expr("x9=0", 3)
    with pytest.raises(OrientationError):
        parse_hyperplane_expr("x3-x1=1", 3)
    for bad in ("x1=2", "y1=0", "x1*x2=0", "x1+x1=0", ""):
        with pytest.raises((ParseError, IndexOutOfRange)):
            parse_hyperplane_expr(bad, 3)


def test_labels_print_back():
    for h in shi_hyperplanes(4):
        assert parse_hyperplane_expr(str(h), 4) == h
