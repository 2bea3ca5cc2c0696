from __future__ import annotations

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from quasiperiod.counting import count_restricted
from quasiperiod.errors import InvalidRange, NonIntegralCoefficients, VerificationFailed
from quasiperiod.polyalg import (
    X,
    IntPolynomial,
    QuasiPolynomial,
    SampleWindow,
    build_quasipoly,
    has_gcd_property,
    interpolate_constituent,
    is_monic,
    is_polynomial,
    telescoping_lhs,
    telescoping_rhs,
    minimum_period,
    polynomial_from_roots,
    residue_start,
)
from quasiperiod.shi_b import ShiHyperplane, ShiKind, build_shi_b

P = IntPolynomial
coeff_lists = st.lists(st.integers(-20, 20), max_size=6)


def test_basic_arithmetic():
    p = (X - 4) ** 2
    assert p == P((16, -8, 1))
    assert p.degree == 2 and p.is_monic()
    assert P().degree == -1 and P().is_zero()
    assert p(9) == 25
    assert (p - p).is_zero()
    assert 3 - X == P((3, -1))
    assert p.shift(4) == X**2
    assert p.format("q") == "q^2 - 8*q + 16"
    assert P((-1,)).format() == "-1"
    assert (-(X**3) + 2 * X).format() == "-t^3 + 2*t"


def test_trailing_zeros_stripped():
    assert P((1, 2, 0, 0)) == P((1, 2))


def test_interpolation_examples():
    assert interpolate_constituent({9: 25, 11: 49, 13: 81}, 2) == P((16, -8, 1))
    assert interpolate_constituent({5: 5, 6: 6}, 1) == X
    assert interpolate_constituent({9: 6, 11: 8, 13: 10}, 2) == X - 3


def test_interpolation_rejects_fractions_and_bad_spacing():
    with pytest.raises(NonIntegralCoefficients):
        interpolate_constituent({0: 0, 1: 0, 2: 1})
    with pytest.raises(ValueError):
        interpolate_constituent({1: 1, 2: 2, 4: 4})
    with pytest.raises(ValueError):
        interpolate_constituent({1: 1, 3: 3}, period=1)


def test_build_quasipoly_examples():
    b2 = build_shi_b(2)
    from quasiperiod.counting import count_complement

    qp = build_quasipoly(lambda q: count_complement(b2, q).value, 2, 2, SampleWindow(9, 2))
    assert qp.constituents == ((X - 4) ** 2, (X - 4) ** 2)

    b3 = build_shi_b(3)
    h = ShiHyperplane(ShiKind.DIFF0, 1, 2)
    qp = build_quasipoly(lambda q: count_restricted(b3, h, q).value, 2, 2, SampleWindow(13, 2))
    assert qp.constituent(1) == (X - 5) * (X - 4)
    assert qp.constituent(2) == (X - 5) ** 2 + (X - 5) + 1

    assert build_quasipoly(lambda q: 7, 1, 0).constituents == (P((7,)),)


def test_build_quasipoly_detects_misfit():
    with pytest.raises(VerificationFailed) as info:
        build_quasipoly(lambda q: q**3, 1, 2, SampleWindow(1, 2))
    assert info.value.q == 4
    with pytest.raises(VerificationFailed):
        build_quasipoly(lambda q: 2 * (q % 3), 2, 1, SampleWindow(1, 1, verify_extra=3))


def test_residue_start():
    assert residue_start(9, 1, 2) == 9
    assert residue_start(9, 2, 2) == 10
    assert residue_start(9, 3, 3) == 9
    assert residue_start(10, 1, 4) == 13


def test_minimum_period_examples():
    f = (X - 4) ** 2
    assert minimum_period(QuasiPolynomial(2, (f, f))) == 1
    assert minimum_period(QuasiPolynomial(2, (X * (X - 1), X**2 + X + 1))) == 2
    assert minimum_period(QuasiPolynomial(6, (f,) * 6)) == 1
    g = X + 1
    assert minimum_period(QuasiPolynomial(6, (f, g, f, g, f, g))) == 2


def test_gcd_property_examples():
    f, g, h, f2 = X, X + 1, X + 2, X + 3
    assert has_gcd_property(QuasiPolynomial(2, (f, f)))
    assert has_gcd_property(QuasiPolynomial(2, (f, g)))
    assert not has_gcd_property(QuasiPolynomial(4, (f, g, f2, h)))
    assert has_gcd_property(QuasiPolynomial(4, (f, g, f, h)))


def test_structure_predicates():
    f = (X - 4) ** 2
    qp = QuasiPolynomial(2, (f, f))
    assert is_monic(qp) and is_polynomial(qp)
    assert is_polynomial(QuasiPolynomial(2, (X - 3, X - 3)))
    assert not is_polynomial(QuasiPolynomial(2, (X * (X - 1), X**2 + X + 1)))
    assert not is_monic(QuasiPolynomial(1, (2 * X,)))
    assert qp.format("q") == "q^2 - 8*q + 16"
    assert "mod 2" in QuasiPolynomial(2, (X, X + 1)).format()


def test_quasipoly_evaluation_and_validation():
    qp = QuasiPolynomial(2, (X, X + 1))
    assert qp(3) == 3 and qp(4) == 5
    assert qp.for_modulus(2) == X + 1
    with pytest.raises(IndexError):
        qp.constituent(0)
    with pytest.raises(ValueError):
        QuasiPolynomial(2, (X,))
    with pytest.raises(ValueError):
        QuasiPolynomial(0, ())
    assert QuasiPolynomial(4, (X, X + 1) * 2).with_period(2) == qp


def test_telescoping_examples():
    assert telescoping_lhs(0, 0) == telescoping_rhs(0, 0) == P((1,))
    assert telescoping_lhs(0, 1) == 2 * X + 1 == telescoping_rhs(0, 1)
    assert telescoping_lhs(2, 5) == (X + 1) ** 4 - X**4 == telescoping_rhs(2, 5)
    with pytest.raises(InvalidRange):
        telescoping_lhs(3, 2)
    with pytest.raises(InvalidRange):
        telescoping_rhs(-1, 2)


@pytest.mark.parametrize("which", ["ascending", "descending"])
def test_telescoping_small_range(which):
    for b in range(11):
        for a in range(b + 1):
            assert telescoping_lhs(a, b, which) == telescoping_rhs(a, b)


@given(coeff_lists, coeff_lists, st.integers(-10, 10))
def test_ring_laws(a, b, t):
    p, q = P(a), P(b)
    assert (p + q)(t) == p(t) + q(t)
    assert (p * q)(t) == p(t) * q(t)
    assert p * q == q * p
    assert (p * q).degree == (-1 if p.is_zero() or q.is_zero() else p.degree + q.degree)


@given(coeff_lists)
def test_json_round_trip(a):
    p = P(a)
    assert P.from_json(p.to_json()) == p
    qp = QuasiPolynomial(2, (p, p + 1))
    assert QuasiPolynomial.from_json(qp.to_json()) == qp


@given(st.lists(st.integers(-30, 30), min_size=1, max_size=6), st.integers(-5, 40), st.integers(1, 4))
@settings(max_examples=150)
def test_interpolation_round_trip(coeffs, q0, step):
    p = P(coeffs)
    n = len(coeffs)
    samples = {q0 + step * k: p(q0 + step * k) for k in range(n)}
    assert interpolate_constituent(samples, step if n > 1 else None) == p


@given(
    st.integers(1, 6).flatmap(
        lambda s: st.tuples(
            st.just(s),
            st.lists(st.lists(st.integers(-5, 5), max_size=3), min_size=s, max_size=s),
            st.integers(1, 4),
        )
    )
)
def test_minimum_period_divides_and_reproduces(data):
    s, cs, mult = data
    base = tuple(P(c) for c in cs)
    qp = QuasiPolynomial(s * mult, base * mult)
    mp = minimum_period(qp)
    assert qp.period % mp == 0 and s % mp == 0
    short = qp.with_period(mp)
    assert all(short(q) == qp(q) for q in range(1, 3 * qp.period + 1))


@given(st.lists(st.integers(-6, 6), max_size=5))
def test_from_roots_vanishes(roots):
    p = polynomial_from_roots(roots)
    assert p.is_monic() and p.degree == len(roots)
    assert all(p(r) == 0 for r in roots)
