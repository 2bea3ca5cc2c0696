from __future__ import annotations

import random
import warnings
from itertools import product

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from quasiperiod.arrangement import DuplicateHyperplaneWarning, Hyperplane, delete, make_arrangement
from quasiperiod.cli import _random_unimodular, transform
from quasiperiod.counting import (
    CountQuery,
    count,
    count_complement,
    count_complement_naive,
    count_restricted,
    count_restricted_naive,
    in_complement,
)
from quasiperiod.errors import BudgetExceeded, IndexOutOfRange
from quasiperiod.shi_b import ShiHyperplane, ShiKind, build_shi_b

H = ShiHyperplane
K = ShiKind


def small_arrangements():
    def for_dim(d):
        vec = st.lists(st.integers(-3, 3), min_size=d, max_size=d).filter(any)
        return st.lists(st.tuples(vec, st.integers(-3, 3)), min_size=1, max_size=5).map(
            lambda rows: _quiet(d, rows)
        )

    return st.integers(1, 3).flatmap(for_dim)


def _quiet(d, rows):
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", DuplicateHyperplaneWarning)
        return make_arrangement(d, rows)


def test_empty_arrangement_counts_everything():
    arr = make_arrangement(3, [])
    assert count_complement(arr, 7).value == 343
    assert count_complement_naive(arr, 7).value == 343


def test_base_examples():
    b2 = build_shi_b(2)
    assert count_complement(b2, 9).value == 25
    assert count_complement(b2, 8).value == 16
    assert count_complement_naive(build_shi_b(3), 11).value == 125
    assert count_complement_naive(make_arrangement(1, [((1,), 0)]), 5).value == 4


def test_restricted_examples():
    b2 = build_shi_b(2)
    assert count_restricted(b2, H(K.XI0, 1), 9).value == 6
    assert count_restricted(b2, H(K.DIFF0, 1, 2), 8).value == 5
    assert count_restricted(b2, H(K.SUM1, 1, 2), 9).value == 6
    b3 = build_shi_b(3)
    assert count_restricted_naive(b3, H(K.DIFF0, 1, 3), 11).value == 36
    assert count_restricted(b3, H(K.DIFF0, 1, 3), 11).value == 36


def test_query_dispatch():
    b2 = build_shi_b(2)
    assert count(CountQuery(b2, 9)).mode == "full"
    res = count(CountQuery(b2, 9, restriction=b2.index("x1=0")))
    assert (res.mode, res.value, int(res)) == ("restricted", 6, 6)


def test_bad_pivot_and_budget():
    b2 = build_shi_b(2)
    with pytest.raises(IndexOutOfRange):
        count_restricted(b2, 8, 9)
    with pytest.raises(BudgetExceeded):
        count_complement_naive(build_shi_b(3), 50, budget=1000)
    with pytest.raises(ValueError):
        count_complement(b2, 0)


def test_in_complement():
    b2 = build_shi_b(2)
    assert in_complement(b2, (2, 4), 9)
    assert not in_complement(b2, (2, 2), 9)
    assert not in_complement(b2, (3, 6), 9)


@pytest.mark.parametrize("m", [2, 3])
def test_oracle_equivalence_shi(m):
    arr = build_shi_b(m)
    for q in range(1, 21):
        assert count_complement(arr, q).value == count_complement_naive(arr, q).value
        for k in range(len(arr)):
            assert count_restricted(arr, k, q).value == count_restricted_naive(arr, k, q).value


@given(small_arrangements(), st.integers(1, 12))
@settings(max_examples=120, deadline=None)
def test_oracle_equivalence_random(arr, q):
    assert count_complement(arr, q).value == count_complement_naive(arr, q).value
    for k in range(len(arr)):
        assert count_restricted(arr, k, q).value == count_restricted_naive(arr, k, q).value


@given(small_arrangements(), st.integers(1, 15), st.data())
@settings(max_examples=120, deadline=None)
def test_deletion_restriction_identity(arr, q, data):
    k = data.draw(st.integers(0, len(arr) - 1))
    full = count_complement(arr, q).value
    assert full == count_complement(delete(arr, k), q).value - count_restricted(arr, k, q).value


@given(small_arrangements(), st.integers(1, 15), st.data())
@settings(max_examples=80, deadline=None)
def test_deleting_never_decreases(arr, q, data):
    k = data.draw(st.integers(0, len(arr) - 1))
    assert count_complement(delete(arr, k), q).value >= count_complement(arr, q).value


@pytest.mark.parametrize("seed", range(8))
def test_unimodular_invariance(seed):
    rng = random.Random(seed)
    m = rng.choice([2, 3])
    arr = build_shi_b(m)
    P = _random_unimodular(m, rng)
    moved = transform(arr, P)
    for q in (2 * m + 2, 2 * m + 3, 13):
        assert count_complement(moved, q).value == count_complement(arr, q).value
        for k in range(0, len(arr), 3):
            assert count_restricted(moved, k, q).value == count_restricted(arr, k, q).value


def test_thread_count_does_not_change_results():
    arr = build_shi_b(3)
    for q in (9, 14):
        assert count_complement(arr, q, workers=3).value == count_complement(arr, q, workers=1).value
        assert count_restricted(arr, 5, q, workers=2).value == count_restricted(arr, 5, q).value


# literal condition lists for the restricted complements of B_3, one per family

def _base_ok(x, q, skip=()):
    m = len(x)
    checks = []
    for s in range(m):
        checks.append((("x", s, 0), x[s] % q != 0))
        checks.append((("x", s, 1), x[s] % q != 1))
    for s in range(m):
        for t in range(m):
            if s == t:
                continue
            checks.append((("eq", min(s, t), max(s, t)), (x[s] - x[t]) % q != 0))
            if s < t:
                checks.append((("succ", s, t), (x[s] - x[t] - 1) % q != 0))
            checks.append((("neg", min(s, t), max(s, t)), (x[s] + x[t]) % q != 0))
            checks.append((("negp1", min(s, t), max(s, t)), (x[s] + x[t] - 1) % q != 0))
    return all(ok for key, ok in checks if key not in skip)


LITERAL = [
    (H(K.XI0, 2), lambda x, q: x[1] % q == 0, {("x", 1, 0), ("x", 1, 1)}),
    (H(K.XI1, 1), lambda x, q: x[0] % q == 1, {("x", 0, 0), ("x", 0, 1)}),
    (H(K.DIFF0, 1, 3), lambda x, q: (x[0] - x[2]) % q == 0, {("eq", 0, 2), ("succ", 0, 2)}),
    (H(K.DIFF1, 2, 3), lambda x, q: (x[1] - x[2]) % q == 1, {("eq", 1, 2), ("succ", 1, 2)}),
    (H(K.SUM0, 1, 2), lambda x, q: (x[0] + x[1]) % q == 0, {("neg", 0, 1), ("negp1", 0, 1)}),
    (H(K.SUM1, 2, 3), lambda x, q: (x[1] + x[2]) % q == 1, {("neg", 1, 2), ("negp1", 1, 2)}),
]


@pytest.mark.parametrize("h,on,skip", LITERAL, ids=[str(t[0]) for t in LITERAL])
def test_matches_literal_condition_lists(h, on, skip):
    arr = build_shi_b(3)
    for q in (9, 10, 11, 12):
        brute = sum(
            1 for x in product(range(q), repeat=3) if on(x, q) and _base_ok(x, q, skip)
        )
        assert count_restricted(arr, h, q).value == brute


def test_constant_hyperplane_mod_q():
    arr = make_arrangement(2, [((3, 0), 1), ((0, 1), 0)])
    # 3*x1 = 1 has no solution mod 3; with offset 0 it would hold everywhere
    assert count_complement(arr, 3).value == count_complement_naive(arr, 3).value == 6
    arr0 = make_arrangement(2, [((3, 0), 0), ((0, 1), 0)])
    assert count_complement(arr0, 3).value == 0
    assert count_restricted(arr0, Hyperplane((3, 0), 0), 3).value == 6
