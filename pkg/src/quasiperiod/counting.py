"""Exact point counts in the complement of an arrangement over ``Z_q^m``.

Two independent routes are provided:

* :func:`count_complement` / :func:`count_restricted` walk coordinates
  depth-first.  When coordinate ``k`` is about to be assigned, every hyperplane
  whose q-reduced support ends at ``k`` forbids the residues solving its
  equation for the current prefix; these are removed as a bitmask, so the last
  coordinate is counted with a popcount instead of a loop.
* :func:`count_complement_naive` / :func:`count_restricted_naive` enumerate all
  of ``Z_q^m`` (vectorized with numpy) and test every hyperplane at every point.

The restricted count is the number of points lying on the pivot's reduction
and on no other hyperplane's reduction.
"""

from __future__ import annotations

from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from typing import Hashable, Literal, Sequence

import numpy as np

from .arrangement import Arrangement, Hyperplane
from .errors import BudgetExceeded, IndexOutOfRange

DEFAULT_BUDGET = 10**9
_CHUNK = 1 << 18

Mode = Literal["full", "restricted"]


@dataclass(frozen=True)
class CountQuery:
    arrangement: Arrangement
    q: int
    restriction: int | None = None

    def __post_init__(self):
        if self.q < 1:
            raise ValueError(f"modulus must be >= 1, got {self.q}")
        if self.restriction is not None and not 0 <= self.restriction < len(self.arrangement):
            raise IndexOutOfRange(f"pivot {self.restriction} out of range")


@dataclass(frozen=True)
class CountResult:
    value: int
    q: int
    mode: Mode

    def __int__(self) -> int:
        return self.value


# ------------------------------------------------------------------ fast kernel

@dataclass(frozen=True)
class _Plan:
    """Per-modulus data for the depth-first kernel.

    ``levels[k]`` lists ``(prefix_terms, offset, table, is_pivot)`` for every
    hyperplane whose reduced support ends at coordinate ``k``; ``table[c]`` is
    the bitmask of residues ``x`` with ``a_k * x = c (mod q)``.
    """

    q: int
    dim: int
    levels: tuple[tuple[tuple[tuple[tuple[int, int], ...], int, tuple[int, ...], bool], ...], ...]
    last_level: int  # deepest coordinate carrying a constraint, -1 if none
    dead: bool  # some constraint makes the count zero outright


def _solution_table(a: int, q: int) -> tuple[int, ...]:
    table = [0] * q
    for x in range(q):
        table[(a * x) % q] |= 1 << x
    return tuple(table)


def _make_plan(arr: Arrangement, q: int, pivot: int | None) -> _Plan:
    levels: list[list] = [[] for _ in range(arr.dim)]
    dead = False
    tables: dict[int, tuple[int, ...]] = {}
    for idx, h in enumerate(arr.hyperplanes):
        red = [c % q for c in h.coeffs]
        b = h.offset % q
        is_pivot = idx == pivot
        nz = [i for i, c in enumerate(red) if c]
        if not nz:
            # the reduction is all of Z_q^m when b = 0, empty otherwise
            if b == 0 and not is_pivot:
                dead = True
            if b != 0 and is_pivot:
                dead = True
            continue
        k = nz[-1]
        a = red[k]
        if a not in tables:
            tables[a] = _solution_table(a, q)
        prefix = tuple((i, red[i]) for i in nz[:-1])
        levels[k].append((prefix, b, tables[a], is_pivot))
    last = max((k for k in range(arr.dim) if levels[k]), default=-1)
    return _Plan(q, arr.dim, tuple(tuple(lv) for lv in levels), last, dead)


def _allowed(plan: _Plan, k: int, x: list[int]) -> int:
    q = plan.q
    mask = (1 << q) - 1
    for prefix, b, table, is_pivot in plan.levels[k]:
        c = b
        for i, a in prefix:
            c -= a * x[i]
        sol = table[c % q]
        if is_pivot:
            mask &= sol
        else:
            mask &= ~sol
        if not mask:
            return 0
    return mask


def _count_from(plan: _Plan, k: int, x: list[int]) -> int:
    if k > plan.last_level:
        return plan.q ** (plan.dim - k)
    mask = _allowed(plan, k, x)
    if k == plan.last_level:
        return mask.bit_count() * plan.q ** (plan.dim - k - 1)
    total = 0
    while mask:
        low = mask & -mask
        x[k] = low.bit_length() - 1
        total += _count_from(plan, k + 1, x)
        mask ^= low
    return total


def _count_first_values(plan: _Plan, values: Sequence[int]) -> int:
    """Partial count with the first coordinate restricted to ``values``."""
    x = [0] * plan.dim
    if plan.last_level < 0:
        return len(values) * plan.q ** (plan.dim - 1)
    mask = _allowed(plan, 0, x)
    total = 0
    for v in values:
        if not (mask >> v) & 1:
            continue
        x[0] = v
        total += _count_from(plan, 1, x)
    return total


def _run_plan(plan: _Plan, workers: int) -> int:
    if plan.dead:
        return 0
    first = list(range(plan.q))
    if workers <= 1 or plan.q < 2:
        return _count_first_values(plan, first)
    chunks = [first[w::workers] for w in range(workers)]
    chunks = [c for c in chunks if c]
    with ProcessPoolExecutor(max_workers=len(chunks)) as pool:
        parts = list(pool.map(_count_first_values, [plan] * len(chunks), chunks))
    return sum(parts)


def count_complement(arr: Arrangement, q: int, workers: int = 1) -> CountResult:
    """``|M(A_q)|``: points of ``Z_q^m`` on no hyperplane's q-reduction.

    With ``workers > 1`` the residues of the first coordinate are split across
    processes; the sum is identical to the single-process result.
    """
    if q < 1:
        raise ValueError(f"modulus must be >= 1, got {q}")
    return CountResult(_run_plan(_make_plan(arr, q, None), workers), q, "full")


def count_restricted(arr: Arrangement, pivot: int | Hashable | Hyperplane, q: int,
                     workers: int = 1) -> CountResult:
    """Points on the pivot's q-reduction and off every other hyperplane's."""
    if q < 1:
        raise ValueError(f"modulus must be >= 1, got {q}")
    p = arr.index(pivot)
    return CountResult(_run_plan(_make_plan(arr, q, p), workers), q, "restricted")


def count(query: CountQuery, workers: int = 1) -> CountResult:
    if query.restriction is None:
        return count_complement(query.arrangement, query.q, workers)
    return count_restricted(query.arrangement, query.restriction, query.q, workers)


# ------------------------------------------------------------------ naive oracle

def _naive(arr: Arrangement, q: int, pivot: int | None, budget: int) -> int:
    if q < 1:
        raise ValueError(f"modulus must be >= 1, got {q}")
    m = arr.dim
    total = q**m
    if total > budget:
        raise BudgetExceeded(f"q^m = {total} exceeds the enumeration budget {budget}")
    n = len(arr)
    if n == 0:
        return total
    A = np.array([[c % q for c in h.coeffs] for h in arr.hyperplanes], dtype=np.int64)
    b = np.array([h.offset % q for h in arr.hyperplanes], dtype=np.int64)
    others = np.ones(n, dtype=bool)
    if pivot is not None:
        others[pivot] = False
    powers = q ** np.arange(m - 1, -1, -1, dtype=np.int64)
    hits = 0
    for start in range(0, total, _CHUNK):
        flat = np.arange(start, min(start + _CHUNK, total), dtype=np.int64)
        pts = (flat[:, None] // powers[None, :]) % q
        on = ((pts @ A.T - b[None, :]) % q) == 0
        ok = ~on[:, others].any(axis=1)
        if pivot is not None:
            ok &= on[:, pivot]
        hits += int(ok.sum())
    return hits


def count_complement_naive(arr: Arrangement, q: int, budget: int = DEFAULT_BUDGET) -> CountResult:
    return CountResult(_naive(arr, q, None, budget), q, "full")


def count_restricted_naive(arr: Arrangement, pivot: int | Hashable | Hyperplane, q: int,
                           budget: int = DEFAULT_BUDGET) -> CountResult:
    return CountResult(_naive(arr, q, arr.index(pivot), budget), q, "restricted")


def in_complement(arr: Arrangement, x: Sequence[int], q: int) -> bool:
    return not any(h.contains(x, q) for h in arr.hyperplanes)
