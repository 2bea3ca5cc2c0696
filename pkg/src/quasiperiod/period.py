"""Elementary divisors, lcm periods and period-collapse reports."""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from math import lcm
from typing import Any, Sequence

from .arrangement import Arrangement
from .counting import count_complement
from .errors import SubsetCapExceeded
from .polyalg import (
    QuasiPolynomial,
    SampleWindow,
    build_quasipoly,
    minimum_period,
)

DEFAULT_SUBSET_CAP = 24


@dataclass(frozen=True)
class SnfResult:
    divisors: tuple[int, ...]

    @property
    def rank(self) -> int:
        return len(self.divisors)

    @property
    def largest(self) -> int:
        """Largest elementary divisor; 1 for a zero matrix by convention."""
        return self.divisors[-1] if self.divisors else 1


def _smallest_nonzero(A: list[list[int]], t: int) -> tuple[int, int] | None:
    best = None
    for i in range(t, len(A)):
        row = A[i]
        for j in range(t, len(row)):
            v = row[j]
            if v and (best is None or abs(v) < best[0]):
                best = (abs(v), i, j)
    return None if best is None else (best[1], best[2])


def smith_normal_form(matrix: Sequence[Sequence[int]]) -> SnfResult:
    """Nonzero diagonal of the Smith normal form of an integer matrix.

    Pivots are the smallest nonzero absolute value in row-major scan order.
    """
    A = [[int(v) for v in row] for row in matrix]
    if not A or not A[0]:
        raise ValueError("matrix must be nonempty")
    rows, cols = len(A), len(A[0])
    divisors = []
    for t in range(min(rows, cols)):
        pos = _smallest_nonzero(A, t)
        if pos is None:
            break
        while True:
            i, j = pos
            A[t], A[i] = A[i], A[t]
            for row in A:
                row[t], row[j] = row[j], row[t]
            p = A[t][t]
            for i in range(t + 1, rows):
                f = A[i][t] // p
                if f:
                    A[i] = [a - f * b for a, b in zip(A[i], A[t])]
            for j in range(t + 1, cols):
                f = A[t][j] // p
                if f:
                    for row in A:
                        row[j] -= f * row[t]
            rest = [(i, t) for i in range(t + 1, rows) if A[i][t]]
            rest += [(t, j) for j in range(t + 1, cols) if A[t][j]]
            if rest:
                pos = min(rest, key=lambda ij: abs(A[ij[0]][ij[1]]))
                continue
            bad = next(
                (i for i in range(t + 1, rows) for j in range(t + 1, cols) if A[i][j] % p),
                None,
            )
            if bad is None:
                break
            A[t] = [a + b for a, b in zip(A[t], A[bad])]
            pos = (t, t)
        divisors.append(abs(A[t][t]))
    return SnfResult(tuple(divisors))


def distinct_columns(arr: Arrangement) -> list[tuple[int, ...]]:
    """Coefficient vectors up to sign, in first-occurrence order.

    A repeated column (for instance the two members of a parallel pair) does
    not change the Smith form of any submatrix containing its twin, so the lcm
    over column subsets can run over distinct columns only.
    """
    seen: dict[tuple[int, ...], None] = {}
    for h in arr.hyperplanes:
        seen.setdefault(h.coeffs, None)
    return list(seen)


def lcm_period(arr: Arrangement, subset_bit_cap: int = DEFAULT_SUBSET_CAP) -> int:
    """lcm over nonempty column subsets ``J`` of the largest elementary divisor of ``A_J``.

    Offsets play no role.  Enumeration is exhaustive; more than
    ``subset_bit_cap`` distinct columns raises :class:`SubsetCapExceeded`.
    """
    cols = distinct_columns(arr)
    if len(cols) > subset_bit_cap:
        raise SubsetCapExceeded(
            f"{len(cols)} distinct columns exceed the subset cap {subset_bit_cap}; "
            "raise the cap or supply the lcm period"
        )
    result = 1
    for size in range(1, len(cols) + 1):
        for J in combinations(cols, size):
            sub = [[c[r] for c in J] for r in range(arr.dim)]
            result = lcm(result, smith_normal_form(sub).largest)
    return result


@dataclass(frozen=True)
class CollapseReport:
    lcm_period: int
    min_period: int
    quasipoly: QuasiPolynomial

    @property
    def collapses(self) -> bool:
        return self.min_period < self.lcm_period

    def to_json(self) -> dict[str, Any]:
        return {
            "lcm_period": self.lcm_period,
            "min_period": self.min_period,
            "collapses": self.collapses,
            "quasipoly": self.quasipoly.to_json(),
        }

    @classmethod
    def from_json(cls, obj: dict[str, Any]) -> CollapseReport:
        rep = cls(int(obj["lcm_period"]), int(obj["min_period"]), QuasiPolynomial.from_json(obj["quasipoly"]))
        if "collapses" in obj and bool(obj["collapses"]) != rep.collapses:
            raise ValueError("inconsistent 'collapses' field")
        return rep


def default_window(dim: int, degree: int | None = None) -> SampleWindow:
    """Sampling from ``q = 2*dim + 3`` onward."""
    return SampleWindow(q_start=2 * dim + 3, degree_bound=dim if degree is None else degree)


def collapse_report(
    arr: Arrangement,
    degree: int | None = None,
    window: SampleWindow | None = None,
    *,
    assume_lcm_period: int | None = None,
    subset_bit_cap: int = DEFAULT_SUBSET_CAP,
    workers: int = 1,
) -> CollapseReport:
    """Fit ``|M(A_q)|`` at the lcm period and compare with its minimum period."""
    rho = assume_lcm_period if assume_lcm_period is not None else lcm_period(arr, subset_bit_cap)
    if window is None:
        window = default_window(arr.dim, degree)
    qp = build_quasipoly(lambda q: count_complement(arr, q, workers).value, rho, degree, window)
    return CollapseReport(rho, minimum_period(qp), qp)
