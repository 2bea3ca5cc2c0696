"""The Shi arrangement of type B and closed forms for its restrictions.

``B_m`` consists of ``x_i = 0``, ``x_i = 1`` for every ``i`` and
``x_i - x_j = 0, 1`` and ``x_i + x_j = 0, 1`` for every ``i < j``.  Closed
forms are written in ``T = q - 2m``; each restriction count is a
quasi-polynomial of period 2, given by an odd and an even constituent in ``q``.
They are valid for ``q >= 2m + 2`` (the audit routines measure the real bound).
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from enum import Enum
from itertools import combinations
from typing import Iterator

from .arrangement import Arrangement, delete, make_arrangement
from .counting import count_complement, count_restricted
from .errors import (
    BadDimension,
    IndexOutOfRange,
    InvalidIndices,
    NotParallel,
    OrientationError,
    ParseError,
)
from .polyalg import IntPolynomial, QuasiPolynomial

Q = IntPolynomial.variable()


class ShiKind(str, Enum):
    XI0 = "Xi0"
    XI1 = "Xi1"
    DIFF0 = "DiffEq0"
    DIFF1 = "DiffEq1"
    SUM0 = "SumEq0"
    SUM1 = "SumEq1"

    @property
    def is_pair(self) -> bool:
        return self not in (ShiKind.XI0, ShiKind.XI1)

    @property
    def offset(self) -> int:
        return 1 if self in (ShiKind.XI1, ShiKind.DIFF1, ShiKind.SUM1) else 0

    @property
    def sign(self) -> int:
        """Coefficient of ``x_j`` for pair kinds."""
        return -1 if self in (ShiKind.DIFF0, ShiKind.DIFF1) else 1

    def partner(self) -> ShiKind:
        """The kind with the same normal vector and the other offset."""
        return {
            ShiKind.XI0: ShiKind.XI1, ShiKind.XI1: ShiKind.XI0,
            ShiKind.DIFF0: ShiKind.DIFF1, ShiKind.DIFF1: ShiKind.DIFF0,
            ShiKind.SUM0: ShiKind.SUM1, ShiKind.SUM1: ShiKind.SUM0,
        }[self]


_KIND_ORDER = list(ShiKind)


@dataclass(frozen=True)
class ShiHyperplane:
    kind: ShiKind
    i: int
    j: int | None = None

    def __post_init__(self):
        object.__setattr__(self, "kind", ShiKind(self.kind))
        if self.kind.is_pair:
            if self.j is None or not 1 <= self.i < self.j:
                raise InvalidIndices(f"{self.kind.value} needs 1 <= i < j, got i={self.i}, j={self.j}")
        elif self.j is not None or self.i < 1:
            raise InvalidIndices(f"{self.kind.value} needs a single index i >= 1")

    def validate(self, m: int) -> ShiHyperplane:
        top = self.j if self.kind.is_pair else self.i
        if top > m:
            raise InvalidIndices(f"{self} has an index larger than m={m}")
        return self

    def coeffs(self, m: int) -> tuple[int, ...]:
        self.validate(m)
        c = [0] * m
        c[self.i - 1] = 1
        if self.kind.is_pair:
            c[self.j - 1] = self.kind.sign
        return tuple(c)

    @property
    def offset(self) -> int:
        return self.kind.offset

    def partner(self) -> ShiHyperplane:
        return ShiHyperplane(self.kind.partner(), self.i, self.j)

    def sort_key(self) -> tuple:
        return (_KIND_ORDER.index(self.kind), self.i, self.j or 0)

    def __str__(self) -> str:
        if not self.kind.is_pair:
            return f"x{self.i}={self.offset}"
        op = "-" if self.kind.sign < 0 else "+"
        return f"x{self.i}{op}x{self.j}={self.offset}"


def shi_hyperplanes(m: int, allow_degenerate: bool = False) -> list[ShiHyperplane]:
    """Hyperplanes of ``B_m`` in a fixed order: singletons, then pairs."""
    _check_m(m, allow_degenerate)
    out = []
    for i in range(1, m + 1):
        out += [ShiHyperplane(ShiKind.XI0, i), ShiHyperplane(ShiKind.XI1, i)]
    for i, j in combinations(range(1, m + 1), 2):
        for kind in (ShiKind.DIFF0, ShiKind.DIFF1, ShiKind.SUM0, ShiKind.SUM1):
            out.append(ShiHyperplane(kind, i, j))
    return out


def parallel_pairs(m: int) -> list[tuple[ShiHyperplane, ShiHyperplane]]:
    """Every pair ``{H, H'}`` with equal normal vectors, offset-0 member first."""
    return [(h, h.partner()) for h in shi_hyperplanes(m) if h.offset == 0]


def _check_m(m: int, allow_degenerate: bool) -> None:
    if m < 1 or (m < 2 and not allow_degenerate):
        raise BadDimension(f"m must be >= 2 (m = 1 only with allow_degenerate), got {m}")


def build_shi_b(m: int, allow_degenerate: bool = False) -> Arrangement:
    hyps = shi_hyperplanes(m, allow_degenerate)
    return make_arrangement(m, [(h.coeffs(m), h.offset) for h in hyps], labels=hyps)


# ------------------------------------------------------------------ closed forms

@dataclass(frozen=True)
class ClosedFormCount:
    """Odd- and even-``q`` constituents, as polynomials in ``q``."""

    odd: IntPolynomial
    even: IntPolynomial

    def __call__(self, q: int) -> int:
        return (self.odd if q % 2 else self.even)(q)

    def __add__(self, other: ClosedFormCount) -> ClosedFormCount:
        return ClosedFormCount(self.odd + other.odd, self.even + other.even)

    def is_polynomial(self) -> bool:
        return self.odd == self.even

    def as_quasipoly(self) -> QuasiPolynomial:
        return QuasiPolynomial(2, (self.odd, self.even))

    def format(self, var: str = "q") -> str:
        if self.is_polynomial():
            return self.odd.format(var)
        return f"odd: {self.odd.format(var)}; even: {self.even.format(var)}"


def _same(p: IntPolynomial) -> ClosedFormCount:
    return ClosedFormCount(p, p)


def base_closed_form(m: int, allow_degenerate: bool = False) -> ClosedFormCount:
    _check_m(m, allow_degenerate)
    return _same((Q - 2 * m) ** m)


def restriction_closed_form(m: int, h: ShiHyperplane) -> ClosedFormCount:
    """Count of the complement of ``B_m`` restricted to ``h``, per parity of ``q``.

    Declared valid for ``q >= 2m + 2``; :func:`audit_validity` measures where
    each form actually starts to agree with the counting kernel.
    """
    _check_m(m, False)
    h.validate(m)
    T = Q - 2 * m
    i, j = h.i, h.j
    kind = h.kind
    if kind is ShiKind.XI0:
        return _same((T + 1) ** (m - i) * (T + 2) ** (i - 1))
    if kind is ShiKind.XI1:
        return _same(T ** (i - 1) * (T + 1) ** (m - i))
    if kind is ShiKind.DIFF0:
        U = T + 1
        odd = U ** (j - i - 1) * (U + 1) ** (m - j) * ((U + 1) ** i - U ** (i - 1))
        even = U ** (j - i - 1) * (U + 1) ** (i - 1) * ((U + 1) ** (m - j + 1) - U ** (m - j))
        return ClosedFormCount(odd, even)
    if kind is ShiKind.DIFF1:
        return _same(T ** (m + i - j) * (T + 1) ** (j - i - 1))
    if kind is ShiKind.SUM0:
        # (T+2)^(i-1) - (T+1)^(i-2) carries a negative power at i = 1; the
        # product is expanded so the odd constituent is polynomial for all i.
        odd = T ** (m - j) * ((T + 1) ** (j - i) * (T + 2) ** (i - 1) - (T + 1) ** (j - 2))
        even = T ** (m - j + 1) * (T + 1) ** (j - i - 1) * (T + 2) ** (i - 1)
        return ClosedFormCount(odd, even)
    odd = T ** (i - 1) * (T + 1) ** (j - i) * (T + 2) ** (m - j)
    even = T ** (i - 1) * (T + 1) ** (j - i - 1) * ((T + 2) ** (m - j + 1) - (T + 1) ** (m - j))
    return ClosedFormCount(odd, even)


def deletion_closed_form(m: int, h: ShiHyperplane) -> ClosedFormCount:
    """``|M(B_m \\ {h})| = |M(B_m)| + |M(B_m^h)|``."""
    return base_closed_form(m) + restriction_closed_form(m, h)


def _check_parallel(m: int, h1: ShiHyperplane, h2: ShiHyperplane) -> None:
    h1.validate(m)
    h2.validate(m)
    if h2 != h1.partner():
        raise NotParallel(f"{h1} and {h2} are not a parallel pair of B_{m}")


def pair_deletion_closed_form(m: int, h1: ShiHyperplane, h2: ShiHyperplane) -> ClosedFormCount:
    """``|M(B_m \\ {H, H'})| = |M(B_m)| + |M(B_m^H)| + |M(B_m^H')|`` for parallel ``H, H'``."""
    _check_parallel(m, h1, h2)
    return base_closed_form(m) + restriction_closed_form(m, h1) + restriction_closed_form(m, h2)


def pair_deletion_count(m: int, h1: ShiHyperplane, h2: ShiHyperplane, q: int) -> int:
    return pair_deletion_closed_form(m, h1, h2)(q)


# ------------------------------------------------------------------ classifiers

def is_deletion_polynomial(m: int, h: ShiHyperplane) -> bool:
    """Whether ``|M(B_m \\ {h})|`` is a polynomial in ``q``."""
    _check_m(m, False)
    h.validate(m)
    kind = h.kind
    if kind in (ShiKind.XI0, ShiKind.XI1, ShiKind.DIFF1):
        return True
    if kind is ShiKind.DIFF0:
        return h.i + h.j == m + 1
    if kind is ShiKind.SUM0:
        return h.i == 1
    return h.j == m


def is_pair_deletion_polynomial(m: int, h1: ShiHyperplane, h2: ShiHyperplane) -> bool:
    """Whether ``|M(B_m \\ {H, H'})|`` is a polynomial for a parallel pair."""
    _check_m(m, False)
    _check_parallel(m, h1, h2)
    if not h1.kind.is_pair:
        return True
    return h1.i + h1.j == m + 1


# ------------------------------------------------------------------ oracle comparisons

@dataclass(frozen=True)
class VerifyRow:
    m: int
    hyperplane: str
    q: int
    formula: int
    restricted: int
    full: int
    deletion: int
    base_formula: int

    @property
    def formula_ok(self) -> bool:
        return self.formula == self.restricted

    @property
    def identity_ok(self) -> bool:
        return self.full == self.deletion - self.restricted

    @property
    def base_ok(self) -> bool:
        return self.full == self.base_formula

    @property
    def ok(self) -> bool:
        return self.formula_ok and self.identity_ok and self.base_ok


def verify_family(m: int, qs: range | list[int], workers: int = 1) -> Iterator[VerifyRow]:
    """Compare every closed form with the counting kernel on ``B_m``.

    Each row also checks ``|M(B_m)| = (q-2m)^m`` and the deletion-restriction
    identity at that ``(H, q)``.
    """
    arr = build_shi_b(m)
    base = base_closed_form(m)
    for q in qs:
        full = count_complement(arr, q, workers).value
        for idx, h in enumerate(arr.labels):
            yield VerifyRow(
                m=m,
                hyperplane=str(h),
                q=q,
                formula=restriction_closed_form(m, h)(q),
                restricted=count_restricted(arr, idx, q, workers).value,
                full=full,
                deletion=count_complement(delete(arr, idx), q, workers).value,
                base_formula=base(q),
            )


def audit_validity(m: int, q_max: int | None = None) -> list[dict]:
    """Smallest ``q0`` such that each closed form matches the kernel for all ``q0 <= q <= q_max``.

    Measures; proves nothing beyond ``q_max``.
    """
    arr = build_shi_b(m)
    q_max = 2 * m + 12 if q_max is None else q_max
    rows = []
    entries = [("base", None, base_closed_form(m))]
    entries += [(str(h), idx, restriction_closed_form(m, h)) for idx, h in enumerate(arr.labels)]
    for name, idx, form in entries:
        q0 = q_max + 1
        for q in range(q_max, 0, -1):
            got = count_complement(arr, q).value if idx is None else count_restricted(arr, idx, q).value
            if got != form(q):
                break
            q0 = q
        rows.append({"m": m, "hyperplane": name, "min_valid_q": q0, "q_max": q_max})
    return rows


# ------------------------------------------------------------------ expression grammar

_EXPR = re.compile(r"^x(\d+)(?:([+-])x(\d+))?=([01])$")


def parse_hyperplane_expr(text: str, m: int) -> ShiHyperplane:
    """Parse ``x<i>=b``, ``x<i>-x<j>=b`` or ``x<i>+x<j>=b`` with ``b`` in {0, 1}.

    Sums are reordered to ``i < j``; differences must already satisfy ``i < j``.
    """
    s = "".join(text.split())
    match = _EXPR.match(s)
    if not match:
        raise ParseError(f"cannot parse hyperplane {text!r}")
    i = int(match.group(1))
    op, j = match.group(2), match.group(3)
    b = int(match.group(4))
    idx = [i] if j is None else [i, int(j)]
    for k in idx:
        if not 1 <= k <= m:
            raise IndexOutOfRange(f"index {k} in {text!r} outside 1..{m}")
    if j is None:
        return ShiHyperplane(ShiKind.XI1 if b else ShiKind.XI0, i)
    j = int(j)
    if i == j:
        raise ParseError(f"{text!r} uses the same variable twice")
    if op == "+":
        i, j = min(i, j), max(i, j)
        return ShiHyperplane(ShiKind.SUM1 if b else ShiKind.SUM0, i, j)
    if i > j:
        if b == 0:
            # x_i - x_j = 0 and x_j - x_i = 0 are the same hyperplane
            i, j = j, i
        else:
            raise OrientationError(f"{text!r}: differences equal to 1 must be written x<i>-x<j>=1 with i < j")
    return ShiHyperplane(ShiKind.DIFF1 if b else ShiKind.DIFF0, i, j)
