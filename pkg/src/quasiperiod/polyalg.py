"""Exact univariate integer polynomials and quasi-polynomials.

Constituents of a quasi-polynomial with period ``rho`` are stored in residue
order ``1, 2, ..., rho``; the last one governs ``q = 0 (mod rho)``.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd
from typing import Any, Callable, Iterable, Mapping, Sequence

from .errors import InvalidRange, NonIntegralCoefficients, VerificationFailed


def _strip(coeffs: Iterable[int]) -> tuple[int, ...]:
    cs = list(coeffs)
    while cs and cs[-1] == 0:
        cs.pop()
    return tuple(cs)


@dataclass(frozen=True)
class IntPolynomial:
    """Polynomial with integer coefficients in ascending degree order."""

    coeffs: tuple[int, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "coeffs", _strip(int(c) for c in self.coeffs))

    @classmethod
    def constant(cls, c: int) -> IntPolynomial:
        return cls((c,))

    @classmethod
    def variable(cls) -> IntPolynomial:
        return cls((0, 1))

    @property
    def degree(self) -> int:
        """Degree, with -1 for the zero polynomial."""
        return len(self.coeffs) - 1

    @property
    def leading(self) -> int:
        return self.coeffs[-1] if self.coeffs else 0

    def is_zero(self) -> bool:
        return not self.coeffs

    def is_monic(self) -> bool:
        return self.leading == 1

    def __call__(self, t):
        acc = 0
        for c in reversed(self.coeffs):
            acc = acc * t + c
        return acc

    def _coerce(self, other) -> IntPolynomial:
        if isinstance(other, IntPolynomial):
            return other
        if isinstance(other, int):
            return IntPolynomial.constant(other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        n = max(len(self.coeffs), len(other.coeffs))
        a = self.coeffs + (0,) * (n - len(self.coeffs))
        b = other.coeffs + (0,) * (n - len(other.coeffs))
        return IntPolynomial(x + y for x, y in zip(a, b))

    __radd__ = __add__

    def __neg__(self):
        return IntPolynomial(-c for c in self.coeffs)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        if not self.coeffs or not other.coeffs:
            return IntPolynomial()
        out = [0] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    out[i + j] += a * b
        return IntPolynomial(out)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if n < 0:
            raise ValueError("negative exponent")
        result = IntPolynomial.constant(1)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def shift(self, c: int) -> IntPolynomial:
        """The polynomial ``t -> self(t + c)``."""
        return self(IntPolynomial((c, 1)))

    def format(self, var: str = "t") -> str:
        if not self.coeffs:
            return "0"
        parts = []
        for k in range(len(self.coeffs) - 1, -1, -1):
            c = self.coeffs[k]
            if not c:
                continue
            mag = abs(c)
            if k == 0:
                body = str(mag)
            else:
                mono = var if k == 1 else f"{var}^{k}"
                body = mono if mag == 1 else f"{mag}*{mono}"
            sign = "-" if c < 0 else "+"
            parts.append((sign, body))
        text = ("-" if parts[0][0] == "-" else "") + parts[0][1]
        for sign, body in parts[1:]:
            text += f" {sign} {body}"
        return text

    def __str__(self) -> str:
        return self.format()

    def to_json(self) -> dict[str, Any]:
        return {"coeffs": list(self.coeffs)}

    @classmethod
    def from_json(cls, obj: Mapping[str, Any]) -> IntPolynomial:
        return cls(tuple(obj["coeffs"]))


@dataclass(frozen=True)
class QuasiPolynomial:
    period: int
    constituents: tuple[IntPolynomial, ...]

    def __post_init__(self):
        object.__setattr__(self, "constituents", tuple(self.constituents))
        if self.period < 1:
            raise ValueError("period must be positive")
        if len(self.constituents) != self.period:
            raise ValueError(f"period {self.period} needs {self.period} constituents, got {len(self.constituents)}")

    @classmethod
    def from_polynomial(cls, p: IntPolynomial, period: int = 1) -> QuasiPolynomial:
        return cls(period, (p,) * period)

    def constituent(self, r: int) -> IntPolynomial:
        """Constituent for residue class ``r`` in ``1..period``."""
        if not 1 <= r <= self.period:
            raise IndexError(f"residue class {r} not in 1..{self.period}")
        return self.constituents[r - 1]

    def for_modulus(self, q: int) -> IntPolynomial:
        return self.constituents[(q - 1) % self.period]

    def __call__(self, q: int) -> int:
        return self.for_modulus(q)(q)

    def with_period(self, s: int) -> QuasiPolynomial:
        """Re-express with period ``s``; ``s`` must be a valid period of this function."""
        if self.period % s:
            raise ValueError(f"{s} does not divide {self.period}")
        return QuasiPolynomial(s, self.constituents[:s])

    def to_json(self) -> dict[str, Any]:
        return {"period": self.period, "constituents": [c.to_json() for c in self.constituents]}

    @classmethod
    def from_json(cls, obj: Mapping[str, Any]) -> QuasiPolynomial:
        return cls(int(obj["period"]), tuple(IntPolynomial.from_json(c) for c in obj["constituents"]))

    def format(self, var: str = "t") -> str:
        if is_polynomial(self):
            return self.constituents[0].format(var)
        return "; ".join(
            f"[{var} = {r} mod {self.period}] {c.format(var)}"
            for r, c in enumerate(self.constituents, start=1)
        )


@dataclass(frozen=True)
class SampleWindow:
    """Where and how densely a counting function is sampled for interpolation."""

    q_start: int
    degree_bound: int
    verify_extra: int = 2

    def __post_init__(self):
        if self.q_start < 1:
            raise ValueError("q_start must be >= 1")
        if self.degree_bound < 0 or self.verify_extra < 0:
            raise ValueError("degree_bound and verify_extra must be non-negative")


# ------------------------------------------------------------------ interpolation

def _frac_poly_mul_linear(p: list[Fraction], root: int) -> list[Fraction]:
    out = [Fraction(0)] * (len(p) + 1)
    for i, c in enumerate(p):
        out[i + 1] += c
        out[i] -= c * root
    return out


def interpolate_constituent(counts: Mapping[int, int], period: int | None = None) -> IntPolynomial:
    """Unique polynomial of degree ``< len(counts)`` through the samples.

    The sample points must form an arithmetic progression (common difference
    ``period`` when given).  Arithmetic is exact; a non-integral coefficient
    raises :class:`NonIntegralCoefficients` instead of being rounded.
    """
    if not counts:
        raise ValueError("no samples")
    qs = sorted(counts)
    if len(qs) > 1:
        step = qs[1] - qs[0]
        if any(b - a != step for a, b in zip(qs, qs[1:])):
            raise ValueError(f"sample points {qs} are not an arithmetic progression")
        if period is not None and step != period:
            raise ValueError(f"sample spacing {step} differs from period {period}")
    coeffs = [Fraction(0)] * len(qs)
    for i, qi in enumerate(qs):
        basis = [Fraction(1)]
        denom = 1
        for j, qj in enumerate(qs):
            if j != i:
                basis = _frac_poly_mul_linear(basis, qj)
                denom *= qi - qj
        scale = Fraction(counts[qi], denom)
        for k, c in enumerate(basis):
            coeffs[k] += c * scale
    if any(c.denominator != 1 for c in coeffs):
        raise NonIntegralCoefficients(
            f"interpolant through {dict(sorted(counts.items()))} has coefficients {[str(c) for c in coeffs]}"
        )
    return IntPolynomial(int(c) for c in coeffs)


def residue_start(q_start: int, r: int, period: int) -> int:
    """Smallest ``q >= q_start`` with ``q = r (mod period)``."""
    return q_start + ((r - q_start) % period)


def build_quasipoly(
    counter: Callable[[int], int],
    period: int,
    degree: int | None = None,
    window: SampleWindow | None = None,
) -> QuasiPolynomial:
    """Fit a period-``period`` quasi-polynomial of degree ``<= degree`` to ``counter``.

    Each residue class is sampled at ``degree + 1`` consecutive members from
    ``window.q_start`` onward and checked at ``window.verify_extra`` further
    members; a mismatch raises :class:`VerificationFailed`.
    """
    if window is None:
        if degree is None:
            raise ValueError("need a degree or a SampleWindow")
        window = SampleWindow(q_start=1, degree_bound=degree)
    d = window.degree_bound if degree is None else degree
    constituents = []
    for r in range(1, period + 1):
        q0 = residue_start(window.q_start, r, period)
        samples = {q0 + period * s: int(counter(q0 + period * s)) for s in range(d + 1)}
        poly = interpolate_constituent(samples, period if d > 0 else None)
        for s in range(d + 1, d + 1 + window.verify_extra):
            q = q0 + period * s
            got = int(counter(q))
            if poly(q) != got:
                raise VerificationFailed(q, poly(q), got)
        constituents.append(poly)
    return QuasiPolynomial(period, tuple(constituents))


# ------------------------------------------------------------------ structure

def _divisors(n: int) -> list[int]:
    return [d for d in range(1, n + 1) if n % d == 0]


def minimum_period(qp: QuasiPolynomial) -> int:
    """Smallest divisor ``s`` of the period such that constituents only depend on the class mod ``s``.

    Two constituents equal as functions on infinitely many integers are equal
    polynomials, so the minimum period of the function divides any period and
    is found among the divisors.
    """
    cs = qp.constituents
    for s in _divisors(qp.period):
        if all(cs[r] == cs[r % s] for r in range(qp.period)):
            return s
    return qp.period


def has_gcd_property(qp: QuasiPolynomial) -> bool:
    by_gcd: dict[int, IntPolynomial] = {}
    for r, c in enumerate(qp.constituents, start=1):
        g = gcd(qp.period, r)
        if by_gcd.setdefault(g, c) != c:
            return False
    return True


def is_monic(qp: QuasiPolynomial) -> bool:
    return all(c.is_monic() for c in qp.constituents)


def is_polynomial(qp: QuasiPolynomial) -> bool:
    return all(c == qp.constituents[0] for c in qp.constituents)


# ------------------------------------------------------------------ telescoping sums

X = IntPolynomial.variable()


def _check_range(a: int, b: int) -> None:
    if not 0 <= a <= b:
        raise InvalidRange(f"need 0 <= a <= b, got a={a}, b={b}")


def telescoping_lhs(a: int, b: int, which: str = "ascending") -> IntPolynomial:
    """Sum over ``k = a..b`` of ``X^(b-k) (X+1)^(k-a)`` (ascending powers of X+1)
    or of ``(X+1)^(b-k) X^(k-a)`` (descending powers of X+1)."""
    _check_range(a, b)
    if which not in ("ascending", "descending"):
        raise ValueError(f"which must be 'ascending' or 'descending', got {which!r}")
    total = IntPolynomial()
    for k in range(a, b + 1):
        if which == "ascending":
            total = total + X ** (b - k) * (X + 1) ** (k - a)
        else:
            total = total + (X + 1) ** (b - k) * X ** (k - a)
    return total


def telescoping_rhs(a: int, b: int) -> IntPolynomial:
    _check_range(a, b)
    return (X + 1) ** (b - a + 1) - X ** (b - a + 1)


def polynomial_from_roots(roots: Sequence[int]) -> IntPolynomial:
    p = IntPolynomial.constant(1)
    for r in roots:
        p = p * IntPolynomial((-r, 1))
    return p
