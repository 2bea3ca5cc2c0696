"""Integral hyperplane arrangements and their text/JSON forms.

An arrangement is given by integer coefficient vectors ``a`` and offsets ``b``;
its reduction modulo ``q`` is the family of sets ``{x in Z_q^m : a.x = b mod q}``.
Rows are kept exactly as given apart from a sign flip that makes the first
nonzero coefficient positive.  No gcd is divided out, since ``2x = 0`` and
``x = 0`` reduce differently modulo even ``q``.
"""

from __future__ import annotations

import json
import warnings
from dataclasses import dataclass, field
from typing import Any, Hashable, Iterable, Iterator, Sequence

from .errors import (
    DimensionMismatch,
    FormatError,
    IndexOutOfRange,
    NoUnitCoefficient,
    ZeroHyperplane,
)


class DuplicateHyperplaneWarning(UserWarning):
    """Emitted when a row coincides with an earlier one after canonicalization."""


@dataclass(frozen=True)
class Hyperplane:
    coeffs: tuple[int, ...]
    offset: int

    def __post_init__(self):
        object.__setattr__(self, "coeffs", tuple(int(c) for c in self.coeffs))
        object.__setattr__(self, "offset", int(self.offset))
        if not any(self.coeffs):
            raise ZeroHyperplane(f"hyperplane {self.coeffs} has no nonzero coefficient")

    @property
    def dim(self) -> int:
        return len(self.coeffs)

    @property
    def support(self) -> tuple[int, ...]:
        return tuple(i for i, c in enumerate(self.coeffs) if c)

    def canonical(self) -> Hyperplane:
        lead = next(c for c in self.coeffs if c)
        if lead > 0:
            return self
        return Hyperplane(tuple(-c for c in self.coeffs), -self.offset)

    def has_unit_coefficient(self) -> bool:
        return any(abs(c) == 1 for c in self.coeffs)

    def contains(self, x: Sequence[int], q: int) -> bool:
        """Whether ``x`` lies on the q-reduction of this hyperplane."""
        return (sum(a * v for a, v in zip(self.coeffs, x)) - self.offset) % q == 0

    def __str__(self) -> str:
        terms = []
        for i, c in enumerate(self.coeffs, start=1):
            if not c:
                continue
            sign = "-" if c < 0 else "+"
            mag = "" if abs(c) == 1 else f"{abs(c)}*"
            terms.append((sign, f"{mag}x{i}"))
        text = ("-" if terms[0][0] == "-" else "") + terms[0][1]
        text += "".join(f"{s}{t}" for s, t in terms[1:])
        return f"{text}={self.offset}"


def canonicalize(h: Hyperplane) -> Hyperplane:
    return h.canonical()


@dataclass(frozen=True)
class Arrangement:
    """An ordered, duplicate-free list of hyperplanes in ``dim`` variables.

    ``labels`` is either ``None`` or a tuple with one hashable display label per
    hyperplane (``None`` entries allowed).  Build instances through
    :func:`make_arrangement`, which canonicalizes and deduplicates.
    """

    dim: int
    hyperplanes: tuple[Hyperplane, ...]
    labels: tuple[Hashable, ...] | None = field(default=None)

    def __post_init__(self):
        if self.dim < 1:
            raise DimensionMismatch(f"dimension must be positive, got {self.dim}")
        for h in self.hyperplanes:
            if h.dim != self.dim:
                raise DimensionMismatch(f"{h} has {h.dim} coefficients, expected {self.dim}")
        canon = [h.canonical() for h in self.hyperplanes]
        if canon != list(self.hyperplanes):
            raise ValueError("hyperplanes must be canonical; use make_arrangement")
        if len(set(canon)) != len(canon):
            raise ValueError("duplicate hyperplanes; use make_arrangement")
        if self.labels is not None and len(self.labels) != len(self.hyperplanes):
            raise ValueError("one label per hyperplane required")

    def __len__(self) -> int:
        return len(self.hyperplanes)

    def __iter__(self) -> Iterator[Hyperplane]:
        return iter(self.hyperplanes)

    def __getitem__(self, idx: int) -> Hyperplane:
        return self.hyperplanes[idx]

    def label(self, idx: int) -> Hashable:
        if self.labels is None:
            return None
        return self.labels[idx]

    def index(self, key: int | Hashable | Hyperplane) -> int:
        """Resolve an integer index, a label, or a hyperplane to a position."""
        if isinstance(key, bool):
            raise IndexOutOfRange(f"invalid hyperplane key {key!r}")
        if isinstance(key, int):
            if not 0 <= key < len(self.hyperplanes):
                raise IndexOutOfRange(f"index {key} out of range for {len(self)} hyperplanes")
            return key
        if isinstance(key, Hyperplane):
            try:
                return self.hyperplanes.index(key.canonical())
            except ValueError:
                raise IndexOutOfRange(f"{key} is not in the arrangement") from None
        if self.labels is not None:
            for i, lab in enumerate(self.labels):
                if lab is not None and (lab == key or str(lab) == str(key)):
                    return i
        raise IndexOutOfRange(f"no hyperplane labelled {key!r}")

    def coefficient_matrix(self) -> list[list[int]]:
        """The m x n matrix whose columns are the coefficient vectors."""
        return [[h.coeffs[r] for h in self.hyperplanes] for r in range(self.dim)]

    def rows(self) -> list[tuple[tuple[int, ...], int]]:
        return [(h.coeffs, h.offset) for h in self.hyperplanes]

    def centralize(self) -> Arrangement:
        """Set every offset to 0 (parallel hyperplanes merge)."""
        with warnings.catch_warnings():
            warnings.simplefilter("ignore", DuplicateHyperplaneWarning)
            return make_arrangement(
                self.dim, [(h.coeffs, 0) for h in self.hyperplanes], labels=self.labels
            )


def make_arrangement(
    dim: int,
    rows: Iterable[tuple[Sequence[int], int]],
    labels: Sequence[Hashable] | None = None,
) -> Arrangement:
    """Canonicalize and deduplicate ``rows`` (first occurrence wins).

    Duplicates are dropped with a :class:`DuplicateHyperplaneWarning`.
    """
    if dim < 1:
        raise DimensionMismatch(f"dimension must be positive, got {dim}")
    rows = list(rows)
    if labels is not None and len(labels) != len(rows):
        raise ValueError(f"{len(labels)} labels for {len(rows)} rows")
    kept: list[Hyperplane] = []
    kept_labels: list[Hashable] = []
    seen: set[Hyperplane] = set()
    for k, (coeffs, offset) in enumerate(rows):
        if len(coeffs) != dim:
            raise DimensionMismatch(f"row {k} has {len(coeffs)} coefficients, expected {dim}")
        h = Hyperplane(tuple(coeffs), offset).canonical()
        if h in seen:
            warnings.warn(f"dropping duplicate hyperplane {h} (row {k})", DuplicateHyperplaneWarning, stacklevel=2)
            continue
        seen.add(h)
        kept.append(h)
        if labels is not None:
            kept_labels.append(labels[k])
    return Arrangement(dim, tuple(kept), tuple(kept_labels) if labels is not None else None)


def delete(arr: Arrangement, idx: int | Hashable | Hyperplane) -> Arrangement:
    """Remove one hyperplane, keeping the order of the others."""
    k = arr.index(idx)
    hyps = arr.hyperplanes[:k] + arr.hyperplanes[k + 1:]
    labels = None if arr.labels is None else arr.labels[:k] + arr.labels[k + 1:]
    return Arrangement(arr.dim, hyps, labels)


@dataclass(frozen=True)
class RestrictionSpec:
    base: Arrangement
    pivot: int

    def __post_init__(self):
        if not 0 <= self.pivot < len(self.base):
            raise IndexOutOfRange(f"pivot {self.pivot} out of range")
        if not self.base[self.pivot].has_unit_coefficient():
            raise NoUnitCoefficient(
                f"{self.base[self.pivot]} has no coefficient equal to +-1; "
                "deletion-restriction counting is not guaranteed"
            )

    @property
    def hyperplane(self) -> Hyperplane:
        return self.base[self.pivot]


def restriction_spec(arr: Arrangement, idx: int | Hashable | Hyperplane) -> RestrictionSpec:
    return RestrictionSpec(arr, arr.index(idx))


# ---------------------------------------------------------------- text / JSON

def parse_arrangement_text(text: str) -> Arrangement:
    """Parse ``m n`` followed by ``n`` lines of ``a_1 ... a_m b``.

    Lines starting with ``#`` and blank lines are ignored.
    """
    lines = [ln.strip() for ln in text.splitlines()]
    lines = [ln for ln in lines if ln and not ln.startswith("#")]
    if not lines:
        raise FormatError("empty arrangement file")
    try:
        header = [int(t) for t in lines[0].split()]
    except ValueError:
        raise FormatError(f"bad header line {lines[0]!r}") from None
    if len(header) != 2:
        raise FormatError("header must be 'm n'")
    m, n = header
    body = lines[1:]
    if len(body) != n:
        raise FormatError(f"header announces {n} hyperplanes, found {len(body)}")
    rows = []
    for ln in body:
        try:
            nums = [int(t) for t in ln.split()]
        except ValueError:
            raise FormatError(f"non-integer entry in {ln!r}") from None
        if len(nums) != m + 1:
            raise DimensionMismatch(f"expected {m + 1} integers in {ln!r}")
        rows.append((nums[:m], nums[m]))
    return make_arrangement(m, rows)


def format_arrangement_text(arr: Arrangement) -> str:
    out = [f"{arr.dim} {len(arr)}"]
    for i, h in enumerate(arr.hyperplanes):
        line = " ".join(str(v) for v in (*h.coeffs, h.offset))
        lab = arr.label(i)
        if lab is not None:
            out.append(f"# {lab}")
        out.append(line)
    return "\n".join(out) + "\n"


def arrangement_to_json(arr: Arrangement) -> dict[str, Any]:
    hyps = []
    for i, h in enumerate(arr.hyperplanes):
        entry: dict[str, Any] = {"coeffs": list(h.coeffs), "offset": h.offset}
        lab = arr.label(i)
        if lab is not None:
            entry["label"] = str(lab)
        hyps.append(entry)
    return {"dim": arr.dim, "hyperplanes": hyps}


def arrangement_from_json(obj: dict[str, Any] | str) -> Arrangement:
    if isinstance(obj, str):
        obj = json.loads(obj)
    try:
        dim = int(obj["dim"])
        entries = obj["hyperplanes"]
        rows = [(list(e["coeffs"]), int(e["offset"])) for e in entries]
    except (KeyError, TypeError) as exc:
        raise FormatError(f"malformed arrangement JSON: {exc}") from None
    labels = [e.get("label") for e in entries]
    return make_arrangement(dim, rows, labels if any(lab is not None for lab in labels) else None)


def load_arrangement(path: str) -> Arrangement:
    with open(path, encoding="utf-8") as fh:
        text = fh.read()
    if path.endswith(".json") or text.lstrip().startswith("{"):
        return arrangement_from_json(text)
    return parse_arrangement_text(text)
