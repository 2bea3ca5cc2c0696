"""Box-and-circle encoding of the complement of ``B_m`` over ``Z_q``.

Boxes sit in two rows of ``B`` boxes each and are indexed ``0..B-1`` (upper
row, left to right) then ``B..2B-1`` (lower row, left to right).  A placement
assigns each label ``s`` in ``1..m`` to a box.  Circles are laid out per
column ``c``:

* upper box: a leading blank circle, the upper labels ascending, then one
  mirror circle for each lower label of the same column;
* lower box: a leading blank circle (omitted in the lower-left box), one mirror
  circle for each upper label, then the lower labels descending.

Reading the upper row left to right and then the lower row right to left gives
the values ``0, 1, ..., q-1``.  For even ``q`` a side circle with value
``q/2`` sits between the rows; it is blank, or carries label ``k`` in the
``Half(k)`` variant.  Mirror circles are opposite their label, i.e. carry the
negated value.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product
from typing import Iterator, Sequence, Union

from .counting import in_complement
from .errors import BadDimension, InvariantViolation, NotInComplement
from .shi_b import build_shi_b


@dataclass(frozen=True)
class OddPlacement:
    m: int
    q: int
    box_of: tuple[int, ...]  # box_of[s - 1] is the box of label s

    def boxes(self) -> dict[int, int]:
        return {s: b for s, b in enumerate(self.box_of, start=1)}


@dataclass(frozen=True)
class EvenPlacement:
    m: int
    q: int
    half: int | None  # label on the side circle, None for the NoHalf variant
    box_of: tuple[int | None, ...]  # entry for the side label is None

    @property
    def variant(self) -> str:
        return "NoHalf" if self.half is None else f"Half({self.half})"

    def boxes(self) -> dict[int, int]:
        return {s: b for s, b in enumerate(self.box_of, start=1) if b is not None}


Placement = Union[OddPlacement, EvenPlacement]


@dataclass(frozen=True)
class Circle:
    value: int
    label: int | None = None
    mirror_of: int | None = None


@dataclass(frozen=True)
class CircleRow:
    upper: tuple[tuple[Circle, ...], ...]
    lower: tuple[tuple[Circle, ...], ...]
    side: Circle | None

    def circles(self) -> list[Circle]:
        out = [c for box in self.upper for c in box] + [c for box in self.lower for c in box]
        if self.side is not None:
            out.append(self.side)
        return out


def boxes_per_side(m: int, q: int, half: int | None = None) -> int:
    if q % 2:
        return (q + 1) // 2 - m
    return q // 2 - m + (0 if half is None else 1)


def admissible_boxes(m: int, q: int, label: int, half: int | None = None) -> list[int]:
    """Boxes that ``label`` may occupy in the given variant."""
    B = boxes_per_side(m, q, half)
    forbidden = {0}
    if q % 2 == 0 and half is not None:
        forbidden.add(2 * B - 1)
        if label > half:
            forbidden.add(B - 1)
    return [b for b in range(2 * B) if b not in forbidden]


def _check(p: Placement) -> tuple[int, int | None]:
    m, q = p.m, p.q
    half = p.half if isinstance(p, EvenPlacement) else None
    if isinstance(p, OddPlacement) and q % 2 == 0:
        raise InvariantViolation("odd placement with even q")
    if isinstance(p, EvenPlacement) and q % 2:
        raise InvariantViolation("even placement with odd q")
    if len(p.box_of) != m:
        raise InvariantViolation(f"need a box for each of {m} labels")
    if boxes_per_side(m, q, half) < 1:
        raise InvariantViolation(f"q={q} leaves no boxes for m={m}")
    for s, b in enumerate(p.box_of, start=1):
        if s == half:
            if b is not None:
                raise InvariantViolation(f"label {s} sits on the side circle and has no box")
            continue
        if b is None or b not in admissible_boxes(m, q, s, half):
            raise InvariantViolation(f"label {s} cannot go in box {b} ({_variant(p)})")
    return boxes_per_side(m, q, half), half


def _variant(p: Placement) -> str:
    return p.variant if isinstance(p, EvenPlacement) else "odd"


def layout(p: Placement) -> CircleRow:
    """Lay out all ``q`` circles of a placement and number them."""
    B, half = _check(p)
    q = p.q
    members: list[list[int]] = [[] for _ in range(2 * B)]
    for s, b in p.boxes().items():
        members[b].append(s)
    upper_raw, lower_raw = [], []
    for c in range(B):
        ups = sorted(members[c])
        lows = sorted(members[B + c], reverse=True)
        upper_raw.append([(None, None)] + [(s, None) for s in ups] + [(None, s) for s in lows])
        lower_raw.append(([(None, None)] if c else []) + [(None, s) for s in ups] + [(s, None) for s in lows])
    value = 0
    upper = []
    for box in upper_raw:
        upper.append(tuple(Circle(value + k, lab, mir) for k, (lab, mir) in enumerate(box)))
        value += len(box)
    side = None
    if q % 2 == 0:
        side = Circle(value, half)
        value += 1
    lower_flat = [c for box in lower_raw for c in box]
    n_lower = len(lower_flat)
    lower = []
    pos = 0
    for box in lower_raw:
        circles = []
        for lab, mir in box:
            circles.append(Circle(value + n_lower - 1 - pos, lab, mir))
            pos += 1
        lower.append(tuple(circles))
    if value + n_lower != q:
        raise InvariantViolation(f"layout has {value + n_lower} circles, expected {q}")
    return CircleRow(tuple(upper), tuple(lower), side)


def decode(p: Placement) -> tuple[int, ...]:
    x = [0] * p.m
    for circle in layout(p).circles():
        if circle.label is not None:
            x[circle.label - 1] = circle.value
    return tuple(x)


def encode(x: Sequence[int], q: int) -> Placement:
    """The unique placement decoding to ``x``, a point of the complement of ``B_m``."""
    m = len(x)
    x = tuple(v % q for v in x)
    arr = build_shi_b(m, allow_degenerate=True)
    if not in_complement(arr, x, q):
        raise NotInComplement(f"{x} lies on a hyperplane of B_{m} mod {q}")
    half = None
    if q % 2 == 0 and q // 2 in x:
        half = x.index(q // 2) + 1
    B = boxes_per_side(m, q, half)
    n_upper = q // 2 if q % 2 == 0 else (q + 1) // 2
    present = set(x)
    # segment index of each upper position: a new box starts at every circle
    # that is neither labelled nor opposite a labelled circle
    segment = []
    seg = -1
    for pos in range(n_upper):
        if pos not in present and (pos == 0 or (q - pos) not in present):
            seg += 1
        segment.append(seg)
    if seg != B - 1:
        raise InvariantViolation(f"found {seg + 1} boxes per side, expected {B}")
    box_of: list[int | None] = []
    for s, v in enumerate(x, start=1):
        if s == half:
            box_of.append(None)
        elif v < n_upper:
            box_of.append(segment[v])
        else:
            box_of.append(B + segment[q - v])
    p: Placement
    if q % 2:
        p = OddPlacement(m, q, tuple(box_of))
    else:
        p = EvenPlacement(m, q, half, tuple(box_of))
    if decode(p) != x:
        raise InvariantViolation(f"encoding of {x} does not decode back")
    return p


def enumerate_placements(m: int, q: int, allow_degenerate: bool = False) -> Iterator[Placement]:
    """All placements for ``(m, q)``; for even ``q`` NoHalf first, then Half(1..m)."""
    if m < 1 or (m < 2 and not allow_degenerate):
        raise BadDimension(f"m must be >= 2 (m = 1 only with allow_degenerate), got {m}")
    if q < 2 * m + 2:
        raise ValueError(f"q must be at least 2m+2 = {2 * m + 2}, got {q}")
    labels = range(1, m + 1)
    if q % 2:
        choices = [admissible_boxes(m, q, s) for s in labels]
        for combo in product(*choices):
            yield OddPlacement(m, q, combo)
        return
    for half in (None, *labels):
        choices = [[None] if s == half else admissible_boxes(m, q, s, half) for s in labels]
        for combo in product(*choices):
            yield EvenPlacement(m, q, half, combo)


def placement_count(m: int, q: int) -> int:
    """Number of placements, computed from the box counts alone."""
    if q % 2:
        return (q - 2 * m) ** m
    T = q - 2 * m
    return (T - 1) ** m + sum((T - 1) ** (m - k) * T ** (k - 1) for k in range(1, m + 1))


def _glyph(c: Circle) -> str:
    return f"({c.label})" if c.label is not None else "( )"


def render(p: Placement) -> str:
    """Fixed-width text drawing of the boxes, circles and decoded tuple."""
    row = layout(p)
    up_cells, low_cells = [], []
    for c, (ub, lb) in enumerate(zip(row.upper, row.lower)):
        u = "".join(_glyph(k) for k in ub)
        lo = "".join(_glyph(k) for k in lb)
        if c == 0:
            lo = "   " + lo
        w = max(len(u), len(lo))
        up_cells.append(u.ljust(w))
        low_cells.append(lo.ljust(w))
    kind = "odd" if isinstance(p, OddPlacement) else f"even {p.variant}"
    lines = [
        f"m={p.m} q={p.q} {kind}",
        "upper | " + " | ".join(up_cells) + " |",
        "lower | " + " | ".join(low_cells) + " |",
    ]
    if row.side is not None:
        lines.append(f"side  {_glyph(row.side)} = {row.side.value}")
    lines.append("x = (" + ", ".join(str(v) for v in decode(p)) + ")")
    return "\n".join(lines) + "\n"
