"""Command-line front end.

Every verb produces a :class:`Report` (schema version ``"1"``) that is printed
as text, CSV or JSON.  Exit status: 0 on success, 1 when a verification finds a
mismatch, 2 on usage or input errors.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import random
import sys
from dataclasses import dataclass, field
from typing import Any, Sequence

from . import box_bijection as bb
from . import shi_b
from .arrangement import Arrangement, Hyperplane, delete, load_arrangement, make_arrangement
from .counting import (
    count_complement,
    count_complement_naive,
    count_restricted,
    count_restricted_naive,
)
from .errors import QuasiPeriodError
from .period import DEFAULT_SUBSET_CAP, collapse_report, default_window, distinct_columns, lcm_period
from .polyalg import (
    SampleWindow,
    build_quasipoly,
    has_gcd_property,
    is_monic,
    is_polynomial,
    minimum_period,
)
from .shi_b import ShiHyperplane, parse_hyperplane_expr

SCHEMA_VERSION = "1"
LCM_ONE_NOTE = "lcm period 1: the count is a polynomial and cannot collapse"
VERBS = ("count", "restrict-count", "quasipoly", "period", "collapse", "classify", "verify", "audit", "bijection-demo")


class UsageError(QuasiPeriodError, ValueError):
    pass


@dataclass
class Command:
    verb: str
    options: dict[str, Any] = field(default_factory=dict)

    def __post_init__(self):
        if self.verb not in VERBS:
            raise UsageError(f"unknown verb {self.verb!r}")

    def get(self, key: str, default=None):
        value = self.options.get(key)
        return default if value is None else value


@dataclass
class Report:
    verb: str
    payload: dict[str, Any]
    provenance: dict[str, Any] = field(default_factory=dict)
    schema_version: str = SCHEMA_VERSION

    def to_json(self) -> dict[str, Any]:
        return {
            "schema_version": self.schema_version,
            "verb": self.verb,
            "payload": self.payload,
            "provenance": self.provenance,
        }

    @classmethod
    def from_json(cls, obj: dict[str, Any] | str) -> Report:
        if isinstance(obj, str):
            obj = json.loads(obj)
        return cls(obj["verb"], obj["payload"], obj.get("provenance", {}), obj["schema_version"])

    def dumps(self) -> str:
        return json.dumps(self.to_json(), indent=2)


# ------------------------------------------------------------------ argument helpers

def parse_q_range(text: str) -> range:
    try:
        lo, hi = (int(t) for t in text.split(".."))
    except ValueError:
        raise UsageError(f"--q-range must look like a..b, got {text!r}") from None
    if lo < 1 or hi < lo:
        raise UsageError(f"bad q range {text!r}")
    return range(lo, hi + 1)


def _qs(cmd: Command) -> list[int]:
    if cmd.get("q") is not None and cmd.get("q_range") is not None:
        raise UsageError("give either --q or --q-range, not both")
    if cmd.get("q") is not None:
        return [int(cmd.get("q"))]
    if cmd.get("q_range") is not None:
        return list(parse_q_range(cmd.get("q_range")))
    raise UsageError(f"{cmd.verb} needs --q or --q-range")


def _m(cmd: Command) -> int:
    if cmd.get("m") is None:
        raise UsageError(f"{cmd.verb} needs --m")
    return int(cmd.get("m"))


def _base_arrangement(cmd: Command) -> Arrangement:
    family, path = cmd.get("family"), cmd.get("file")
    if (family is None) == (path is None):
        raise UsageError("give exactly one of --family or --file")
    if family is not None:
        if family != "shi-b":
            raise UsageError(f"unknown family {family!r}")
        return shi_b.build_shi_b(_m(cmd))
    return load_arrangement(path)


def _resolve(arr: Arrangement, expr: str) -> int:
    h = parse_hyperplane_expr(expr, arr.dim)
    return arr.index(Hyperplane(h.coeffs(arr.dim), h.offset))


def _arrangement(cmd: Command) -> Arrangement:
    arr = _base_arrangement(cmd)
    for expr in cmd.get("delete", []):
        arr = delete(arr, _resolve(arr, expr))
    return arr


def _pivot(cmd: Command, arr: Arrangement) -> int:
    hyps = cmd.get("hyperplane", [])
    if cmd.get("pivot") is not None:
        if hyps:
            raise UsageError("give either --hyperplane or --pivot")
        return arr.index(int(cmd.get("pivot")))
    if len(hyps) != 1:
        raise UsageError(f"{cmd.verb} needs exactly one --hyperplane (or --pivot)")
    return _resolve(arr, hyps[0])


def _source(cmd: Command) -> str:
    base = f"shi-b m={cmd.get('m')}" if cmd.get("family") else f"file {cmd.get('file')}"
    dels = cmd.get("delete", [])
    return base + (" minus " + ", ".join(dels) if dels else "")


def _window(cmd: Command, dim: int, degree: int) -> SampleWindow:
    start = cmd.get("q_start")
    if start is None:
        return default_window(dim, degree)
    return SampleWindow(q_start=int(start), degree_bound=degree)


# ------------------------------------------------------------------ verbs

def _do_count(cmd: Command) -> tuple[Report, int]:
    arr = _arrangement(cmd)
    threads = int(cmd.get("threads", 1))
    naive = bool(cmd.get("naive", False))
    rows = []
    for q in _qs(cmd):
        value = count_complement_naive(arr, q).value if naive else count_complement(arr, q, threads).value
        rows.append({"q": q, "count": value})
    payload = dict(rows[0]) if len(rows) == 1 else {"rows": rows}
    prov = {"oracle": "naive enumeration" if naive else "pruned kernel", "arrangement": _source(cmd)}
    return Report(cmd.verb, payload, prov), 0


def _do_restrict_count(cmd: Command) -> tuple[Report, int]:
    arr = _arrangement(cmd)
    piv = _pivot(cmd, arr)
    threads = int(cmd.get("threads", 1))
    naive = bool(cmd.get("naive", False))
    label = str(arr.label(piv) or arr[piv])
    closed = None
    if cmd.get("family") and not cmd.get("delete"):
        closed = shi_b.restriction_closed_form(arr.dim, arr.label(piv))
    rows = []
    for q in _qs(cmd):
        value = (count_restricted_naive(arr, piv, q) if naive else count_restricted(arr, piv, q, threads)).value
        row = {"q": q, "hyperplane": label, "count": value}
        if closed is not None:
            row["closed_form"] = closed(q)
        rows.append(row)
    payload = dict(rows[0]) if len(rows) == 1 else {"rows": rows}
    prov = {"oracle": "naive enumeration" if naive else "pruned kernel", "arrangement": _source(cmd)}
    if closed is not None:
        prov["formulas"] = [f"restriction to {label}"]
    return Report(cmd.verb, payload, prov), 0


def _quasipoly_payload(qp) -> dict[str, Any]:
    return {
        "quasipoly": qp.to_json(),
        "text": qp.format("q"),
        "min_period": minimum_period(qp),
        "monic": is_monic(qp),
        "gcd_property": has_gcd_property(qp),
        "polynomial": is_polynomial(qp),
    }


def _do_quasipoly(cmd: Command) -> tuple[Report, int]:
    arr = _arrangement(cmd)
    threads = int(cmd.get("threads", 1))
    restrict = cmd.get("hyperplane", []) or cmd.get("pivot") is not None
    piv = _pivot(cmd, arr) if restrict else None
    degree = int(cmd.get("degree", arr.dim - 1 if restrict else arr.dim))
    period = cmd.get("period")
    if period is None:
        period = cmd.get("assume_lcm_period")
    if period is None:
        period = lcm_period(arr, int(cmd.get("max_subset_bits", DEFAULT_SUBSET_CAP)))
    window = _window(cmd, arr.dim, degree)
    if piv is None:
        counter = lambda q: count_complement(arr, q, threads).value  # noqa: E731
    else:
        counter = lambda q: count_restricted(arr, piv, q, threads).value  # noqa: E731
    qp = build_quasipoly(counter, int(period), degree, window)
    payload = _quasipoly_payload(qp)
    payload["period"] = int(period)
    if piv is not None:
        payload["restricted_to"] = str(arr.label(piv) or arr[piv])
    prov = {"oracle": "pruned kernel", "arrangement": _source(cmd), "q_start": window.q_start,
            "verify_extra": window.verify_extra}
    return Report(cmd.verb, payload, prov), 0


def _do_period(cmd: Command) -> tuple[Report, int]:
    arr = _arrangement(cmd)
    cap = int(cmd.get("max_subset_bits", DEFAULT_SUBSET_CAP))
    rho = lcm_period(arr, cap)
    payload = {"lcm_period": rho, "hyperplanes": len(arr), "distinct_columns": len(distinct_columns(arr))}
    if rho == 1:
        payload["note"] = LCM_ONE_NOTE
    prov = {"method": "exhaustive column-subset Smith normal forms", "arrangement": _source(cmd)}
    return Report(cmd.verb, payload, prov), 0


def _do_collapse(cmd: Command) -> tuple[Report, int]:
    arr = _arrangement(cmd)
    degree = int(cmd.get("degree", arr.dim))
    assumed = cmd.get("assume_lcm_period")
    rep = collapse_report(
        arr,
        degree,
        _window(cmd, arr.dim, degree),
        assume_lcm_period=None if assumed is None else int(assumed),
        subset_bit_cap=int(cmd.get("max_subset_bits", DEFAULT_SUBSET_CAP)),
        workers=int(cmd.get("threads", 1)),
    )
    payload = rep.to_json()
    payload["text"] = rep.quasipoly.format("q")
    if rep.lcm_period == 1:
        payload["note"] = LCM_ONE_NOTE
    prov = {
        "arrangement": _source(cmd),
        "lcm_period_source": "assumed" if assumed is not None else "subset enumeration",
        "oracle": "pruned kernel",
    }
    return Report(cmd.verb, payload, prov), 0


def _shi_pair(cmd: Command, m: int) -> list[ShiHyperplane]:
    hyps = cmd.get("hyperplane", [])
    if len(hyps) not in (1, 2):
        raise UsageError("classify needs one --hyperplane (deletion) or two (parallel pair)")
    return [parse_hyperplane_expr(h, m) for h in hyps]


def _do_classify(cmd: Command) -> tuple[Report, int]:
    if cmd.get("family") != "shi-b":
        raise UsageError("classify supports --family shi-b only")
    m = _m(cmd)
    hs = _shi_pair(cmd, m)
    if len(hs) == 1:
        form = shi_b.deletion_closed_form(m, hs[0])
        poly = shi_b.is_deletion_polynomial(m, hs[0])
    else:
        form = shi_b.pair_deletion_closed_form(m, *hs)
        poly = shi_b.is_pair_deletion_polynomial(m, *hs)
    payload: dict[str, Any] = {
        "m": m,
        "hyperplanes": [str(h) for h in hs],
        "polynomial": poly,
        "closed_form": form.format("q"),
    }
    status = 0
    if cmd.get("interpolate"):
        arr = shi_b.build_shi_b(m)
        for h in hs:
            arr = delete(arr, h)
        qp = build_quasipoly(lambda q: count_complement(arr, q, int(cmd.get("threads", 1))).value,
                             2, m, _window(cmd, m, m))
        payload["interpolated_polynomial"] = is_polynomial(qp)
        payload["interpolated"] = qp.format("q")
        if is_polynomial(qp) != poly:
            status = 1
    prov = {"formulas": ["deletion = base + restriction(s)"], "classifier": "index rules"}
    return Report(cmd.verb, payload, prov), status


def _random_unimodular(m: int, rng: random.Random, steps: int = 10) -> list[list[int]]:
    P = [[int(r == c) for c in range(m)] for r in range(m)]
    for _ in range(rng.randint(1, steps)):
        op = rng.choice(("add", "swap", "neg"))
        i, j = rng.sample(range(m), 2) if m > 1 else (0, 0)
        if op == "add" and m > 1:
            k = rng.choice((-2, -1, 1, 2))
            P[i] = [a + k * b for a, b in zip(P[i], P[j])]
        elif op == "swap" and m > 1:
            P[i], P[j] = P[j], P[i]
        else:
            P[i] = [-a for a in P[i]]
    return P


def transform(arr: Arrangement, P: Sequence[Sequence[int]]) -> Arrangement:
    """Left-multiply the coefficient matrix by ``P``; offsets unchanged."""
    rows = []
    for h in arr.hyperplanes:
        rows.append(([sum(P[r][c] * h.coeffs[c] for c in range(arr.dim)) for r in range(arr.dim)], h.offset))
    return make_arrangement(arr.dim, rows, arr.labels)


def _do_verify(cmd: Command) -> tuple[Report, int]:
    if cmd.get("family") != "shi-b":
        raise UsageError("verify supports --family shi-b only")
    m = _m(cmd)
    qs = list(parse_q_range(cmd.get("q_range"))) if cmd.get("q_range") else list(range(2 * m + 2, 2 * m + 13))
    threads = int(cmd.get("threads", 1))
    rows = []
    failures = 0
    for r in shi_b.verify_family(m, qs, threads):
        rows.append({
            "q": r.q, "hyperplane": r.hyperplane, "formula": r.formula, "restricted": r.restricted,
            "deletion": r.deletion, "full": r.full, "base_formula": r.base_formula, "ok": r.ok,
        })
        failures += not r.ok
    payload: dict[str, Any] = {"m": m, "checks": len(rows), "failures": failures, "rows": rows}
    if cmd.get("seed") is not None:
        rng = random.Random(int(cmd.get("seed")))
        arr = shi_b.build_shi_b(m)
        uni = []
        for q in qs:
            P = _random_unimodular(m, rng)
            same = count_complement(transform(arr, P), q).value == count_complement(arr, q).value
            uni.append({"q": q, "matrix": P, "ok": same})
            failures += not same
        payload["unimodular"] = uni
        payload["failures"] = failures
    payload["all_pass"] = failures == 0
    prov = {
        "formulas": ["restriction closed forms for all six kinds", "(q-2m)^m"],
        "oracle": "pruned kernel, deletion-restriction identity",
        "q_range": [qs[0], qs[-1]],
    }
    return Report(cmd.verb, payload, prov), 0 if failures == 0 else 1


def _do_audit(cmd: Command) -> tuple[Report, int]:
    m = _m(cmd)
    q_max = cmd.get("q_max")
    rows = shi_b.audit_validity(m, None if q_max is None else int(q_max))
    payload = {"m": m, "rows": rows, "max_min_valid_q": max(r["min_valid_q"] for r in rows)}
    prov = {"oracle": "pruned kernel", "q_range": [1, rows[0]["q_max"]]}
    return Report(cmd.verb, payload, prov), 0


def _do_bijection(cmd: Command) -> tuple[Report, int]:
    if cmd.get("q") is None:
        raise UsageError("bijection-demo needs --q")
    q = int(cmd.get("q"))
    if cmd.get("x") is not None:
        x = tuple(int(t) for t in str(cmd.get("x")).replace("(", "").replace(")", "").split(","))
        p = bb.encode(x, q)
    elif cmd.get("boxes") is not None:
        m = _m(cmd)
        half = cmd.get("half")
        spec = dict(item.split(":") for item in str(cmd.get("boxes")).split(","))
        box_of = tuple(int(spec[str(s)]) if str(s) in spec else None for s in range(1, m + 1))
        if q % 2:
            p = bb.OddPlacement(m, q, box_of)
        else:
            p = bb.EvenPlacement(m, q, None if half is None else int(half), box_of)
    elif cmd.get("index") is not None:
        m = _m(cmd)
        idx = int(cmd.get("index"))
        p = next((pl for k, pl in enumerate(bb.enumerate_placements(m, q)) if k == idx), None)
        if p is None:
            raise UsageError(f"only {bb.placement_count(m, q)} placements exist")
    else:
        raise UsageError("bijection-demo needs --x, --boxes or --index")
    payload = {
        "m": p.m,
        "q": q,
        "variant": p.variant if isinstance(p, bb.EvenPlacement) else "odd",
        "boxes": {str(s): b for s, b in p.boxes().items()},
        "x": list(bb.decode(p)),
        "art": bb.render(p),
    }
    return Report(cmd.verb, payload, {"construction": "box-and-circle layout"}), 0


_HANDLERS = {
    "count": _do_count,
    "restrict-count": _do_restrict_count,
    "quasipoly": _do_quasipoly,
    "period": _do_period,
    "collapse": _do_collapse,
    "classify": _do_classify,
    "verify": _do_verify,
    "audit": _do_audit,
    "bijection-demo": _do_bijection,
}


def run(command: Command) -> tuple[Report, int]:
    return _HANDLERS[command.verb](command)


# ------------------------------------------------------------------ output

def _scalar(v: Any) -> Any:
    if isinstance(v, (dict, list)):
        return json.dumps(v, separators=(",", ":"))
    return v


def table_rows(report: Report) -> list[dict[str, Any]]:
    p = report.payload
    if isinstance(p.get("rows"), list):
        return p["rows"]
    return [{k: v for k, v in p.items() if not isinstance(v, (dict, list)) and k != "art"}]


def to_csv(report: Report) -> str:
    rows = table_rows(report)
    buf = io.StringIO()
    fields = list(rows[0].keys()) if rows else []
    writer = csv.DictWriter(buf, fieldnames=fields, lineterminator="\n")
    writer.writeheader()
    for row in rows:
        writer.writerow({k: _scalar(v) for k, v in row.items()})
    return buf.getvalue()


def to_text(report: Report) -> str:
    p = report.payload
    if "art" in p:
        return p["art"]
    lines = []
    for k, v in p.items():
        if k == "rows":
            continue
        if isinstance(v, (dict, list)):
            v = json.dumps(v)
        lines.append(f"{k}: {v}")
    rows = p.get("rows")
    if rows:
        keys = list(rows[0].keys())
        cells = [[str(_scalar(r.get(k, ""))) for k in keys] for r in rows]
        widths = [max(len(k), *(len(c[i]) for c in cells)) for i, k in enumerate(keys)]
        lines.append("  ".join(k.rjust(w) for k, w in zip(keys, widths)))
        for c in cells:
            lines.append("  ".join(v.rjust(w) for v, w in zip(c, widths)))
    return "\n".join(lines) + "\n"


def render(report: Report, fmt: str) -> str:
    if fmt == "json":
        return report.dumps() + "\n"
    if fmt == "csv":
        return to_csv(report)
    return to_text(report)


# ------------------------------------------------------------------ argparse

def _common(p: argparse.ArgumentParser, *, hyperplanes: bool = False, qs: bool = False) -> None:
    src = p.add_argument_group("arrangement")
    src.add_argument("--family", choices=["shi-b"])
    src.add_argument("--file", help="arrangement in text ('m n' + rows) or JSON form")
    src.add_argument("--m", type=int)
    src.add_argument("--delete", action="append", default=[], metavar="EXPR",
                     help="delete this hyperplane first (repeatable)")
    if hyperplanes:
        src.add_argument("--hyperplane", action="append", default=[], metavar="EXPR")
        src.add_argument("--pivot", type=int, help="0-based hyperplane index (for --file)")
    if qs:
        p.add_argument("--q", type=int)
        p.add_argument("--q-range", metavar="A..B")
    p.add_argument("--threads", type=int, default=1)
    p.add_argument("--format", choices=["text", "csv", "json"], default="text")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="quasiperiod", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="verb", required=True)

    p = sub.add_parser("count", help="|M(A_q)| for one or more q")
    _common(p, qs=True)
    p.add_argument("--naive", action="store_true", help="use full enumeration")

    p = sub.add_parser("restrict-count", help="points on one hyperplane and off all others")
    _common(p, hyperplanes=True, qs=True)
    p.add_argument("--naive", action="store_true")

    p = sub.add_parser("quasipoly", help="interpolate the counting quasi-polynomial")
    _common(p, hyperplanes=True)
    p.add_argument("--period", type=int)
    p.add_argument("--degree", type=int)
    p.add_argument("--q-start", type=int)
    p.add_argument("--assume-lcm-period", type=int)
    p.add_argument("--max-subset-bits", type=int, default=DEFAULT_SUBSET_CAP)

    p = sub.add_parser("period", help="lcm period by column-subset enumeration")
    _common(p)
    p.add_argument("--max-subset-bits", type=int, default=DEFAULT_SUBSET_CAP)

    p = sub.add_parser("collapse", help="lcm period vs minimum period")
    _common(p)
    p.add_argument("--degree", type=int)
    p.add_argument("--q-start", type=int)
    p.add_argument("--assume-lcm-period", type=int)
    p.add_argument("--max-subset-bits", type=int, default=DEFAULT_SUBSET_CAP)

    p = sub.add_parser("classify", help="is a (pair) deletion of B_m polynomial?")
    _common(p, hyperplanes=True)
    p.add_argument("--interpolate", action="store_true", help="also decide from counted values")
    p.add_argument("--q-start", type=int)

    p = sub.add_parser("verify", help="closed forms vs counting kernel on B_m")
    _common(p)
    p.add_argument("--q-range", metavar="A..B")
    p.add_argument("--seed", type=int, help="add seeded unimodular-invariance checks")

    p = sub.add_parser("audit", help="smallest q from which each closed form holds")
    _common(p)
    p.add_argument("--q-max", type=int)

    p = sub.add_parser("bijection-demo", help="draw a box-and-circle placement")
    p.add_argument("--m", type=int)
    p.add_argument("--q", type=int)
    p.add_argument("--x", help="complement point, e.g. 10,3,11,8,14")
    p.add_argument("--boxes", help="label:box pairs, e.g. 1:4,2:1")
    p.add_argument("--half", type=int, help="label on the side circle (even q)")
    p.add_argument("--index", type=int, help="n-th placement in enumeration order")
    p.add_argument("--format", choices=["text", "csv", "json"], default="text")
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    opts = {k: v for k, v in vars(args).items() if k not in ("verb", "format")}
    try:
        report, status = run(Command(args.verb, opts))
    except (QuasiPeriodError, ValueError, OSError) as exc:
        diag = {"error": type(exc).__name__, "message": str(exc), "verb": args.verb}
        sys.stderr.write(json.dumps(diag) + "\n")
        return 2
    sys.stdout.write(render(report, args.format))
    return status


if __name__ == "__main__":
    sys.exit(main())
