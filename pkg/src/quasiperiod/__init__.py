"""Characteristic quasi-polynomials of integral arrangements and the type-B Shi family."""

from __future__ import annotations

from .arrangement import (
    Arrangement,
    DuplicateHyperplaneWarning,
    Hyperplane,
    RestrictionSpec,
    arrangement_from_json,
    arrangement_to_json,
    canonicalize,
    delete,
    format_arrangement_text,
    load_arrangement,
    make_arrangement,
    parse_arrangement_text,
    restriction_spec,
)
from .box_bijection import (
    EvenPlacement,
    OddPlacement,
    decode,
    encode,
    enumerate_placements,
    layout,
    placement_count,
    render,
)
from .counting import (
    CountQuery,
    CountResult,
    count,
    count_complement,
    count_complement_naive,
    count_restricted,
    count_restricted_naive,
    in_complement,
)
from .errors import QuasiPeriodError
from .period import CollapseReport, SnfResult, collapse_report, lcm_period, smith_normal_form
from .polyalg import (
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
)
from .shi_b import (
    ClosedFormCount,
    ShiHyperplane,
    ShiKind,
    base_closed_form,
    build_shi_b,
    deletion_closed_form,
    is_deletion_polynomial,
    is_pair_deletion_polynomial,
    pair_deletion_closed_form,
    parallel_pairs,
    parse_hyperplane_expr,
    restriction_closed_form,
    shi_hyperplanes,
    verify_family,
)

__version__ = "0.1.0"

__all__ = [
    "Arrangement",
    "arrangement_from_json",
    "arrangement_to_json",
    "base_closed_form",
    "build_quasipoly",
    "build_shi_b",
    "canonicalize",
    "ClosedFormCount",
    "collapse_report",
    "CollapseReport",
    "count",
    "count_complement",
    "count_complement_naive",
    "count_restricted",
    "count_restricted_naive",
    "CountQuery",
    "CountResult",
    "decode",
    "delete",
    "deletion_closed_form",
    "DuplicateHyperplaneWarning",
    "encode",
    "enumerate_placements",
    "EvenPlacement",
    "format_arrangement_text",
    "has_gcd_property",
    "Hyperplane",
    "in_complement",
    "interpolate_constituent",
    "IntPolynomial",
    "is_deletion_polynomial",
    "is_monic",
    "is_pair_deletion_polynomial",
    "is_polynomial",
    "layout",
    "lcm_period",
    "telescoping_lhs",
    "telescoping_rhs",
    "load_arrangement",
    "make_arrangement",
    "minimum_period",
    "OddPlacement",
    "pair_deletion_closed_form",
    "parallel_pairs",
    "parse_arrangement_text",
    "parse_hyperplane_expr",
    "placement_count",
    "QuasiPeriodError",
    "QuasiPolynomial",
    "render",
    "restriction_closed_form",
    "restriction_spec",
    "RestrictionSpec",
    "SampleWindow",
    "shi_hyperplanes",
    "ShiHyperplane",
    "ShiKind",
    "smith_normal_form",
    "SnfResult",
    "verify_family",
]
