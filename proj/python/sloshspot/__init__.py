"""Harmonic sloshing modes with interior high spots.

Thin re-export of the compiled core: evaluate the conjugate harmonic pair
(u, v) on the lower half-plane, assemble the example domains bounded by
level lines of v, locate the high spots of the surface trace, and run the
verification suite.
"""

from ._core import (
    BulbousReport,
    CaseTag,
    EndpointKind,
    Family,
    FieldValues,
    HighSpot,
    LevelCurve,
    Mode,
    Point2,
    QuadratureConfig,
    ReferenceComparison,
    ResidualReport,
    SideVerdict,
    SloshingDomain,
    SloshspotError,
    SpotKind,
    StagnationPoint,
    TraceValues,
    build_domain,
    case_name,
    check_bulbous,
    domain_json,
    eval_field,
    eval_trace,
    find_high_spots,
    find_stagnation_point,
    find_trace_min,
    make_mode,
    mirror_domain,
    reference_report,
    smooth_variant,
    trace_level_curve,
    trace_u_nodal_line,
    verify_domain,
)

__all__ = [
    "BulbousReport",
    "CaseTag",
    "EndpointKind",
    "Family",
    "FieldValues",
    "HighSpot",
    "LevelCurve",
    "Mode",
    "Point2",
    "QuadratureConfig",
    "ReferenceComparison",
    "ResidualReport",
    "SideVerdict",
    "SloshingDomain",
    "SloshspotError",
    "SpotKind",
    "StagnationPoint",
    "TraceValues",
    "build_domain",
    "case_name",
    "check_bulbous",
    "domain_json",
    "eval_field",
    "eval_trace",
    "find_high_spots",
    "find_stagnation_point",
    "find_trace_min",
    "make_mode",
    "mirror_domain",
    "reference_report",
    "smooth_variant",
    "trace_level_curve",
    "trace_u_nodal_line",
    "verify_domain",
]

__version__ = "0.1.0"
