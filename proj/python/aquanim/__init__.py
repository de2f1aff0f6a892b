"""Area-preserving animated transitions for area-based charts."""

import json as _json

from ._aquanim import (
    AquanimError,
    SpecError,
    Transition,
    centered_pair,
    classify_reshape,
    ease,
    histogram_from_samples,
    hyperbolic_extent,
    lerp,
    overlap_area,
    partition_intervals,
    plan,
    probability_table,
    rect_area,
    reshape_at,
    segments_shift_at,
    transfer_at,
    vertex_lerp,
)


def plan_dict(document, base_dir="."):
    """Plans a transition from a dict instead of a JSON string."""
    return plan(_json.dumps(document), base_dir)


__all__ = [
    "AquanimError",
    "SpecError",
    "Transition",
    "centered_pair",
    "classify_reshape",
    "ease",
    "histogram_from_samples",
    "hyperbolic_extent",
    "lerp",
    "overlap_area",
    "partition_intervals",
    "plan",
    "plan_dict",
    "probability_table",
    "rect_area",
    "reshape_at",
    "segments_shift_at",
    "transfer_at",
    "vertex_lerp",
]
