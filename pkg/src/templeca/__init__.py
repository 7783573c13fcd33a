"""Grow voxel towers from ground plans with 9-cell totalistic cellular automata."""

__version__ = "0.1.0"

from .rule_codec import (
    RULE_SPACE_SIZE,
    TotalisticRule,
    decode_rule,
    encode_rule,
    render_rule,
    rule_output,
)
from .lattice import Layer, apply_mask, neighborhood_total, step_layer
from .growth import ClipMode, EmptyPlanError, GrowthConfig, Termination, Tower, grow_tower
from .morphometrics import (
    BehaviorClass,
    ClassReport,
    DimensionEstimate,
    Profile,
    ProfileKind,
    RatioSignature,
    box_counting_dimension,
    classify_rule,
    elevation_profile,
    ratio_signature,
    segment_profile,
)
from .rulescan import Metric, ScanResult, iou_score, profile_distance, scan_rules
from .formats import (
    FormatError,
    PlanDocument,
    export_obj,
    export_pbm,
    export_slices,
    parse_pbm,
    parse_plan_text,
    parse_slices,
    render_plan_text,
)
from .plans import load_plan, solid_square, stepped_cross, stepped_squares
