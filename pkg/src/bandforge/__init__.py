"""Prismatoid whose top face cannot be attached to any edge unfolding of its band."""

__version__ = "0.1.0"

from .errors import (  # noqa: E402
    BandforgeError,
    CellError,
    Infeasible,
    InternalSymmetryError,
    InvalidGeometry,
    InvalidParams,
    LengthMismatch,
    SymmetryViolation,
)
from .geometry import (  # noqa: E402
    ConvexPolygon2,
    PlanarIsometry,
    convex_clip,
    mc_overlap_area,
    rigid_map_from_edge,
    signed_area,
)
from .prismatoid import (  # noqa: E402
    CurvaturePair,
    Prismatoid,
    PrismatoidParams,
    ValidationReport,
    build_prismatoid,
    build_top_hexagon,
    curvature_pair,
    preset_params,
    solve_params,
    validate,
    vertex_curvature,
)
from .unfold import Development, OverlapReport, TopPlacement, Verdict, develop_band, overlap, place_top  # noqa: E402
from .verify import SweepResult, VerdictMatrix, reduce_by_symmetry, sweep, verdict_matrix  # noqa: E402
