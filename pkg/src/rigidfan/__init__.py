"""Minimal universally rigid bar-and-joint frameworks in 2D and 3D.

Build with :func:`build_grunbaum_2d` / :func:`build_grunbaum_3d`, certify
with :func:`superstability_test`, and cross-check with the oracles in
:mod:`rigidfan.oracle`.
"""
from .construction import (
    FanDecomposition,
    Framework,
    build,
    build_grunbaum_2d,
    build_grunbaum_3d,
    build_multifan_2d,
    minimal_edge_count,
    validate_decomposition,
)
from .errors import (
    DegenerateInput,
    DuplicateId,
    NotFullDimensional,
    NoValidPartition,
    ProjectionDegenerate,
    RigidFanError,
    StressSearchUnsupported,
    TooManyFolds,
    UnknownId,
)
from .geometry import (
    Configuration,
    HullResult2D,
    HullResult3D,
    affine_rank,
    convex_hull_2d,
    convex_hull_3d,
    select_center_2d,
    select_central_edge_3d,
)
from .oracle import enumerate_fan_2d, enumerate_fan_3d, perturbation_flex_search
from .rigidity import (
    RigidityReport,
    congruence_check,
    count_flexes_and_stresses,
    lateration_edge_count,
    rigidity_matrix,
    selfstress_basis,
    stress_matrix,
    superstability_test,
)
from .session import EdgeDelta, Session, apply_event, edge_delta

__version__ = "0.1.0"
