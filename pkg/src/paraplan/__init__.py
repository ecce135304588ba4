"""Collision-free motion planning for n point robots sharing a workspace
with two point obstacles whose positions are only known at query time.

Workspaces must have even dimension d >= 2. The planner produces exactly
evaluable piecewise-linear paths that keep the obstacles fixed, never create
collisions, and depend continuously on the query within each of 2n+1 regions
indexed by ell = 4..2n+4.
"""

from .configspace import (
    Configuration,
    QueryPair,
    cp_count,
    epsilon_bar,
    is_colinear,
    validate_configuration,
    validate_query_pair,
)
from .deformations import desingularize, flatten, sigma
from .errors import (
    CollidingPoints,
    DegenerateObstacles,
    DimensionMismatch,
    InfeasibleInstanceSpec,
    NonFinitePoint,
    NotColinear,
    NotDesingularized,
    ObstacleMismatch,
    OddDimension,
    OutOfRangeTime,
    PlanningError,
)
from .geometry import OrientedLine, line_of, nu, project_point, project_scalar
from .planner import (
    PlannedPath,
    RegionIndex,
    classify,
    colinear_section,
    glue,
    plan,
    sample,
    straight_line_plan,
)
from .verifier import (
    InstanceSpec,
    VerificationReport,
    generate_queries,
    min_separation_exact,
    min_separation_sampled,
    run_suite,
    stratum_witness,
    swap_colinear_queries,
    verify_plan,
    verify_region_census,
    verify_semicontinuity,
    witness_query,
)

__version__ = "0.1.0"

__all__ = [
    "Configuration",
    "QueryPair",
    "OrientedLine",
    "PlannedPath",
    "RegionIndex",
    "InstanceSpec",
    "VerificationReport",
    "PlanningError",
    "CollidingPoints",
    "DegenerateObstacles",
    "DimensionMismatch",
    "InfeasibleInstanceSpec",
    "NonFinitePoint",
    "NotColinear",
    "NotDesingularized",
    "ObstacleMismatch",
    "OddDimension",
    "OutOfRangeTime",
    "line_of",
    "nu",
    "project_point",
    "project_scalar",
    "validate_configuration",
    "validate_query_pair",
    "cp_count",
    "epsilon_bar",
    "is_colinear",
    "desingularize",
    "flatten",
    "sigma",
    "classify",
    "colinear_section",
    "glue",
    "plan",
    "sample",
    "straight_line_plan",
    "generate_queries",
    "swap_colinear_queries",
    "stratum_witness",
    "witness_query",
    "min_separation_exact",
    "min_separation_sampled",
    "verify_plan",
    "verify_region_census",
    "verify_semicontinuity",
    "run_suite",
]
