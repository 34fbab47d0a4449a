"""Exact decision engine for symplectic ball packing, toric-domain
embeddings, capacity sequences, and their stabilized counterparts."""

from .core import (
    DomainValidationError,
    HypothesisError,
    InputError,
    QuadraticValue,
    Rational,
    ResourceBudgetError,
    SympackError,
    UndecidedError,
    compare,
    format_rational,
    parse_rational,
)
from .ech import (
    CapacitySequence,
    ball_sequence,
    concave_sequence,
    convex_sequence,
    ech_ball,
    ech_concave,
    ech_convex,
    ech_dominates,
    ech_ellipsoid,
    ech_union,
    ellipsoid_sequence,
)
from .exceptional import (
    ObstructionTuple,
    cremona_transform,
    enumerate_exceptional,
    is_exceptional_vector,
    satisfies_packing_constraint,
)
from .highdim import (
    EqualPackingValue,
    HigherDimProblem,
    ObstructionScan,
    conjectureA_feasible,
    curve_energy,
    equal_packing_value,
    fredholm_index,
    verify_no_new_obstruction,
)
from .packing import (
    BallConfig,
    CapacityResult,
    EqualBallFraction,
    PackingDecision,
    capacity_auto,
    decide_packing,
    equal_ball_fraction,
    packing_capacity,
    per_degree_max,
)
from .staircase import StaircaseSample, ms_value, sample_staircase
from .stabilized import (
    StabilizedDecision,
    decide_stabilized_packing,
    decide_stabilized_toric,
    decide_stabilized_two_ball,
)
from .toric import (
    ConcaveDomain,
    ConvexDomain,
    WeightData,
    decide_concave_into_convex,
    decide_concave_into_convex_refined,
    ellipsoid_weights,
    negative_weight_sequence,
    weight_sequence,
)

__version__ = "0.1.0"
