"""scentropy: entropy of simplicial complexes.

Vertices that share a maximal simplex are treated as indistinguishable; the
entropy is the optimal expected code length for a vertex source under that
ambiguity.  The package bundles the convex solver, randomized/adversarial
decoding gains, Vietoris-Rips and ball-based (Cech) constructions on point
clouds, scale sweeps, and triangle-mesh utilities with curvature-derived
vertex distributions.
"""

from .complexes import (
    InvalidComplexError,
    SimplicialComplex,
    VertexDistribution,
    build_complex,
    format_complex,
    format_distribution,
    parse_complex,
    parse_distribution,
    uniform_distribution,
    vertex_entropy,
)
from .solver import (
    KERNEL,
    EntropySolution,
    SimplexWeights,
    SolverConfig,
    gradient,
    kkt_residual,
    normalized_entropy,
    objective,
    solve,
)
from .decoding import AdversarialSolution, RandomizedGain, adversarial_gain, randomized_gain
from .lp import LPInfeasibleError, LPResult, LPUnboundedError, lp_solve
from .points import (
    PointCloud,
    add_uniform_noise,
    format_points,
    generate_square_grid,
    generate_triangular_grid,
    parse_points,
    sample_sphere_uniform,
)
from .balls import Ball, min_enclosing_ball
from .filtration import (
    AllCriticalSchedule,
    CapExceededError,
    SweepEvaluationError,
    SweepRecord,
    UniformSchedule,
    cech,
    critical_radii,
    records_to_csv,
    sweep,
    vietoris_rips,
)
from .meshes import (
    CurvatureField,
    TriangleMesh,
    curvature_distribution,
    export_face_weights,
    format_off,
    gaussian_curvature,
    mesh_complex,
    parse_off,
)

__version__ = "0.1.0"
