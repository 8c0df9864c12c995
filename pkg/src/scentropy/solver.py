"""Entropy of a simplicial complex under a vertex distribution.

The entropy is the optimal value of

    minimize  sum_j p_j log2( 1 / S_j(q) )      over weights q on the
    subject to sum_i q_i = 1,  q_i >= 0          maximal simplices,

where ``S_j(q)`` sums the weights of the simplices containing vertex ``j``.
Equivalently we maximize the concave ``f(q) = sum_j p_j ln S_j(q)``.  The
solver runs the multiplicative fixed point ``q_i <- q_i * g_i(q)`` with
``g_i = sum_{j in simplex i} p_j / S_j``; the update stays on the weight
simplex because ``<q, g(q)> = 1`` at every feasible point, and it never
decreases ``f`` (it is an expectation-maximization step for mixture
weights).  First-order optimality is certified through the complementarity
residual: ``g_i = 1`` on supported simplices and ``g_i <= 1`` elsewhere.
"""

from __future__ import annotations

import math
import os
from dataclasses import dataclass

import numpy as np

from .complexes import SimplicialComplex, VertexDistribution, vertex_entropy
from . import _core_py

try:  # compiled kernel is optional; the numpy fallback is always present
    from . import _core
except ImportError:  # pragma: no cover - depends on the build environment
    _core = None

if os.environ.get("SCENTROPY_PURE_PYTHON", "") not in ("", "0"):
    _kernel = _core_py
else:
    _kernel = _core if _core is not None else _core_py

#: Which fixed-point kernel is active: "compiled" or "python".
KERNEL = "compiled" if _kernel is not _core_py else "python"

#: Weights at or below this threshold use the inactive complementarity branch.
ACTIVE_EPS = 1e-12

__all__ = [
    "ACTIVE_EPS",
    "KERNEL",
    "SolverConfig",
    "SimplexWeights",
    "EntropySolution",
    "objective",
    "gradient",
    "kkt_residual",
    "normalized_entropy",
    "solve",
]


@dataclass(frozen=True)
class SolverConfig:
    """Stopping rule for :func:`solve`."""

    kkt_tolerance: float = 1e-9
    max_iterations: int = 100_000
    damping: float = 1.0

    def __post_init__(self):
        if not self.kkt_tolerance > 0:
            raise ValueError("kkt_tolerance must be positive")
        if self.max_iterations < 1:
            raise ValueError("max_iterations must be at least 1")
        if not 0.0 < self.damping <= 1.0:
            raise ValueError("damping must lie in (0, 1]")


class SimplexWeights:
    """Validated weight vector over the maximal simplices."""

    __slots__ = ("q",)

    def __init__(self, values):
        q = np.array(values, dtype=float)
        if q.ndim != 1 or q.size < 1:
            raise ValueError("weights must be a nonempty 1-d vector")
        if np.any(q < 0):
            raise ValueError("weights must be non-negative")
        if abs(float(q.sum()) - 1.0) > 1e-12:
            raise ValueError("weights must sum to 1 within 1e-12")
        q.flags.writeable = False
        object.__setattr__(self, "q", q)

    def __setattr__(self, name, value):  # pragma: no cover - defensive
        raise AttributeError("SimplexWeights is immutable")

    @property
    def m(self) -> int:
        return self.q.size

    def __len__(self) -> int:
        return self.q.size


@dataclass(frozen=True)
class EntropySolution:
    """Result of :func:`solve`.

    ``coverage`` holds the vertex sums S_j at the returned weights, which are
    unique across all optima even when the weights themselves are not.
    ``degenerate`` marks a zero-entropy vertex distribution, for which the
    normalized entropy is reported as 0 rather than 0/0.
    """

    q: SimplexWeights
    coverage: np.ndarray
    entropy_bits: float
    normalized_entropy: float
    iterations: int
    kkt_residual: float
    degenerate: bool
    converged: bool
    objective_trace: np.ndarray | None = None


def _as_weights_array(complex: SimplicialComplex, q) -> np.ndarray:
    arr = np.asarray(q, dtype=float)
    if arr.shape != (complex.m,):
        raise ValueError(f"expected {complex.m} weights, got shape {arr.shape}")
    return arr


def coverage_sums(complex: SimplicialComplex, q) -> np.ndarray:
    """Vertex coverage S_j(q) = sum of q over the simplices containing j."""
    arr = _as_weights_array(complex, q)
    _, _, vert_ptr, vert_simpl = complex.incidence_arrays()
    return np.add.reduceat(arr[vert_simpl], vert_ptr[:-1])


def objective(complex: SimplicialComplex, P: VertexDistribution, q) -> float:
    """Concave objective f(q) = sum_j p_j ln S_j(q), in nats.

    Vertices with p_j = 0 are dropped from the sum; a positive-probability
    vertex with zero coverage makes the objective -inf and raises.
    """
    p = _check_dist(complex, P)
    s = coverage_sums(complex, q)
    pos = p > 0
    if np.any(s[pos] <= 0):
        raise ValueError("objective undefined: a positive-probability vertex "
                         "has zero coverage")
    return float(p[pos] @ np.log(s[pos]))


def gradient(complex: SimplicialComplex, P: VertexDistribution, q) -> np.ndarray:
    """Gradient of :func:`objective`: g_i = sum_{j in simplex i} p_j / S_j."""
    p = _check_dist(complex, P)
    s = coverage_sums(complex, q)
    pos = p > 0
    if np.any(s[pos] <= 0):
        raise ValueError("gradient undefined: a positive-probability vertex "
                         "has zero coverage")
    ratio = np.zeros(complex.n)
    np.divide(p, s, out=ratio, where=pos)
    face_ptr, face_vert, _, _ = complex.incidence_arrays()
    return np.add.reduceat(ratio[face_vert], face_ptr[:-1])


def kkt_residual(complex: SimplicialComplex, P: VertexDistribution, q) -> float:
    """Largest violation of the first-order optimality system at ``q``.

    Combines |g_i - 1| over active weights (q_i above ``ACTIVE_EPS``),
    max(0, g_i - 1) over inactive ones, the feasibility gap |sum q - 1| and
    the magnitude of the most negative weight.  Returns inf when the
    gradient is undefined at ``q``.
    """
    p = _check_dist(complex, P)
    arr = _as_weights_array(complex, q)
    s = coverage_sums(complex, arr)
    pos = p > 0
    if np.any(s[pos] <= 0):
        return math.inf
    ratio = np.zeros(complex.n)
    np.divide(p, s, out=ratio, where=pos)
    face_ptr, face_vert, _, _ = complex.incidence_arrays()
    g = np.add.reduceat(ratio[face_vert], face_ptr[:-1])
    dev = g - 1.0
    active = arr > ACTIVE_EPS
    residual = abs(float(arr.sum()) - 1.0)
    residual = max(residual, max(0.0, -float(arr.min())))
    if np.any(active):
        residual = max(residual, float(np.abs(dev[active]).max()))
    if not np.all(active):
        residual = max(residual, max(0.0, float(dev[~active].max())))
    return residual


def normalized_entropy(entropy_bits: float, vertex_entropy_bits: float) -> tuple[float, bool]:
    """Entropy divided by the vertex entropy, clamped to [0, 1].

    Returns ``(ratio, degenerate)``; a zero vertex entropy yields
    ``(0.0, True)`` instead of 0/0.
    """
    if vertex_entropy_bits == 0.0:
        return 0.0, True
    ratio = entropy_bits / vertex_entropy_bits
    return min(1.0, max(0.0, ratio)), False


def _check_dist(complex: SimplicialComplex, P: VertexDistribution) -> np.ndarray:
    if P.n != complex.n:
        raise ValueError(f"distribution over {P.n} vertices does not match "
                         f"complex with n={complex.n}")
    return P.p


def solve(complex: SimplicialComplex, P: VertexDistribution,
          config: SolverConfig | None = None, *, q0=None,
          record_objectives: bool = False) -> EntropySolution:
    """Solve the entropy program; returns weights, coverage and diagnostics.

    Starts from uniform weights unless ``q0`` (a feasible vector, normalized
    here if its sum drifts from 1) is given; multi-start runs use that hook.
    Non-convergence is reported through ``converged=False`` rather than an
    exception so callers can inspect the diagnostics.
    """
    config = config or SolverConfig()
    p = _check_dist(complex, P)
    m = complex.m
    if q0 is None:
        q = np.full(m, 1.0 / m)
    else:
        q = np.array(q0, dtype=float)
        if q.shape != (m,):
            raise ValueError(f"q0 must have {m} entries")
        if np.any(q < 0) or not np.all(np.isfinite(q)):
            raise ValueError("q0 must be non-negative and finite")
        total = float(q.sum())
        if total <= 0:
            raise ValueError("q0 must have positive total weight")
        if abs(total - 1.0) > 1e-12:
            q = q / total
    face_ptr, face_vert, vert_ptr, vert_simpl = complex.incidence_arrays()
    start_cov = np.add.reduceat(q[vert_simpl], vert_ptr[:-1])
    if np.any(start_cov[p > 0] <= 0):
        raise ValueError("q0 gives zero coverage to a positive-probability vertex")

    iterations, residual, f_nats, converged, coverage, trace = _kernel.run_fixed_point(
        p, face_ptr, face_vert, vert_ptr, vert_simpl, q,
        config.max_iterations, config.kkt_tolerance, config.damping,
        record_objectives)

    entropy_bits = max(0.0, -f_nats / math.log(2)) if math.isfinite(f_nats) else math.inf
    vbits = vertex_entropy(P)
    ratio, degenerate = normalized_entropy(min(entropy_bits, vbits), vbits)
    coverage = np.asarray(coverage)
    coverage.flags.writeable = False
    return EntropySolution(
        q=SimplexWeights(q),
        coverage=coverage,
        entropy_bits=entropy_bits,
        normalized_entropy=ratio,
        iterations=iterations,
        kkt_residual=residual,
        degenerate=degenerate,
        converged=converged,
        objective_trace=trace,
    )
