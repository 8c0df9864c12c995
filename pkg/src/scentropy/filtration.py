"""Scale-indexed complexes on point clouds and the sweep driver.

Two constructions, both with closed thresholds so that a complex attains its
critical scale:

* Vietoris-Rips at scale eps: maximal simplices are the maximal cliques of
  the graph joining points at distance <= eps, enumerated by Bron-Kerbosch
  with pivoting.
* Ball-based (Cech) at scale eps: maximal simplices are the maximal point
  subsets whose minimum enclosing ball has radius <= eps, enumerated through
  the scale-independent candidate centers of :class:`BallCandidates`.

A sweep walks a schedule of eps values, solves the entropy program on each
complex and records the normalized entropy, the randomized decoding gain and
their difference.
"""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

from .balls import subset_ball_candidates
from .complexes import SimplicialComplex, VertexDistribution, build_complex, \
    uniform_distribution, vertex_entropy
from .decoding import randomized_gain
from .solver import SolverConfig, solve

__all__ = [
    "CONSTRUCTIONS",
    "AllCriticalSchedule",
    "BallCandidates",
    "UniformSchedule",
    "SweepRecord",
    "CapExceededError",
    "SweepEvaluationError",
    "vietoris_rips",
    "cech",
    "critical_radii",
    "sweep",
    "records_to_csv",
    "CSV_HEADER",
]

CONSTRUCTIONS = ("vr", "cech")

#: Slack on the closed membership threshold, well below the 1e-9 scale at
#: which radii are deduplicated, so a complex evaluated exactly at one of its
#: critical radii includes the newly formed simplices.
MEMBER_EPS = 1e-12

#: Tolerance for merging nearby critical radii.
DEDUPE_EPS = 1e-9

_DEFAULT_CAP_2D = 200
_DEFAULT_CAP_3D = 120


class CapExceededError(RuntimeError):
    """The cloud is too large for exhaustive critical-radius enumeration."""


class SweepEvaluationError(RuntimeError):
    """A solver failure during a sweep, annotated with its scale."""

    def __init__(self, epsilon: float, message: str):
        super().__init__(f"at epsilon={epsilon!r}: {message}")
        self.epsilon = epsilon


@dataclass(frozen=True)
class AllCriticalSchedule:
    """Evaluate every scale at which the complex can change."""


@dataclass(frozen=True)
class UniformSchedule:
    """``count`` evenly spaced scales over [lo, hi]."""

    count: int
    lo: float
    hi: float

    def __post_init__(self):
        if self.count < 1:
            raise ValueError("schedule needs at least one sample")
        if not self.lo < self.hi:
            raise ValueError("schedule bounds must satisfy lo < hi")
        if self.lo < 0:
            raise ValueError("scales are non-negative")


@dataclass(frozen=True)
class SweepRecord:
    epsilon: float
    m: int
    max_degree: int
    entropy_bits: float
    vertex_entropy_bits: float
    normalized_entropy: float
    gain: float
    one_minus_gain: float
    diff: float


def _bits(mask: int):
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def _max_cliques(n: int, neighbors: list[int]) -> list[int]:
    """Maximal cliques as bitmasks (Bron-Kerbosch with pivoting)."""
    out: list[int] = []

    def expand(r: int, p: int, x: int) -> None:
        if p == 0 and x == 0:
            out.append(r)
            return
        pivot, best = -1, -1
        for u in _bits(p | x):
            size = (p & neighbors[u]).bit_count()
            if size > best:
                best, pivot = size, u
        for v in _bits(p & ~neighbors[pivot]):
            bit = 1 << v
            expand(r | bit, p & neighbors[v], x & neighbors[v])
            p &= ~bit
            x |= bit

    expand(0, (1 << n) - 1, 0)
    return out


def vietoris_rips(cloud, epsilon: float) -> SimplicialComplex:
    """Maximal cliques of the distance <= eps graph; isolated points become
    singleton maximal simplices."""
    if epsilon < 0:
        raise ValueError("epsilon must be non-negative")
    dist = cloud.pairwise_distances()
    n = cloud.n
    neighbors = [0] * n
    thresh = epsilon + MEMBER_EPS
    for i in range(n):
        mask = 0
        row = dist[i]
        for j in range(n):
            if j != i and row[j] <= thresh:
                mask |= 1 << j
        neighbors[i] = mask
    masks = _max_cliques(n, neighbors)
    simplices = sorted(tuple(_bits(mask)) for mask in masks)
    return build_complex(n, simplices, mode="strict")


class BallCandidates:
    """Scale-independent candidate centers for the ball-based construction.

    Any maximal simplex S at scale eps equals the set of points within eps
    of the center of S's own minimum enclosing ball, and that center is the
    circumcenter of a support subset of size at most d + 1.  Enumerating
    the coverage masks of all such subset centers therefore yields every
    maximal simplex at every scale; build once per cloud and share across a
    sweep.  The subset ball radii double as the critical scales.
    """

    def __init__(self, points: np.ndarray):
        self.points = np.asarray(points, dtype=float)
        self.centers, self.radii = subset_ball_candidates(self.points)

    def critical_radii(self) -> np.ndarray:
        merged = np.sort(self.radii)
        keep = [float(merged[0])]
        for r in merged[1:]:
            if r - keep[-1] > DEDUPE_EPS:
                keep.append(float(r))
        return np.array(keep)

    def cover_masks(self, thresh: float) -> list[int]:
        """Distinct vertex bitmasks covered by a candidate ball of radius
        ``thresh``, nonempty ones only."""
        n = self.points.shape[0]
        rows = []
        chunk = max(1, 20_000_000 // max(1, n))
        for start in range(0, self.centers.shape[0], chunk):
            block = self.centers[start:start + chunk]
            diff = block[:, None, :] - self.points[None, :, :]
            covered = (diff * diff).sum(axis=2) <= thresh * thresh
            rows.append(np.packbits(covered, axis=1))
        packed = np.unique(np.concatenate(rows), axis=0)
        masks = []
        for row in packed:
            mask = int.from_bytes(row.tobytes(), "big")
            if mask:
                masks.append(mask)
        return masks


def _antichain_masks(masks: list[int]) -> list[int]:
    """Drop masks contained in another; input masks are distinct."""
    masks = sorted(masks, key=lambda m: m.bit_count(), reverse=True)
    kept: list[int] = []
    for mask in masks:
        if not any(mask & big == mask for big in kept):
            kept.append(mask)
    return kept


def cech(cloud, epsilon: float, *, candidates: BallCandidates | None = None) -> SimplicialComplex:
    """Maximal subsets whose minimum enclosing ball has radius <= eps."""
    if epsilon < 0:
        raise ValueError("epsilon must be non-negative")
    if candidates is None:
        candidates = BallCandidates(cloud.points)
    thresh = epsilon + MEMBER_EPS
    # packbits pads to whole bytes; bit k of the integer is vertex n-1-k
    width = ((cloud.n + 7) // 8) * 8
    simplices = []
    for mask in _antichain_masks(candidates.cover_masks(thresh)):
        simplices.append(tuple(width - 1 - b for b in reversed(list(_bits(mask)))))
    return build_complex(cloud.n, sorted(simplices), mode="strict")


def _check_cap(cloud, max_points_2d: int, max_points_3d: int) -> None:
    cap = max_points_2d if cloud.d == 2 else max_points_3d
    if cloud.n > cap:
        raise CapExceededError(
            f"all-critical enumeration is capped at {cap} points in {cloud.d}-d "
            f"(cloud has {cloud.n}); use a uniform schedule instead")


def critical_radii(cloud, construction: str, *, max_points_2d: int = _DEFAULT_CAP_2D,
                   max_points_3d: int = _DEFAULT_CAP_3D) -> np.ndarray:
    """Sorted scales at which the construction can change, starting at 0.

    Vietoris-Rips changes exactly at the pairwise distances.  The ball-based
    complex changes at the minimum-enclosing-ball radii of subsets of size at
    most d + 1 (the support of any subset's ball is that small).  Nearby
    values are merged within 1e-9.
    """
    if construction not in CONSTRUCTIONS:
        raise ValueError(f"construction must be one of {CONSTRUCTIONS}")
    _check_cap(cloud, max_points_2d, max_points_3d)
    if construction == "cech":
        return BallCandidates(cloud.points).critical_radii()
    dist = cloud.pairwise_distances()
    values = np.concatenate([np.zeros(1),
                             dist[np.triu_indices(cloud.n, k=1)]])
    merged = np.sort(values)
    keep = [float(merged[0])]
    for r in merged[1:]:
        if r - keep[-1] > DEDUPE_EPS:
            keep.append(float(r))
    return np.array(keep)


def sweep(cloud, construction: str, schedule, P: VertexDistribution | None = None,
          config: SolverConfig | None = None, *, accuracy_column: str = "gain",
          parallel: int | None = None,
          max_points_2d: int = _DEFAULT_CAP_2D,
          max_points_3d: int = _DEFAULT_CAP_3D) -> list[SweepRecord]:
    """Evaluate entropy and decoding gain along a schedule of scales.

    With an :class:`AllCriticalSchedule`, consecutive scales yielding the
    same complex are collapsed so each distinct complex is reported once.
    ``accuracy_column`` selects which gain column feeds the ``diff`` field.
    Evaluations are pure, so ``parallel`` workers change neither the records
    nor their order.
    """
    if construction not in CONSTRUCTIONS:
        raise ValueError(f"construction must be one of {CONSTRUCTIONS}")
    if accuracy_column not in ("gain", "one_minus_gain"):
        raise ValueError("accuracy_column must be 'gain' or 'one_minus_gain'")
    if P is None:
        P = uniform_distribution(cloud.n)
    elif P.n != cloud.n:
        raise ValueError(f"distribution over {P.n} vertices does not match "
                         f"cloud with n={cloud.n}")
    config = config or SolverConfig()

    candidates = BallCandidates(cloud.points) if construction == "cech" else None
    collapse = isinstance(schedule, AllCriticalSchedule)
    if collapse:
        _check_cap(cloud, max_points_2d, max_points_3d)
        if construction == "cech":
            eps_values = candidates.critical_radii()
        else:
            eps_values = critical_radii(cloud, construction,
                                        max_points_2d=max_points_2d,
                                        max_points_3d=max_points_3d)
    elif isinstance(schedule, UniformSchedule):
        eps_values = np.linspace(schedule.lo, schedule.hi, schedule.count)
    else:
        raise TypeError(f"unsupported schedule {schedule!r}")

    tasks: list[tuple[float, SimplicialComplex]] = []
    previous = None
    for eps in eps_values:
        eps = float(eps)
        cx = cech(cloud, eps, candidates=candidates) if construction == "cech" \
            else vietoris_rips(cloud, eps)
        if collapse and previous is not None \
                and cx.maximal_simplices == previous.maximal_simplices:
            continue
        tasks.append((eps, cx))
        previous = cx

    vbits = vertex_entropy(P)

    def evaluate(task: tuple[float, SimplicialComplex]) -> SweepRecord:
        eps, cx = task
        solution = solve(cx, P, config)
        if not solution.converged:
            raise SweepEvaluationError(
                eps, f"solver stopped after {solution.iterations} iterations "
                     f"with residual {solution.kkt_residual:.3g}")
        rg = randomized_gain(cx, P, solution.q.q)
        accuracy = rg.gain if accuracy_column == "gain" else rg.one_minus_gain
        return SweepRecord(
            epsilon=eps,
            m=cx.m,
            max_degree=cx.max_degree,
            entropy_bits=solution.entropy_bits,
            vertex_entropy_bits=vbits,
            normalized_entropy=solution.normalized_entropy,
            gain=rg.gain,
            one_minus_gain=rg.one_minus_gain,
            diff=solution.normalized_entropy - accuracy,
        )

    if parallel is not None and parallel > 1 and len(tasks) > 1:
        with ThreadPoolExecutor(max_workers=parallel) as pool:
            return list(pool.map(evaluate, tasks))
    return [evaluate(task) for task in tasks]


CSV_HEADER = ("epsilon,m,max_degree,entropy_bits,vertex_entropy_bits,"
              "normalized_entropy,gain,one_minus_gain,diff")


def records_to_csv(records: list[SweepRecord]) -> str:
    """Render records with 9 significant digits; stable across runs."""
    lines = [CSV_HEADER]
    for r in records:
        lines.append(
            f"{r.epsilon:.9g},{r.m},{r.max_degree},{r.entropy_bits:.9g},"
            f"{r.vertex_entropy_bits:.9g},{r.normalized_entropy:.9g},"
            f"{r.gain:.9g},{r.one_minus_gain:.9g},{r.diff:.9g}")
    return "\n".join(lines) + "\n"
