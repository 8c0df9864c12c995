"""Decoding gains when vertices inside a common simplex are indistinguishable.

An encoder observes a vertex drawn from ``P`` and emits one of the maximal
simplices containing it.  Two strategies are modeled:

* randomized: the encoder emits simplex ``i`` with probability
  ``q_i / S_j(q)``; the decoder answers the most probable vertex of the
  emitted simplex.  The success probability has the closed form
  ``sum_i q_i * max_{j in i} p_j / sum_{j in i} p_j``.
* adversarial: the decoder publishes a randomized guessing table ``r_ij``
  and the encoder then picks, per vertex, the simplex minimizing the
  decoder's success.  The decoder's optimal table solves a linear program.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .complexes import SimplicialComplex, VertexDistribution
from .lp import lp_solve

__all__ = ["RandomizedGain", "AdversarialSolution", "randomized_gain", "adversarial_gain"]


@dataclass(frozen=True)
class RandomizedGain:
    gain: float
    one_minus_gain: float


@dataclass(frozen=True)
class AdversarialSolution:
    """Optimal decoder strategy against a worst-case encoder.

    ``r[i]`` aligns with ``complex.maximal_simplices[i]`` and sums to 1;
    ``guarantees[j]`` is the success probability secured for vertex ``j``
    regardless of which of its simplices the encoder emits.
    """

    r: tuple[np.ndarray, ...]
    guarantees: np.ndarray
    gain: float


def _check_inputs(complex: SimplicialComplex, P: VertexDistribution) -> np.ndarray:
    if P.n != complex.n:
        raise ValueError(f"distribution over {P.n} vertices does not match "
                         f"complex with n={complex.n}")
    return P.p


def randomized_gain(complex: SimplicialComplex, P: VertexDistribution, q) -> RandomizedGain:
    """Success probability of the best-guess decoder under encoder weights ``q``.

    Simplices with zero weight, or whose vertices carry no probability mass,
    contribute nothing.
    """
    p = _check_inputs(complex, P)
    arr = np.asarray(q, dtype=float)
    if arr.shape != (complex.m,):
        raise ValueError(f"expected {complex.m} weights, got shape {arr.shape}")
    if np.any(arr < -1e-12) or abs(float(arr.sum()) - 1.0) > 1e-9:
        raise ValueError("q is not a distribution over the maximal simplices")
    gain = 0.0
    for i, simplex in enumerate(complex.maximal_simplices):
        if arr[i] <= 0.0:
            continue
        mass = float(p[list(simplex)].sum())
        if mass > 0.0:
            gain += arr[i] * float(p[list(simplex)].max()) / mass
    gain = min(1.0, max(0.0, gain))
    return RandomizedGain(gain=gain, one_minus_gain=1.0 - gain)


def adversarial_gain(complex: SimplicialComplex, P: VertexDistribution) -> AdversarialSolution:
    """Value and witness of the decoder's linear program.

    Maximizes ``sum_j p_j r_j`` subject to ``r_ij >= r_j`` for every simplex
    ``i`` containing ``j``, with each row ``r_i*`` a probability vector.
    """
    p = _check_inputs(complex, P)
    n, m = complex.n, complex.m
    # Variable layout: the r_ij in simplex-major order, then the n guarantees.
    offsets = np.zeros(m + 1, dtype=int)
    for i, simplex in enumerate(complex.maximal_simplices):
        offsets[i + 1] = offsets[i] + len(simplex)
    n_pairs = int(offsets[-1])
    n_vars = n_pairs + n

    c = np.zeros(n_vars)
    c[n_pairs:] = p

    a_eq = np.zeros((m, n_vars))
    for i in range(m):
        a_eq[i, offsets[i]:offsets[i + 1]] = 1.0
    b_eq = np.ones(m)

    a_ub = np.zeros((n_pairs, n_vars))
    for i, simplex in enumerate(complex.maximal_simplices):
        for k, j in enumerate(simplex):
            a_ub[offsets[i] + k, n_pairs + j] = 1.0
            a_ub[offsets[i] + k, offsets[i] + k] = -1.0
    b_ub = np.zeros(n_pairs)

    result = lp_solve(c, equalities=(a_eq, b_eq), inequalities=(a_ub, b_ub),
                      maximize=True)
    x = result.x
    tables = []
    for i in range(m):
        row = x[offsets[i]:offsets[i + 1]].copy()
        row.flags.writeable = False
        tables.append(row)
    guarantees = x[n_pairs:].copy()
    guarantees.flags.writeable = False

    _validate_adversarial(complex, tables, guarantees)
    return AdversarialSolution(r=tuple(tables), guarantees=guarantees,
                               gain=float(p @ guarantees))


def _validate_adversarial(complex, tables, guarantees, tol=1e-9):
    for i, simplex in enumerate(complex.maximal_simplices):
        row = tables[i]
        if abs(float(row.sum()) - 1.0) > tol or np.any(row < -tol):
            raise RuntimeError(f"LP returned an invalid decoder row for simplex {i}")
        for k, j in enumerate(simplex):
            if guarantees[j] > row[k] + tol:
                raise RuntimeError(
                    f"LP guarantee for vertex {j} exceeds its row entry in simplex {i}")
