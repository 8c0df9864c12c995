"""Dense linear programming via the two-phase simplex method.

Variables are non-negative.  Pivoting follows Bland's rule (lowest eligible
index enters, ratio ties resolved by lowest basis index), which rules out
cycling and keeps runs deterministic.  Problem sizes here are small, so a
dense tableau is simpler and fast enough.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

__all__ = ["LPResult", "LPInfeasibleError", "LPUnboundedError", "lp_solve"]

_PIVOT_TOL = 1e-10
_COST_TOL = 1e-10


class LPInfeasibleError(RuntimeError):
    """No point satisfies the constraints."""


class LPUnboundedError(RuntimeError):
    """The objective is unbounded over the feasible region."""


@dataclass(frozen=True)
class LPResult:
    x: np.ndarray
    value: float


def _bland(tableau: np.ndarray, basis: np.ndarray, n_cols: int) -> None:
    """Run simplex pivots in place until the cost row has no negative entry.

    ``tableau`` has shape (rows + 1, n_cols + 1); the last row is the cost
    row of a minimization and the last column the right-hand side.
    """
    rows = tableau.shape[0] - 1
    while True:
        cost = tableau[-1, :n_cols]
        entering = -1
        for j in range(n_cols):
            if cost[j] < -_COST_TOL:
                entering = j
                break
        if entering < 0:
            return
        col = tableau[:rows, entering]
        best_ratio = np.inf
        leaving = -1
        for r in range(rows):
            if col[r] > _PIVOT_TOL:
                ratio = tableau[r, -1] / col[r]
                if (ratio < best_ratio - _PIVOT_TOL
                        or (abs(ratio - best_ratio) <= _PIVOT_TOL
                            and (leaving < 0 or basis[r] < basis[leaving]))):
                    best_ratio = ratio
                    leaving = r
        if leaving < 0:
            raise LPUnboundedError("objective unbounded along a feasible ray")
        pivot = tableau[leaving, entering]
        tableau[leaving, :] /= pivot
        for r in range(rows + 1):
            if r != leaving and tableau[r, entering] != 0.0:
                tableau[r, :] -= tableau[r, entering] * tableau[leaving, :]
        basis[leaving] = entering


def lp_solve(c, equalities=None, inequalities=None, *, maximize: bool = False) -> LPResult:
    """Optimize ``c @ x`` subject to ``A_eq x = b_eq``, ``A_ub x <= b_ub``, ``x >= 0``.

    ``equalities`` and ``inequalities`` are ``(A, b)`` pairs or None.  Raises
    :class:`LPInfeasibleError` / :class:`LPUnboundedError`; otherwise the
    optimum is exact up to pivot tolerance (~1e-9 for well-scaled inputs).
    """
    c = np.atleast_1d(np.asarray(c, dtype=float))
    n = c.size
    a_eq, b_eq = _normalize_pair(equalities, n)
    a_ub, b_ub = _normalize_pair(inequalities, n)
    n_ub = b_ub.size
    n_eq = b_eq.size
    rows = n_ub + n_eq
    if rows == 0:
        # Only the x >= 0 bounds: optimum is at 0 unless improving a coordinate.
        improving = c > 0 if maximize else c < 0
        if np.any(improving):
            raise LPUnboundedError("objective unbounded along a coordinate axis")
        return LPResult(x=np.zeros(n), value=0.0)

    # Columns: x (n) | slacks (n_ub) | artificials (added as needed).
    body = np.zeros((rows, n + n_ub))
    rhs = np.empty(rows)
    body[:n_ub, :n] = a_ub
    body[:n_ub, n:n + n_ub] = np.eye(n_ub)
    rhs[:n_ub] = b_ub
    body[n_ub:, :n] = a_eq
    rhs[n_ub:] = b_eq
    for r in range(rows):
        if rhs[r] < 0:
            body[r, :] *= -1.0
            rhs[r] *= -1.0

    # Slack can start basic only on a <= row that kept its +1 slack.
    basis = np.full(rows, -1, dtype=int)
    art_cols = []
    for r in range(rows):
        if r < n_ub and body[r, n + r] == 1.0:
            basis[r] = n + r
        else:
            art_cols.append(r)
    n_art = len(art_cols)
    width = n + n_ub + n_art
    tableau = np.zeros((rows + 1, width + 1))
    tableau[:rows, :n + n_ub] = body
    tableau[:rows, -1] = rhs
    for k, r in enumerate(art_cols):
        tableau[r, n + n_ub + k] = 1.0
        basis[r] = n + n_ub + k

    if n_art:
        # Phase 1: minimize the artificial total.
        tableau[-1, :] = 0.0
        tableau[-1, n + n_ub:width] = 1.0
        for r in range(rows):
            if basis[r] >= n + n_ub:
                tableau[-1, :] -= tableau[r, :]
        _bland(tableau, basis, width)
        if tableau[-1, -1] < -1e-8:
            raise LPInfeasibleError("constraints admit no feasible point")
        # Pivot lingering artificials out of the basis; drop redundant rows.
        keep = []
        for r in range(rows):
            if basis[r] >= n + n_ub:
                pivot_col = -1
                for j in range(n + n_ub):
                    if abs(tableau[r, j]) > _PIVOT_TOL:
                        pivot_col = j
                        break
                if pivot_col < 0:
                    continue  # all-zero row: redundant constraint
                piv = tableau[r, pivot_col]
                tableau[r, :] /= piv
                for rr in range(rows + 1):
                    if rr != r and tableau[rr, pivot_col] != 0.0:
                        tableau[rr, :] -= tableau[rr, pivot_col] * tableau[r, :]
                basis[r] = pivot_col
            keep.append(r)
        if len(keep) != rows:
            tableau = np.vstack([tableau[keep, :], tableau[-1:, :]])
            basis = basis[keep]
            rows = len(keep)
        tableau = np.hstack([tableau[:, :n + n_ub], tableau[:, -1:]])

    width = n + n_ub
    obj = -c if maximize else c
    tableau[-1, :] = 0.0
    tableau[-1, :n] = obj
    for r in range(rows):
        if tableau[-1, basis[r]] != 0.0:
            tableau[-1, :] -= tableau[-1, basis[r]] * tableau[r, :]
    _bland(tableau, basis, width)

    x = np.zeros(width)
    for r in range(rows):
        x[basis[r]] = tableau[r, -1]
    x = np.clip(x[:n], 0.0, None)
    return LPResult(x=x, value=float(c @ x))


def _normalize_pair(pair, n: int) -> tuple[np.ndarray, np.ndarray]:
    if pair is None:
        return np.zeros((0, n)), np.zeros(0)
    a, b = pair
    a = np.atleast_2d(np.asarray(a, dtype=float))
    b = np.atleast_1d(np.asarray(b, dtype=float))
    if a.shape != (b.size, n):
        raise ValueError(f"constraint matrix shape {a.shape} does not match "
                         f"{b.size} bounds over {n} variables")
    return a, b
