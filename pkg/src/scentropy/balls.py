"""Minimum enclosing balls in 2 and 3 dimensions.

:func:`min_enclosing_ball` runs a deterministic Welzl recursion (points in
input order, no shuffling, so repeated runs agree bit for bit).  The
boundary base case enumerates candidate support subsets of size <= d + 1,
which also covers degenerate configurations (collinear triples, coplanar
quadruples) without special cases.  The recursion works on plain floats:
the complex constructions query it on many small subsets, where numpy call
overhead would dominate.

The ``*_meb_radii`` helpers vectorize the size-2/3/4 subset radii needed to
enumerate the critical scales of a ball-based complex construction.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from math import sqrt

import numpy as np

__all__ = ["Ball", "min_enclosing_ball", "pair_meb_radii", "triple_meb_radii",
           "quad_meb_radii"]

_EPS = 1e-12

_SUPPORT_SUBSETS = {
    size: [list(c) for k in range(1, size + 1) for c in combinations(range(size), k)]
    for size in range(1, 5)
}


def _dist(a, b) -> float:
    if len(a) == 2:
        return sqrt((a[0] - b[0]) ** 2 + (a[1] - b[1]) ** 2)
    return sqrt((a[0] - b[0]) ** 2 + (a[1] - b[1]) ** 2 + (a[2] - b[2]) ** 2)


def _circum_pair(a, b):
    if len(a) == 2:
        center = ((a[0] + b[0]) / 2.0, (a[1] + b[1]) / 2.0)
    else:
        center = ((a[0] + b[0]) / 2.0, (a[1] + b[1]) / 2.0, (a[2] + b[2]) / 2.0)
    return center, 0.5 * _dist(a, b)


def _circum_triple_2d(a, b, c):
    d = 2.0 * (a[0] * (b[1] - c[1]) + b[0] * (c[1] - a[1]) + c[0] * (a[1] - b[1]))
    if abs(d) < 1e-14 * max(1.0, abs(a[0]) + abs(a[1]) + abs(b[0]) + abs(b[1])):
        return None
    a2 = a[0] * a[0] + a[1] * a[1]
    b2 = b[0] * b[0] + b[1] * b[1]
    c2 = c[0] * c[0] + c[1] * c[1]
    ux = (a2 * (b[1] - c[1]) + b2 * (c[1] - a[1]) + c2 * (a[1] - b[1])) / d
    uy = (a2 * (c[0] - b[0]) + b2 * (a[0] - c[0]) + c2 * (b[0] - a[0])) / d
    center = (ux, uy)
    return center, _dist(center, a)


def _cross(u, v):
    return (u[1] * v[2] - u[2] * v[1],
            u[2] * v[0] - u[0] * v[2],
            u[0] * v[1] - u[1] * v[0])


def _circum_triple_3d(a, b, c):
    # center = a + ((|u|^2 v - |v|^2 u) x (u x v)) / (2 |u x v|^2)
    u = (b[0] - a[0], b[1] - a[1], b[2] - a[2])
    v = (c[0] - a[0], c[1] - a[1], c[2] - a[2])
    w = _cross(u, v)
    w2 = w[0] * w[0] + w[1] * w[1] + w[2] * w[2]
    if w2 < 1e-28:
        return None
    u2 = u[0] * u[0] + u[1] * u[1] + u[2] * u[2]
    v2 = v[0] * v[0] + v[1] * v[1] + v[2] * v[2]
    t = (u2 * v[0] - v2 * u[0], u2 * v[1] - v2 * u[1], u2 * v[2] - v2 * u[2])
    s = _cross(t, w)
    center = (a[0] + s[0] / (2.0 * w2), a[1] + s[1] / (2.0 * w2), a[2] + s[2] / (2.0 * w2))
    return center, _dist(center, a)


def _circum_quad_3d(a, b, c, d):
    # Solve 2 (p_k - a) . x = |p_k - a|^2 by Cramer's rule; x is center - a.
    rows = []
    rhs = []
    for p in (b, c, d):
        e = (p[0] - a[0], p[1] - a[1], p[2] - a[2])
        rows.append(e)
        rhs.append(0.5 * (e[0] * e[0] + e[1] * e[1] + e[2] * e[2]))
    (m00, m01, m02), (m10, m11, m12), (m20, m21, m22) = rows
    det = (m00 * (m11 * m22 - m12 * m21)
           - m01 * (m10 * m22 - m12 * m20)
           + m02 * (m10 * m21 - m11 * m20))
    if abs(det) < 1e-14:
        return None
    r0, r1, r2 = rhs
    x = (r0 * (m11 * m22 - m12 * m21)
         - m01 * (r1 * m22 - m12 * r2)
         + m02 * (r1 * m21 - m11 * r2)) / det
    y = (m00 * (r1 * m22 - m12 * r2)
         - r0 * (m10 * m22 - m12 * m20)
         + m02 * (m10 * r2 - r1 * m20)) / det
    z = (m00 * (m11 * r2 - r1 * m21)
         - m01 * (m10 * r2 - r1 * m20)
         + r0 * (m10 * m21 - m11 * m20)) / det
    center = (a[0] + x, a[1] + y, a[2] + z)
    return center, _dist(center, a)


def _ball_of_boundary(pts, idx, tol):
    """Exact minimum enclosing ball of at most d + 1 points.

    The minimum ball is realized by some support subset (a pair's midpoint
    ball or the circumball of an affinely independent subset), so trying
    every subset and keeping the smallest feasible candidate is exact.
    Returns (center, radius, support_indices).
    """
    if len(idx) == 1:
        return pts[idx[0]], 0.0, (idx[0],)
    sub = [pts[i] for i in idx]
    dim = len(sub[0])
    best = None
    for sel in _SUPPORT_SUBSETS[len(idx)]:
        k = len(sel)
        if k == 1:
            center, radius = sub[sel[0]], 0.0
        elif k == 2:
            center, radius = _circum_pair(sub[sel[0]], sub[sel[1]])
        elif k == 3:
            fn = _circum_triple_2d if dim == 2 else _circum_triple_3d
            res = fn(sub[sel[0]], sub[sel[1]], sub[sel[2]])
            if res is None:
                continue
            center, radius = res
        else:  # k == 4 can only arise in 3-d
            res = _circum_quad_3d(sub[sel[0]], sub[sel[1]], sub[sel[2]], sub[sel[3]])
            if res is None:
                continue
            center, radius = res
        limit = radius + tol
        if all(_dist(p, center) <= limit for p in sub):
            if best is None or radius < best[1] - tol:
                best = (center, radius, tuple(idx[i] for i in sel))
    if best is None:
        raise RuntimeError("no enclosing ball found (numerically degenerate input)")
    return best


def meb_of_tuples(pts: list[tuple], tol: float = _EPS):
    """Welzl recursion over plain float tuples.

    Returns (center, radius, support) with support indices into ``pts``.
    """
    dim = len(pts[0])
    max_boundary = dim + 1

    def welzl(limit, boundary):
        if limit == 0 or len(boundary) == max_boundary:
            if not boundary:
                return None  # ball containing nothing
            return _ball_of_boundary(pts, boundary, tol)
        ball = welzl(limit - 1, boundary)
        point = pts[limit - 1]
        if ball is not None and _dist(point, ball[0]) <= ball[1] + tol:
            return ball
        return welzl(limit - 1, boundary + (limit - 1,))

    return welzl(len(pts), ())


@dataclass(frozen=True)
class Ball:
    """Center, radius, and the indices of the boundary support points."""

    center: np.ndarray
    radius: float
    support: tuple[int, ...]

    def contains(self, point, tol: float = 1e-9) -> bool:
        return float(np.linalg.norm(np.asarray(point, float) - self.center)) \
            <= self.radius + tol


def min_enclosing_ball(points) -> Ball:
    """Smallest ball containing all points; exact up to ~1e-9.

    Accepts a (k, d) array with d in {2, 3}.  The returned support indices
    refer to rows of the input.
    """
    pts = np.asarray(points, dtype=float)
    if pts.ndim != 2 or pts.shape[0] < 1:
        raise ValueError("need a nonempty (k, d) array of points")
    if pts.shape[1] not in (2, 3):
        raise ValueError(f"ambient dimension must be 2 or 3, got {pts.shape[1]}")
    if not np.all(np.isfinite(pts)):
        raise ValueError("coordinates must be finite")
    scale = max(1.0, float(np.abs(pts).max()))
    center, radius, support = meb_of_tuples(
        [tuple(row) for row in pts.tolist()], tol=_EPS * scale)
    return Ball(center=np.array(center), radius=max(0.0, radius), support=support)


# -- vectorized support-subset balls ------------------------------------------
#
# Every subset's minimum enclosing ball is supported by at most d + 1 points,
# so the balls of all size <= d + 1 subsets carry both the critical radii of
# a ball-based complex construction and the candidate centers that realize
# its maximal simplices.  Subsets whose ball is supported by a proper subset
# (obtuse triples, quadruples with an outside circumcenter) are skipped: the
# same center and radius appear for the smaller subset already.


def _triple_circumballs(points: np.ndarray, triples: np.ndarray):
    """Centers and radii of the acute triples' circumballs.

    The circumcenter sits in the triangle plane at ``a + s*u + t*v`` with
    barycentric-style coefficients from the side lengths; right and obtuse
    triangles are dropped (their ball is a pair ball).
    """
    a = points[triples[:, 0]]
    b = points[triples[:, 1]]
    c = points[triples[:, 2]]
    u = b - a
    v = c - a
    uu = np.einsum("ij,ij->i", u, u)
    vv = np.einsum("ij,ij->i", v, v)
    uv = np.einsum("ij,ij->i", u, v)
    det = uu * vv - uv * uv  # squared doubled-area
    # strictly acute at a: u.v > 0; at b: (a-b).(c-b) = uu - uv > 0; at c: vv - uv > 0
    acute = (uv > 0) & (uv < vv) & (uv < uu) & (det > 1e-30)
    if not np.any(acute):
        return np.empty((0, points.shape[1])), np.empty(0)
    u, v, uu, vv, uv, det = (arr[acute] for arr in (u, v, uu, vv, uv, det))
    s = 0.5 * vv * (uu - uv) / det
    t = 0.5 * uu * (vv - uv) / det
    centers = a[acute] + s[:, None] * u + t[:, None] * v
    radii = np.linalg.norm(centers - a[acute], axis=1)
    return centers, radii


def _quad_circumballs(points: np.ndarray, quads: np.ndarray):
    """Centers and radii of 3-d quadruples whose circumcenter lies inside
    their convex hull (the quadruples supporting their own ball)."""
    v0 = points[quads[:, 0]]
    e = points[quads[:, 1:]] - v0[:, None, :]  # (t, 3, 3) rows e1, e2, e3
    rhs = 0.5 * np.einsum("tij,tij->ti", e, e)
    det = np.linalg.det(e)
    ok = np.abs(det) > 1e-12
    if not np.any(ok):
        return np.empty((0, 3)), np.empty(0)
    e = e[ok]
    offsets = np.linalg.solve(e, rhs[ok][..., None])[..., 0]
    lam = np.linalg.solve(np.swapaxes(e, 1, 2), offsets[..., None])[..., 0]
    lam0 = 1.0 - lam.sum(axis=1)
    inside = np.all(lam >= -1e-12, axis=1) & (lam0 >= -1e-12)
    centers = v0[ok][inside] + offsets[inside]
    radii = np.linalg.norm(offsets[inside], axis=1)
    return centers, radii


def _index_combinations(n: int, k: int) -> np.ndarray:
    from itertools import chain, combinations as icombinations
    count = 1
    for i in range(k):
        count = count * (n - i) // (i + 1)
    flat = np.fromiter(chain.from_iterable(icombinations(range(n), k)),
                       dtype=np.intp, count=count * k)
    return flat.reshape(count, k)


def subset_ball_candidates(points: np.ndarray):
    """Minimum-enclosing-ball (centers, radii) over all subsets of size
    <= d + 1, reduced to the subsets that support their own ball."""
    pts = np.asarray(points, dtype=float)
    n, d = pts.shape
    centers = [pts]
    radii = [np.zeros(n)]
    if n >= 2:
        pairs = _index_combinations(n, 2)
        mids = 0.5 * (pts[pairs[:, 0]] + pts[pairs[:, 1]])
        centers.append(mids)
        radii.append(np.linalg.norm(pts[pairs[:, 0]] - mids, axis=1))
    if n >= 3:
        triples = _index_combinations(n, 3)
        for chunk in np.array_split(triples, max(1, len(triples) // 200_000)):
            c, r = _triple_circumballs(pts, chunk)
            centers.append(c)
            radii.append(r)
    if d == 3 and n >= 4:
        quads = _index_combinations(n, 4)
        for chunk in np.array_split(quads, max(1, len(quads) // 200_000)):
            c, r = _quad_circumballs(pts, chunk)
            centers.append(c)
            radii.append(r)
    return np.concatenate(centers), np.concatenate(radii)
