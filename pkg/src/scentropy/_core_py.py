"""Pure numpy fallback for the fixed-point kernel in ``scentropy._core``.

Same contract as the compiled extension; the solver picks whichever is
available at import time.  Kept dependency-free beyond numpy so the package
works without a C toolchain.
"""

from __future__ import annotations

import numpy as np

ACTIVE_EPS = 1e-12


def run_fixed_point(p, face_ptr, face_vert, vert_ptr, vert_simpl, q,
                    max_iterations, tolerance, damping, record_trace):
    """Iterate ``q <- q * g(q)`` on the weight simplex until the
    complementarity residual drops below ``tolerance``.

    ``q`` is updated in place.  Returns
    ``(iterations, residual, objective_nats, converged, coverage, trace)``
    where ``trace`` is the accepted objective sequence (or None).
    """
    n = p.size
    m = q.size
    face_starts = face_ptr[:-1]
    vert_starts = vert_ptr[:-1]
    pos = p > 0.0
    p_pos = p[pos]

    def coverage(w):
        return np.add.reduceat(w[vert_simpl], vert_starts)

    def objective(s):
        sp = s[pos]
        if np.any(sp <= 0.0):
            return -np.inf
        return float(p_pos @ np.log(sp))

    def gradient(s):
        ratio = np.zeros(n)
        np.divide(p, s, out=ratio, where=pos)
        return np.add.reduceat(ratio[face_vert], face_starts)

    def residual_of(w, g):
        dev = g - 1.0
        active = w > ACTIVE_EPS
        r = abs(float(w.sum()) - 1.0)
        neg = float(w.min())
        if neg < 0.0:
            r = max(r, -neg)
        if np.any(active):
            r = max(r, float(np.abs(dev[active]).max()))
        if not np.all(active):
            r = max(r, max(0.0, float(dev[~active].max())))
        return r

    trace = [] if record_trace else None
    s = coverage(q)
    f = objective(s)
    if not np.isfinite(f):
        return 0, np.inf, f, False, s, (np.array(trace) if record_trace else None)
    g = gradient(s)
    residual = residual_of(q, g)
    if record_trace:
        trace.append(f)

    iterations = 0
    while residual > tolerance and iterations < max_iterations:
        step = q * g
        q_new = step / step.sum()
        if damping < 1.0:
            f_try = objective(coverage(q_new))
            if f_try < f - 1e-15 * (1.0 + abs(f)):
                q_new = (1.0 - damping) * q + damping * step
                q_new /= q_new.sum()
        q[:] = q_new
        iterations += 1
        s = coverage(q)
        f = objective(s)
        if not np.isfinite(f):
            residual = np.inf
            break
        g = gradient(s)
        residual = residual_of(q, g)
        if record_trace:
            trace.append(f)

    converged = bool(residual <= tolerance)
    trace_arr = np.array(trace) if record_trace else None
    return iterations, float(residual), f, converged, s, trace_arr
