# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled inner loop of the entropy fixed point.

Mirrors ``scentropy._core_py.run_fixed_point``; the hot path (coverage sums,
gradient, residual, multiplicative update) runs without the GIL so sweeps can
evaluate several scale values on worker threads.
"""

from libc.math cimport fabs, log

import numpy as np

ACTIVE_EPS = 1e-12

cdef double _ACTIVE_EPS = 1e-12
cdef double _NEG_INF = float("-inf")
cdef double _POS_INF = float("inf")


cdef double _evaluate(const double[::1] p, const int[::1] vert_ptr,
                      const int[::1] vert_simpl, const double[::1] w,
                      double[::1] s) noexcept nogil:
    """Fill coverage sums ``s`` for weights ``w``; return the objective in nats.

    Returns -inf when some positive-probability vertex has zero coverage.
    """
    cdef Py_ssize_t n = p.shape[0]
    cdef Py_ssize_t j, k
    cdef double acc, f = 0.0
    for j in range(n):
        acc = 0.0
        for k in range(vert_ptr[j], vert_ptr[j + 1]):
            acc += w[vert_simpl[k]]
        s[j] = acc
        if p[j] > 0.0:
            if acc <= 0.0:
                return _NEG_INF
            f += p[j] * log(acc)
    return f


cdef double _gradient_residual(const double[::1] p, const int[::1] face_ptr,
                               const int[::1] face_vert, const double[::1] q,
                               const double[::1] s, double[::1] g) noexcept nogil:
    """Fill the gradient ``g``; return the complementarity residual at ``q``."""
    cdef Py_ssize_t m = q.shape[0]
    cdef Py_ssize_t i, k, j
    cdef double acc, dev, residual = 0.0, qsum = 0.0
    for i in range(m):
        acc = 0.0
        for k in range(face_ptr[i], face_ptr[i + 1]):
            j = face_vert[k]
            if p[j] > 0.0:
                acc += p[j] / s[j]
        g[i] = acc
        dev = acc - 1.0
        if q[i] > _ACTIVE_EPS:
            if fabs(dev) > residual:
                residual = fabs(dev)
        elif dev > residual:
            residual = dev
        qsum += q[i]
        if q[i] < 0.0 and -q[i] > residual:
            residual = -q[i]
    if fabs(qsum - 1.0) > residual:
        residual = fabs(qsum - 1.0)
    return residual


def run_fixed_point(const double[::1] p, const int[::1] face_ptr,
                    const int[::1] face_vert, const int[::1] vert_ptr,
                    const int[::1] vert_simpl, double[::1] q,
                    long max_iterations, double tolerance, double damping,
                    bint record_trace):
    """Same contract as the pure Python fallback; ``q`` is updated in place."""
    cdef Py_ssize_t n = p.shape[0]
    cdef Py_ssize_t m = q.shape[0]
    s_arr = np.empty(n)
    g_arr = np.empty(m)
    cand_arr = np.empty(m)
    trace_arr = np.empty(max_iterations + 1) if record_trace else np.empty(0)
    cdef double[::1] s = s_arr
    cdef double[::1] g = g_arr
    cdef double[::1] cand = cand_arr
    cdef double[::1] trace = trace_arr
    cdef long iterations = 0
    cdef Py_ssize_t i
    cdef double f, f_try, residual, total
    cdef bint converged = 0

    with nogil:
        f = _evaluate(p, vert_ptr, vert_simpl, q, s)
        if f == _NEG_INF:
            residual = _POS_INF
        else:
            residual = _gradient_residual(p, face_ptr, face_vert, q, s, g)
            if record_trace:
                trace[0] = f
            while residual > tolerance and iterations < max_iterations:
                total = 0.0
                for i in range(m):
                    cand[i] = q[i] * g[i]
                    total += cand[i]
                for i in range(m):
                    cand[i] /= total
                if damping < 1.0:
                    f_try = _evaluate(p, vert_ptr, vert_simpl, cand, s)
                    if f_try < f - 1e-15 * (1.0 + fabs(f)):
                        total = 0.0
                        for i in range(m):
                            cand[i] = (1.0 - damping) * q[i] + damping * q[i] * g[i]
                            total += cand[i]
                        for i in range(m):
                            cand[i] /= total
                for i in range(m):
                    q[i] = cand[i]
                iterations += 1
                f = _evaluate(p, vert_ptr, vert_simpl, q, s)
                if f == _NEG_INF:
                    residual = _POS_INF
                    break
                residual = _gradient_residual(p, face_ptr, face_vert, q, s, g)
                if record_trace:
                    trace[iterations] = f
            converged = residual <= tolerance

    trace_out = trace_arr[: iterations + 1].copy() if record_trace else None
    return int(iterations), float(residual), float(f), bool(converged), s_arr, trace_out
