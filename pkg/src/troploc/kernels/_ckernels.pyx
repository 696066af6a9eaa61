# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled brute-force kernels for the verification oracle.

Bottom is passed in as ``-inf``; every routine here is plain conventional
arithmetic on doubles.
"""

from libc.math cimport INFINITY, fabs
import numpy as np


cdef inline double _objective_at(double x1, double x2,
                                 const double[:] r1, const double[:] r2,
                                 const double[:] w) noexcept nogil:
    cdef Py_ssize_t j
    cdef double best = -INFINITY, v
    for j in range(r1.shape[0]):
        v = fabs(x1 - r1[j]) + fabs(x2 - r2[j]) + w[j]
        if v > best:
            best = v
    return best


cdef inline bint _feasible(double x1, double x2,
                           const double[:] r1, const double[:] r2, const double[:] d,
                           bint use_bounds, bint use_strip, double s, double t,
                           double eps) noexcept nogil:
    cdef Py_ssize_t j
    if use_strip and (x1 < s - eps or x1 > t + eps):
        return False
    if use_bounds:
        for j in range(r1.shape[0]):
            if fabs(x1 - r1[j]) + fabs(x2 - r2[j]) > d[j] + eps:
                return False
    return True


def grid_scan(const double[:] xs1, const double[:] xs2,
              const double[:] r1, const double[:] r2, const double[:] w, const double[:] d,
              bint use_bounds, bint use_strip, double s, double t, double eps):
    """Minimum of the objective over feasible grid points.

    Returns ``(best, i, j, n_feasible)``; ties keep the lexicographically
    smallest ``(xs1[i], xs2[j])``.  ``i = j = -1`` when nothing is feasible.
    """
    cdef Py_ssize_t i, k, bi = -1, bj = -1
    cdef long long count = 0
    cdef double best = INFINITY, v
    with nogil:
        for i in range(xs1.shape[0]):
            for k in range(xs2.shape[0]):
                if not _feasible(xs1[i], xs2[k], r1, r2, d, use_bounds, use_strip, s, t, eps):
                    continue
                count += 1
                v = _objective_at(xs1[i], xs2[k], r1, r2, w)
                if v < best:
                    best = v
                    bi = i
                    bj = k
    return best, bi, bj, count


def grid_collect(const double[:] xs1, const double[:] xs2,
                 const double[:] r1, const double[:] r2, const double[:] w, const double[:] d,
                 bint use_bounds, bint use_strip, double s, double t, double eps,
                 double threshold, Py_ssize_t limit):
    """Indices of feasible grid points with objective <= threshold, in scan order."""
    out = np.empty((limit, 2), dtype=np.intp)
    cdef Py_ssize_t[:, :] view = out
    cdef Py_ssize_t i, k, n = 0
    cdef double v
    with nogil:
        for i in range(xs1.shape[0]):
            if n >= limit:
                break
            for k in range(xs2.shape[0]):
                if not _feasible(xs1[i], xs2[k], r1, r2, d, use_bounds, use_strip, s, t, eps):
                    continue
                v = _objective_at(xs1[i], xs2[k], r1, r2, w)
                if v <= threshold:
                    view[n, 0] = i
                    view[n, 1] = k
                    n += 1
                    if n >= limit:
                        break
    return out[:n]


def ubox_scan(const double[:, :] bstar, const double[:, :] b,
              const double[:] p, const double[:] q, const double[:] g, const double[:] h,
              const double[:] ulo, const double[:] uhi, double theta, Py_ssize_t samples):
    """Sweep a lattice over the u-box, map ``x = B* u`` and measure.

    Returns ``(max |objective(x) - theta|, max constraint violation)``.
    """
    cdef Py_ssize_t n = p.shape[0]
    cdef Py_ssize_t i, k, pos
    cdef double dev = 0.0, viol = 0.0, obj, v, acc, a
    cdef double denom = samples - 1 if samples > 1 else 1.0
    idx_arr = np.zeros(n, dtype=np.intp)
    u_arr = np.empty(n)
    x_arr = np.empty(n)
    cdef Py_ssize_t[:] idx = idx_arr
    cdef double[:] u = u_arr
    cdef double[:] x = x_arr
    with nogil:
        while True:
            for i in range(n):
                a = idx[i] / denom if samples > 1 else 0.0
                u[i] = ulo[i] + a * (uhi[i] - ulo[i])
            for i in range(n):
                acc = -INFINITY
                for k in range(n):
                    if bstar[i, k] == -INFINITY:
                        continue
                    v = bstar[i, k] + u[k]
                    if v > acc:
                        acc = v
                x[i] = acc
            obj = -INFINITY
            for i in range(n):
                if p[i] != -INFINITY and p[i] - x[i] > obj:
                    obj = p[i] - x[i]
                if x[i] - q[i] > obj:
                    obj = x[i] - q[i]
            if fabs(obj - theta) > dev:
                dev = fabs(obj - theta)
            for i in range(n):
                acc = -INFINITY
                for k in range(n):
                    if b[i, k] == -INFINITY:
                        continue
                    v = b[i, k] + x[k]
                    if v > acc:
                        acc = v
                if acc - x[i] > viol:
                    viol = acc - x[i]
                if g[i] - x[i] > viol:
                    viol = g[i] - x[i]
                if x[i] - h[i] > viol:
                    viol = x[i] - h[i]
            # odometer step over the lattice
            pos = 0
            while pos < n:
                idx[pos] += 1
                if idx[pos] < samples:
                    break
                idx[pos] = 0
                pos += 1
            if pos == n:
                break
    return dev, viol
