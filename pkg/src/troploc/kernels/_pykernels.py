"""Numpy implementations of the oracle kernels.

Same signatures and results as the compiled module; used when the extension
is not built or when ``TROPLOC_PURE_PYTHON`` is set.
"""

import numpy as np

# rows of the grid processed per numpy batch
_CHUNK = 256


def _chunk_values(xs1, xs2, r1, r2, w, d, use_bounds, use_strip, s, t, eps, lo, hi):
    X1 = np.asarray(xs1[lo:hi])[:, None]
    X2 = np.asarray(xs2)[None, :]
    obj = np.full((X1.shape[0], X2.shape[1]), -np.inf)
    feasible = np.ones(obj.shape, dtype=bool)
    if use_strip:
        feasible &= (X1 >= s - eps) & (X1 <= t + eps)
    for j in range(len(r1)):
        dist = np.abs(X1 - r1[j]) + np.abs(X2 - r2[j])
        np.maximum(obj, dist + w[j], out=obj)
        if use_bounds:
            feasible &= dist <= d[j] + eps
    return obj, feasible


def grid_scan(xs1, xs2, r1, r2, w, d, use_bounds, use_strip, s, t, eps):
    best, bi, bj, count = np.inf, -1, -1, 0
    for lo in range(0, len(xs1), _CHUNK):
        obj, feasible = _chunk_values(
            xs1, xs2, r1, r2, w, d, use_bounds, use_strip, s, t, eps, lo, lo + _CHUNK
        )
        n = int(feasible.sum())
        if n == 0:
            continue
        count += n
        masked = np.where(feasible, obj, np.inf)
        flat = int(np.argmin(masked))  # first occurrence = scan order
        v = masked.flat[flat]
        if v < best:
            best = float(v)
            bi, bj = lo + flat // masked.shape[1], flat % masked.shape[1]
    return best, bi, bj, count


def grid_collect(xs1, xs2, r1, r2, w, d, use_bounds, use_strip, s, t, eps, threshold, limit):
    found = []
    for lo in range(0, len(xs1), _CHUNK):
        obj, feasible = _chunk_values(
            xs1, xs2, r1, r2, w, d, use_bounds, use_strip, s, t, eps, lo, lo + _CHUNK
        )
        ii, jj = np.nonzero(feasible & (obj <= threshold))
        found.append(np.stack([ii + lo, jj], axis=1))
        if sum(len(f) for f in found) >= limit:
            break
    if not found:
        return np.empty((0, 2), dtype=np.intp)
    return np.concatenate(found).astype(np.intp)[:limit]


def ubox_scan(bstar, b, p, q, g, h, ulo, uhi, theta, samples):
    bstar, b = np.asarray(bstar, float), np.asarray(b, float)
    p, q, g, h = (np.asarray(v, float) for v in (p, q, g, h))
    ulo, uhi = np.asarray(ulo, float), np.asarray(uhi, float)
    n = len(p)
    a = np.arange(samples) / (samples - 1) if samples > 1 else np.zeros(1)
    # samples^n lattice, first coordinate varying fastest like the odometer
    grids = np.meshgrid(*([a] * n), indexing="ij")
    alphas = np.stack([gr.ravel(order="F") for gr in grids], axis=1)
    u = ulo + alphas * (uhi - ulo)
    with np.errstate(invalid="ignore"):
        x = np.max(bstar[None, :, :] + u[:, None, :], axis=2)
        p_terms = np.where(np.isneginf(p), -np.inf, p - x)
        obj = np.maximum(p_terms.max(axis=1), (x - q).max(axis=1))
        dev = float(np.max(np.abs(obj - theta)))
        bx = np.max(b[None, :, :] + x[:, None, :], axis=2)
        viol = max(
            0.0,
            float(np.max(bx - x)),
            float(np.max(g - x)),
            float(np.max(x - h)),
        )
    return max(dev, 0.0), viol


__all__ = ["grid_scan", "grid_collect", "ubox_scan"]
