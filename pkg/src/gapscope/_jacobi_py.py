"""Pure-python twin of the compiled Jacobi kernel.

Same cyclic rotation schedule as ``_jacobi.pyx``, written with vectorized
row/column updates.  Used when the extension is unavailable (or forced via
GAPSCOPE_PURE=1); roughly two orders of magnitude slower, so long sweeps
should prefer the compiled backend.
"""

import numpy as np


def jacobi_sweeps(a, v, thr, max_sweeps):
    """Diagonalize ``a`` in place, accumulating rotations into ``v``.

    Mirrors the compiled signature: returns sweeps used, -1 if not
    converged within ``max_sweeps``.
    """
    n = a.shape[0]
    if v.shape != (n, n) or a.shape != (n, n):
        raise ValueError("shape mismatch between matrix and basis")
    iu = np.triu_indices(n, k=1)
    for sweep in range(max_sweeps + 1):
        off = np.abs(a[iu]).max() if n > 1 else 0.0
        if off <= thr:
            return sweep
        if sweep == max_sweeps:
            break
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = a[p, q]
                r = abs(apq)
                if r <= thr:
                    continue
                phase = apq / r
                tau = (a[q, q].real - a[p, p].real) / (2.0 * r)
                tsign = 1.0 if tau >= 0.0 else -1.0
                tt = tsign / (abs(tau) + np.hypot(1.0, tau))
                c = 1.0 / np.sqrt(1.0 + tt * tt)
                s = tt * c
                cp = a[:, p].copy()
                cq = a[:, q].copy()
                a[:, p] = c * cp - s * np.conj(phase) * cq
                a[:, q] = s * phase * cp + c * cq
                rp = a[p, :].copy()
                rq = a[q, :].copy()
                a[p, :] = c * rp - s * phase * rq
                a[q, :] = s * np.conj(phase) * rp + c * rq
                a[p, q] = 0.0
                a[q, p] = 0.0
                vp = v[:, p].copy()
                vq = v[:, q].copy()
                v[:, p] = c * vp - s * np.conj(phase) * vq
                v[:, q] = s * phase * vp + c * vq
    return -1
