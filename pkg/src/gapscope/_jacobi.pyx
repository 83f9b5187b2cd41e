# cython: boundscheck=False, wraparound=False, cdivision=True
"""Cyclic Jacobi iteration for complex Hermitian matrices (compiled core).

The rotation schedule here must stay in lockstep with the pure-python twin
in ``_jacobi_py``: results are expected to agree to rounding so either
backend can serve a run.  Only the sweep loop lives here; sorting and the
eigenvector phase convention are applied by the caller.
"""

from libc.math cimport sqrt, hypot, fabs


def jacobi_sweeps(double complex[:, ::1] a, double complex[:, ::1] v,
                  double thr, int max_sweeps):
    """Diagonalize ``a`` in place, accumulating rotations into ``v``.

    ``a`` is destroyed (driven to diagonal form); ``v`` must arrive holding
    the identity, or a warm-start basis whose conjugate transform of the
    original matrix ``a`` already is.  ``thr`` is the absolute off-diagonal
    magnitude below which the iteration stops.  Returns the number of sweeps
    used, or -1 if ``max_sweeps`` was exhausted before convergence.
    """
    cdef Py_ssize_t n = a.shape[0]
    cdef Py_ssize_t p, q, i
    cdef int sweep, done
    cdef double off, r, tau, tsign, tt, c, s
    cdef double complex apq, phase, cphase, tp, tq

    if v.shape[0] != n or v.shape[1] != n or a.shape[1] != n:
        raise ValueError("shape mismatch between matrix and basis")

    with nogil:
        done = -1
        for sweep in range(max_sweeps + 1):
            off = 0.0
            for p in range(n - 1):
                for q in range(p + 1, n):
                    r = abs(a[p, q])
                    if r > off:
                        off = r
            if off <= thr:
                done = sweep
                break
            if sweep == max_sweeps:
                break
            for p in range(n - 1):
                for q in range(p + 1, n):
                    apq = a[p, q]
                    r = abs(apq)
                    if r <= thr:
                        continue
                    phase = apq / r
                    cphase = phase.conjugate()
                    tau = (a[q, q].real - a[p, p].real) / (2.0 * r)
                    tsign = 1.0 if tau >= 0.0 else -1.0
                    tt = tsign / (fabs(tau) + hypot(1.0, tau))
                    c = 1.0 / sqrt(1.0 + tt * tt)
                    s = tt * c
                    for i in range(n):
                        tp = a[i, p]
                        tq = a[i, q]
                        a[i, p] = c * tp - s * cphase * tq
                        a[i, q] = s * phase * tp + c * tq
                    for i in range(n):
                        tp = a[p, i]
                        tq = a[q, i]
                        a[p, i] = c * tp - s * phase * tq
                        a[q, i] = s * cphase * tp + c * tq
                    a[p, q] = 0.0
                    a[q, p] = 0.0
                    for i in range(n):
                        tp = v[i, p]
                        tq = v[i, q]
                        v[i, p] = c * tp - s * cphase * tq
                        v[i, q] = s * phase * tp + c * tq
    return done
