"""Hermitian linear algebra used throughout the package.

The eigensolver is a cyclic Jacobi iteration (compiled kernel when
available, see ``backend``) rather than a LAPACK call: the rotation
schedule is deterministic across platforms, which the persistence and
comparison layers rely on, and warm-starting from a neighbouring basis
keeps sweeps short along a parameter path.
"""

from dataclasses import dataclass

import numpy as np

from .backend import jacobi_sweeps

HERMITICITY_RTOL = 1e-12
JACOBI_TOL_FACTOR = 1e-14
RANK_RTOL = 1e-9


@dataclass
class EigenDecomposition:
    """Eigensystem of a Hermitian matrix.

    ``values`` ascending, ``vectors[:, k]`` the unit eigenvector for
    ``values[k]`` under the package phase convention (largest-magnitude
    entry real positive, ties resolved to the lowest index).
    """

    values: np.ndarray
    vectors: np.ndarray
    sweeps: int

    @property
    def n(self) -> int:
        return self.values.shape[0]


def _require_hermitian(a):
    a = np.asarray(a, dtype=complex)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise ValueError(f"expected a square matrix, got shape {a.shape}")
    scale = np.linalg.norm(a)
    herm_err = np.abs(a - a.conj().T).max() if a.size else 0.0
    if herm_err > HERMITICITY_RTOL * max(scale, 1.0):
        raise ValueError(f"matrix is not Hermitian (deviation {herm_err:.3e})")
    return 0.5 * (a + a.conj().T), scale


def fix_phases(vectors):
    """Apply the eigenvector phase convention in place, column by column.

    The entry of largest magnitude is rotated to the positive real axis;
    magnitude ties (within 1e-12 relative) go to the lowest index so the
    choice is stable under rounding noise.
    """
    for k in range(vectors.shape[1]):
        col = vectors[:, k]
        mags = np.abs(col)
        top = mags.max()
        if top == 0.0:
            continue
        j = int(np.argmax(mags >= top * (1.0 - 1e-12)))
        col *= np.conj(col[j]) / mags[j]
    return vectors


def eigh(a, warm_start=None, max_sweeps=60) -> EigenDecomposition:
    """Eigendecomposition of a Hermitian matrix by cyclic Jacobi sweeps.

    Parameters
    ----------
    a : (n, n) array_like
        Hermitian to within 1e-12 relative deviation (validated).
    warm_start : (n, n) ndarray, optional
        Unitary basis from a nearby matrix.  The iteration runs on the
        conjugated matrix, which is nearly diagonal when the matrices are
        close, typically cutting sweep counts by 2-3x along a path.
    """
    work, scale = _require_hermitian(a)
    n = work.shape[0]
    if warm_start is not None:
        v = np.ascontiguousarray(warm_start, dtype=complex)
        if v.shape != (n, n):
            raise ValueError("warm_start shape mismatch")
        ortho = np.abs(v.conj().T @ v - np.eye(n)).max()
        if ortho > 1e-8:
            raise ValueError(f"warm_start basis not unitary (deviation {ortho:.3e})")
        work = v.conj().T @ work @ v
        work = 0.5 * (work + work.conj().T)
        v = v.copy()
    else:
        v = np.eye(n, dtype=complex)
    work = np.ascontiguousarray(work)
    sweeps = jacobi_sweeps(work, v, JACOBI_TOL_FACTOR * scale, max_sweeps)
    if sweeps < 0:
        raise ArithmeticError(f"Jacobi iteration failed to converge in {max_sweeps} sweeps")
    values = np.diag(work).real.copy()
    order = np.argsort(values, kind="stable")
    values = values[order]
    vectors = np.ascontiguousarray(v[:, order])
    fix_phases(vectors)
    return EigenDecomposition(values=values, vectors=vectors, sweeps=sweeps)


def default_rank_tol(a) -> float:
    """Spectral cutoff below which shifted eigenvalues count as singular."""
    a = np.asarray(a)
    return RANK_RTOL * a.shape[0] * np.linalg.norm(a)


def shifted_pinv_apply(a, lam, w, rank_tol=None, decomp=None):
    """Apply the Moore-Penrose inverse of (lam*I - A) to the vector ``w``.

    Eigencomponents with |lam - values[j]| <= rank_tol are annihilated,
    which is what makes the derivative formulas well defined on the
    eigenvector's own eigenspace.  ``decomp`` short-circuits the
    eigendecomposition when the caller already has one.
    """
    if decomp is None:
        decomp = eigh(a)
    if rank_tol is None:
        rank_tol = default_rank_tol(a if a is not None else decomp.vectors)
    w = np.asarray(w, dtype=complex)
    coeff = decomp.vectors.conj().T @ w
    shift = lam - decomp.values
    keep = np.abs(shift) > rank_tol
    out = np.zeros_like(coeff)
    out[keep] = coeff[keep] / shift[keep]
    return decomp.vectors @ out


def commutator(a, b):
    a = np.asarray(a)
    b = np.asarray(b)
    return a @ b - b @ a


def matrix_sign(a, method="spectral", rank_tol=None, max_iter=60):
    """Matrix sign function of a Hermitian matrix.

    ``spectral`` maps eigenvalues through sign(); ``newton`` iterates
    Z <- (Z + Z^-1)/2 from Z = A until successive iterates differ by less
    than 1e-12.  Both reject (near-)singular input, since sign(0) has no
    value; the Newton route additionally stops with advice to use the
    spectral route if the iteration fails to settle.
    """
    work, scale = _require_hermitian(a)
    if rank_tol is None:
        rank_tol = default_rank_tol(work)
    if method == "spectral":
        dec = eigh(work)
        if np.abs(dec.values).min() <= rank_tol:
            raise ValueError("matrix sign undefined: eigenvalue at or near zero")
        s = np.sign(dec.values)
        return (dec.vectors * s) @ dec.vectors.conj().T
    if method == "newton":
        z = work.copy()
        for _ in range(max_iter):
            try:
                zinv = np.linalg.inv(z)
            except np.linalg.LinAlgError as exc:
                raise ValueError(
                    "Newton sign iteration hit a singular iterate; "
                    "use method='spectral' for rank-deficient input"
                ) from exc
            znext = 0.5 * (z + zinv)
            delta = np.abs(znext - z).max()
            z = znext
            if delta <= 1e-12:
                return 0.5 * (z + z.conj().T)
        raise ValueError(
            "Newton sign iteration did not converge; the matrix is likely "
            "singular or extremely ill conditioned, use method='spectral'"
        )
    raise ValueError(f"unknown method {method!r}")


def kron_embed(op, site, n_sites):
    """Embed a single-site operator into an n-site tensor product.

    Site 0 is the leftmost factor, i.e. the most significant bit of the
    computational-basis index.
    """
    op = np.asarray(op, dtype=complex)
    d = op.shape[0]
    if op.shape != (d, d):
        raise ValueError("site operator must be square")
    if not 0 <= site < n_sites:
        raise ValueError(f"site {site} out of range for {n_sites} sites")
    left = np.eye(d ** site, dtype=complex)
    right = np.eye(d ** (n_sites - site - 1), dtype=complex)
    return np.kron(np.kron(left, op), right)
