"""Band sweep of the pencil H(theta) = H0 cos(theta) + H1 sin(theta).

Eigensystems are warm-started point to point, which both speeds up the
Jacobi iteration and acts as approximate parallel transport, so band
labels follow the analytic curves instead of the sorted order.  First and
second derivative data come from perturbation theory at each point: the
diagonal of W = V* H' V gives lambda', and the shifted pseudo-inverse sum
gives the convexity density rho = lambda + lambda''.
"""

import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from .linalg import eigh
from .problems import HamiltonianPair

MAX_DELTA = 0.01
DEGENERACY_RTOL = 1e-8
CROSSING_RTOL = 1e-7
TWO_PI = 2.0 * np.pi


@dataclass
class ThetaGrid:
    """Uniform grid on [start, end), step delta (at most 0.01 rad)."""

    start: float = 0.0
    end: float = TWO_PI
    delta: float = 0.001

    def __post_init__(self):
        if not 0.0 < self.delta <= MAX_DELTA:
            raise ValueError(f"delta must lie in (0, {MAX_DELTA}], got {self.delta}")
        if self.end <= self.start:
            raise ValueError("end must exceed start")

    @property
    def thetas(self) -> np.ndarray:
        m = int(round((self.end - self.start) / self.delta))
        m = max(m, 2)
        return self.start + self.delta * np.arange(m)

    @property
    def full_circle(self) -> bool:
        return abs(self.start) < 1e-15 and abs(self.end - TWO_PI) < 1e-15


@dataclass
class SpectralSweep:
    thetas: np.ndarray
    values: np.ndarray        # (M, N) band-tracked
    dvalues: np.ndarray       # (M, N) first derivatives, Re W_kk
    rho: np.ndarray           # (M, N) lambda + lambda''
    gap: np.ndarray           # (M,) second smallest minus smallest
    ambiguous: np.ndarray     # (M,) tracking confidence flags
    degenerate: np.ndarray    # (M, N) band sat inside a near-degenerate cluster
    delta: float
    full_circle: bool
    scale: float              # ||H0||_F + ||H1||_F, used by tolerance defaults
    meta: dict = field(default_factory=dict)

    @property
    def n_bands(self) -> int:
        return self.values.shape[1]

    def sorted_view(self):
        """(values, dvalues, rho) reordered ascending per grid point.

        Tracked labels follow analytic curves through exact crossings, so
        tracked band 1 need not stay the pointwise minimum; boundary-type
        quantities (numerical range support, convexity checks) want this
        sorted view instead.
        """
        order = np.argsort(self.values, axis=1, kind="stable")
        return (np.take_along_axis(self.values, order, axis=1),
                np.take_along_axis(self.dvalues, order, axis=1),
                np.take_along_axis(self.rho, order, axis=1))


def path_hamiltonian(pair: HamiltonianPair, theta: float) -> np.ndarray:
    return pair.h0 * np.cos(theta) + pair.h1 * np.sin(theta)


def path_derivative(pair: HamiltonianPair, theta: float) -> np.ndarray:
    return -pair.h0 * np.sin(theta) + pair.h1 * np.cos(theta)


def _point_data(pair, theta, dec, degeneracy_tol):
    """Derivatives and rho for one decomposition, plus degeneracy flags."""
    n = dec.n
    w = dec.vectors.conj().T @ path_derivative(pair, theta) @ dec.vectors
    dvals = np.diag(w).real.copy()
    diff = dec.values[:, None] - dec.values[None, :]     # lambda_k - lambda_j at [j? k?] -> see below
    # diff[k, j] = lambda_k - lambda_j
    absw2 = np.abs(w) ** 2
    near = np.abs(diff) <= degeneracy_tol
    np.fill_diagonal(near, True)
    inv = np.zeros_like(diff)
    ok = ~near
    inv[ok] = 1.0 / diff[ok]
    # rho_k = 2 sum_j |W_jk|^2 / (lambda_k - lambda_j)
    rho = 2.0 * np.einsum("jk,kj->k", absw2, inv)
    degen = near.sum(axis=1) > 1
    return dvals, rho, degen


def _greedy_order(prev_vectors, vectors):
    """Permutation aligning current columns to previous band labels.

    Returns (order, worst_overlap): order[k] = column of ``vectors`` that
    continues previous band k, by greedy maximum |<v_prev, v_cur>|^2.
    """
    p = np.abs(prev_vectors.conj().T @ vectors) ** 2
    n = p.shape[0]
    order = np.full(n, -1, dtype=int)
    worst = 1.0
    work = p.copy()
    for _ in range(n):
        k, j = np.unravel_index(np.argmax(work), work.shape)
        worst = min(worst, work[k, j])
        order[k] = j
        work[k, :] = -1.0
        work[:, j] = -1.0
    return order, worst


def _sweep_chunk(pair, thetas, degeneracy_rtol):
    m = len(thetas)
    n = pair.dim
    values = np.empty((m, n))
    dvalues = np.empty((m, n))
    rho = np.empty((m, n))
    ambiguous = np.zeros(m, dtype=bool)
    degenerate = np.zeros((m, n), dtype=bool)
    first_vectors = None
    vectors = None
    for i, th in enumerate(thetas):
        h = path_hamiltonian(pair, th)
        dec = eigh(h, warm_start=vectors)
        tol = degeneracy_rtol * max(np.linalg.norm(h), 1e-300)
        if vectors is None or i == 0:
            cur_order = np.arange(n)
        else:
            perm, worst = _greedy_order(vectors, dec.vectors)
            if worst < 0.5:
                ambiguous[i] = True
                cur_order = np.arange(n)
            else:
                cur_order = perm
        dvals, rho_i, degen = _point_data(pair, th, dec, tol)
        values[i] = dec.values[cur_order]
        dvalues[i] = dvals[cur_order]
        rho[i] = rho_i[cur_order]
        degenerate[i] = degen[cur_order]
        vectors = np.ascontiguousarray(dec.vectors[:, cur_order])
        if first_vectors is None:
            first_vectors = vectors
    return values, dvalues, rho, ambiguous, degenerate, first_vectors, vectors


def sweep(pair: HamiltonianPair, grid: ThetaGrid = None, degeneracy_rtol: float = DEGENERACY_RTOL,
          threads: Optional[int] = None) -> SpectralSweep:
    """Tracked band sweep over the grid.

    ``threads`` defaults to the GAPSCOPE_THREADS environment variable (1 if
    unset).  Chunks are stitched by eigenvector overlap at the seams; a
    seam or point where the best overlap falls below 0.5 is flagged
    ambiguous and falls back to sorted order there.
    """
    if grid is None:
        grid = ThetaGrid()
    thetas = grid.thetas
    m = len(thetas)
    if threads is None:
        threads = int(os.environ.get("GAPSCOPE_THREADS", "1") or "1")
    threads = max(1, min(threads, m // 8 if m >= 16 else 1))

    if threads == 1:
        values, dvalues, rho, ambiguous, degenerate, _, _ = _sweep_chunk(
            pair, thetas, degeneracy_rtol)
    else:
        bounds = np.linspace(0, m, threads + 1, dtype=int)
        parts = [thetas[bounds[c]:bounds[c + 1]] for c in range(threads)]
        with ThreadPoolExecutor(max_workers=threads) as pool:
            results = list(pool.map(
                lambda part: _sweep_chunk(pair, part, degeneracy_rtol), parts))
        values = np.vstack([r[0] for r in results])
        dvalues = np.vstack([r[1] for r in results])
        rho = np.vstack([r[2] for r in results])
        ambiguous = np.concatenate([r[3] for r in results])
        degenerate = np.vstack([r[4] for r in results])
        # stitch: align each chunk's labels to the previous chunk's tail
        carry = results[0][6]
        for c in range(1, threads):
            head = results[c][5]
            perm, worst = _greedy_order(carry, head)
            lo, hi = bounds[c], bounds[c + 1]
            if worst < 0.5:
                ambiguous[lo] = True
            else:
                values[lo:hi] = values[lo:hi][:, perm]
                dvalues[lo:hi] = dvalues[lo:hi][:, perm]
                rho[lo:hi] = rho[lo:hi][:, perm]
                degenerate[lo:hi] = degenerate[lo:hi][:, perm]
            carry = results[c][6] if worst < 0.5 else np.ascontiguousarray(results[c][6][:, perm])

    svals = np.sort(values, axis=1)
    gap = svals[:, 1] - svals[:, 0] if values.shape[1] > 1 else np.zeros(m)
    scale = float(np.linalg.norm(pair.h0) + np.linalg.norm(pair.h1))
    return SpectralSweep(
        thetas=thetas, values=values, dvalues=dvalues, rho=rho, gap=gap,
        ambiguous=ambiguous, degenerate=degenerate, delta=grid.delta,
        full_circle=grid.full_circle, scale=scale,
        meta={"family": pair.family, "params": dict(pair.params), "seed": pair.seed,
              "threads": threads},
    )


def band_derivative(pair: HamiltonianPair, theta: float, decomp=None) -> np.ndarray:
    """First derivatives of all bands at one angle (Hellmann-Feynman)."""
    if decomp is None:
        decomp = eigh(path_hamiltonian(pair, theta))
    w = decomp.vectors.conj().T @ path_derivative(pair, theta) @ decomp.vectors
    return np.diag(w).real.copy()


def rho_at(pair: HamiltonianPair, theta: float, decomp=None,
           degeneracy_rtol: float = DEGENERACY_RTOL) -> np.ndarray:
    """Convexity density rho_k = lambda_k + lambda_k'' at one angle.

    Computed through the shifted pseudo-inverse sum
    2 sum_{j != k} |W_jk|^2 / (lambda_k - lambda_j); eigenvalues closer
    than the degeneracy tolerance are excluded from the sum (they sit in
    the annihilated eigenspace of the pseudo-inverse).
    """
    h = path_hamiltonian(pair, theta)
    if decomp is None:
        decomp = eigh(h)
    tol = degeneracy_rtol * max(np.linalg.norm(h), 1e-300)
    _, rho, _ = _point_data(pair, theta, decomp, tol)
    return rho


@dataclass
class GapFunction:
    """Gap over an angular window with a parabolic-refined minimum."""

    thetas: np.ndarray
    values: np.ndarray
    theta_star: float
    g_star: float
    window: tuple


def gap(sw: SpectralSweep, window: Optional[tuple] = (0.0, np.pi / 2)) -> GapFunction:
    """Gap function restricted to a window (default: the forward quarter).

    The annealing schedule runs theta from 0 to pi/2, so the reported
    minimum-gap location uses that leg unless a window says otherwise;
    pass window=None for the full sweep range.
    """
    if window is None:
        mask = np.ones(len(sw.thetas), dtype=bool)
        lo, hi = float(sw.thetas[0]), float(sw.thetas[-1])
    else:
        lo, hi = window
        mask = (sw.thetas >= lo - 1e-15) & (sw.thetas <= hi + 1e-15)
        if not mask.any():
            raise ValueError("window does not intersect the sweep grid")
    thetas = sw.thetas[mask]
    g = sw.gap[mask]
    i = int(np.argmin(g))
    theta_star, g_star = _parabolic_min(thetas, g, i, cyclic=(window is None and sw.full_circle))
    return GapFunction(thetas=thetas, values=g, theta_star=theta_star,
                       g_star=g_star, window=(lo, hi))


def _parabolic_min(thetas, g, i, cyclic=False):
    m = len(g)
    if m < 3:
        return float(thetas[i]), float(g[i])
    if cyclic:
        im, ip = (i - 1) % m, (i + 1) % m
    else:
        if i == 0 or i == m - 1:
            return float(thetas[i]), float(g[i])
        im, ip = i - 1, i + 1
    d = thetas[1] - thetas[0]
    denom = g[ip] - 2.0 * g[i] + g[im]
    if denom <= 0.0:
        return float(thetas[i]), float(g[i])
    shift = 0.5 * d * (g[im] - g[ip]) / denom
    shift = float(np.clip(shift, -d, d))
    theta_star = float(thetas[i] + shift)
    # parabola value at the vertex
    a = denom / (2.0 * d * d)
    b = (g[ip] - g[im]) / (2.0 * d)
    g_star = float(g[i] + b * shift + a * shift * shift)
    return theta_star, max(g_star, 0.0)


@dataclass
class CrossingSet:
    """Exact level crossings of a tracked band pair.

    ``points`` are isolated crossing angles; ``intervals`` are maximal
    stretches where the band difference stays below tolerance (degenerate
    bands over a range).
    """

    points: list
    intervals: list
    tol: float
    bands: tuple


def _bisect_signed(pair, th_lo, th_hi, anchor, j1, j2, max_iter=80):
    """Bisect a sign change of the tracked band difference.

    ``anchor`` is an EigenDecomposition at th_lo whose columns j1, j2 carry
    the two bands; labels are continued by eigenvector overlap at every
    probe so the signed difference stays attached to the analytic curves.
    """
    d_lo = anchor.values[j2] - anchor.values[j1]
    for _ in range(max_iter):
        if th_hi - th_lo < 1e-10:
            break
        mid = 0.5 * (th_lo + th_hi)
        dec = eigh(path_hamiltonian(pair, mid), warm_start=anchor.vectors)
        order, _ = _greedy_order(anchor.vectors, dec.vectors)
        m1, m2 = order[j1], order[j2]
        d_mid = dec.values[m2] - dec.values[m1]
        if d_mid == 0.0:
            return mid
        if (d_mid > 0) == (d_lo > 0):
            th_lo, anchor, j1, j2, d_lo = mid, dec, m1, m2, d_mid
        else:
            th_hi = mid
    return 0.5 * (th_lo + th_hi)


def exact_crossings(pair: HamiltonianPair, sw: SpectralSweep = None, bands=(0, 1),
                    crossing_rtol: float = CROSSING_RTOL, max_iter: int = 80) -> CrossingSet:
    """Locate angles where two tracked bands cross.

    Detects both below-tolerance grid runs (reported as points, or as
    intervals when wider than ten grid steps) and sign changes of the
    signed tracked difference between grid neighbours, refined by
    bisection.  Defaults to the two bands lowest at the sweep start.
    """
    if sw is None:
        sw = sweep(pair)
    b1, b2 = bands
    tol = crossing_rtol * float(np.linalg.norm(pair.h0) + np.linalg.norm(pair.h1))
    d = sw.values[:, b2] - sw.values[:, b1]
    below = np.abs(d) < tol
    m = len(d)
    if below.all():
        return CrossingSet(points=[], intervals=[(float(sw.thetas[0]), float(sw.thetas[-1]))],
                           tol=tol, bands=(b1, b2))

    points, intervals = [], []
    # runs of near-zero difference on the grid
    i = 0
    runs = []
    while i < m:
        if below[i]:
            j = i
            while j + 1 < m and below[j + 1]:
                j += 1
            runs.append((i, j))
            i = j + 1
        else:
            i += 1
    wrap = sw.full_circle and below[0] and below[-1] and len(runs) > 1
    if wrap:
        first, last = runs[0], runs[-1]
        runs = runs[1:-1] + [(last[0], first[1] + m)]
    for i0, i1 in runs:
        width = i1 - i0
        mid_idx = (i0 + width // 2) % m
        if width > 10:
            intervals.append((float(sw.thetas[i0 % m]), float(sw.thetas[i1 % m])))
        else:
            points.append(float(sw.thetas[mid_idx]))

    # transversal sign changes between grid neighbours away from the runs
    for i in range(m - 1):
        if below[i] or below[i + 1]:
            continue
        if (d[i] > 0) == (d[i + 1] > 0):
            continue
        dec = eigh(path_hamiltonian(pair, sw.thetas[i]))
        j1 = int(np.argmin(np.abs(dec.values - sw.values[i, b1])))
        j2 = int(np.argmin(np.abs(dec.values - sw.values[i, b2])))
        root = _bisect_signed(pair, float(sw.thetas[i]), float(sw.thetas[i + 1]), dec, j1, j2,
                              max_iter=max_iter)
        points.append(float(root % TWO_PI))

    return CrossingSet(points=sorted(points), intervals=intervals, tol=tol, bands=(b1, b2))


def write_sweep_csv(sw: SpectralSweep, path, bands=None):
    """Write theta, per-band values/derivatives/rho, and the gap as CSV.

    Floats carry 17 significant digits so a read-back reproduces the
    doubles exactly.
    """
    if bands is None:
        bands = list(range(sw.n_bands))
    cols = (["theta"]
            + [f"lambda_{k + 1}" for k in bands]
            + [f"dlambda_{k + 1}" for k in bands]
            + [f"rho_{k + 1}" for k in bands]
            + ["gap"])
    with open(path, "w", newline="") as fh:
        fh.write(",".join(cols) + "\n")
        for i in range(len(sw.thetas)):
            row = [sw.thetas[i]]
            row += [sw.values[i, k] for k in bands]
            row += [sw.dvalues[i, k] for k in bands]
            row += [sw.rho[i, k] for k in bands]
            row.append(sw.gap[i])
            fh.write(",".join(f"{x:.17g}" for x in row) + "\n")


def read_sweep_csv(path):
    """Read back a sweep CSV into (header, data) with data shaped (M, C)."""
    with open(path) as fh:
        header = fh.readline().strip().split(",")
        data = np.loadtxt(fh, delimiter=",", ndmin=2)
    return header, data
