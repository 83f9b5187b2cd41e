"""Critical value curves (fronts) of the numerical range.

Each band's eigenvalue curve lambda_k(theta) generates a planar front

    x(theta) = lambda*cos(theta) - lambda'*sin(theta)
    y(theta) = lambda*sin(theta) + lambda'*cos(theta)

whose tangent is i*rho(theta)*e^{i theta}: the front moves only where the
convexity density rho = lambda + lambda'' is nonzero, stalls into a cusp
at each simple rho root, and its band-1 member is the boundary of the
numerical range.  Everything here is plain plane geometry on sampled
curves; the sweep module supplies lambda, lambda', rho.
"""

from dataclasses import dataclass
from typing import Callable, Optional

import numpy as np

TWO_PI = 2.0 * np.pi
TANGENTIAL_ANGLE = 1e-4


@dataclass
class FrontCurve:
    band: int
    thetas: np.ndarray
    lam: np.ndarray
    dlam: np.ndarray
    rho: np.ndarray
    closed: bool = True
    label: str = ""

    @property
    def xy(self) -> np.ndarray:
        c, s = np.cos(self.thetas), np.sin(self.thetas)
        x = self.lam * c - self.dlam * s
        y = self.lam * s + self.dlam * c
        return np.column_stack([x, y])

    @property
    def delta(self) -> float:
        return float(self.thetas[1] - self.thetas[0])

    def support_residual(self) -> float:
        """max |x cos + y sin - lambda|; zero in exact arithmetic."""
        p = self.xy
        c, s = np.cos(self.thetas), np.sin(self.thetas)
        return float(np.abs(p[:, 0] * c + p[:, 1] * s - self.lam).max())


def front(sw, band: int, use_sorted: bool = False) -> FrontCurve:
    """Front of one tracked band (or of the sorted band for boundaries)."""
    if use_sorted:
        vals, dvals, rho = sw.sorted_view()
    else:
        vals, dvals, rho = sw.values, sw.dvalues, sw.rho
    return FrontCurve(band=band, thetas=sw.thetas.copy(), lam=vals[:, band].copy(),
                      dlam=dvals[:, band].copy(), rho=rho[:, band].copy(),
                      closed=sw.full_circle)


def polar_plot(sw, band: int, use_sorted: bool = False) -> np.ndarray:
    """Points of Gamma_k(theta) = lambda_k(theta) e^{i theta} as an (M, 2) array."""
    vals = sw.sorted_view()[0] if use_sorted else sw.values
    z = vals[:, band] * np.exp(1j * sw.thetas)
    return np.column_stack([z.real, z.imag])


def _cyclic_sign_changes(thetas, f, closed):
    """Bracketed sign changes of a sampled function, as index pairs."""
    m = len(f)
    out = []
    last = m if closed else m - 1
    for i in range(last):
        j = (i + 1) % m
        if f[i] == 0.0:
            continue
        if f[j] == 0.0:
            # root exactly on a grid node: attribute it to this bracket
            k = (j + 1) % m
            if np.sign(f[i]) != np.sign(f[k]):
                out.append((i, j))
            continue
        if np.sign(f[i]) != np.sign(f[j]):
            out.append((i, j))
    return out


def _refine_root(th_lo, th_hi, f_lo, fn: Optional[Callable], grid_f_hi, max_iter=80):
    """Bisection when a callable is available, else linear interpolation."""
    if fn is None:
        span = th_hi - th_lo
        if grid_f_hi == f_lo:
            return 0.5 * (th_lo + th_hi)
        return th_lo + span * f_lo / (f_lo - grid_f_hi)
    for _ in range(max_iter):
        if th_hi - th_lo < 1e-10:
            break
        mid = 0.5 * (th_lo + th_hi)
        fm = fn(mid)
        if fm == 0.0:
            return mid
        if (fm > 0) == (f_lo > 0):
            th_lo, f_lo = mid, fm
        else:
            th_hi = mid
    return 0.5 * (th_lo + th_hi)


@dataclass
class RootSet:
    """Transversal roots plus tangential near-roots (graze without sign change)."""

    roots: list
    tangential: list


def _function_roots(curve: FrontCurve, values: np.ndarray, fn: Optional[Callable],
                    graze_tol: float) -> RootSet:
    th = curve.thetas
    pairs = _cyclic_sign_changes(th, values, curve.closed)
    d = curve.delta
    roots = []
    for i, j in pairs:
        lo = th[i]
        hi = th[i] + d
        roots.append(float(_refine_root(lo, hi, values[i], fn, values[j]) % TWO_PI))
    # tangential near-roots: local |f| minima below tolerance, no sign change
    m = len(values)
    tang = []
    bracket_idx = {i for i, _ in pairs} | {j for _, j in pairs}
    for i in range(m):
        im, ip = (i - 1) % m, (i + 1) % m
        if not curve.closed and (i == 0 or i == m - 1):
            continue
        a = abs(values[i])
        if a <= graze_tol and a <= abs(values[im]) and a <= abs(values[ip]):
            if i not in bracket_idx and im not in bracket_idx:
                tang.append(float(th[i]))
    return RootSet(roots=sorted(roots), tangential=sorted(tang))


def cusps(curve: FrontCurve, rho_fn: Optional[Callable] = None,
          graze_tol: Optional[float] = None) -> RootSet:
    """Cusp angles: roots of rho along the band.

    With ``rho_fn`` the sign changes are bisected to 1e-10; otherwise a
    linear interpolation on the stored grid is used (accuracy O(delta^2)).
    Near-roots where |rho| grazes zero without changing sign are listed
    separately as tangential contacts rather than silently dropped.
    """
    if graze_tol is None:
        scale = np.abs(curve.rho).max()
        graze_tol = 1e-6 * (scale if scale > 0 else 1.0)
    return _function_roots(curve, curve.rho, rho_fn, graze_tol)


def inflections(curve: FrontCurve, fn: Optional[Callable] = None,
                graze_tol: Optional[float] = None) -> RootSet:
    """Inflection angles of the band: roots of lambda'' = rho - lambda."""
    values = curve.rho - curve.lam
    if graze_tol is None:
        scale = np.abs(values).max()
        graze_tol = 1e-6 * (scale if scale > 0 else 1.0)
    return _function_roots(curve, values, fn, graze_tol)


@dataclass
class Crossing:
    theta_a: float
    theta_b: float
    point: tuple
    low_confidence: bool = False

    def as_tuple(self):
        return (self.theta_a, self.theta_b)


def _segment_list(points, closed):
    m = len(points)
    if closed:
        return np.arange(m), (np.arange(m) + 1) % m
    return np.arange(m - 1), np.arange(1, m)


def _bbox_cells(points, i0, i1, cell):
    """Cell-index spans touched by each segment's bounding box."""
    lo = np.minimum(points[i0], points[i1])
    hi = np.maximum(points[i0], points[i1])
    return (np.floor(lo / cell).astype(np.int64),
            np.floor(hi / cell).astype(np.int64))


def _hash_candidates(points_a, seg_a, points_b=None, seg_b=None):
    """Segment id pairs whose bounding boxes share a spatial-grid cell.

    One curve (points_b None) yields unordered pairs a < b; two curves
    yield (id_a, id_b) pairs.  Cell size tracks the median segment length
    so a handful of long segments cannot collapse the grid into one
    bucket; long segments are inserted into every cell they touch.
    """
    self_mode = points_b is None
    if self_mode:
        points_b, seg_b = points_a, seg_a
    la = np.linalg.norm(points_a[seg_a[1]] - points_a[seg_a[0]], axis=1)
    lb = np.linalg.norm(points_b[seg_b[1]] - points_b[seg_b[0]], axis=1)
    med = np.median(np.concatenate([la, lb]))
    pts = points_a if self_mode else np.vstack([points_a, points_b])
    diag = float(np.hypot(*(pts.max(axis=0) - pts.min(axis=0))))
    # a collapsed curve (point cloud plus a few long excursions) drives the
    # median far below the excursion span; floor the cell on the data
    # diagonal so no segment is inserted into more than ~2k cells
    cell = max(4.0 * med, diag / 1024.0, 1e-12)

    def fill(points, seg):
        grid = {}
        lo, hi = _bbox_cells(points, seg[0], seg[1], cell)
        for sid in range(len(seg[0])):
            for cx in range(lo[sid, 0], hi[sid, 0] + 1):
                for cy in range(lo[sid, 1], hi[sid, 1] + 1):
                    grid.setdefault((cx, cy), []).append(sid)
        return grid

    ga = fill(points_a, seg_a)
    pairs = set()
    if self_mode:
        for ids in ga.values():
            for x in range(len(ids)):
                for y in range(x + 1, len(ids)):
                    pairs.add((ids[x], ids[y]))
    else:
        gb = fill(points_b, seg_b)
        for key, ids in ga.items():
            other = gb.get(key)
            if not other:
                continue
            for a in ids:
                for b in other:
                    pairs.add((a, b))
    if not pairs:
        return np.empty((0, 2), dtype=np.int64)
    return np.array(sorted(pairs), dtype=np.int64)


def _batch_intersections(pa0, pa1, pb0, pb1):
    """Vectorized proper intersection test on segment batches.

    Returns (mask, t, u, angle): parameters on the half-open segments and
    the unsigned angle between directions.
    """
    r = pa1 - pa0
    s = pb1 - pb0
    denom = r[:, 0] * s[:, 1] - r[:, 1] * s[:, 0]
    dp = pb0 - pa0
    with np.errstate(divide="ignore", invalid="ignore"):
        t = (dp[:, 0] * s[:, 1] - dp[:, 1] * s[:, 0]) / denom
        u = (dp[:, 0] * r[:, 1] - dp[:, 1] * r[:, 0]) / denom
    ok = (denom != 0.0) & (t >= 0.0) & (t < 1.0) & (u >= 0.0) & (u < 1.0)
    nr = np.linalg.norm(r, axis=1)
    ns = np.linalg.norm(s, axis=1)
    sine = np.ones_like(denom)
    nz = (nr > 0) & (ns > 0)
    sine[nz] = np.clip(np.abs(denom[nz]) / (nr[nz] * ns[nz]), 0.0, 1.0)
    return ok, t, u, np.arcsin(sine)


def self_intersections(curve: FrontCurve) -> list:
    """Transversal self-crossings of the front polyline.

    Cyclically adjacent segments are excluded; crossing angles come from
    linear interpolation inside the segments.  Pairs meeting at less than
    1e-4 rad are kept but flagged low-confidence, since at that angle the
    polyline cannot distinguish a crossing from a tangency.
    """
    pts = curve.xy
    m = len(pts)
    i0, i1 = _segment_list(pts, curve.closed)
    n_seg = len(i0)
    cand = _hash_candidates(pts, (i0, i1))
    if len(cand) == 0:
        return []
    a, b = cand[:, 0], cand[:, 1]
    gap_fwd = (b - a) % n_seg if curve.closed else b - a
    gap_bwd = (a - b) % n_seg if curve.closed else n_seg  # only forward order matters when open
    adjacent = (gap_fwd <= 1) | (gap_bwd <= 1)
    a, b = a[~adjacent], b[~adjacent]
    ok, t, u, ang = _batch_intersections(pts[i0[a]], pts[i1[a]], pts[i0[b]], pts[i1[b]])
    th = curve.thetas
    d = curve.delta
    out = []
    for k in np.flatnonzero(ok):
        ta = (th[i0[a[k]]] + t[k] * d) % TWO_PI
        tb = (th[i0[b[k]]] + u[k] * d) % TWO_PI
        pa = pts[i0[a[k]]] + t[k] * (pts[i1[a[k]]] - pts[i0[a[k]]])
        lo, hi = (ta, tb) if ta <= tb else (tb, ta)
        out.append(Crossing(theta_a=float(lo), theta_b=float(hi),
                            point=(float(pa[0]), float(pa[1])),
                            low_confidence=bool(ang[k] < TANGENTIAL_ANGLE)))
    out.sort(key=lambda c: (c.theta_a, c.theta_b))
    return out


def crossings_between(c1: FrontCurve, c2: FrontCurve) -> list:
    """Transversal crossings between two fronts (no adjacency exclusion).

    theta_a refers to ``c1``'s parameter, theta_b to ``c2``'s.
    """
    p, q = c1.xy, c2.xy
    s1 = _segment_list(p, c1.closed)
    s2 = _segment_list(q, c2.closed)
    cand = _hash_candidates(p, s1, q, s2)
    if len(cand) == 0:
        return []
    a, b = cand[:, 0], cand[:, 1]
    ok, t, u, ang = _batch_intersections(p[s1[0][a]], p[s1[1][a]], q[s2[0][b]], q[s2[1][b]])
    out = []
    for k in np.flatnonzero(ok):
        ta = (c1.thetas[s1[0][a[k]]] + t[k] * c1.delta) % TWO_PI
        tb = (c2.thetas[s2[0][b[k]]] + u[k] * c2.delta) % TWO_PI
        pa = p[s1[0][a[k]]] + t[k] * (p[s1[1][a[k]]] - p[s1[0][a[k]]])
        out.append(Crossing(theta_a=float(ta), theta_b=float(tb),
                            point=(float(pa[0]), float(pa[1])),
                            low_confidence=bool(ang[k] < TANGENTIAL_ANGLE)))
    out.sort(key=lambda c: (c.theta_a, c.theta_b))
    return out


def _angle_between(u, v):
    nu = np.linalg.norm(u)
    nv = np.linalg.norm(v)
    if nu == 0.0 or nv == 0.0:
        return 0.0
    cross = abs(u[0] * v[1] - u[1] * v[0])
    return float(np.arcsin(min(1.0, cross / (nu * nv))))


def _cyclic_between(lo, hi, x):
    """True when x lies on the forward arc from lo to hi (mod 2pi)."""
    return (x - lo) % TWO_PI < (hi - lo) % TWO_PI


@dataclass
class SwallowTail:
    """A sign-excursion of rho between two consecutive cusps.

    ``crossing`` is the self-intersection closing the tail, when the tail
    closes inside the analyzed window; open tails carry crossing=None.
    """

    theta_enter: float
    theta_exit: float
    sign: int
    crossing: Optional[Crossing] = None
    diameter: float = 0.0

    @property
    def crossing_absent(self) -> bool:
        return self.crossing is None


def swallow_tails(curve: FrontCurve, cusp_set: Optional[RootSet] = None,
                  crossings: Optional[list] = None) -> list:
    """Pair consecutive cusps into tails and attach their closing crossings.

    The front reverses at every simple cusp, so the arc between two
    consecutive cusps where rho carries the minority sign is a swallow
    tail.  A crossing (ta, tb) closes the tail when the cusp pair lies on
    the forward arc from ta to tb; the smallest such crossing wins.  Tails
    whose closing crossing left the window are reported with the crossing
    absent rather than guessed.
    """
    if cusp_set is None:
        cusp_set = cusps(curve)
    if crossings is None:
        crossings = self_intersections(curve)
    roots = cusp_set.roots
    if len(roots) < 2:
        return []
    th = curve.thetas
    rho = curve.rho
    dominant = 1.0 if float(np.median(np.sign(rho[rho != 0]))) > 0 else -1.0
    tails = []
    nroots = len(roots)
    last = nroots if curve.closed else nroots - 1
    for i in range(last):
        r0 = roots[i]
        r1 = roots[(i + 1) % nroots]
        inside = np.array([_cyclic_between(r0, r1, t) for t in th])
        if not inside.any():
            continue
        seg_sign = np.sign(np.median(rho[inside][np.abs(rho[inside]) > 0]))
        if seg_sign == dominant or seg_sign == 0:
            continue
        best = None
        best_span = np.inf
        for c in crossings:
            ta, tb = c.theta_a, c.theta_b
            span = (tb - ta) % TWO_PI
            fwd = _cyclic_between(ta, tb, r0) and _cyclic_between(ta, tb, r1)
            if not fwd:
                # also try the complementary arc orientation
                ta, tb = tb, ta
                span = (tb - ta) % TWO_PI
                fwd = _cyclic_between(ta, tb, r0) and _cyclic_between(ta, tb, r1)
            if fwd and span < best_span:
                best = c
                best_span = span
        diam = 0.0
        pts = curve.xy[inside]
        if best is not None and len(pts):
            px, py = best.point
            diam = float(np.max(np.hypot(pts[:, 0] - px, pts[:, 1] - py)))
        elif len(pts) > 1:
            diam = float(np.max(np.linalg.norm(pts - pts[0], axis=1)))
        tails.append(SwallowTail(theta_enter=float(r0), theta_exit=float(r1),
                                 sign=int(-dominant), crossing=best, diameter=diam))
    return tails


@dataclass
class BoundaryReport:
    """Band-1 front with its convexity certificate and sharpness metric."""

    curve: FrontCurve
    convexity_max: float      # max rho_1; nonpositive (to tolerance) on a convex boundary
    sharpness: float          # min |rho_1|, small values mean near-cusp corners
    sharpness_theta: float


def boundary(sw, window: Optional[tuple] = None) -> BoundaryReport:
    """Boundary of the numerical range: the pointwise-lowest band's front."""
    bc = front(sw, 0, use_sorted=True)
    if window is None:
        mask = np.ones(len(bc.thetas), dtype=bool)
    else:
        lo, hi = window
        mask = np.array([_cyclic_between(lo, hi, t) or t == lo for t in bc.thetas])
    rho = bc.rho[mask]
    th = bc.thetas[mask]
    i = int(np.argmin(np.abs(rho)))
    return BoundaryReport(curve=bc, convexity_max=float(bc.rho.max()),
                          sharpness=float(np.abs(rho[i])), sharpness_theta=float(th[i]))


@dataclass
class VertexSet:
    thetas: list
    count: int
    constant_curvature: bool = False


def vertices(curve: FrontCurve, flat_rtol: float = 1e-9) -> VertexSet:
    """Curvature extrema of a smooth front.

    The support parametrization has radius of curvature |rho|, so vertex
    angles are extrema of rho.  A front with constant rho (circle) has no
    isolated vertices and is reported as constant-curvature instead.
    """
    rho = curve.rho
    spread = rho.max() - rho.min()
    scale = max(np.abs(rho).max(), 1e-300)
    if spread <= flat_rtol * scale:
        return VertexSet(thetas=[], count=0, constant_curvature=True)
    drho = np.gradient(rho, curve.thetas, edge_order=2)
    th = []
    m = len(rho)
    last = m if curve.closed else m - 1
    for i in range(last):
        j = (i + 1) % m
        if drho[i] == 0.0 or np.sign(drho[i]) == np.sign(drho[j]):
            continue
        th.append(float(curve.thetas[i]))
    return VertexSet(thetas=th, count=len(th))


def arc_length(curve: FrontCurve) -> float:
    """Length of the front: the integral of |rho| d theta.

    The front tangent is i*rho*e^{i theta}, so speed is |rho| exactly;
    the midpoint rule on the uniform grid integrates it.
    """
    if curve.closed:
        return float(np.abs(curve.rho).sum() * curve.delta)
    speeds = np.abs(curve.rho)
    return float(0.5 * (speeds[:-1] + speeds[1:]).sum() * curve.delta)


def polyline_length(curve: FrontCurve) -> float:
    pts = curve.xy
    seg = np.linalg.norm(np.diff(pts, axis=0), axis=1).sum()
    if curve.closed:
        seg += np.linalg.norm(pts[0] - pts[-1])
    return float(seg)
