"""Front invariants and gap morphology classification.

The fronts live in the contact space C x S^1 with theta as the lift
height, so over/under at a planar crossing is decided by the angular
separation of the two strands along the shorter way around the circle.
With tangents i*rho*e^{i theta}, the orientation sign of a crossing
reduces to the product of the two convexity densities:

    sign(crossing at theta_a, theta_b) = sign(rho(theta_a) * rho(theta_b))

which is independent of the parameter cut and matches the quadrangle,
triangle, and ideal-quadrangle reference values.  Writhe sums these signs
over self-crossings, tb subtracts half the cusp count, and pairwise
linking halves the signed sum over mutual crossings.
"""

from dataclasses import dataclass
from typing import Optional

import numpy as np

from .curves import (FrontCurve, front, cusps, inflections, self_intersections,
                     crossings_between, swallow_tails)
from .sweep import SpectralSweep, gap, TWO_PI
from .problems import HamiltonianPair, BarrierSpec

FORWARD_WINDOW = (0.0, np.pi / 2)
CLASSIFY_WINDOW = 0.1
FLAT_GAP_RTOL = 0.10
BOUNDARY_WINDOW = 0.3
BOUNDARY_RATIO = -0.1
TUNNEL_NEIGHBOURHOOD = 0.5


class DegenerateContactError(ValueError):
    """Raised when curves meet tangentially and crossing signs are undefined."""


def _interp_cyclic(curve: FrontCurve, values: np.ndarray, theta: float) -> float:
    th = curve.thetas
    m = len(th)
    d = curve.delta
    pos = (theta - th[0]) / d
    i = int(np.floor(pos)) % m
    frac = pos - np.floor(pos)
    j = (i + 1) % m
    return float(values[i] * (1.0 - frac) + values[j] * frac)


def rho_at_crossing(curve: FrontCurve, theta: float) -> float:
    return _interp_cyclic(curve, curve.rho, theta)


def crossing_sign(c1: FrontCurve, crossing, c2: Optional[FrontCurve] = None) -> int:
    """Orientation sign of one transversal crossing (see module docstring)."""
    if c2 is None:
        c2 = c1
    ra = rho_at_crossing(c1, crossing.theta_a)
    rb = rho_at_crossing(c2, crossing.theta_b)
    s = np.sign(ra * rb)
    return int(s) if s != 0 else 0


def winding_index(curve: FrontCurve) -> int:
    """Turning number of the co-orienting normal e^{i theta} along the curve."""
    th = np.asarray(curve.thetas, dtype=float)
    d = np.diff(th)
    d = (d + np.pi) % TWO_PI - np.pi
    total = d.sum()
    if curve.closed:
        wrap = (th[0] - th[-1] + np.pi) % TWO_PI - np.pi
        total += wrap
    return int(np.round(total / TWO_PI))


def cusp_transitions(curve: FrontCurve, cusp_set=None):
    """Sign transition (+1: rho goes -,+ ; -1: rho goes +,-) at each cusp."""
    if cusp_set is None:
        cusp_set = cusps(curve)
    th = curve.thetas
    m = len(th)
    d = curve.delta
    out = []
    for r in cusp_set.roots:
        pos = (r - th[0]) / d
        i = int(np.floor(pos)) % m
        before, after = 0.0, 0.0
        for step in range(1, m):
            before = curve.rho[(i - step + 1) % m]
            if before != 0.0:
                break
        for step in range(1, m):
            after = curve.rho[(i + step) % m]
            if after != 0.0:
                break
        out.append(1 if after > before else -1)
    return out


def maslov(curve: FrontCurve, cusp_set=None) -> int:
    """Maslov index from cusp transition signs.

    Along a closed front the rho sign flips alternate by continuity, so
    the up and down cusps pair off; non-alternating data means the grid
    skipped a cusp and no trustworthy index exists.
    """
    trans = cusp_transitions(curve, cusp_set)
    if not trans:
        return 0
    for a, b in zip(trans, trans[1:] + trans[:1]):
        if a == b:
            raise ValueError("cusp signs do not alternate; refine the grid")
    return (sum(1 for t in trans if t > 0) - sum(1 for t in trans if t < 0)) // 2


def writhe(curve: FrontCurve, crossings=None) -> int:
    """Signed self-crossing count of the front."""
    if crossings is None:
        crossings = self_intersections(curve)
    return int(sum(crossing_sign(curve, c) for c in crossings))


def thurston_bennequin(curve: FrontCurve, crossings=None, cusp_set=None) -> float:
    """tb = writhe - (number of cusps)/2."""
    if cusp_set is None:
        cusp_set = cusps(curve)
    w = writhe(curve, crossings)
    n_cusps = len(cusp_set.roots)
    tb = w - 0.5 * n_cusps
    return int(tb) if float(tb).is_integer() else tb


def isotopy_equal(curve_a: FrontCurve, curve_b: FrontCurve) -> bool:
    """Legendrian equivalence test by Thurston-Bennequin number.

    The fronts handled here are unknots, for which tb classifies the
    isotopy class.
    """
    return thurston_bennequin(curve_a) == thurston_bennequin(curve_b)


def linking(curve_a: FrontCurve, curve_b: FrontCurve, crossings=None):
    """Pairwise linking number: half the signed sum over mutual crossings.

    Tangential contacts have no transversal sign; they make the diagram
    degenerate and raise instead of returning a number.
    """
    if crossings is None:
        crossings = crossings_between(curve_a, curve_b)
    if any(c.low_confidence for c in crossings):
        raise DegenerateContactError("tangential contact between curves; linking undefined")
    total = sum(crossing_sign(curve_a, c, curve_b) for c in crossings)
    half = 0.5 * total
    return int(half) if float(half).is_integer() else half


def rho_root_invariant(sw: SpectralSweep, band: int) -> int:
    """Number of sign changes of a tracked band's rho around the circle."""
    rho = sw.rho[:, band]
    m = len(rho)
    count = 0
    last = m if sw.full_circle else m - 1
    for i in range(last):
        a, b = rho[i], rho[(i + 1) % m]
        if a != 0.0 and b != 0.0 and np.sign(a) != np.sign(b):
            count += 1
    return count


def _cyclic_distance(a, b):
    d = abs(a - b) % TWO_PI
    return min(d, TWO_PI - d)


def _bracket_degenerate(sw, band: int, theta: float) -> bool:
    # A rho sign flip across a degeneracy-flagged node is a branch switch
    # inside a multiplet, not a cusp of the smooth front.
    m = len(sw.thetas)
    step = sw.thetas[1] - sw.thetas[0]
    k = int(np.floor((theta - sw.thetas[0]) / step)) % m
    return bool(sw.degenerate[k, band] or sw.degenerate[(k + 1) % m, band])


@dataclass
class TunnelingReport:
    flag: bool
    ground_max: float
    barrier_entrance: float
    barrier_top: float
    rho2_roots_near: int


def tunneling_indicator(sw: SpectralSweep, barrier: BarrierSpec,
                        theta_star: Optional[float] = None,
                        neighbourhood: float = TUNNEL_NEIGHBOURHOOD) -> TunnelingReport:
    """Tunneling diagnosis for a barrier problem.

    Flags tunneling when (a) the forward-path maximum of the ground band
    sits strictly inside the barrier's energy window (above the entrance
    weight l, below the plateau top l + h), so the path passes the barrier
    without clearing it, and (b) at least two rho roots of band 2 lie near
    the gap minimum, the local signature of the tail pair.
    """
    if barrier is None:
        raise ValueError("tunneling analysis requires a barrier problem")
    fwd = (sw.thetas >= FORWARD_WINDOW[0]) & (sw.thetas <= FORWARD_WINDOW[1] + 1e-12)
    svals, _, srho = sw.sorted_view()
    ground_max = float(svals[fwd, 0].max())
    entrance = float(barrier.l)
    top = float(barrier.l + barrier.h)
    if theta_star is None:
        theta_star = gap(sw).theta_star
    rho2 = srho[:, 1]
    m = len(rho2)
    near = 0
    last = m if sw.full_circle else m - 1
    for i in range(last):
        a, b = rho2[i], rho2[(i + 1) % m]
        if a != 0.0 and b != 0.0 and np.sign(a) != np.sign(b):
            if _cyclic_distance(sw.thetas[i], theta_star) <= neighbourhood:
                near += 1
    inside = entrance < ground_max < top
    return TunnelingReport(flag=bool(inside and near >= 2), ground_max=ground_max,
                           barrier_entrance=entrance, barrier_top=top,
                           rho2_roots_near=near)


@dataclass
class GapReport:
    morphology: str            # mild | steep | supersteep | exact-crossing
    theta_star: float
    min_gap: float
    near_boundary: bool
    inflections_near: dict     # band -> angles within the window
    window: float
    flat_gap: bool


def classify(sw: SpectralSweep, window: float = CLASSIFY_WINDOW,
             flat_rtol: float = FLAT_GAP_RTOL, crossing_rtol: float = 1e-7) -> GapReport:
    """Morphology of the forward-path gap.

    exact-crossing: the gap reaches zero to tolerance on the forward leg.
    steep: band 2 carries an inflection pair inside the window around the
    gap minimum (supersteep: band 1 as well), the local signature of a
    swallow tail forming next to the gap.  mild otherwise.  A flat gap
    profile (relative variation below ``flat_rtol``) is mild outright:
    with no anticrossing there is nothing to steepen, whatever incidental
    inflections the bands carry elsewhere.  Mild reports also carry a
    near-boundary indicator comparing curvature extremes near the minimum
    against the forward leg, which approaches zero from below as an
    inflection pair is about to be born.
    """
    gf = gap(sw, window=FORWARD_WINDOW)
    theta_star, g_star = gf.theta_star, gf.g_star
    if g_star < crossing_rtol * sw.scale:
        return GapReport(morphology="exact-crossing", theta_star=theta_star,
                         min_gap=g_star, near_boundary=False, inflections_near={},
                         window=window, flat_gap=False)
    gmin, gmax = float(gf.values.min()), float(gf.values.max())
    flat = (gmax - gmin) <= flat_rtol * gmin
    if flat:
        return GapReport(morphology="mild", theta_star=theta_star, min_gap=g_star,
                         near_boundary=False, inflections_near={}, window=window,
                         flat_gap=True)
    near = {}
    for band in (1, 0):
        fc = front(sw, band)
        roots = inflections(fc).roots
        near[band + 1] = sorted(r for r in roots if _cyclic_distance(r, theta_star) <= window)
    if len(near[2]) >= 2:
        morph = "supersteep" if len(near[1]) >= 2 else "steep"
        return GapReport(morphology=morph, theta_star=theta_star, min_gap=g_star,
                         near_boundary=False, inflections_near=near, window=window,
                         flat_gap=False)
    # mild; measure how close band 2 is to developing an inflection pair
    fwd = (sw.thetas >= FORWARD_WINDOW[0]) & (sw.thetas <= FORWARD_WINDOW[1] + 1e-12)
    lam2dd = sw.rho[:, 1] - sw.values[:, 1]
    dd_fwd = lam2dd[fwd]
    th_fwd = sw.thetas[fwd]
    in_win = np.array([_cyclic_distance(t, theta_star) <= BOUNDARY_WINDOW for t in th_fwd])
    scale = np.abs(dd_fwd).max()
    ratio = float(dd_fwd[in_win].max() / scale) if scale > 0 and in_win.any() else -1.0
    return GapReport(morphology="mild", theta_star=theta_star, min_gap=g_star,
                     near_boundary=bool(ratio > BOUNDARY_RATIO), inflections_near=near,
                     window=window, flat_gap=False)


def band_invariants(sw: SpectralSweep, band: int) -> dict:
    fc = front(sw, band)
    cusp_set = cusps(fc)
    crossings = self_intersections(fc)
    w = writhe(fc, crossings)
    try:
        mu = maslov(fc, cusp_set)
    except ValueError:
        mu = None
    n_cusps = len(cusp_set.roots)
    tb = w - 0.5 * n_cusps
    return {
        "winding": winding_index(fc),
        "maslov": mu,
        "cusps": n_cusps,
        "writhe": w,
        "tb": int(tb) if float(tb).is_integer() else tb,
    }


def build_report(pair: HamiltonianPair, sw: SpectralSweep, bands=(0, 1),
                 barrier: Optional[BarrierSpec] = None, window: float = CLASSIFY_WINDOW,
                 with_linking: bool = True) -> dict:
    """Assemble the analysis report for one problem.

    Matches the persisted schema: problem identity, gap minimum and
    morphology, per-band rho root counts and front invariants, tunneling
    (barrier problems only), and pairwise linking between the requested
    band fronts.  Swallow tails bracketed by flagged degeneracies are
    dropped; each surviving tail carries the planar distance from its arc
    to the lower band front, so tail-boundary contact is ``boundary_distance``
    small against ``diameter``.
    """
    rep = classify(sw, window=window)
    out = {
        "problem": {"family": pair.family, "dim": pair.dim,
                    "params": dict(pair.params), "seed": pair.seed},
        "theta_star": rep.theta_star,
        "min_gap": rep.min_gap,
        "morphology": rep.morphology,
        "near_boundary": rep.near_boundary,
        "rho_roots": {str(b + 1): rho_root_invariant(sw, b) for b in bands},
        "tunneling": None,
        "invariants": {str(b + 1): band_invariants(sw, b) for b in bands},
        "linking": [],
    }
    if pair.family == "hamming-barrier" and barrier is None:
        p = pair.params
        barrier = BarrierSpec(p["n"], p["l"], p["u"], p["h"])
    if barrier is not None:
        tun = tunneling_indicator(sw, barrier, theta_star=rep.theta_star)
        out["tunneling"] = {"flag": tun.flag, "ground_max": tun.ground_max,
                            "barrier_top": tun.barrier_top,
                            "entrance": tun.barrier_entrance,
                            "rho2_roots_near": tun.rho2_roots_near}
    if len(bands) >= 2:
        # gap geometry lives on the sorted bands: the tracked branch weaves
        # across avoided crossings and its tails belong to other bands
        fc2 = front(sw, bands[1], use_sorted=True)
        xy2 = fc2.xy
        boundary = front(sw, bands[0], use_sorted=True).xy[::2]
        out["tails"] = []
        for t in swallow_tails(fc2):
            if (_bracket_degenerate(sw, bands[1], t.theta_enter)
                    or _bracket_degenerate(sw, bands[1], t.theta_exit)):
                continue
            if t.diameter <= 1e-9 * sw.scale:
                # sub-resolution excursion on a collapsed front (exact
                # band exchanges too steep for the degeneracy flags)
                continue
            span = (t.theta_exit - t.theta_enter) % TWO_PI
            arc = xy2[(fc2.thetas - t.theta_enter) % TWO_PI <= span][::2]
            if len(arc) == 0:
                mid = (t.theta_enter + 0.5 * span) % TWO_PI
                arc = xy2[[int(np.argmin(np.abs(fc2.thetas - mid)))]]
            out["tails"].append({
                "enter": t.theta_enter, "exit": t.theta_exit, "sign": t.sign,
                "diameter": t.diameter, "crossing_absent": t.crossing_absent,
                "boundary_distance": float(np.min(np.hypot(
                    arc[:, 0, None] - boundary[None, :, 0],
                    arc[:, 1, None] - boundary[None, :, 1]))),
                "distance_to_gap": _cyclic_distance(
                    (t.theta_enter + 0.5 * span) % TWO_PI, rep.theta_star),
            })
    if with_linking and len(bands) >= 2:
        fronts = {b: front(sw, b) for b in bands}
        for i, bi in enumerate(bands):
            for bj in bands[i + 1:]:
                try:
                    lk = linking(fronts[bi], fronts[bj])
                except DegenerateContactError:
                    lk = None
                out["linking"].append([bi + 1, bj + 1, lk])
    return out
