"""Front geometry tests.

Synthetic support profiles are the oracles: their lambda, lambda' and rho
are closed-form, so cusp angles, inflection angles, lengths and crossing
counts are all known exactly before the detectors run.
"""

import numpy as np
import pytest

from gapscope import curves, fixtures, problems
from gapscope.curves import FrontCurve
from gapscope.sweep import ThetaGrid, sweep

from conftest import random_hermitian_pair

TWO_PI = 2.0 * np.pi


def _polyline_front(points, thetas):
    # invert the support map so .xy reproduces the given points exactly
    pts = np.asarray(points, dtype=float)
    th = np.asarray(thetas, dtype=float)
    lam = pts[:, 0] * np.cos(th) + pts[:, 1] * np.sin(th)
    dlam = -pts[:, 0] * np.sin(th) + pts[:, 1] * np.cos(th)
    return FrontCurve(band=0, thetas=th, lam=lam, dlam=dlam,
                      rho=np.zeros(len(th)), closed=False)


def test_support_identity_on_production_front(rng):
    h0, h1 = random_hermitian_pair(5, rng)
    pair = problems.HamiltonianPair(h0, h1, family="random", params={})
    sw = sweep(pair, ThetaGrid(delta=0.005))
    fc = curves.front(sw, 0)
    assert fc.support_residual() < 1e-8


def test_front_tangent_direction():
    # gamma'(theta) = i rho e^{i theta}; check against finite differences
    fc = fixtures.swallow_tailed_quadrangle()
    pts = fc.xy
    d = fc.delta
    fd = (np.roll(pts, -1, axis=0) - np.roll(pts, 1, axis=0)) / (2 * d)
    c, s = np.cos(fc.thetas), np.sin(fc.thetas)
    expect = np.column_stack([-fc.rho * s, fc.rho * c])
    assert np.max(np.abs(fd - expect)) < 1e-4


def test_circle_front_is_exact():
    fc = fixtures.circle(2.0, center=(0.5, -0.3))
    pts = fc.xy
    r = np.hypot(pts[:, 0] - 0.5, pts[:, 1] + 0.3)
    assert np.max(np.abs(r - 2.0)) < 1e-12


def test_arc_length_circle_and_polyline_agreement():
    fc = fixtures.circle(1.5)
    assert curves.arc_length(fc) == pytest.approx(TWO_PI * 1.5, rel=1e-12)
    assert curves.polyline_length(fc) == pytest.approx(TWO_PI * 1.5, rel=1e-4)
    quad = fixtures.swallow_tailed_quadrangle()
    assert curves.arc_length(quad) == pytest.approx(curves.polyline_length(quad), rel=1e-3)


def test_cusps_against_closed_form():
    # rho = 0.05 - 3 cos(2 theta): four roots at +-arccos(1/60)/2 mod pi
    ast = fixtures.astroid()
    fn = fixtures.profile_rho_fn(0.05, {2: (1.0, 0.0)})
    rs = curves.cusps(ast, rho_fn=fn)
    base = 0.5 * np.arccos(0.05 / 3.0)
    expect = sorted([base, np.pi - base, np.pi + base, TWO_PI - base])
    assert len(rs.roots) == 4
    assert np.max(np.abs(np.array(sorted(rs.roots)) - expect)) < 1e-9
    assert rs.tangential == []


def test_cusps_without_callable_fall_back_to_interpolation():
    ast = fixtures.astroid()
    rs = curves.cusps(ast)
    base = 0.5 * np.arccos(0.05 / 3.0)
    expect = sorted([base, np.pi - base, np.pi + base, TWO_PI - base])
    assert np.max(np.abs(np.array(sorted(rs.roots)) - expect)) < 1e-4


def test_smooth_front_has_no_cusps():
    fc = fixtures.circle(1.0)
    assert curves.cusps(fc).roots == []


def test_inflections_against_closed_form():
    # rho - lambda = lambda'' = -4 cos(2 theta) for the astroid profile
    ast = fixtures.astroid()
    rs = curves.inflections(ast)
    expect = [np.pi / 4, 3 * np.pi / 4, 5 * np.pi / 4, 7 * np.pi / 4]
    assert len(rs.roots) == 4
    assert np.max(np.abs(np.array(sorted(rs.roots)) - expect)) < 1e-6


def test_self_intersection_counts_on_profiles():
    assert len(curves.self_intersections(fixtures.swallow_tailed_quadrangle())) == 4
    assert len(curves.self_intersections(fixtures.swallow_tailed_triangle())) == 3
    assert len(curves.self_intersections(fixtures.ideal_hyperbolic_quadrangle())) == 16
    assert curves.self_intersections(fixtures.circle(1.0)) == []


def test_self_intersections_on_collapsed_curve_terminates(rng):
    # a band inside a persistent multiplet collapses its front to a point
    # cloud; a few excursion segments must not blow up the candidate grid
    n = 600
    pts = np.full((n, 2), 1.0) + 1e-15 * rng.standard_normal((n, 2))
    pts[300] = (1.05, 1.0)
    pts[301] = (1.05, 1.02)
    fc = _polyline_front(pts, np.linspace(0.0, 2.0, n))
    assert isinstance(curves.self_intersections(fc), list)


def test_crossings_between_offset_circles():
    # unit circles at distance 1.2: intersections at (0.6, +-0.8)
    a = fixtures.circle(1.0)
    b = fixtures.circle(1.0, center=(1.2, 0.0))
    xs = curves.crossings_between(a, b)
    assert len(xs) == 2
    pts = sorted((round(x.point[0], 6), round(x.point[1], 6)) for x in xs)
    assert pts[0] == pytest.approx((0.6, -0.8), abs=1e-4)
    assert pts[1] == pytest.approx((0.6, 0.8), abs=1e-4)
    assert not any(x.low_confidence for x in xs)


def test_disjoint_circles_do_not_cross():
    a = fixtures.circle(1.0)
    b = fixtures.circle(0.5, center=(3.0, 0.0))
    assert curves.crossings_between(a, b) == []


def test_shallow_crossing_flagged_low_confidence():
    a = _polyline_front([(-1.0, 0.0), (0.0, 0.0), (1.0, 0.0)], [0.0, 0.1, 0.2])
    b = _polyline_front([(-1.0, -6e-5), (0.0, -1e-5), (1.0, 4e-5)], [0.0, 0.1, 0.2])
    xs = curves.crossings_between(a, b)
    assert len(xs) == 1
    assert xs[0].low_confidence


def test_swallow_tails_on_quadrangle():
    quad = fixtures.swallow_tailed_quadrangle()
    tails = curves.swallow_tails(quad)
    assert len(tails) == 4
    for t in tails:
        assert t.crossing is not None
        assert t.diameter > 0
        # each tail spans the short arc between two consecutive cusps
        assert 0 < (t.theta_exit - t.theta_enter) % TWO_PI < np.pi / 2


def test_smooth_front_has_no_tails():
    assert curves.swallow_tails(fixtures.circle(1.0)) == []


def test_vertices_of_elliptical_profile():
    fc = fixtures.profile_front(1.0, {2: (0.05, 0.0)}, m=4096)
    vs = curves.vertices(fc)
    assert vs.count == 4
    assert not vs.constant_curvature
    got = np.sort(np.array(vs.thetas))
    expect = np.array([0.0, np.pi / 2, np.pi, 3 * np.pi / 2])
    # sign changes are attributed to the node before them, so the theta = 0
    # extremum may be reported just below 2 pi; compare cyclically
    d = np.abs(got[:, None] - expect[None, :])
    d = np.minimum(d, TWO_PI - d)
    assert np.max(d.min(axis=1)) < 2e-3
    assert len(set(d.argmin(axis=1))) == 4


def test_vertices_of_circle_reports_constant_curvature():
    vs = curves.vertices(fixtures.circle(1.0))
    assert vs.constant_curvature
    assert vs.count == 0


def test_boundary_is_convex(rng):
    h0, h1 = random_hermitian_pair(6, rng)
    pair = problems.HamiltonianPair(h0, h1, family="random", params={})
    sw = sweep(pair, ThetaGrid(delta=0.005))
    rep = curves.boundary(sw)
    assert rep.convexity_max <= 1e-8
    assert rep.sharpness >= 0.0


def test_boundary_window_restricts_sharpness_location(rng):
    h0, h1 = random_hermitian_pair(6, rng)
    pair = problems.HamiltonianPair(h0, h1, family="random", params={})
    sw = sweep(pair, ThetaGrid(delta=0.01))
    rep = curves.boundary(sw, window=(0.0, np.pi / 2))
    assert 0.0 <= rep.sharpness_theta <= np.pi / 2


def test_polar_plot_diagonal_pair():
    pair = problems.diagonal_pair([2.0], [1.0])
    sw = sweep(pair, ThetaGrid(delta=0.01))
    pts = curves.polar_plot(sw, 0)
    z = (2.0 * np.cos(sw.thetas) + 1.0 * np.sin(sw.thetas)) * np.exp(1j * sw.thetas)
    assert np.max(np.abs(pts[:, 0] - z.real)) < 1e-12
    assert np.max(np.abs(pts[:, 1] - z.imag)) < 1e-12


def test_front_uses_sorted_view_when_asked(rng):
    pair = problems.unfolding_family(problems.UnfoldingSpec(eps=0.0))
    sw = sweep(pair, ThetaGrid(delta=0.005))
    tracked = curves.front(sw, 0)
    srt = curves.front(sw, 0, use_sorted=True)
    # tracked band 1 crosses band 2, so the sorted view differs somewhere
    assert np.max(srt.lam - tracked.lam) <= 1e-12
    assert np.any(srt.lam < tracked.lam - 1e-6)
