"""Synthetic front fixtures with known invariants.

A trigonometric support profile

    lambda(theta) = c0 + sum_k (a_k cos k theta + b_k sin k theta)

generates a front in closed form (rho picks up the factor 1 - k^2 per
harmonic), which gives lightweight curves with hand-checkable cusp and
crossing counts.  The named fixtures below reproduce the swallow-tailed
quadrangle, swallow-tailed triangle, and ideal hyperbolic quadrangle
invariant triples, plus the curve pairs used by the linking tests.

Coefficients were frozen after verifying the crossing/cusp counts are
stable from 1536 up to 20000 samples and under phase shifts of the
parameter origin.
"""

import numpy as np

from .curves import FrontCurve, cusps

TWO_PI = 2.0 * np.pi

TRIANGLE_COEFFS = {2: (-0.04, -0.19), 3: (1.10, 0.0), 4: (-0.30, 0.08)}


def profile_front(c0, harmonics, m: int = 4096, label: str = "", phase: float = 0.0) -> FrontCurve:
    """Front of a support profile given as {k: (a_k, b_k)} harmonics."""
    th = TWO_PI * np.arange(m) / m
    shifted = th + phase
    lam = np.full(m, float(c0))
    dlam = np.zeros(m)
    rho = np.full(m, float(c0))
    for k, (a, b) in sorted(harmonics.items()):
        c, s = np.cos(k * shifted), np.sin(k * shifted)
        lam += a * c + b * s
        dlam += k * (-a * s + b * c)
        rho += (1.0 - k * k) * (a * c + b * s)
    return FrontCurve(band=0, thetas=th, lam=lam, dlam=dlam, rho=rho,
                      closed=True, label=label)


def profile_rho_fn(c0, harmonics, phase: float = 0.0):
    """Closed-form rho(theta) for bisection-grade root refinement."""
    def fn(theta):
        t = theta + phase
        out = float(c0)
        for k, (a, b) in harmonics.items():
            out += (1.0 - k * k) * (a * np.cos(k * t) + b * np.sin(k * t))
        return out
    return fn


def circle(radius: float = 1.0, center=(0.0, 0.0), m: int = 1024, label: str = "circle") -> FrontCurve:
    """A circle as a support profile: pure translation harmonics plus c0."""
    cx, cy = center
    return profile_front(radius, {1: (cx, cy)}, m=m, label=label)


def swallow_tailed_quadrangle(m: int = 4096) -> FrontCurve:
    """Four outward tails on a convex core: 8 cusps, 4 crossings, writhe +4, tb 0."""
    return profile_front(1.0, {4: (0.1, 0.0)}, m=m, label="swallow-tailed quadrangle")


def swallow_tailed_triangle(m: int = 8192) -> FrontCurve:
    """Three tails with one inverted lobe: 6 cusps, 3 crossings, writhe -1, tb -4."""
    return profile_front(0.13, TRIANGLE_COEFFS, m=m, label="swallow-tailed triangle")


def ideal_hyperbolic_quadrangle(m: int = 8192) -> FrontCurve:
    """Deep four-fold star: 8 cusps, 16 crossings, writhe 0, tb -4."""
    return profile_front(0.05, {4: (1.0, 0.0)}, m=m, label="ideal hyperbolic quadrangle")


def astroid(m: int = 4096) -> FrontCurve:
    """Four-cusped star with no self-crossings (linking test partner)."""
    return profile_front(0.05, {2: (1.0, 0.0)}, m=m, label="astroid")


def linking_smooth_pair(m: int = 2048):
    """Two smooth convex curves meeting in exactly two transversal points."""
    outer = circle(1.0, m=m, label="outer circle")
    inner = profile_front(0.8, {1: (0.5, 0.0)}, m=m, label="offset circle")
    return outer, inner


def linking_cusp_pair(m: int = 4096):
    """An astroid and a small circle drawn through one of its cusps.

    The circle passes the cusp point transversally, giving two crossings
    that straddle the cusp; their signs cancel.
    """
    star = astroid(m=m)
    cusp_th = cusps(star, rho_fn=profile_rho_fn(0.05, {2: (1.0, 0.0)})).roots[0]
    lam = 0.05 + np.cos(2 * cusp_th)
    dlam = -2.0 * np.sin(2 * cusp_th)
    cx = lam * np.cos(cusp_th) - dlam * np.sin(cusp_th)
    cy = lam * np.sin(cusp_th) + dlam * np.cos(cusp_th)
    small = circle(0.35, center=(cx, cy), m=m // 2, label="cusp circle")
    return star, small
