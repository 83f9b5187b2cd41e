"""Front invariants and gap morphology tests.

The synthetic profiles have hand-computable crossing and cusp data, so
writhe, Thurston-Bennequin and linking numbers are all known in advance.
Morphology cases use the barrier family at a coarse grid; the reference
classes were established by inspecting the gap and inflection structure
directly.
"""

import numpy as np
import pytest

from gapscope import curves, fixtures, problems, topology
from gapscope.curves import FrontCurve
from gapscope.sweep import ThetaGrid, sweep, gap
from gapscope.topology import DegenerateContactError

TWO_PI = 2.0 * np.pi


def _invariants(fc):
    cusp_set = curves.cusps(fc)
    crossings = curves.self_intersections(fc)
    return {
        "cusps": len(cusp_set.roots),
        "writhe": topology.writhe(fc, crossings),
        "tb": topology.thurston_bennequin(fc, crossings, cusp_set),
        "winding": topology.winding_index(fc),
        "maslov": topology.maslov(fc, cusp_set),
    }


def test_quadrangle_invariants():
    inv = _invariants(fixtures.swallow_tailed_quadrangle())
    assert inv == {"cusps": 8, "writhe": 4, "tb": 0, "winding": 1, "maslov": 0}


def test_triangle_invariants():
    inv = _invariants(fixtures.swallow_tailed_triangle())
    assert inv == {"cusps": 6, "writhe": -1, "tb": -4, "winding": 1, "maslov": 0}


def test_ideal_quadrangle_invariants():
    inv = _invariants(fixtures.ideal_hyperbolic_quadrangle())
    assert inv == {"cusps": 8, "writhe": 0, "tb": -4, "winding": 1, "maslov": 0}


def test_astroid_invariants():
    inv = _invariants(fixtures.astroid())
    assert inv["cusps"] == 4
    assert inv["writhe"] == 0
    assert inv["tb"] == -2


def test_crossing_signs_sum_to_writhe():
    for fix, total in ((fixtures.swallow_tailed_quadrangle(), 4),
                       (fixtures.swallow_tailed_triangle(), -1),
                       (fixtures.ideal_hyperbolic_quadrangle(), 0)):
        xs = curves.self_intersections(fix)
        signs = [topology.crossing_sign(fix, c) for c in xs]
        assert all(s in (-1, 1) for s in signs)
        assert sum(signs) == total


def test_smooth_front_trivial_invariants():
    circ = fixtures.circle(1.0)
    assert topology.winding_index(circ) == 1
    assert topology.maslov(circ) == 0
    assert topology.writhe(circ) == 0
    assert topology.thurston_bennequin(circ) == 0


def test_maslov_rejects_non_alternating_data():
    fc = fixtures.astroid()
    bad = curves.RootSet(roots=list(curves.cusps(fc).roots[:3]), tangential=[])
    with pytest.raises(ValueError):
        topology.maslov(fc, bad)


def test_isotopy_verdicts():
    tri = fixtures.swallow_tailed_triangle()
    ideal = fixtures.ideal_hyperbolic_quadrangle()
    quad = fixtures.swallow_tailed_quadrangle()
    # equal tb: same Legendrian class for these fronts
    assert topology.isotopy_equal(tri, ideal)
    assert not topology.isotopy_equal(quad, tri)
    assert topology.isotopy_equal(quad, quad)


def test_linking_disjoint_is_zero():
    a, b = fixtures.circle(1.0), fixtures.circle(0.5, center=(3.0, 0.0))
    assert topology.linking(a, b) == 0


def test_linking_smooth_pair():
    a, b = fixtures.linking_smooth_pair()
    assert abs(topology.linking(a, b)) == 1


def test_linking_cusp_pair_is_zero():
    a, b = fixtures.linking_cusp_pair()
    assert topology.linking(a, b) == 0


def test_linking_refuses_tangential_contact():
    def poly(points, thetas):
        pts = np.asarray(points, dtype=float)
        th = np.asarray(thetas, dtype=float)
        lam = pts[:, 0] * np.cos(th) + pts[:, 1] * np.sin(th)
        dlam = -pts[:, 0] * np.sin(th) + pts[:, 1] * np.cos(th)
        return FrontCurve(band=0, thetas=th, lam=lam, dlam=dlam,
                          rho=np.ones(len(th)), closed=False)
    a = poly([(-1.0, 0.0), (0.0, 0.0), (1.0, 0.0)], [0.0, 0.1, 0.2])
    b = poly([(-1.0, -6e-5), (0.0, -1e-5), (1.0, 4e-5)], [0.0, 0.1, 0.2])
    with pytest.raises(DegenerateContactError):
        topology.linking(a, b)


def test_rho_root_invariant_counts_sign_changes():
    pair = problems.hamming_plus_barrier(problems.BarrierSpec(5, 1, 2, 10.0))
    sw = sweep(pair, ThetaGrid(delta=0.005))
    count = topology.rho_root_invariant(sw, 1)
    assert count >= 2
    assert count % 2 == 0  # closed curve: sign changes pair off


def _barrier_sweep(n, l, u, h, eps=0.0, delta=0.002):
    pair = problems.hamming_plus_barrier(problems.BarrierSpec(n, l, u, h), eps=eps, seed=1)
    return sweep(pair, ThetaGrid(delta=delta))


def test_classify_no_barrier_is_flat_mild():
    rep = topology.classify(_barrier_sweep(5, 1, 2, 0.0))
    assert rep.morphology == "mild"
    assert rep.flat_gap
    assert not rep.near_boundary
    assert rep.min_gap == pytest.approx(1.0, abs=1e-6)


def test_classify_moderate_barrier_reports_boundary():
    rep = topology.classify(_barrier_sweep(5, 1, 2, 0.95))
    assert rep.morphology == "mild"
    assert rep.near_boundary
    assert not rep.flat_gap


def test_classify_tall_barrier_is_steep():
    rep = topology.classify(_barrier_sweep(5, 1, 2, 7.0))
    assert rep.morphology == "steep"
    # the signature is a pair of band-2 inflections bracketing theta*
    assert len(rep.inflections_near.get(2, [])) >= 2
    assert abs(rep.theta_star - 0.44) < 0.02


def test_classify_wide_barrier_stays_mild():
    rep = topology.classify(_barrier_sweep(5, 3, 4, 10.0, eps=0.05))
    assert rep.morphology == "mild"
    assert rep.flat_gap


def test_classify_exact_crossing():
    pair = problems.unfolding_family(problems.UnfoldingSpec(eps=0.0))
    sw = sweep(pair, ThetaGrid(delta=0.005))
    rep = topology.classify(sw)
    assert rep.morphology == "exact-crossing"
    assert rep.min_gap < 1e-7 * sw.scale


def test_tunneling_flag_on_tall_thin_barrier():
    sw = _barrier_sweep(5, 1, 2, 10.0)
    rep = topology.tunneling_indicator(sw, problems.BarrierSpec(5, 1, 2, 10.0))
    assert rep.flag
    assert rep.barrier_entrance < rep.ground_max < rep.barrier_top
    assert rep.rho2_roots_near >= 2


def test_tunneling_absent_for_wide_barrier():
    sw = _barrier_sweep(5, 3, 4, 10.0, eps=0.05)
    rep = topology.tunneling_indicator(sw, problems.BarrierSpec(5, 3, 4, 10.0))
    assert not rep.flag
    assert rep.ground_max < rep.barrier_entrance + rep.barrier_top


def test_tunneling_absent_without_barrier():
    sw = _barrier_sweep(5, 1, 2, 0.0)
    rep = topology.tunneling_indicator(sw, problems.BarrierSpec(5, 1, 2, 0.0))
    assert not rep.flag


def test_band_invariants_smooth_band(rng):
    pair = problems.hamming_plus_barrier(problems.BarrierSpec(4, 1, 2, 0.5))
    sw = sweep(pair, ThetaGrid(delta=0.005))
    inv = topology.band_invariants(sw, 0)
    assert inv["winding"] == 1
    assert inv["cusps"] == 0
    assert inv["writhe"] == 0
    assert inv["tb"] == 0
    assert inv["maslov"] == 0


def test_build_report_schema():
    pair = problems.hamming_plus_barrier(problems.BarrierSpec(5, 1, 2, 10.0))
    sw = sweep(pair, ThetaGrid(delta=0.005))
    rep = topology.build_report(pair, sw)
    for key in ("problem", "theta_star", "min_gap", "morphology", "near_boundary",
                "rho_roots", "tunneling", "invariants", "linking", "tails"):
        assert key in rep
    assert rep["problem"]["family"] == "hamming-barrier"
    assert rep["tunneling"]["flag"] is True
    assert set(rep["invariants"]) == {"1", "2"}
    assert set(rep["rho_roots"]) == {"1", "2"}


def test_build_report_steep_tail_touches_boundary():
    pair = problems.hamming_plus_barrier(problems.BarrierSpec(5, 1, 2, 10.0))
    sw = sweep(pair, ThetaGrid(delta=0.002))
    rep = topology.build_report(pair, sw)
    assert rep["tails"], "steep barrier should report swallow tails"
    for t in rep["tails"]:
        for key in ("enter", "exit", "sign", "diameter", "crossing_absent",
                    "boundary_distance", "distance_to_gap"):
            assert key in t
    # the gap-carrying tail hugs the boundary at its own scale
    assert min(t["boundary_distance"] / t["diameter"] for t in rep["tails"]) < 0.05


def test_build_report_drops_multiplet_branch_switches():
    # at eps=0 band 2 rides through exact crossings near theta 0 and pi;
    # the rho sign flips there are branch switches, not cusps
    pair = problems.hamming_plus_barrier(problems.BarrierSpec(5, 3, 4, 10.0))
    sw = sweep(pair, ThetaGrid(delta=0.002))
    rep = topology.build_report(pair, sw)
    assert rep["tails"] == []


def test_build_report_wide_barrier_tails_stay_interior():
    pair = problems.hamming_plus_barrier(problems.BarrierSpec(5, 3, 4, 10.0),
                                         eps=0.05, seed=1)
    sw = sweep(pair, ThetaGrid(delta=0.002))
    rep = topology.build_report(pair, sw)
    assert rep["tails"]
    for t in rep["tails"]:
        assert t["boundary_distance"] > t["diameter"]


def test_build_report_without_barrier_block():
    pair = problems.grover_pair(6, seed=3)
    sw = sweep(pair, ThetaGrid(delta=0.005))
    rep = topology.build_report(pair, sw)
    assert rep["tunneling"] is None
    # band 2 exchanges with the coincident perp multiplet along the path;
    # the noise excursions of that collapsed front must not read as tails
    assert rep["tails"] == []
