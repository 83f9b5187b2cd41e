"""Generator family tests.

Closed-form spectra and hand-enumerated matrix entries are the oracles
here; nothing below depends on the sweep machinery.
"""

from math import comb

import numpy as np
import pytest

from gapscope import problems


def test_transverse_field_single_site():
    t = problems.transverse_field(1)
    assert np.allclose(np.sort(np.linalg.eigvalsh(t)), [0.0, 1.0])


def test_transverse_field_spectrum_is_binomial():
    # sum of n rank-one site terms: eigenvalue k with multiplicity C(n, k)
    for n in (2, 3, 5):
        vals = np.linalg.eigvalsh(problems.transverse_field(n))
        expect = np.repeat(np.arange(n + 1.0), [comb(n, k) for k in range(n + 1)])
        assert np.max(np.abs(np.sort(vals) - expect)) < 1e-12


def test_transverse_field_ground_state_uniform():
    n = 4
    t = problems.transverse_field(n)
    vals, vecs = np.linalg.eigh(t)
    g = vecs[:, 0]
    g = g / g[np.argmax(np.abs(g))]
    assert np.max(np.abs(g - g[0])) < 1e-12


def test_hamming_weight_entries():
    w = problems.hamming_weight(5)
    assert w.shape == (32, 32)
    assert np.max(np.abs(w - np.diag(np.diag(w)))) == 0.0
    # |10000> has index 16 under site-0-is-MSB ordering
    assert w[16, 16] == 1.0
    assert w[0, 0] == 0.0
    assert w[31, 31] == 5.0
    assert w[0b11100, 0b11100] == 3.0


def test_barrier_sign_window():
    spec = problems.BarrierSpec(5, 1, 2, 10.0)
    v = np.diag(problems.barrier_sign(spec)).real
    w = problems.weight_values(5)
    assert v[0b10000] == 10.0      # weight 1 sits inside the window
    assert v[0] == 0.0
    assert v[0b11100] == 0.0       # weight 3 is past the exit
    assert np.all(v[(w >= 1) & (w <= 2)] == 10.0)
    assert np.all(v[(w < 1) | (w > 2)] == 0.0)


def test_barrier_sign_zero_height():
    spec = problems.BarrierSpec(4, 1, 3, 0.0)
    assert np.max(np.abs(problems.barrier_sign(spec))) == 0.0


def test_barrier_spec_validation():
    with pytest.raises(ValueError):
        problems.BarrierSpec(5, 3, 1, 1.0)
    with pytest.raises(ValueError):
        problems.BarrierSpec(5, -1, 2, 1.0)
    with pytest.raises(ValueError):
        problems.BarrierSpec(5, 1, 6, 1.0)


def test_barrier_lagrange_exact_on_default_nodes():
    # full node set interpolates the plateau exactly at every weight
    spec = problems.BarrierSpec(5, 1, 2, 10.0)
    poly, eps_poly = problems.barrier_lagrange(spec)
    ref = problems.barrier_sign(spec)
    assert np.max(np.abs(poly - ref)) < 1e-9
    assert eps_poly < 1e-9


def test_barrier_lagrange_degree_control():
    spec = problems.BarrierSpec(6, 2, 4, 5.0)
    exact, e0 = problems.barrier_lagrange(spec)
    low, e1 = problems.barrier_lagrange(spec, nodes=4)
    assert e0 < 1e-9
    assert e1 > e0
    # the reported figure is the worst miss over the plateau weights
    w = problems.weight_values(6)
    on = (w >= 2) & (w <= 4)
    dev = np.max(np.abs(np.diag(low).real[on] - 5.0))
    assert dev == pytest.approx(e1)


def test_barrier_lagrange_single_weight_window():
    spec = problems.BarrierSpec(4, 2, 2, 3.0)
    poly, eps_poly = problems.barrier_lagrange(spec)
    assert eps_poly < 1e-9
    v = np.diag(poly).real
    w = problems.weight_values(4)
    assert np.allclose(v[w == 2], 3.0)
    assert np.max(np.abs(v[w != 2])) < 1e-9


def test_y_perturbation_seeded_and_bounded():
    p1 = problems.y_perturbation(5, 0.1, seed=3)
    p2 = problems.y_perturbation(5, 0.1, seed=3)
    p3 = problems.y_perturbation(5, 0.1, seed=4)
    assert np.array_equal(p1, p2)
    assert not np.array_equal(p1, p3)
    assert np.max(np.abs(p1 - p1.conj().T)) < 1e-15
    # each site term has norm 1/2, coefficients sit in [-eps, eps]
    assert np.linalg.norm(p1, 2) <= 0.1 * 5 * 0.5 + 1e-12


def test_y_perturbation_scales_linearly():
    a = problems.y_perturbation(4, 0.2, seed=9)
    b = problems.y_perturbation(4, 0.4, seed=9)
    assert np.max(np.abs(2.0 * a - b)) < 1e-14


def test_hamming_plus_barrier_assembly():
    spec = problems.BarrierSpec(5, 1, 2, 10.0)
    pair = problems.hamming_plus_barrier(spec, eps=0.0, seed=0)
    assert pair.dim == 32
    assert np.array_equal(pair.h0, problems.transverse_field(5))
    ref = problems.hamming_weight(5) + problems.barrier_sign(spec)
    assert np.array_equal(pair.h1, ref)
    assert pair.family == "hamming-barrier"
    assert pair.params["h"] == 10.0


def test_hamming_plus_barrier_perturbed():
    spec = problems.BarrierSpec(4, 1, 2, 3.0)
    base = problems.hamming_plus_barrier(spec, eps=0.0, seed=11)
    pert = problems.hamming_plus_barrier(spec, eps=1e-3, seed=11)
    assert np.array_equal(base.h0, pert.h0)
    diff = pert.h1 - base.h1
    assert np.max(np.abs(diff)) > 0
    # subtraction reintroduces rounding at the last bit, nothing more
    assert np.max(np.abs(diff - problems.y_perturbation(4, 1e-3, seed=11))) < 1e-15


def test_grover_pair_projector_spectra():
    pair = problems.grover_pair(8, seed=2)
    for h in (pair.h0, pair.h1):
        vals = np.sort(np.linalg.eigvalsh(h))
        assert abs(vals[0]) < 1e-12
        assert np.max(np.abs(vals[1:] - 1.0)) < 1e-12
    assert 0.0 < pair.params["overlap"] < 1.0


def test_grover_pair_explicit_states():
    a = np.zeros(4, dtype=complex); a[0] = 1.0
    b = np.ones(4, dtype=complex) / 2.0
    pair = problems.grover_pair(4, a=a, b=b)
    assert np.allclose(pair.h0 @ a, 0.0)
    assert np.allclose(pair.h1 @ b, 0.0)
    assert pair.params["overlap"] == pytest.approx(0.5)


def test_grover_pair_rejects_bad_states():
    a = np.zeros(4, dtype=complex); a[0] = 2.0
    b = np.zeros(4, dtype=complex); b[1] = 1.0
    with pytest.raises(ValueError):
        problems.grover_pair(4, a=a, b=b)
    c = np.zeros(4, dtype=complex); c[1] = 1.0
    with pytest.raises(ValueError):
        problems.grover_pair(4, a=b, b=c)


def test_unfolding_recombines_to_schur_form():
    spec = problems.UnfoldingSpec(eps=0.3)
    pair = problems.unfolding_family(spec)
    s = pair.h0 + 1j * pair.h1
    assert np.max(np.abs(np.tril(s, k=-1))) < 1e-15
    assert s[0, 0] == spec.mu1
    assert s[1, 1] == spec.mu2
    assert s[0, 1] == pytest.approx(0.3 * spec.mu12)


def test_unfolding_zero_eps_decouples():
    pair = problems.unfolding_family(problems.UnfoldingSpec(eps=0.0))
    s = pair.h0 + 1j * pair.h1
    assert np.max(np.abs(s[0, 1:])) == 0.0
    assert np.max(np.abs(s[1, 2:])) == 0.0


def test_unfolding_spec_validation():
    with pytest.raises(ValueError):
        problems.UnfoldingSpec(mu1=1.0, mu2=1.0)
    with pytest.raises(ValueError):
        problems.UnfoldingSpec(eps=-0.1)
    with pytest.raises(ValueError):
        problems.UnfoldingSpec(s33=((0.5, 0.0), (0.3, 0.7)))
    with pytest.raises(ValueError):
        problems.UnfoldingSpec(s13=(1.0,))


def test_diagonal_pair_commutes():
    pair = problems.diagonal_pair([1.0, 2.0, 3.0], [0.5, -1.0, 2.0])
    c = pair.h0 @ pair.h1 - pair.h1 @ pair.h0
    assert np.max(np.abs(c)) == 0.0
    assert np.array_equal(np.diag(pair.h0).real, [1.0, 2.0, 3.0])


def test_diagonal_pair_length_mismatch():
    with pytest.raises(ValueError):
        problems.diagonal_pair([1.0, 2.0], [1.0])


def test_site_limit_enforced():
    with pytest.raises(ValueError):
        problems.transverse_field(problems.MAX_SITES + 1)
