import numpy as np
import pytest

from conftest import SQ2

from weakgeom import (
    extremal_imag_projectors,
    extremal_real_projectors,
    make_ensemble,
    make_ket,
    projector,
    real_bound,
    sweep_projectors,
    weak_value,
)
from weakgeom.extremal import pauli_weak_vector
from weakgeom.hermitian import ket_from_bloch
from weakgeom.sampling import random_pair, uniform_sphere


class TestRealExtremes:
    def test_mub_instance(self, states):
        rep = extremal_real_projectors(make_ensemble(states["+"], states["0"]))
        assert rep.w_plus.real == pytest.approx(0.5 + SQ2 / 2, abs=1e-12)
        assert rep.w_plus.real == pytest.approx(1.207107, abs=1e-6)
        assert rep.w_minus.real == pytest.approx(0.5 - SQ2 / 2, abs=1e-12)
        assert rep.bound == pytest.approx(SQ2 / 2)

    def test_overlap_half(self):
        # Bloch angle 2pi/3 gives |<pre|post>| = 1/2
        pre = ket_from_bloch([np.sin(2 * np.pi / 3), 0, np.cos(2 * np.pi / 3)])
        e = make_ensemble(pre, make_ket([1, 0]))
        assert abs(e.overlap) == pytest.approx(0.5, abs=1e-12)
        assert extremal_real_projectors(e).w_plus == pytest.approx(1.5, abs=1e-12)

    def test_bound_values(self):
        for mag, bound in ((0.1, 5.0), (1 / SQ2, SQ2 / 2)):
            pre = make_ket([mag, np.sqrt(1 - mag**2)])
            assert real_bound(make_ensemble(pre, make_ket([1, 0]))) == pytest.approx(bound, abs=1e-12)

    def test_bound_decreasing(self):
        mags = np.linspace(0.05, 0.95, 19)
        bounds = [real_bound(make_ensemble(make_ket([m, np.sqrt(1 - m * m)]), make_ket([1, 0]))) for m in mags]
        assert np.all(np.diff(bounds) < 0)

    def test_antipodal(self, rng):
        for _ in range(200):
            rep = extremal_real_projectors(make_ensemble(*random_pair(rng)))
            assert np.abs(rep.h_plus.matrix @ rep.h_minus.matrix).max() < 1e-10
            np.testing.assert_allclose(rep.h_plus.matrix + rep.h_minus.matrix, np.eye(2), atol=1e-10)

    def test_projectors(self, rng):
        for _ in range(500):
            e = make_ensemble(*random_pair(rng))
            rep = extremal_real_projectors(e)
            for h in (rep.h_plus, rep.h_minus):
                assert np.abs(h.matrix @ h.matrix - h.matrix).max() < 1e-10
                assert h.trace == pytest.approx(1.0, abs=1e-12)
            half = 0.5 / abs(e.overlap)
            assert abs(rep.w_plus - (0.5 + half)) < 1e-10
            assert abs(rep.w_minus - (0.5 - half)) < 1e-10

    def test_h_plus_bisects_states(self, rng):
        for _ in range(200):
            e = make_ensemble(*random_pair(rng))
            h = extremal_real_projectors(e).h_plus
            mid = e.pre.bloch + e.post.bloch
            np.testing.assert_allclose(h.bloch, mid / np.linalg.norm(mid), atol=1e-10)

    def test_sweep_bounded(self, rng):
        for _ in range(50):
            e = make_ensemble(*random_pair(rng, margin=0.05))
            sw = sweep_projectors(e, n_grid=10_000, n_random=1000, seed=1)
            assert sw.max_re <= 0.5 + real_bound(e) + 1e-9
            assert sw.min_re >= 0.5 - real_bound(e) - 1e-9

    def test_sweep_attains(self, states):
        e = make_ensemble(states["+"], states["0"])
        sw = sweep_projectors(e, n_grid=10_000)
        assert sw.max_re == pytest.approx(0.5 + SQ2 / 2, abs=1e-3)


class TestImagExtremes:
    def test_mub(self, states):
        ex = extremal_imag_projectors(make_ensemble(states["+"], states["0"]))
        assert abs(ex.w_gamma - (0.5 + 0.5j)) < 1e-12
        assert abs(ex.w_gamma_perp - (0.5 - 0.5j)) < 1e-12

    def test_sweep_bounded(self, rng):
        for _ in range(50):
            e = make_ensemble(*random_pair(rng, margin=0.05))
            ex = extremal_imag_projectors(e)
            sw = sweep_projectors(e, n_grid=10_000, n_random=1000, seed=2)
            top = abs(ex.w_gamma.imag)
            assert sw.max_im <= top + 1e-9 and sw.min_im >= -top - 1e-9

    def test_conjugate_pair(self, rng):
        for _ in range(200):
            ex = extremal_imag_projectors(make_ensemble(*random_pair(rng)))
            assert abs(ex.w_gamma + ex.w_gamma_perp - 1) < 1e-10


class TestPauliWeakVector:
    def test_projector_formula(self, rng):
        for _ in range(200):
            e = make_ensemble(*random_pair(rng))
            s = pauli_weak_vector(e)
            n = uniform_sphere(1, rng)[0]
            w = weak_value(e, projector(ket_from_bloch(n)))
            assert abs(w - 0.5 * (1 + n @ s)) < 1e-10

    def test_mub(self, states):
        s = pauli_weak_vector(make_ensemble(states["+"], states["0"]))
        np.testing.assert_allclose(s, [1, -1j, 1], atol=1e-15)
