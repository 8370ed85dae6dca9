import numpy as np
import pytest

from conftest import SQ2, X, Y, Z, dense_weak, triple_product_weak

from weakgeom import (
    DegenerateEnsemble,
    DegenerateGeneralizedEnsemble,
    DensityOp,
    DimensionMismatch,
    EigenbasisContainsPost,
    HermitianOp,
    NotDensityOperator,
    SPoint,
    decompose_weak,
    generalized_weak_value,
    is_in_pps_plane,
    k_line,
    make_ensemble,
    make_ket,
    mixture_decomposition,
    pps_plane,
    projector,
    scalar_product,
    state_image,
    weak_value,
)
from weakgeom.sampling import random_hermitian, random_ket, random_pair
from weakgeom.weak import midpoint


@pytest.fixture
def mub(states):
    return make_ensemble(states["+"], states["0"])


class TestEnsemble:
    def test_identical_rejected(self, states):
        with pytest.raises(DegenerateEnsemble):
            make_ensemble(states["0"], states["0"])

    def test_orthogonal_rejected(self, states):
        with pytest.raises(DegenerateEnsemble):
            make_ensemble(states["0"], states["1"])

    def test_qutrit_rejected(self):
        with pytest.raises(DimensionMismatch):
            make_ensemble(make_ket([1, 1, 0]), make_ket([1, 0, 0]))

    def test_mub_omega(self, mub):
        assert mub.omega == pytest.approx(np.pi / 2, abs=1e-15)
        assert abs(mub.overlap) == pytest.approx(1 / SQ2, abs=1e-15)

    def test_overlap_modulus_is_cos_half_omega(self, rng):
        for _ in range(500):
            e = make_ensemble(*random_pair(rng))
            assert abs(e.overlap) == pytest.approx(abs(np.cos(e.omega / 2)), abs=1e-12)


class TestWeakValue:
    def test_sigma_x_mub(self, mub):
        assert weak_value(mub, HermitianOp(X)) == pytest.approx(1.0, abs=1e-15)

    def test_sigma_y_mub(self, mub):
        assert weak_value(mub, HermitianOp(Y)) == pytest.approx(-1j, abs=1e-15)

    def test_identity(self, rng):
        for _ in range(100):
            e = make_ensemble(*random_pair(rng))
            assert weak_value(e, HermitianOp(np.eye(2))) == pytest.approx(1.0, abs=1e-12)

    def test_pre_projector_is_one(self, rng):
        for _ in range(100):
            e = make_ensemble(*random_pair(rng))
            assert weak_value(e, projector(e.pre)) == pytest.approx(1.0, abs=1e-12)
            assert weak_value(e, projector(e.post)) == pytest.approx(1.0, abs=1e-12)

    def test_matches_dense_oracle(self, rng):
        for _ in range(500):
            e = make_ensemble(*random_pair(rng))
            m = random_hermitian(rng)
            assert abs(weak_value(e, m) - dense_weak(e.pre, e.post, m.matrix)) < 1e-10

    def test_real_linear(self, rng):
        for _ in range(200):
            e = make_ensemble(*random_pair(rng))
            a, b = random_hermitian(rng), random_hermitian(rng)
            al, be = rng.normal(size=2)
            lhs = weak_value(e, al * a + be * b)
            assert abs(lhs - al * weak_value(e, a) - be * weak_value(e, b)) < 1e-10

    def test_phase_invariance(self, rng):
        for _ in range(200):
            f, q = random_pair(rng)
            m = random_hermitian(rng)
            ph = np.exp(1j * rng.uniform(0, 2 * np.pi, size=2))
            e1 = make_ensemble(f, q)
            e2 = make_ensemble(make_ket(ph[0] * f.amplitudes), make_ket(ph[1] * q.amplitudes))
            assert abs(weak_value(e1, m) - weak_value(e2, m)) < 1e-10
            # the raw ratio is phase free even without canonicalisation
            raw = np.vdot(ph[1] * q.amplitudes, m.matrix @ (ph[0] * f.amplitudes))
            raw /= np.vdot(ph[1] * q.amplitudes, ph[0] * f.amplitudes)
            assert abs(raw - weak_value(e1, m)) < 1e-10

    def test_trace_split(self, rng):
        for _ in range(200):
            e = make_ensemble(*random_pair(rng))
            m = random_hermitian(rng)
            lhs = weak_value(e, m)
            rhs = 0.5 * m.trace + weak_value(e, m.traceless())
            assert abs(lhs - rhs) < 1e-10

    def test_dimension_mismatch(self, mub):
        with pytest.raises(DimensionMismatch):
            weak_value(mub, HermitianOp(np.eye(3)))


class TestGamma:
    def test_closed_form(self, rng):
        for _ in range(1000):
            e = make_ensemble(*random_pair(rng))
            w = weak_value(e, projector(e.gamma))
            assert abs(w - 0.5 * (1 + 1j * e.tan_half_omega)) < 1e-9

    def test_triple_product_oracle(self, rng):
        for _ in range(500):
            e = make_ensemble(*random_pair(rng))
            ref = triple_product_weak(e.pre.bloch, e.post.bloch, e.gamma.bloch)
            assert abs(weak_value(e, projector(e.gamma)) - ref) < 1e-9

    def test_mub_values(self, mub):
        assert abs(weak_value(mub, projector(mub.gamma)) - (0.5 + 0.5j)) < 1e-12
        assert abs(weak_value(mub, projector(mub.gamma_perp)) - (0.5 - 0.5j)) < 1e-12

    def test_omega_positive_with_cross_product_gamma(self, rng):
        for _ in range(1000):
            e = make_ensemble(*random_pair(rng))
            assert e.omega > 0


class TestPlaneAndLines:
    def test_in_plane_real(self, rng):
        for _ in range(500):
            e = make_ensemble(*random_pair(rng))
            x, y = rng.normal(size=2)
            m = x * state_image(e.pre) + y * state_image(e.post)
            assert is_in_pps_plane(e, m)
            assert abs(weak_value(e, m).imag) < 1e-10

    def test_off_plane_imag(self, rng):
        for _ in range(500):
            e = make_ensemble(*random_pair(rng))
            a = rng.uniform(1e-3, 2) * rng.choice([-1, 1])
            m = state_image(e.pre) * rng.normal() + state_image(e.gamma) * a
            assert not is_in_pps_plane(e, m)
            assert abs(weak_value(e, m).imag - 0.5 * a * e.tan_half_omega) < 1e-9

    def test_plane_frame_orthonormal(self, rng):
        for _ in range(100):
            plane = pps_plane(make_ensemble(*random_pair(rng)))
            vecs = [plane.e1, plane.e2, plane.normal]
            gram = np.array([[scalar_product(a, b) for b in vecs] for a in vecs])
            np.testing.assert_allclose(gram, np.eye(3), atol=1e-12)
            assert plane.residual(plane.p_point) < 1e-12

    def test_midpoint(self, mub):
        np.testing.assert_allclose(midpoint(mub).bloch, [0.5, 0, 0.5])
        assert weak_value(mub, midpoint(mub).op) == pytest.approx(0.5, abs=1e-15)

    def test_k_line_constant(self, rng):
        for _ in range(300):
            e = make_ensemble(*random_pair(rng))
            s, a = rng.normal(size=2)
            line = k_line(e, s, a)
            target = 0.5 * complex(s, a * e.tan_half_omega)
            for t in np.linspace(-3, 3, 7):
                assert abs(weak_value(e, line.point(t).op) - target) < 1e-9

    def test_k_line_preimage(self, rng):
        # every trace-0 M with W(M) = (s + i a tan)/2 lies on the line
        for _ in range(300):
            e = make_ensemble(*random_pair(rng))
            m = random_hermitian(rng, traceless=True)
            d = decompose_weak(e, m)
            line = k_line(e, d.s, d.a)
            x = SPoint.from_op(m)
            t = scalar_product(x - line.base, line.direction)
            np.testing.assert_allclose(line.point(t).bloch, x.bloch, atol=1e-9)

    def test_k_line_direction_perpendicular_to_midpoint(self, rng):
        for _ in range(200):
            e = make_ensemble(*random_pair(rng))
            assert abs(scalar_product(k_line(e, 1.0).direction, midpoint(e))) < 1e-10

    def test_k_line_sample_default(self, mub):
        pts = k_line(mub, 1.0).sample()
        assert len(pts) == 5
        for p in pts:
            assert weak_value(mub, p.op) == pytest.approx(0.5, abs=1e-12)


class TestDecomposition:
    def test_round_trip(self, rng):
        for _ in range(2000):
            e = make_ensemble(*random_pair(rng))
            n = random_hermitian(rng)
            d = decompose_weak(e, n)
            assert abs(d.weak_value - weak_value(e, n)) < 1e-9

    def test_sigma_x_mub(self, mub):
        d = decompose_weak(mub, HermitianOp(X))
        assert (d.trace, d.s, d.a) == pytest.approx((0, 2, 0), abs=1e-15)

    def test_gamma_projector(self, mub):
        d = decompose_weak(mub, projector(mub.gamma))
        assert (d.trace, d.s, d.a) == pytest.approx((1, 0, 1), abs=1e-15)

    def test_is_in_plane_requires_trace_zero(self, mub):
        from weakgeom import NotTraceZero

        with pytest.raises(NotTraceZero):
            is_in_pps_plane(mub, HermitianOp(np.eye(2)))


def random_density(rng):
    r = rng.normal(size=3)
    r *= rng.uniform(0, 0.999) / np.linalg.norm(r)
    return DensityOp.from_op(HermitianOp.from_bloch(1.0, r))


class TestGeneralized:
    def test_dense_oracle(self, rng):
        for _ in range(500):
            rho = random_density(rng)
            q = random_ket(rng)
            m = random_hermitian(rng)
            pq = projector(q).matrix
            ref = np.trace(pq @ m.matrix @ rho.matrix) / np.trace(pq @ rho.matrix)
            assert abs(generalized_weak_value(rho, q, m) - ref) < 1e-10

    def test_maximally_mixed(self, states):
        rho = DensityOp.from_op(HermitianOp(np.eye(2) / 2))
        w = generalized_weak_value(rho, states["0"], projector(states["0"]))
        assert w == pytest.approx(1.0, abs=1e-15)

    def test_pure_reduces(self, rng):
        for _ in range(200):
            f, q = random_pair(rng)
            m = random_hermitian(rng)
            rho = DensityOp.from_op(projector(f))
            assert abs(generalized_weak_value(rho, q, m) - weak_value(make_ensemble(f, q), m)) < 1e-12

    def test_mixture_recombination(self, rng):
        done = 0
        while done < 500:
            rho = random_density(rng)
            q = random_ket(rng)
            m = random_hermitian(rng)
            try:
                w1, v1, w2, v2 = mixture_decomposition(rho, q, m)
            except (EigenbasisContainsPost, DegenerateGeneralizedEnsemble):
                continue
            assert w1 + w2 == pytest.approx(1.0, abs=1e-12)
            assert abs(w1 * v1 + w2 * v2 - generalized_weak_value(rho, q, m)) < 1e-10
            done += 1

    def test_from_mixture_swaps_above_half(self, states):
        rho = DensityOp.from_mixture(states["0"], 0.8)
        assert rho.p == pytest.approx(0.2)
        np.testing.assert_allclose(rho.phi.amplitudes, [0, 1])

    def test_from_op_recovers_mixture(self, rng):
        for _ in range(100):
            f = random_ket(rng)
            p = rng.uniform(0, 0.49)
            rho = DensityOp.from_op(HermitianOp(DensityOp.from_mixture(f, p).matrix))
            assert rho.p == pytest.approx(p, abs=1e-12)
            assert abs(abs(rho.phi.inner(f)) - 1) < 1e-10

    def test_eigenbasis_contains_post(self, states):
        rho = DensityOp.from_mixture(states["0"], 0.2)
        with pytest.raises(EigenbasisContainsPost):
            mixture_decomposition(rho, states["0"], HermitianOp(X))

    def test_maximally_mixed_not_decomposable(self, states):
        rho = DensityOp.from_op(HermitianOp(np.eye(2) / 2))
        with pytest.raises(DegenerateGeneralizedEnsemble):
            mixture_decomposition(rho, states["+"], HermitianOp(X))

    def test_zero_probability(self, states):
        rho = DensityOp.from_op(projector(states["0"]))
        with pytest.raises(DegenerateGeneralizedEnsemble):
            generalized_weak_value(rho, states["1"], HermitianOp(Z))

    def test_not_density(self):
        with pytest.raises(NotDensityOperator):
            DensityOp.from_op(HermitianOp(np.diag([1.5, -0.5])))
        with pytest.raises(NotDensityOperator):
            DensityOp.from_op(HermitianOp(np.eye(2)))
