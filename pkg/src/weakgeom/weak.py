"""Weak functions of pre/post-selected qubit ensembles and their geometry."""

from __future__ import annotations

from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from .errors import (
    DegenerateGeneralizedEnsemble,
    DimensionMismatch,
    EigenbasisContainsPost,
    NotDensityOperator,
)
from .hermitian import (
    EPS_DIST,
    EPS_HERM,
    EPS_NORM,
    HermitianOp,
    Ket,
    SPoint,
    _require_trace_zero,
    check_distinct_nonorthogonal,
    make_ket,
    mub_partner,
    orthogonal_complement,
    projector,
    scalar_product,
    state_image,
)

K_LINE_SAMPLES = (-2.0, -1.0, 0.0, 1.0, 2.0)


@dataclass(frozen=True, eq=False)
class PPSEnsemble:
    pre: Ket
    post: Ket
    overlap: complex  # <post|pre>
    omega: float
    gamma: Ket

    @property
    def gamma_perp(self) -> Ket:
        return orthogonal_complement(self.gamma)

    @property
    def tan_half_omega(self) -> float:
        return float(np.tan(0.5 * self.omega))


def make_ensemble(pre: Ket, post: Ket) -> PPSEnsemble:
    """Validate a distinct, non-orthogonal qubit pair and fix omega.

    gamma points along r_pre x r_post. |omega| comes from the Bloch angle
    between the two states, and its sign is taken from Im W(|gamma><gamma|) so
    that W(|gamma><gamma|) = (1 + i tan(omega/2)) / 2 holds.
    """
    if pre.dim != 2 or post.dim != 2:
        raise DimensionMismatch("ensembles are defined for qubits")
    check_distinct_nonorthogonal(pre, post)
    gamma, _ = mub_partner(pre, post)
    rp, rq = pre.bloch, post.bloch
    angle = float(np.arctan2(np.linalg.norm(np.cross(rp, rq)), rp @ rq))
    overlap = post.inner(pre)
    w_gamma = _weak(pre.amplitudes, post.amplitudes, projector(gamma).matrix)
    omega = angle if w_gamma.imag >= 0 else -angle
    return PPSEnsemble(pre=pre, post=post, overlap=overlap, omega=omega, gamma=gamma)


def _weak(pre_amps, post_amps, mat) -> complex:
    num = np.vdot(post_amps, mat @ pre_amps)
    return complex(num / np.vdot(post_amps, pre_amps))


def weak_value(e: PPSEnsemble, m: HermitianOp) -> complex:
    """<post|M|pre> / <post|pre>."""
    if m.dim != 2:
        raise DimensionMismatch(f"qubit ensemble cannot weigh a {m.dim}x{m.dim} operator")
    return _weak(e.pre.amplitudes, e.post.amplitudes, m.matrix)


# -- mixed pre-selection ------------------------------------------------------


@dataclass(frozen=True, eq=False)
class DensityOp:
    """Qubit density operator (1-p)|phi><phi| + p|phi_perp><phi_perp|, p <= 1/2."""

    op: HermitianOp
    p: float
    phi: Ket
    phi_perp: Ket

    @classmethod
    def from_op(cls, op: HermitianOp) -> "DensityOp":
        if op.dim != 2:
            raise DimensionMismatch("density operators here are qubit operators")
        if abs(op.trace - 1.0) > EPS_HERM:
            raise NotDensityOperator(f"trace {op.trace!r} != 1")
        vals, vecs = np.linalg.eigh(op.matrix)
        if vals[0] < -EPS_NORM or vals[1] > 1.0 + EPS_NORM:
            raise NotDensityOperator(f"eigenvalues {vals} outside [0, 1]")
        k0, k1 = make_ket(vecs[:, 0]), make_ket(vecs[:, 1])
        if abs(vals[1] - vals[0]) <= EPS_NORM:
            # I/2: every basis diagonalizes it; prefer the larger leading amplitude
            if k0.amplitudes[0].real > k1.amplitudes[0].real:
                k0, k1 = k1, k0
        p = float(np.clip(vals[0], 0.0, 0.5))
        return cls(op=op, p=p, phi=k1, phi_perp=k0)

    @classmethod
    def from_mixture(cls, phi: Ket, p: float) -> "DensityOp":
        if not 0.0 <= p <= 1.0:
            raise NotDensityOperator(f"mixing weight {p!r} outside [0, 1]")
        perp = orthogonal_complement(phi)
        if p > 0.5:
            phi, perp, p = perp, phi, 1.0 - p
        mat = (1 - p) * projector(phi).matrix + p * projector(perp).matrix
        return cls(op=HermitianOp(mat), p=float(p), phi=phi, phi_perp=perp)

    @property
    def matrix(self) -> np.ndarray:
        return self.op.matrix

    @property
    def bloch(self) -> np.ndarray:
        return self.op.bloch


def generalized_weak_value(rho: DensityOp, post: Ket, m: HermitianOp) -> complex:
    """Tr(|post><post| M rho) / Tr(|post><post| rho).

    Evaluated in rho's eigenbasis: each overlap <k|post> then appears in both
    numerator and denominator, so its rounding cancels when the overlap is
    small. Only a vanishing post-selection probability is rejected here; the
    finer condition on the eigenbasis matters for ``mixture_decomposition``.
    """
    if m.dim != 2 or post.dim != 2:
        raise DimensionMismatch("generalized weak values are defined for qubits")
    q = post.amplitudes
    num, denom = 0j, 0.0
    for weight, k in ((1.0 - rho.p, rho.phi.amplitudes), (rho.p, rho.phi_perp.amplitudes)):
        ov = np.vdot(q, k)
        num += weight * np.vdot(q, m.matrix @ k) * np.conj(ov)
        denom += weight * abs(ov) ** 2
    if denom <= EPS_DIST:
        raise DegenerateGeneralizedEnsemble("post-selection has zero probability under rho")
    return complex(num / denom)


class MixtureTerms(NamedTuple):
    w1: float
    v1: complex
    w2: float
    v2: complex


def mixture_decomposition(rho: DensityOp, post: Ket, m: HermitianOp) -> MixtureTerms:
    """Split W_rho into weights times the pure weak values of rho's eigenstates."""
    if post.dim != 2 or m.dim != 2:
        raise DimensionMismatch("generalized weak values are defined for qubits")
    if abs(rho.p - 0.5) <= EPS_DIST:
        raise DegenerateGeneralizedEnsemble("maximally mixed pre-selection")
    c1 = abs(post.inner(rho.phi)) ** 2
    c2 = abs(post.inner(rho.phi_perp)) ** 2
    if min(c1, c2) <= EPS_DIST:
        raise EigenbasisContainsPost("rho's eigenbasis contains the post-selected state")
    denom = (1 - rho.p) * c1 + rho.p * c2
    w1 = (1 - rho.p) * c1 / denom
    w2 = rho.p * c2 / denom
    v1 = _weak(rho.phi.amplitudes, post.amplitudes, m.matrix)
    v2 = _weak(rho.phi_perp.amplitudes, post.amplitudes, m.matrix)
    return MixtureTerms(w1, v1, w2, v2)


# -- PPS plane and invariant lines --------------------------------------------


@dataclass(frozen=True, eq=False)
class PPSPlane:
    e1: SPoint
    e2: SPoint
    normal: SPoint
    p_point: SPoint

    def residual(self, x: SPoint) -> float:
        """Distance from ``x`` to the plane."""
        return abs(scalar_product(x, self.normal))


def midpoint(e: PPSEnsemble) -> SPoint:
    """P = (|pre><pre| + |post><post| - I) / 2."""
    return SPoint(0.5 * (e.pre.bloch + e.post.bloch))


def _unit(x: SPoint) -> SPoint:
    return x * (1.0 / np.sqrt(scalar_product(x, x)))


def pps_plane(e: PPSEnsemble) -> PPSPlane:
    u = SPoint.from_op(state_image(e.pre))
    v = SPoint.from_op(state_image(e.post))
    e1 = _unit(u)
    e2 = _unit(v - e1 * scalar_product(v, e1))
    normal = _unit(SPoint.from_op(state_image(e.gamma)))
    return PPSPlane(e1=e1, e2=e2, normal=normal, p_point=midpoint(e))


@dataclass(frozen=True, eq=False)
class KLine:
    """Affine line of trace-0 operators sharing the weak value (s + i a tan(omega/2))/2."""

    s: float
    a: float
    base: SPoint
    direction: SPoint

    def point(self, t: float) -> SPoint:
        return self.base + self.direction * t

    def sample(self, ts=K_LINE_SAMPLES) -> list[SPoint]:
        return [self.point(t) for t in ts]


def k_line(e: PPSEnsemble, s: float, a: float = 0.0) -> KLine:
    gamma_img = SPoint.from_op(state_image(e.gamma))
    base = midpoint(e) * s + gamma_img * a
    chord = SPoint(e.post.bloch - e.pre.bloch)
    return KLine(s=float(s), a=float(a), base=base, direction=_unit(chord))


@dataclass(frozen=True)
class WeakDecomposition:
    trace: float
    s: float
    a: float
    omega: float

    @property
    def weak_value(self) -> complex:
        return 0.5 * complex(self.trace + self.s, self.a * np.tan(0.5 * self.omega))


def decompose_weak(e: PPSEnsemble, n: HermitianOp) -> WeakDecomposition:
    """Trace, invariant-line coordinate s and plane offset a of ``n``.

    s and a come from orthogonal projection of the traceless part onto P and
    onto the gamma image; the remaining component runs along the chord between
    the two state images and does not move the weak value.
    """
    if n.dim != 2:
        raise DimensionMismatch(f"qubit ensemble cannot weigh a {n.dim}x{n.dim} operator")
    m = SPoint.from_op(n.traceless())
    p = midpoint(e)
    g = SPoint.from_op(state_image(e.gamma))
    s = scalar_product(m, p) / scalar_product(p, p)
    a = scalar_product(m, g) / scalar_product(g, g)
    return WeakDecomposition(trace=n.trace, s=s, a=a, omega=e.omega)


def is_in_pps_plane(e: PPSEnsemble, m: HermitianOp, tol: float = 1e-10) -> bool:
    _require_trace_zero(m)
    return abs(decompose_weak(e, m).a) <= tol

