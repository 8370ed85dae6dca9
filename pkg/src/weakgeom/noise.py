"""Noisy pre-selection: channel models, expected weak values, and inversion for p.

Both channels send |phi><phi| to (1-p)|phi><phi| + p|chi><chi| with a fixed
partner state chi (the orthogonal complement for depolarizing noise, a ground
state for amplitude damping). The generalized weak value is then the ratio of
two functions affine in p,

    W(p) = (n0 + n1 p) / (d0 + d1 p),

so every real component can be inverted for p in closed form.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field

import numpy as np

from .errors import DegenerateGeneralizedEnsemble, InsensitiveObservable, InvalidParameter
from .extremal import extremal_real_projectors
from .hermitian import EPS_DIST, HermitianOp, Ket, make_ket, orthogonal_complement, projector
from .weak import DensityOp, generalized_weak_value, make_ensemble

SENSITIVITY_FLOOR = 1e-10


class ChannelKind(str, enum.Enum):
    DEPOLARIZING = "depolarizing"
    AMPLITUDE_DAMPING = "amplitude_damping"


class Component(str, enum.Enum):
    REAL = "real"
    IMAG = "imag"
    FULL = "full"


def _ground() -> Ket:
    return make_ket([1, 0])


@dataclass(frozen=True, eq=False)
class NoiseChannel:
    """Depolarizing noise is physical for p < 1/2; p in [0, 1) is accepted."""

    kind: ChannelKind
    p: float
    ground: Ket = field(default_factory=_ground)

    def __post_init__(self):
        object.__setattr__(self, "kind", ChannelKind(self.kind))
        if not 0.0 <= self.p < 1.0:
            raise InvalidParameter(f"noise parameter p={self.p!r} outside [0, 1)")

    @property
    def is_physical(self) -> bool:
        return self.kind is not ChannelKind.DEPOLARIZING or self.p < 0.5

    def partner(self, phi: Ket) -> Ket:
        if self.kind is ChannelKind.DEPOLARIZING:
            return orthogonal_complement(phi)
        return self.ground


def legal_interval(kind) -> tuple[float, float]:
    return (0.0, 0.5) if ChannelKind(kind) is ChannelKind.DEPOLARIZING else (0.0, 1.0)


def apply_channel(ch: NoiseChannel, phi: Ket) -> DensityOp:
    if ch.kind is ChannelKind.DEPOLARIZING:
        return DensityOp.from_mixture(phi, ch.p)  # eigenbasis is already phi, phi_perp
    mat = (1 - ch.p) * projector(phi).matrix + ch.p * projector(ch.partner(phi)).matrix
    return DensityOp.from_op(HermitianOp(mat))


def expected_noisy_weak(ch: NoiseChannel, phi: Ket, psi: Ket, m: HermitianOp) -> complex:
    return generalized_weak_value(apply_channel(ch, phi), psi, m)


def mobius_coefficients(kind, phi: Ket, psi: Ket, m: HermitianOp, ground: Ket | None = None):
    """(n0, n1, d0, d1) with W(p) = (n0 + n1 p)/(d0 + d1 p); d0, d1 are real."""
    probe = NoiseChannel(kind, 0.0, ground if ground is not None else _ground())
    chi = probe.partner(phi).amplitudes
    f, q = phi.amplitudes, psi.amplitudes
    a_phi = np.vdot(q, m.matrix @ f) * np.vdot(f, q)
    a_chi = np.vdot(q, m.matrix @ chi) * np.vdot(chi, q)
    c_phi = abs(np.vdot(q, f)) ** 2
    c_chi = abs(np.vdot(q, chi)) ** 2
    return complex(a_phi), complex(a_chi - a_phi), float(c_phi), float(c_chi - c_phi)


def _component(z: complex, component: Component):
    if component is Component.REAL:
        return z.real
    if component is Component.IMAG:
        return z.imag
    return z


def noise_sensitivity(kind, phi: Ket, psi: Ket, m: HermitianOp, component="full",
                      p: float = 0.0, ground: Ket | None = None) -> float:
    """|d/dp| of the chosen component of W(p), from the Moebius form."""
    component = Component(component)
    n0, n1, d0, d1 = mobius_coefficients(kind, phi, psi, m, ground)
    denom = d0 + d1 * p
    if denom <= EPS_DIST:
        raise DegenerateGeneralizedEnsemble("post-selection has zero probability")
    det = _component(n1 * d0 - n0 * d1, component)
    return float(abs(det) / denom**2)


@dataclass(frozen=True, eq=False)
class NoiseEstimate:
    p_hat: float
    residual: float
    observable_used: HermitianOp
    component: Component


def infer_p(kind, phi: Ket, psi: Ket, m: HermitianOp, observed: complex, component="full",
            ground: Ket | None = None) -> NoiseEstimate:
    """Recover p from an observed (generalized) weak value of ``m``.

    Cross-multiplying W(p) = observed gives an equation linear in p. For a
    single component it is solved exactly; for the full complex value the
    real p minimizing the cross-multiplied residual is taken.
    """
    kind, component = ChannelKind(kind), Component(component)
    observed = complex(observed)
    if noise_sensitivity(kind, phi, psi, m, component, 0.0, ground) < SENSITIVITY_FLOOR:
        raise InsensitiveObservable(f"{component.value} part of W does not depend on p")
    n0, n1, d0, d1 = mobius_coefficients(kind, phi, psi, m, ground)
    lo, hi = legal_interval(kind)

    if component is Component.FULL:
        k = observed * d1 - n1
        r = n0 - observed * d0
        raw = (k.conjugate() * r).real / abs(k) ** 2 if abs(k) > 0 else np.nan
    else:
        y = _component(observed, component)
        slope = _component(n1, component) - y * d1
        raw = (y * d0 - _component(n0, component)) / slope if slope != 0 else np.nan

    def miss(p):
        w = (n0 + n1 * p) / (d0 + d1 * p)
        return abs(_component(w, component) - _component(observed, component))

    if np.isnan(raw):
        # observed sits on the asymptote; pick the better endpoint
        p_hat = min((lo, hi), key=miss)
    else:
        p_hat = float(np.clip(raw, lo, hi))
    if d0 + d1 * p_hat <= EPS_DIST:
        raise DegenerateGeneralizedEnsemble("post-selection has zero probability at p_hat")
    return NoiseEstimate(p_hat=p_hat, residual=float(miss(p_hat)), observable_used=m,
                         component=component)


@dataclass(frozen=True)
class ProbeRationale:
    re_slope_h_plus: float
    im_slope_gamma: float
    p: float

    @property
    def preferred(self) -> str:
        return "imag" if self.im_slope_gamma >= self.re_slope_h_plus else "real"


def optimal_noise_probe(phi: Ket, psi: Ket, p: float = 0.0) -> tuple[HermitianOp, ProbeRationale]:
    """Compare depolarizing sensitivities of Re W(H+) and Im W(|gamma><gamma|).

    Returns the projector with the steeper slope (always |gamma><gamma| for a
    valid ensemble) and both slopes at noise level ``p``.
    """
    e = make_ensemble(phi, psi)
    h_plus = extremal_real_projectors(e).h_plus
    gamma = projector(e.gamma)
    kind = ChannelKind.DEPOLARIZING
    rationale = ProbeRationale(
        re_slope_h_plus=noise_sensitivity(kind, phi, psi, h_plus, Component.REAL, p),
        im_slope_gamma=noise_sensitivity(kind, phi, psi, gamma, Component.IMAG, p),
        p=float(p),
    )
    return (gamma if rationale.preferred == "imag" else h_plus), rationale
