"""Projectors with extreme real and imaginary weak values."""

from __future__ import annotations

from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from . import _kernels
from .hermitian import PAULIS, HermitianOp, projector
from .sampling import sphere_points
from .weak import PPSEnsemble, weak_value


@dataclass(frozen=True, eq=False)
class ExtremalReport:
    h_plus: HermitianOp
    h_minus: HermitianOp
    w_plus: complex
    w_minus: complex
    bound: float


class ImagExtremes(NamedTuple):
    gamma_proj: HermitianOp
    gamma_perp_proj: HermitianOp
    w_gamma: complex
    w_gamma_perp: complex


def real_bound(e: PPSEnsemble) -> float:
    """Half-width 1/(2|<pre|post>|) of the attainable real weak values."""
    return 0.5 / abs(e.overlap)


def extremal_real_projectors(e: PPSEnsemble) -> ExtremalReport:
    # H = (1-s)/2 I + s/2 (|pre><pre| + |post><post|), s = +-1/|<pre|post>|
    pair = projector(e.pre).matrix + projector(e.post).matrix
    ops = []
    for s in (1.0 / abs(e.overlap), -1.0 / abs(e.overlap)):
        ops.append(HermitianOp(0.5 * (1 - s) * np.eye(2) + 0.5 * s * pair))
    h_plus, h_minus = ops
    return ExtremalReport(
        h_plus=h_plus,
        h_minus=h_minus,
        w_plus=weak_value(e, h_plus),
        w_minus=weak_value(e, h_minus),
        bound=real_bound(e),
    )


def extremal_imag_projectors(e: PPSEnsemble) -> ImagExtremes:
    """|gamma><gamma| and its antipode; Im parts are +-tan(omega/2)/2."""
    g, gp = projector(e.gamma), projector(e.gamma_perp)
    return ImagExtremes(g, gp, weak_value(e, g), weak_value(e, gp))


def pauli_weak_vector(e: PPSEnsemble) -> np.ndarray:
    """s_k = <post|sigma_k|pre>/<post|pre>, so W(|n><n|) = (1 + n . s)/2."""
    q, f = e.post.amplitudes, e.pre.amplitudes
    return np.array([np.vdot(q, p @ f) for p in PAULIS]) / np.vdot(q, f)


class SweepExtrema(NamedTuple):
    max_re: float
    min_re: float
    max_im: float
    min_im: float


def sweep_projectors(e: PPSEnsemble, n_grid: int = 10_000, n_random: int = 0, seed: int = 0,
                     points=None) -> SweepExtrema:
    """Brute-force extremes of W over projectors sampled on the Bloch sphere."""
    if points is None:
        points = sphere_points(n_grid, n_random, seed)
    return SweepExtrema(*_kernels.bloch_extrema(pauli_weak_vector(e), points))
