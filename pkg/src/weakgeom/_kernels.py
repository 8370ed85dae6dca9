"""Batched inner loops, compiled with numba when available.

Set ``WEAKGEOM_NO_JIT=1`` to force the pure-numpy path. Both paths are kept
importable (``*_numpy`` / ``*_jit``) so tests and the benchmark can compare
them directly.
"""

import os

import numpy as np

try:
    from numba import njit

    HAVE_NUMBA = True
except ImportError:  # pragma: no cover - numba is an optional extra
    HAVE_NUMBA = False

USE_JIT = HAVE_NUMBA and os.environ.get("WEAKGEOM_NO_JIT", "").lower() not in ("1", "true", "yes")

_NJIT_OPTS = dict(cache=True, nogil=True, fastmath=False)


def bloch_extrema_numpy(svec, points):
    """Extremes of W(|n><n|) = (1 + n . svec) / 2 over unit vectors ``points``.

    Returns (max Re, min Re, max Im, min Im).
    """
    w = 0.5 * (1.0 + points @ svec)
    return w.real.max(), w.real.min(), w.imag.max(), w.imag.min()


def qunit_max_imag_numpy(mats, phi, psi, inv_overlap, mask):
    """max over valid (j, i) of |Im <psi_j|M|phi_i> / <psi_j|phi_i>| per matrix.

    ``phi`` and ``psi`` hold basis vectors as columns; ``inv_overlap[j, i]`` is
    1/<psi_j|phi_i> and ``mask`` marks the pairs that are not orthogonal.
    """
    num = np.einsum("kj,tkl,li->tji", psi.conj(), mats, phi, optimize=True)
    im = np.abs((num * inv_overlap).imag)
    im[:, ~mask] = 0.0
    return im.reshape(len(mats), -1).max(axis=1)


if HAVE_NUMBA:

    @njit(**_NJIT_OPTS)
    def bloch_extrema_jit(svec, points):
        max_re = -np.inf
        min_re = np.inf
        max_im = -np.inf
        min_im = np.inf
        s0, s1, s2 = svec[0], svec[1], svec[2]
        for k in range(points.shape[0]):
            w = 0.5 * (1.0 + points[k, 0] * s0 + points[k, 1] * s1 + points[k, 2] * s2)
            if w.real > max_re:
                max_re = w.real
            if w.real < min_re:
                min_re = w.real
            if w.imag > max_im:
                max_im = w.imag
            if w.imag < min_im:
                min_im = w.imag
        return max_re, min_re, max_im, min_im

    @njit(**_NJIT_OPTS)
    def qunit_max_imag_jit(mats, phi, psi, inv_overlap, mask):
        t_count, n = mats.shape[0], mats.shape[1]
        out = np.zeros(t_count)
        psi_h = np.conj(psi.T).copy()
        tmp = np.empty((n, n), dtype=np.complex128)
        for t in range(t_count):
            m = mats[t]
            # tmp = M @ phi
            for k in range(n):
                for i in range(n):
                    acc = 0j
                    for c in range(n):
                        acc += m[k, c] * phi[c, i]
                    tmp[k, i] = acc
            best = 0.0
            for j in range(n):
                for i in range(n):
                    if not mask[j, i]:
                        continue
                    acc = 0j
                    for k in range(n):
                        acc += psi_h[j, k] * tmp[k, i]
                    v = abs((acc * inv_overlap[j, i]).imag)
                    if v > best:
                        best = v
            out[t] = best
        return out

else:  # pragma: no cover
    bloch_extrema_jit = bloch_extrema_numpy
    qunit_max_imag_jit = qunit_max_imag_numpy


def bloch_extrema(svec, points):
    svec = np.ascontiguousarray(svec, dtype=np.complex128)
    points = np.ascontiguousarray(points, dtype=np.float64)
    impl = bloch_extrema_jit if USE_JIT else bloch_extrema_numpy
    return tuple(float(x) for x in impl(svec, points))


def qunit_max_imag(mats, phi, psi, inv_overlap, mask):
    args = (
        np.ascontiguousarray(mats, dtype=np.complex128),
        np.ascontiguousarray(phi, dtype=np.complex128),
        np.ascontiguousarray(psi, dtype=np.complex128),
        np.ascontiguousarray(inv_overlap, dtype=np.complex128),
        np.ascontiguousarray(mask, dtype=np.bool_),
    )
    impl = qunit_max_imag_jit if USE_JIT else qunit_max_imag_numpy
    return np.asarray(impl(*args), dtype=float)
