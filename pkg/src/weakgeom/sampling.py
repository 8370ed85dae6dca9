"""Deterministic and seeded samplers for states, operators and sphere grids."""

import numpy as np

from .hermitian import EPS_DIST, HermitianOp, Ket, ket_from_bloch, make_ket


def fibonacci_sphere(n: int) -> np.ndarray:
    """``n`` nearly uniform unit vectors on a golden-angle spiral."""
    k = np.arange(n) + 0.5
    z = 1.0 - 2.0 * k / n
    r = np.sqrt(np.clip(1.0 - z * z, 0.0, None))
    theta = np.pi * (3.0 - np.sqrt(5.0)) * k
    return np.column_stack([r * np.cos(theta), r * np.sin(theta), z])


def uniform_sphere(n: int, rng: np.random.Generator) -> np.ndarray:
    v = rng.normal(size=(n, 3))
    return v / np.linalg.norm(v, axis=1, keepdims=True)


def sphere_points(n_grid: int, n_random: int = 0, seed: int = 0) -> np.ndarray:
    """Fibonacci grid plus ``n_random`` seeded uniform points."""
    pts = [fibonacci_sphere(n_grid)] if n_grid else []
    if n_random:
        pts.append(uniform_sphere(n_random, np.random.default_rng(seed)))
    return np.vstack(pts)


def random_ket(rng: np.random.Generator, n: int = 2) -> Ket:
    return make_ket(rng.normal(size=n) + 1j * rng.normal(size=n))


def random_hermitian(rng: np.random.Generator, n: int = 2, traceless: bool = False) -> HermitianOp:
    g = rng.normal(size=(n, n)) + 1j * rng.normal(size=(n, n))
    h = 0.5 * (g + g.conj().T)
    if traceless:
        h -= np.trace(h).real / n * np.eye(n)
    return HermitianOp(h)


def random_pair(rng: np.random.Generator, n: int = 2, margin: float = EPS_DIST) -> tuple[Ket, Ket]:
    """Haar-random pair that is distinct and non-orthogonal by ``margin``."""
    while True:
        a, b = random_ket(rng, n), random_ket(rng, n)
        mag = abs(a.inner(b))
        if margin < mag < 1.0 - margin:
            return a, b


def random_mub_pair(rng: np.random.Generator) -> tuple[Ket, Ket]:
    """Random qubit pair with orthogonal Bloch vectors."""
    r1 = uniform_sphere(1, rng)[0]
    v = rng.normal(size=3)
    v -= (v @ r1) * r1
    r2 = v / np.linalg.norm(v)
    return ket_from_bloch(r1), ket_from_bloch(r2)
