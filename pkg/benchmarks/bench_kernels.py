"""Time the numba and numpy paths of the batched kernels.

    python3 benchmarks/bench_kernels.py [--repeat 5] [--points 100000] [--mats 10000]
"""

import argparse
import timeit

import numpy as np

from weakgeom import _kernels, build_frame, make_ensemble
from weakgeom.extremal import pauli_weak_vector
from weakgeom.sampling import random_pair, sphere_points


def cases(n_points, n_mats, dim, seed):
    rng = np.random.default_rng(seed)
    svec = pauli_weak_vector(make_ensemble(*random_pair(rng)))
    pts = sphere_points(n_points)
    yield "bloch_extrema", f"{n_points} sphere points", (svec, pts)

    frame = build_frame(*random_pair(rng, dim), seed=seed)
    mask = frame.pair_mask()
    inv = np.where(mask, 1.0 / np.where(mask, frame.overlaps, 1.0), 0.0)
    g = rng.normal(size=(n_mats, dim, dim)) + 1j * rng.normal(size=(n_mats, dim, dim))
    mats = np.ascontiguousarray(0.5 * (g + np.conj(np.swapaxes(g, 1, 2))))
    yield "qunit_max_imag", f"{n_mats} {dim}x{dim} operators", (mats, frame.phi_basis, frame.psi_basis, inv, mask)


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=5)
    ap.add_argument("--points", type=int, default=100_000)
    ap.add_argument("--mats", type=int, default=10_000)
    ap.add_argument("--dim", type=int, default=3)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args()

    if not _kernels.HAVE_NUMBA:
        print("numba is not installed; only the numpy path is available")
    print(f"{'kernel':<16} {'workload':<24} {'numpy ms':>10} {'numba ms':>10} {'speedup':>8}")
    for name, label, kargs in cases(args.points, args.mats, args.dim, args.seed):
        np_fn = getattr(_kernels, f"{name}_numpy")
        jit_fn = getattr(_kernels, f"{name}_jit")
        t_np = min(timeit.repeat(lambda: np_fn(*kargs), number=1, repeat=args.repeat)) * 1e3
        if _kernels.HAVE_NUMBA:
            jit_fn(*kargs)  # compile outside the timed region
            t_jit = min(timeit.repeat(lambda: jit_fn(*kargs), number=1, repeat=args.repeat)) * 1e3
            np.testing.assert_allclose(np.asarray(np_fn(*kargs)), np.asarray(jit_fn(*kargs)), atol=1e-12)
            print(f"{name:<16} {label:<24} {t_np:>10.2f} {t_jit:>10.2f} {t_np / t_jit:>7.1f}x")
        else:
            print(f"{name:<16} {label:<24} {t_np:>10.2f} {'-':>10} {'-':>8}")


if __name__ == "__main__":
    main()
