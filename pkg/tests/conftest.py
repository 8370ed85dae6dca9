import sys

import numpy as np
import pytest

from weakgeom import make_ket

SQ2 = np.sqrt(2.0)

X = np.array([[0, 1], [1, 0]], dtype=complex)
Y = np.array([[0, -1j], [1j, 0]], dtype=complex)
Z = np.array([[1, 0], [0, -1]], dtype=complex)


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)


@pytest.fixture
def states():
    return {
        "0": make_ket([1, 0]),
        "1": make_ket([0, 1]),
        "+": make_ket([1, 1]),
        "-": make_ket([1, -1]),
        "+i": make_ket([1, 1j]),
        "-i": make_ket([1, -1j]),
    }


def dense_weak(pre, post, mat):
    """Oracle: Tr(|post><post| M |pre><pre|) / Tr(|post><post| |pre><pre|), all dense."""
    f = np.asarray(pre.amplitudes if hasattr(pre, "amplitudes") else pre)
    q = np.asarray(post.amplitudes if hasattr(post, "amplitudes") else post)
    pf = np.outer(f, f.conj())
    pq = np.outer(q, q.conj())
    return np.trace(pq @ mat @ pf) / np.trace(pq @ pf)


def triple_product_weak(r_pre, r_post, r_obs):
    """Oracle for W(|n><n|) from Bloch vectors alone.

    Tr(P_a P_b P_c) = (1 + a.b + b.c + a.c + i a.(b x c)) / 4 with a=post, b=obs, c=pre.
    """
    a, b, c = r_post, r_obs, r_pre
    num = 1 + a @ b + b @ c + a @ c + 1j * (a @ np.cross(b, c))
    return num / (2 * (1 + a @ c))


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance")
    if mod is None or not mod.RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for key in sorted(mod.RESULTS):
        terminalreporter.write_line(mod.RESULTS[key])
