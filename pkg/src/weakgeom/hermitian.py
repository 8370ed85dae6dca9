"""Hermitian linear algebra on small Hilbert spaces.

Operators are stored as dense complex matrices. For qubits every Hermitian
operator also has a (trace, Bloch vector) view with

    M = (t/2) I + (1/2) (x X + y Y + z Z)

The trace-0 operators form a real Euclidean space under
``(A, B) = Tr(AB) / 2``; pure states sit on the sphere of radius 1/2 there.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import (
    DegenerateEnsemble,
    DimensionMismatch,
    NotHermitian,
    NotMUBTriple,
    NotTraceZero,
    ZeroVector,
)

EPS_NORM = 1e-10
EPS_HERM = 1e-10
EPS_MUB = 1e-8
EPS_DIST = 1e-8

# ties in modulus closer than this pick the lower index when fixing phase
_PHASE_TIE = 1e-12

PAULI_X = np.array([[0, 1], [1, 0]], dtype=complex)
PAULI_Y = np.array([[0, -1j], [1j, 0]], dtype=complex)
PAULI_Z = np.array([[1, 0], [0, -1]], dtype=complex)
PAULIS = np.stack([PAULI_X, PAULI_Y, PAULI_Z])
IDENTITY2 = np.eye(2, dtype=complex)


def _readonly(a):
    a = np.array(a, dtype=complex)
    a.setflags(write=False)
    return a


def _canonical_phase(v):
    mags = np.abs(v)
    idx = int(np.argmax(mags >= mags.max() - _PHASE_TIE))
    lead = v[idx]
    v = v * (np.conj(lead) / abs(lead))
    v[idx] = v[idx].real
    return v


@dataclass(frozen=True, eq=False)
class Ket:
    """Unit vector with a fixed global-phase representative.

    The first amplitude of largest modulus is made real and non-negative,
    so two kets describing the same state compare equal entrywise.
    """

    amplitudes: np.ndarray

    def __post_init__(self):
        v = np.array(self.amplitudes, dtype=complex).reshape(-1)
        if v.size < 2:
            raise DimensionMismatch(f"ket needs at least 2 amplitudes, got {v.size}")
        norm = np.linalg.norm(v)
        if abs(norm - 1.0) > EPS_NORM:
            raise ZeroVector(f"ket is not normalized (norm={norm!r}); use make_ket")
        object.__setattr__(self, "amplitudes", _readonly(_canonical_phase(v / norm)))

    @property
    def dim(self) -> int:
        return self.amplitudes.size

    def inner(self, other: "Ket") -> complex:
        """<self|other>."""
        _same_dim(self, other)
        return complex(np.vdot(self.amplitudes, other.amplitudes))

    @property
    def bloch(self) -> np.ndarray:
        if self.dim != 2:
            raise DimensionMismatch("Bloch vectors are defined for qubits only")
        a, b = self.amplitudes
        z = np.conj(a) * b
        return np.array([2 * z.real, 2 * z.imag, abs(a) ** 2 - abs(b) ** 2])

    def __repr__(self):
        amps = ", ".join(f"{c:.6g}" for c in self.amplitudes)
        return f"Ket([{amps}])"


@dataclass(frozen=True, eq=False)
class HermitianOp:
    """Dense Hermitian matrix, symmetrized on construction."""

    matrix: np.ndarray

    def __post_init__(self):
        m = np.array(self.matrix, dtype=complex)
        if m.ndim != 2 or m.shape[0] != m.shape[1] or m.shape[0] < 2:
            raise DimensionMismatch(f"expected a square matrix, got shape {m.shape}")
        scale = max(1.0, float(np.abs(m).max()))
        if np.abs(m - m.conj().T).max() > EPS_HERM * scale:
            raise NotHermitian("matrix is not Hermitian")
        object.__setattr__(self, "matrix", _readonly(0.5 * (m + m.conj().T)))

    @classmethod
    def from_bloch(cls, trace, bloch) -> "HermitianOp":
        x, y, z = np.asarray(bloch, dtype=float)
        return cls(0.5 * trace * IDENTITY2 + 0.5 * (x * PAULI_X + y * PAULI_Y + z * PAULI_Z))

    @classmethod
    def identity(cls, n: int = 2) -> "HermitianOp":
        return cls(np.eye(n))

    @property
    def dim(self) -> int:
        return self.matrix.shape[0]

    @property
    def trace(self) -> float:
        return float(np.trace(self.matrix).real)

    @property
    def bloch(self) -> np.ndarray:
        if self.dim != 2:
            raise DimensionMismatch("Bloch vectors are defined for qubits only")
        return np.einsum("kij,ji->k", PAULIS, self.matrix).real

    def traceless(self) -> "HermitianOp":
        """Shift into the trace-0 subspace: M - (Tr M / n) I."""
        return HermitianOp(self.matrix - (self.trace / self.dim) * np.eye(self.dim))

    def is_trace_zero(self, tol: float = EPS_HERM) -> bool:
        return abs(self.trace) <= tol

    def __add__(self, other):
        if not isinstance(other, HermitianOp):
            return NotImplemented
        _same_dim(self, other)
        return HermitianOp(self.matrix + other.matrix)

    def __sub__(self, other):
        if not isinstance(other, HermitianOp):
            return NotImplemented
        _same_dim(self, other)
        return HermitianOp(self.matrix - other.matrix)

    def __neg__(self):
        return HermitianOp(-self.matrix)

    def __mul__(self, scalar):
        if isinstance(scalar, (complex, np.complexfloating)):
            raise TypeError("Hermitian operators only scale by real numbers")
        return HermitianOp(float(scalar) * self.matrix)

    __rmul__ = __mul__

    def __repr__(self):
        return f"HermitianOp({np.array2string(self.matrix, precision=6)})"


@dataclass(frozen=True, eq=False)
class SPoint:
    """Point of the trace-0 qubit space, held by its Bloch vector."""

    bloch: np.ndarray

    def __post_init__(self):
        b = np.array(self.bloch, dtype=float).reshape(3)
        b.setflags(write=False)
        object.__setattr__(self, "bloch", b)

    @classmethod
    def from_op(cls, op: HermitianOp) -> "SPoint":
        _require_trace_zero(op)
        return cls(op.bloch)

    @property
    def op(self) -> HermitianOp:
        return HermitianOp.from_bloch(0.0, self.bloch)

    def __add__(self, other):
        return SPoint(self.bloch + other.bloch)

    def __sub__(self, other):
        return SPoint(self.bloch - other.bloch)

    def __mul__(self, scalar):
        return SPoint(float(scalar) * self.bloch)

    __rmul__ = __mul__

    @property
    def norm(self) -> float:
        # (A, A) = |bloch|^2 / 4
        return 0.5 * float(np.linalg.norm(self.bloch))

    def in_bloch_ball(self, tol: float = EPS_NORM) -> bool:
        return self.norm**2 <= 0.25 + tol


def _same_dim(a, b):
    if a.dim != b.dim:
        raise DimensionMismatch(f"dimension {a.dim} vs {b.dim}")


def _as_op(x) -> HermitianOp:
    return x.op if isinstance(x, SPoint) else x


def _require_trace_zero(op: HermitianOp):
    if not op.is_trace_zero():
        raise NotTraceZero(f"operator has trace {op.trace!r}, expected 0")


def make_ket(amplitudes) -> Ket:
    v = np.asarray(amplitudes, dtype=complex).reshape(-1)
    norm = np.linalg.norm(v)
    if norm < EPS_NORM:
        raise ZeroVector("all amplitudes vanish")
    return Ket(v / norm)


def ket_from_bloch(r) -> Ket:
    """Pure qubit state whose Bloch vector points along ``r``."""
    r = np.asarray(r, dtype=float)
    n = np.linalg.norm(r)
    if n < EPS_NORM:
        raise ZeroVector("Bloch direction vanishes")
    rho = HermitianOp.from_bloch(1.0, r / n).matrix
    # rank-1 projector: its best-conditioned column spans the state
    col = int(np.argmax(np.linalg.norm(rho, axis=0)))
    return make_ket(rho[:, col])


def projector(k: Ket) -> HermitianOp:
    return HermitianOp(np.outer(k.amplitudes, k.amplitudes.conj()))


def state_image(k: Ket) -> HermitianOp:
    """Image of |k><k| in the trace-0 subspace: |k><k| - I/n."""
    return HermitianOp(np.outer(k.amplitudes, k.amplitudes.conj()) - np.eye(k.dim) / k.dim)


def scalar_product(a, b) -> float:
    """(A, B) = Tr(AB)/2 on trace-0 operators."""
    a, b = _as_op(a), _as_op(b)
    _same_dim(a, b)
    _require_trace_zero(a)
    _require_trace_zero(b)
    # Tr(AB) = sum_ij A_ij B_ji, real for Hermitian A, B
    return 0.5 * float(np.sum(a.matrix * b.matrix.T).real)


def distance(a, b) -> float:
    a, b = _as_op(a), _as_op(b)
    _same_dim(a, b)
    _require_trace_zero(a)
    _require_trace_zero(b)
    d = a.matrix - b.matrix
    return float(np.sqrt(max(0.0, 0.5 * np.sum(d * d.T).real)))


def is_mutually_unbiased(phi: Ket, psi: Ket, tol: float = EPS_MUB) -> bool:
    _same_dim(phi, psi)
    return abs(abs(phi.inner(psi)) ** 2 - 1.0 / phi.dim) <= tol


def check_distinct_nonorthogonal(phi: Ket, psi: Ket) -> float:
    """Return |<psi|phi>|, raising DegenerateEnsemble outside (eps, 1 - eps)."""
    _same_dim(phi, psi)
    mag = abs(psi.inner(phi))
    if mag <= EPS_DIST:
        raise DegenerateEnsemble("pre- and post-selected states are orthogonal")
    if mag >= 1.0 - EPS_DIST:
        raise DegenerateEnsemble("pre- and post-selected states coincide")
    return mag


def orthogonal_complement(k: Ket) -> Ket:
    if k.dim != 2:
        raise DimensionMismatch("orthogonal complement is unique only for qubits")
    a, b = k.amplitudes
    return make_ket([-np.conj(b), np.conj(a)])


def mub_partner(phi: Ket, psi: Ket) -> tuple[Ket, Ket]:
    """States unbiased to both ``phi`` and ``psi``.

    The first returned state has Bloch vector along r_phi x r_psi; the second
    is its antipode.
    """
    if phi.dim != 2 or psi.dim != 2:
        raise DimensionMismatch("mub_partner is defined for qubits only")
    check_distinct_nonorthogonal(phi, psi)
    axis = np.cross(phi.bloch, psi.bloch)
    if np.linalg.norm(axis) < EPS_DIST:
        raise DegenerateEnsemble("states are colinear on the Bloch sphere")
    gamma = ket_from_bloch(axis)
    return gamma, orthogonal_complement(gamma)


def decompose_in_mub_basis(m: HermitianOp, triple) -> tuple[float, float, float]:
    """Coefficients (a, b, c) with M = a P1 + b P2 + c P3 - (a+b+c)/2 I.

    Here P1..P3 project onto a pairwise mutually unbiased qubit triple. The
    triple's images are orthogonal with squared norm 1/4, so each coefficient
    is four times a scalar product.
    """
    _require_trace_zero(m)
    kets = list(triple)
    if len(kets) != 3:
        raise NotMUBTriple("need exactly three states")
    for k in kets:
        _same_dim(m, k)
    if m.dim != 2:
        raise DimensionMismatch("MUB triples are a qubit construction")
    for i in range(3):
        for j in range(i + 1, 3):
            if not is_mutually_unbiased(kets[i], kets[j]):
                raise NotMUBTriple(f"states {i} and {j} are not mutually unbiased")
    a, b, c = (4.0 * scalar_product(m, state_image(k)) for k in kets)
    return a, b, c
