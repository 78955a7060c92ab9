"""Liouville-space (vectorized) operators.

Convention: density matrices are flattened row-major, so the action
rho -> A rho B becomes (A kron B^T) on vec(rho).  Under this single
convention a Hamiltonian H generates the superoperator
H kron I - I kron H^T, a unitary U acts as U kron U*, and a Pauli word
P acts as the involution P kron P*.  Every module in this package
assumes row-major stacking; the round-trip and conjugation tests in
``test_liouville`` guard it.

Dissipators are standard vectorized Lindblad terms,
L kron L* - (1/2)(L^dag L kron I + I kron (L^dag L)^T), with the rate
already absorbed into L, so generators add them unscaled.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .pauli import PauliString, check_qubit_count, matrix_of

__all__ = [
    "HERMITICITY_TOL",
    "NOISE_KINDS",
    "UNITARITY_TOL",
    "NoiseSpec",
    "devectorize",
    "dissipator_superop",
    "hamiltonian_superop",
    "matrix_from_json",
    "matrix_to_json",
    "pauli_unitary_superop",
    "unitary_superop",
    "vectorize",
]

# Tight tolerances: all inputs in scope are analytically exact.
HERMITICITY_TOL = 1e-12
UNITARITY_TOL = 1e-10

NOISE_KINDS = ("none", "pauli_z", "amplitude_damping")

_SIGMA_Z = np.array([[1.0, 0.0], [0.0, -1.0]], dtype=complex)
_LOWERING = np.array([[0.0, 1.0], [0.0, 0.0]], dtype=complex)  # |0><1|


@dataclass(frozen=True)
class NoiseSpec:
    """Incoherent-noise description: kind, dimensionless rate, target qubits.

    ``targets=None`` places one jump operator on every qubit, all sharing
    the same rate; pass explicit indices to localize the noise.
    """

    kind: str = "none"
    rate: float = 0.0
    targets: tuple[int, ...] | None = None

    def __post_init__(self):
        if self.kind not in NOISE_KINDS:
            raise ValueError(
                f"unknown noise kind {self.kind!r}, expected one of {NOISE_KINDS}"
            )
        if not math.isfinite(self.rate) or self.rate < 0:
            raise ValueError(f"noise rate must be finite and >= 0, got {self.rate}")
        if self.targets is not None:
            if len(set(self.targets)) != len(self.targets):
                raise ValueError(f"noise targets must be distinct, got {self.targets}")
            if any(t < 0 for t in self.targets):
                raise ValueError(f"noise targets must be >= 0, got {self.targets}")

    def resolved_targets(self, n_qubits: int) -> tuple[int, ...]:
        if self.targets is None:
            return tuple(range(n_qubits))
        if any(t >= n_qubits for t in self.targets):
            raise ValueError(
                f"noise targets {self.targets} out of range for {n_qubits} qubits"
            )
        return self.targets


def _as_square(m) -> np.ndarray:
    m = np.asarray(m, dtype=complex)
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        raise ValueError(f"expected a square matrix, got shape {m.shape}")
    return m


def vectorize(rho) -> np.ndarray:
    """Flatten a square matrix row-major into a length dim^2 vector."""
    return _as_square(rho).reshape(-1)


def devectorize(v) -> np.ndarray:
    """Inverse of `vectorize`; requires a perfect-square length."""
    v = np.asarray(v, dtype=complex).reshape(-1)
    dim = math.isqrt(v.size)
    if dim * dim != v.size:
        raise ValueError(f"vector length {v.size} is not a perfect square")
    return v.reshape(dim, dim)


def hamiltonian_superop(h) -> np.ndarray:
    """Commutator superoperator H kron I - I kron H^T of a Hermitian H."""
    h = _as_square(h)
    scale = np.abs(h).max()
    if np.abs(h - h.conj().T).max() > HERMITICITY_TOL * scale:
        raise ValueError("Hamiltonian must be Hermitian to within 1e-12 (relative)")
    eye = np.eye(h.shape[0])
    return np.kron(h, eye) - np.kron(eye, h.T)


def unitary_superop(u) -> np.ndarray:
    """Conjugation superoperator U kron U* of a unitary U."""
    u = _as_square(u)
    eye = np.eye(u.shape[0])
    if np.abs(u.conj().T @ u - eye).max() > UNITARITY_TOL:
        raise ValueError("input must be unitary to within 1e-10")
    return np.kron(u, u.conj())


def pauli_unitary_superop(p: PauliString) -> np.ndarray:
    """Channel of a perfect Pauli gate, P kron P*; squares to the identity."""
    m = matrix_of(p)
    return np.kron(m, m.conj())


def _embed_single(op: np.ndarray, target: int, n_qubits: int) -> np.ndarray:
    m = np.array([[1.0 + 0.0j]])
    for k in range(n_qubits):
        m = np.kron(m, op if k == target else np.eye(2))
    return m


def _lindblad_term(jump: np.ndarray) -> np.ndarray:
    dim = jump.shape[0]
    eye = np.eye(dim)
    jj = jump.conj().T @ jump
    return np.kron(jump, jump.conj()) - 0.5 * (np.kron(jj, eye) + np.kron(eye, jj.T))


def dissipator_superop(spec: NoiseSpec, n_qubits: int) -> np.ndarray:
    """Vectorized Lindblad generator for the given noise spec.

    pauli_z uses sqrt(rate) sigma_z on each target; amplitude_damping uses
    sqrt(rate) |0><1|.  exp of the result is completely positive and trace
    preserving, and the vectorized identity is a left null vector (trace
    preservation).
    """
    check_qubit_count(n_qubits)
    dim = 2**n_qubits
    out = np.zeros((dim * dim, dim * dim), dtype=complex)
    if spec.kind == "none":
        return out
    op = _SIGMA_Z if spec.kind == "pauli_z" else _LOWERING
    root_rate = math.sqrt(spec.rate)
    for target in spec.resolved_targets(n_qubits):
        out += _lindblad_term(root_rate * _embed_single(op, target, n_qubits))
    return out


def matrix_to_json(m) -> list:
    """Nested lists of [re, im] pairs, for debugging dumps."""
    m = np.asarray(m, dtype=complex)
    return [[[float(v.real), float(v.imag)] for v in row] for row in m]


def matrix_from_json(data) -> np.ndarray:
    arr = np.asarray(data, dtype=float)
    if arr.ndim != 3 or arr.shape[2] != 2:
        raise ValueError("expected nested lists of [re, im] pairs")
    return arr[..., 0] + 1.0j * arr[..., 1]
