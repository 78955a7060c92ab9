"""Symplectic n-qubit Pauli strings.

A Pauli word is stored as two bit-vectors (x, z) of length n: qubit k
carries sigma_x if x[k] is set, sigma_z if z[k] is set, sigma_y if both
are set, and the identity if neither is.  Commutation signs then reduce
to a symplectic form over GF(2), so no matrices are built until
`matrix_of` is called explicitly.

Products are tracked without phases: every operation here needs only
commutation signs and conjugations, which are phase-free.

Group enumeration is lexicographic with I < X < Y < Z per qubit and the
leftmost qubit most significant, which keeps sign tables and CSV exports
bit-reproducible across runs.
"""

from __future__ import annotations

import itertools
import os
from dataclasses import dataclass

import numpy as np

from .errors import PauliParseError, ResourceLimitError

__all__ = [
    "DEFAULT_MAX_QUBITS",
    "MAX_QUBITS_ENV",
    "PauliString",
    "check_qubit_count",
    "commutation_sign",
    "enumerate_group",
    "identity_string",
    "matrix_of",
    "max_qubits",
    "multiply",
    "pauli_from_label",
    "sign_table",
    "sign_table_csv",
]

MAX_QUBITS_ENV = "PSTLAB_MAX_QUBITS"
DEFAULT_MAX_QUBITS = 4

_LETTER_TO_BITS = {"I": (0, 0), "X": (1, 0), "Y": (1, 1), "Z": (0, 1)}
_BITS_TO_LETTER = {bits: letter for letter, bits in _LETTER_TO_BITS.items()}

_SINGLE_QUBIT = {
    "I": np.eye(2, dtype=complex),
    "X": np.array([[0.0, 1.0], [1.0, 0.0]], dtype=complex),
    "Y": np.array([[0.0, -1.0j], [1.0j, 0.0]], dtype=complex),
    "Z": np.array([[1.0, 0.0], [0.0, -1.0]], dtype=complex),
}


def max_qubits() -> int:
    """Resource bound on the qubit count (default 4, Liouville dim 256).

    Overridden by the PSTLAB_MAX_QUBITS environment variable.
    """
    raw = os.environ.get(MAX_QUBITS_ENV)
    if raw is None:
        return DEFAULT_MAX_QUBITS
    try:
        bound = int(raw)
    except ValueError:
        raise ResourceLimitError(
            f"{MAX_QUBITS_ENV} must be an integer, got {raw!r}"
        ) from None
    if bound < 1:
        raise ResourceLimitError(f"{MAX_QUBITS_ENV} must be >= 1, got {bound}")
    return bound


def check_qubit_count(n: int) -> int:
    """Validate 1 <= n <= max_qubits(); return n."""
    if n < 1:
        raise ResourceLimitError(f"qubit count must be positive, got {n}")
    bound = max_qubits()
    if n > bound:
        raise ResourceLimitError(
            f"n={n} exceeds the resource bound of {bound} qubits"
            f" (set {MAX_QUBITS_ENV} to raise it)"
        )
    return n


@dataclass(frozen=True)
class PauliString:
    """An n-qubit Pauli word in symplectic (x-bits, z-bits) form."""

    n_qubits: int
    x_bits: tuple[int, ...]
    z_bits: tuple[int, ...]

    def __post_init__(self):
        if self.n_qubits < 1:
            raise ValueError("n_qubits must be positive")
        if len(self.x_bits) != self.n_qubits or len(self.z_bits) != self.n_qubits:
            raise ValueError("bit-vector lengths must equal n_qubits")
        if not (set(self.x_bits) | set(self.z_bits)) <= {0, 1}:
            raise ValueError("bit-vectors must contain only 0 and 1")

    @property
    def is_identity(self) -> bool:
        return not any(self.x_bits) and not any(self.z_bits)

    @property
    def label(self) -> str:
        return "".join(
            _BITS_TO_LETTER[x, z] for x, z in zip(self.x_bits, self.z_bits)
        )

    def __str__(self) -> str:
        return self.label

    def __mul__(self, other: "PauliString") -> "PauliString":
        return multiply(self, other)


def pauli_from_label(label: str) -> PauliString:
    """Parse an uppercase label like "ZX" into a PauliString."""
    if not label:
        raise PauliParseError("Pauli label must be non-empty")
    x_bits = []
    z_bits = []
    for position, letter in enumerate(label):
        try:
            x, z = _LETTER_TO_BITS[letter]
        except KeyError:
            raise PauliParseError(
                f"invalid Pauli character {letter!r} at position {position}"
                f" in {label!r} (expected I, X, Y or Z)"
            ) from None
        x_bits.append(x)
        z_bits.append(z)
    return PauliString(len(label), tuple(x_bits), tuple(z_bits))


def identity_string(n: int) -> PauliString:
    return PauliString(n, (0,) * n, (0,) * n)


def _require_same_size(a: PauliString, b: PauliString) -> None:
    if a.n_qubits != b.n_qubits:
        raise ValueError(
            f"Pauli strings act on different registers: {a.n_qubits} vs {b.n_qubits} qubits"
        )


def multiply(a: PauliString, b: PauliString) -> PauliString:
    """Group product of two Pauli words, discarding the +-1, +-i phase."""
    _require_same_size(a, b)
    return PauliString(
        a.n_qubits,
        tuple(xa ^ xb for xa, xb in zip(a.x_bits, b.x_bits)),
        tuple(za ^ zb for za, zb in zip(a.z_bits, b.z_bits)),
    )


def commutation_sign(a: PauliString, b: PauliString) -> int:
    """+1 if the words commute, -1 if they anticommute.

    Equals tr(P_a P_b P_a P_b) / 2^n, evaluated symplectically as
    (-1)^(sum_k x_a z_b + z_a x_b mod 2) with no matrices involved.
    """
    _require_same_size(a, b)
    parity = 0
    for xa, za, xb, zb in zip(a.x_bits, a.z_bits, b.x_bits, b.z_bits):
        parity ^= (xa & zb) ^ (za & xb)
    return -1 if parity else 1


def enumerate_group(n: int) -> list[PauliString]:
    """All 4^n Pauli words, lexicographic (I < X < Y < Z), identity first."""
    check_qubit_count(n)
    return [
        pauli_from_label("".join(letters))
        for letters in itertools.product("IXYZ", repeat=n)
    ]


def matrix_of(p: PauliString) -> np.ndarray:
    """Dense 2^n x 2^n matrix of the word (Kronecker product of factors)."""
    check_qubit_count(p.n_qubits)
    m = np.array([[1.0 + 0.0j]])
    for letter in p.label:
        m = np.kron(m, _SINGLE_QUBIT[letter])
    return m


def sign_table(n: int) -> np.ndarray:
    """4^n x 4^n matrix of commutation signs, rows/columns in group order."""
    group = enumerate_group(n)
    size = len(group)
    table = np.empty((size, size), dtype=int)
    for i, a in enumerate(group):
        table[i, i] = 1
        for j in range(i + 1, size):
            s = commutation_sign(a, group[j])
            table[i, j] = s
            table[j, i] = s
    return table


def sign_table_csv(n: int) -> str:
    """Sign table as CSV text with a header row (and column) of labels."""
    group = enumerate_group(n)
    labels = [p.label for p in group]
    table = sign_table(n)
    lines = ["label," + ",".join(labels)]
    for label, row in zip(labels, table):
        lines.append(label + "," + ",".join(str(int(v)) for v in row))
    return "\n".join(lines) + "\n"
