"""Exact pseudo-twirl ensemble channels and effective-generator extraction.

One twirl realization applies a Pauli frame, drives the gate with the
drive terms' signs flipped according to their commutation with the frame
word (the physical coherent error and noise act unconjugated in that
frame), then closes the frame.  Conjugating that driven generator by the
frame word gives an equivalent lab-frame generator with the raw drive and
the error/noise conjugated instead; `PSTRealization` exposes both, and
their channels agree exactly.

The ensemble channel averages all 4^n realizations exactly (no sampling):
the statistical story of a hardware run is irrelevant at desk scale, and
exact averaging keeps every acceptance check deterministic.

`effective_generator` reads a channel back through the principal log and
projects the Hamiltonian part onto Pauli commutator superoperators, whose
pairwise inner products are 2*4^n for distinct non-identity words; the
coefficients are normalized so an ideal gate reads 1 on its drive word.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field

import numpy as np

from .liouville import (
    NoiseSpec,
    dissipator_superop,
    hamiltonian_superop,
    pauli_unitary_superop,
)
from .magnus import (
    CoherentErrorSpec,
    DriveSpec,
    check_drive_error_compat,
    over_rotation_factor,
)
from .numerics import expm, logm_principal, op_norm
from .pauli import (
    PauliString,
    commutation_sign,
    enumerate_group,
    matrix_of,
    pauli_from_label,
)

__all__ = [
    "EffectiveGenerator",
    "PSTRealization",
    "calibrate_tau",
    "effective_generator",
    "ideal_channel",
    "pst_channel",
    "pst_realization",
]


@dataclass(frozen=True)
class PSTRealization:
    """One member of the twirl ensemble.

    ``generator`` is the lab-frame form (raw drive, error and noise
    conjugated by the frame word); its exponential is this realization's
    channel.  ``flipped_generator`` is what is physically driven between
    the two frame gates: drive terms sign-flipped per ``sign_pattern``,
    error and noise untouched.  The two are conjugate under the frame
    word, so exp(generator) = P_alpha exp(flipped_generator) P_alpha.
    """

    alpha: PauliString
    sign_pattern: tuple[int, ...]
    generator: np.ndarray
    flipped_generator: np.ndarray

    def channel(self) -> np.ndarray:
        return expm(self.generator)


def _drive_superop(drive: DriveSpec, signs=None) -> np.ndarray:
    total = None
    for k, (word, coefficient) in enumerate(drive.terms):
        weight = coefficient if signs is None else signs[k] * coefficient
        term = weight * hamiltonian_superop(matrix_of(word))
        total = term if total is None else total + term
    return total


def _error_superop(err: CoherentErrorSpec, dim: int) -> np.ndarray:
    total = np.zeros((dim, dim), dtype=complex)
    for word, amplitude in err.scaled_terms():
        total += amplitude * hamiltonian_superop(matrix_of(word))
    return total


def pst_realization(drive: DriveSpec, err: CoherentErrorSpec,
                    noise: NoiseSpec, alpha: PauliString) -> PSTRealization:
    """Build the twirl realization for one frame word."""
    check_drive_error_compat(drive, err)
    if alpha.n_qubits != drive.n_qubits:
        raise ValueError(
            f"frame word acts on {alpha.n_qubits} qubits, drive on {drive.n_qubits}"
        )
    n = drive.n_qubits
    dim = 4**n
    tau = drive.tau
    signs = tuple(commutation_sign(alpha, word) for word, _ in drive.terms)

    coherent = _error_superop(err, dim)
    lindblad = dissipator_superop(noise, n)
    frame = pauli_unitary_superop(alpha)

    flipped = (
        -1.0j * tau * _drive_superop(drive, signs)
        - 1.0j * tau * coherent
        + lindblad
    )
    lab = (
        -1.0j * tau * _drive_superop(drive)
        - 1.0j * tau * (frame @ coherent @ frame)
        + frame @ lindblad @ frame
    )
    return PSTRealization(alpha, signs, lab, flipped)


def pst_channel(drive: DriveSpec, err: CoherentErrorSpec | None = None,
                noise: NoiseSpec | None = None) -> np.ndarray:
    """Uniform average of P_alpha exp(flipped generator) P_alpha over all
    4^n frame words, enumerated in group order (exact, deterministic)."""
    err = err if err is not None else CoherentErrorSpec()
    noise = noise if noise is not None else NoiseSpec()
    group = enumerate_group(drive.n_qubits)
    total = np.zeros((4**drive.n_qubits,) * 2, dtype=complex)
    for alpha in group:
        realization = pst_realization(drive, err, noise, alpha)
        frame = pauli_unitary_superop(alpha)
        total += frame @ expm(realization.flipped_generator) @ frame
    return total / len(group)


def ideal_channel(drive: DriveSpec) -> np.ndarray:
    """Noiseless, error-free gate channel exp(-i tau H_drive)."""
    return expm(-1.0j * drive.tau * _drive_superop(drive))


@dataclass(frozen=True)
class EffectiveGenerator:
    """Decomposition of a channel log into Pauli-Hamiltonian weights plus
    a dissipative remainder: log K = -i tau sum_g c_g H_g + remainder.

    The coefficient map covers every non-identity word (the identity's
    commutator superoperator vanishes identically, so it has no weight).
    """

    tau: float
    hamiltonian_coeffs: dict[PauliString, float] = field(compare=False)
    dissipative_remainder: np.ndarray = field(compare=False)

    def coefficient(self, word: str | PauliString) -> float:
        if isinstance(word, str):
            word = pauli_from_label(word)
        return self.hamiltonian_coeffs[word]

    def remainder_norm(self) -> float:
        return op_norm(self.dissipative_remainder)

    def reconstructed(self) -> np.ndarray:
        """-i tau sum_g c_g H_g + remainder; equals the original channel log."""
        total = np.array(self.dissipative_remainder, dtype=complex)
        for word, coefficient in self.hamiltonian_coeffs.items():
            total += -1.0j * self.tau * coefficient * hamiltonian_superop(matrix_of(word))
        return total

    def to_json_dict(self) -> dict:
        return {
            "tau": self.tau,
            "coeffs": {word.label: value for word, value in self.hamiltonian_coeffs.items()},
            "remainder_norm": self.remainder_norm(),
        }

    def to_json(self, indent: int | None = None) -> str:
        return json.dumps(self.to_json_dict(), indent=indent)


def effective_generator(k: np.ndarray, tau: float) -> EffectiveGenerator:
    """Extract drive-normalized Pauli weights and the dissipative remainder
    from a channel via its principal log.

    Valid only while the channel eigenphases stay away from +-pi; the
    principal log raises a branch error otherwise.
    """
    if not math.isfinite(tau) or tau <= 0:
        raise ValueError(f"tau must be finite and positive, got {tau}")
    k = np.asarray(k, dtype=complex)
    if k.ndim != 2 or k.shape[0] != k.shape[1]:
        raise ValueError(f"expected a square channel matrix, got shape {k.shape}")
    dim = k.shape[0]
    n = round(math.log(dim, 4))
    if 4**n != dim:
        raise ValueError(f"channel dimension {dim} is not a power of 4")

    log_k = logm_principal(k)
    scaled = log_k / (-1.0j * tau)
    normalization = 2.0 * dim  # <H_g, H_g'> = 2 * 4^n * delta_gg'
    coeffs: dict[PauliString, float] = {}
    remainder = np.array(log_k, dtype=complex)
    for word in enumerate_group(n)[1:]:
        h_word = hamiltonian_superop(matrix_of(word))
        value = float(np.real(np.vdot(h_word, scaled)) / normalization)
        coeffs[word] = value
        remainder += 1.0j * tau * value * h_word
    return EffectiveGenerator(tau, coeffs, remainder)


def calibrate_tau(theta: float, sum_h2: float) -> float:
    """Invert the calibration relation tau * factor(tau, sum_h2) = theta / 2.

    The left side is strictly increasing in tau (derivative
    1 + sum_h2/2 - sum_h2 cos(2 tau)/2 >= 1), so bisection on (0, theta/2]
    converges to the unique root; the returned residual is at machine
    level, far below the 1e-12 contract.  Without errors the result is
    exactly theta / 2.
    """
    if not math.isfinite(theta) or theta <= 0 or theta > math.pi:
        raise ValueError(
            f"target angle must satisfy 0 < theta <= pi so theta/2 lands in"
            f" (0, pi/2]; got {theta}"
        )
    if not math.isfinite(sum_h2) or sum_h2 < 0:
        raise ValueError(f"sum_h2 must be finite and >= 0, got {sum_h2}")

    target = theta / 2.0

    def residual(tau: float) -> float:
        return tau * over_rotation_factor(tau, sum_h2) - target

    low, high = 0.0, target
    if residual(high) < 0:
        # Impossible while the factor stays >= 1; guarded anyway.
        raise ArithmeticError(
            "calibration bracket (0, theta/2] does not straddle the root"
        )
    for _ in range(200):
        mid = 0.5 * (low + high)
        if mid <= low or mid >= high:
            break
        if residual(mid) < 0:
            low = mid
        else:
            high = mid
    return high if abs(residual(high)) <= abs(residual(low)) else low
