"""First- and second-order averaged-evolution terms for twirled coherent errors.

For a single-Pauli drive with unit coefficient the evolution is
U(t) = exp(-i t P_beta), and an error word P_gamma that anticommutes with
the drive is dressed in the interaction frame into

    cos(2t) H_gamma + i sin(2t) G_gamma,

where H_gamma is the commutator superoperator of P_gamma and G_gamma is
built from the product P_beta P_gamma; a commuting word is left untouched.
The twirl average of the first-order term vanishes by sign orthogonality.
The second-order average collapses onto the drive axis: the surviving
coefficient follows the sinc law implemented in `omega2_avg_closed` and
`over_rotation_factor`, with only the anticommuting error words
contributing.

Closed-form operations require a single drive Pauli with coefficient 1
(the duration tau carries the rotation angle); the general multi-term
drive is accepted only by the ensemble builder in `pst_core`.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace

import numpy as np

from .liouville import hamiltonian_superop
from .numerics import interval_quadrature, sinc, triangle_quadrature
from .pauli import (
    PauliString,
    commutation_sign,
    enumerate_group,
    matrix_of,
    pauli_from_label,
)

__all__ = [
    "CoherentErrorSpec",
    "DriveSpec",
    "anticommuting_sum_h2",
    "interaction_dressed",
    "omega1_alpha",
    "omega1_avg",
    "omega2_alpha",
    "omega2_avg",
    "omega2_avg_closed",
    "over_rotation_factor",
]


def _as_terms(terms) -> tuple[tuple[PauliString, float], ...]:
    out = []
    for word, coefficient in terms:
        if isinstance(word, str):
            word = pauli_from_label(word)
        out.append((word, float(coefficient)))
    return tuple(out)


@dataclass(frozen=True)
class DriveSpec:
    """Ideal gate generator: Pauli terms with real coefficients, duration tau."""

    terms: tuple[tuple[PauliString, float], ...]
    tau: float

    def __post_init__(self):
        object.__setattr__(self, "terms", _as_terms(self.terms))
        if not self.terms:
            raise ValueError("drive needs at least one Pauli term")
        if not math.isfinite(self.tau) or self.tau < 0:
            raise ValueError(f"drive duration must be finite and >= 0, got {self.tau}")
        n = self.terms[0][0].n_qubits
        seen = set()
        for word, coefficient in self.terms:
            if word.n_qubits != n:
                raise ValueError("drive terms must act on the same register")
            if word.is_identity:
                raise ValueError("identity word generates nothing; drop it from the drive")
            if word.label in seen:
                raise ValueError(f"duplicate drive term {word.label}")
            seen.add(word.label)
            if not math.isfinite(coefficient):
                raise ValueError(f"drive coefficient for {word.label} must be finite")

    @classmethod
    def single(cls, label: str, tau: float, coefficient: float = 1.0) -> "DriveSpec":
        return cls(((pauli_from_label(label), coefficient),), tau)

    @property
    def n_qubits(self) -> int:
        return self.terms[0][0].n_qubits

    def single_pauli(self) -> PauliString:
        """The drive word, for closed-form paths; requires one term, coefficient 1."""
        if len(self.terms) != 1 or self.terms[0][1] != 1.0:
            raise ValueError(
                "closed-form operations require a single drive Pauli with"
                " coefficient 1 (tau carries the angle); got"
                f" {[(w.label, c) for w, c in self.terms]}"
            )
        return self.terms[0][0]


@dataclass(frozen=True)
class CoherentErrorSpec:
    """Coherent-error generator: distinct Pauli terms, plus a global scale.

    The scale multiplies every amplitude uniformly so parameter sweeps can
    vary it without rebuilding the term list.  Amplitudes are stored with
    any overall error-strength prefactor already folded in.
    """

    terms: tuple[tuple[PauliString, float], ...] = ()
    scale: float = 1.0

    def __post_init__(self):
        object.__setattr__(self, "terms", _as_terms(self.terms))
        if not math.isfinite(self.scale):
            raise ValueError("scale must be finite")
        seen = set()
        for word, amplitude in self.terms:
            if word.n_qubits != self.terms[0][0].n_qubits:
                raise ValueError("error terms must act on the same register")
            if word.is_identity:
                raise ValueError("identity word generates nothing; drop it")
            if word.label in seen:
                raise ValueError(f"duplicate error term {word.label}")
            seen.add(word.label)
            if not math.isfinite(amplitude):
                raise ValueError(f"amplitude for {word.label} must be finite")

    @classmethod
    def from_amplitudes(cls, amplitudes, scale: float = 1.0) -> "CoherentErrorSpec":
        """Build from {"XX": 0.2, ...} or an iterable of (label, value) pairs."""
        pairs = amplitudes.items() if hasattr(amplitudes, "items") else amplitudes
        return cls(tuple(pairs), scale)

    @property
    def n_qubits(self) -> int | None:
        return self.terms[0][0].n_qubits if self.terms else None

    def with_scale(self, scale: float) -> "CoherentErrorSpec":
        return replace(self, scale=scale)

    def scaled_terms(self) -> tuple[tuple[PauliString, float], ...]:
        return tuple((word, self.scale * amp) for word, amp in self.terms)


def check_drive_error_compat(drive: DriveSpec, err: CoherentErrorSpec) -> None:
    """Dimension match, and no error word duplicating a drive word.

    An error proportional to a drive term is a controlled mis-rotation,
    which twirling cannot average out and which this model excludes.
    """
    if err.terms and err.n_qubits != drive.n_qubits:
        raise ValueError(
            f"error terms act on {err.n_qubits} qubits but the drive on {drive.n_qubits}"
        )
    drive_words = {word.label for word, _ in drive.terms}
    for word, _ in err.terms:
        if word.label in drive_words:
            raise ValueError(
                f"error term {word.label} coincides with a drive Pauli"
                " (controlled mis-rotation is excluded from this model)"
            )


def _dressed_parts(word: PauliString, beta: PauliString):
    """Constant matrices behind the dressed form of one error word.

    Returns (H_word, None) for a word commuting with the drive, or
    (H_word, G_word) for an anticommuting one, with
    G built from the Hilbert-space product P_beta P_word.
    """
    h_word = hamiltonian_superop(matrix_of(word))
    if commutation_sign(word, beta) == 1:
        return h_word, None
    product = matrix_of(beta) @ matrix_of(word)
    eye = np.eye(product.shape[0])
    return h_word, np.kron(product, eye) + np.kron(eye, product.conj())


class _TwirledInteraction:
    """Interaction-frame error generator A(t) for one twirl word.

    Splits the (sign-weighted) error sum into a commuting constant part
    plus cos/sin parts for the anticommuting words, so each evaluation is
    a cheap linear combination of three precomputed matrices.
    """

    def __init__(self, drive: DriveSpec, err: CoherentErrorSpec,
                 alpha: PauliString | None = None):
        beta = drive.single_pauli()
        check_drive_error_compat(drive, err)
        dim = 4**drive.n_qubits
        self.constant = np.zeros((dim, dim), dtype=complex)
        self.cos_part = np.zeros((dim, dim), dtype=complex)
        self.sin_part = np.zeros((dim, dim), dtype=complex)
        for word, amplitude in err.scaled_terms():
            weight = amplitude
            if alpha is not None:
                weight *= commutation_sign(alpha, word)
            h_word, g_word = _dressed_parts(word, beta)
            if g_word is None:
                self.constant += weight * h_word
            else:
                self.cos_part += weight * h_word
                self.sin_part += weight * g_word

    def at(self, t: float) -> np.ndarray:
        return (
            self.constant
            + math.cos(2.0 * t) * self.cos_part
            + 1.0j * math.sin(2.0 * t) * self.sin_part
        )


def interaction_dressed(err_term: PauliString, drive: DriveSpec, t: float) -> np.ndarray:
    """Dressed error generator U(t)^dag H_gamma U(t) for a single-Pauli drive.

    Commuting words come back unchanged; anticommuting words pick up the
    closed form cos(2t) H_gamma + i sin(2t) G_gamma, equal to the
    brute-force conjugation by exp(-i t H_beta).
    """
    beta = drive.single_pauli()
    if err_term.n_qubits != drive.n_qubits:
        raise ValueError("error word and drive act on different registers")
    if err_term.is_identity:
        return _zero_superop(drive)
    h_word, g_word = _dressed_parts(err_term, beta)
    if g_word is None:
        return h_word
    return math.cos(2.0 * t) * h_word + 1.0j * math.sin(2.0 * t) * g_word


def _zero_superop(drive: DriveSpec) -> np.ndarray:
    dim = 4**drive.n_qubits
    return np.zeros((dim, dim), dtype=complex)


def omega1_alpha(drive: DriveSpec, err: CoherentErrorSpec,
                 alpha: PauliString, tol: float = 1e-9) -> np.ndarray:
    """First-order term -i * integral of the twirled dressed error over [0, tau]."""
    if drive.tau == 0:
        _TwirledInteraction(drive, err, alpha)  # still validate inputs
        return _zero_superop(drive)
    dressing = _TwirledInteraction(drive, err, alpha)
    result = interval_quadrature(dressing.at, drive.tau, tol)
    return -1.0j * result.value


def omega1_avg(drive: DriveSpec, err: CoherentErrorSpec, tol: float = 1e-9) -> np.ndarray:
    """Twirl average of the first-order term over the full Pauli group.

    Sign orthogonality cancels it exactly; the near-zero matrix is
    returned so callers can assert how close to zero it lands.
    """
    group = enumerate_group(drive.n_qubits)
    total = _zero_superop(drive)
    for alpha in group:
        total += omega1_alpha(drive, err, alpha, tol)
    return total / len(group)


def omega2_alpha(drive: DriveSpec, err: CoherentErrorSpec, alpha: PauliString,
                 tol: float = 1e-9, max_evaluations: int = 2**20) -> np.ndarray:
    """Second-order term for one twirl word: the time-ordered double
    commutator integral -(1/2) iint [A(t1), A(t2)] with both error
    insertions conjugated by the twirl."""
    if drive.tau == 0 or not err.terms:
        _TwirledInteraction(drive, err, alpha)
        return _zero_superop(drive)
    dressing = _TwirledInteraction(drive, err, alpha)

    def integrand(t1: float, t2: float) -> np.ndarray:
        a1 = dressing.at(t1)
        a2 = dressing.at(t2)
        return -0.5 * (a1 @ a2 - a2 @ a1)

    return triangle_quadrature(integrand, drive.tau, tol, max_evaluations).value


def omega2_avg(drive: DriveSpec, err: CoherentErrorSpec,
               tol: float = 1e-9, max_evaluations: int = 2**20) -> np.ndarray:
    """Twirl average of the second-order term over the full Pauli group.

    Cross terms between distinct error words cancel by sign orthogonality,
    so the average equals the sum of squared-amplitude single-word terms
    (the quantity `omega2_avg_closed` evaluates analytically).
    """
    group = enumerate_group(drive.n_qubits)
    total = _zero_superop(drive)
    for alpha in group:
        total += omega2_alpha(drive, err, alpha, tol, max_evaluations)
    return total / len(group)


def anticommuting_sum_h2(drive: DriveSpec, err: CoherentErrorSpec) -> float:
    """Sum of squared scaled amplitudes over error words that anticommute
    with the drive Pauli; the only errors feeding the over-rotation."""
    beta = drive.single_pauli()
    check_drive_error_compat(drive, err)
    return sum(
        amplitude * amplitude
        for word, amplitude in err.scaled_terms()
        if commutation_sign(word, beta) == -1
    )


def omega2_avg_closed(drive: DriveSpec, err: CoherentErrorSpec) -> np.ndarray:
    """Closed form of the averaged second-order term:
    -i tau (1 - sinc(2 tau))/2 * (sum of anticommuting amplitudes squared)
    times the drive superoperator."""
    beta = drive.single_pauli()
    prefactor = drive.tau * (1.0 - sinc(2.0 * drive.tau)) / 2.0
    weight = anticommuting_sum_h2(drive, err)
    return -1.0j * prefactor * weight * hamiltonian_superop(matrix_of(beta))


def over_rotation_factor(tau: float, sum_h2: float) -> float:
    """Amplitude amplification 1 + (1 - sinc(2 tau))/2 * sum_h2; always >= 1."""
    if not math.isfinite(tau) or tau < 0:
        raise ValueError(f"tau must be finite and >= 0, got {tau}")
    if not math.isfinite(sum_h2) or sum_h2 < 0:
        raise ValueError(f"sum_h2 must be finite and >= 0, got {sum_h2}")
    return 1.0 + (1.0 - sinc(2.0 * tau)) / 2.0 * sum_h2
