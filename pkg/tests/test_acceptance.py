"""Acceptance suite: one test per criterion, each printing a PASS/FAIL line.

Run with ``pytest tests/test_acceptance.py -v -s`` to see the per-criterion
lines; every tolerance is pinned here, nothing is deferred to later
calibration.
"""

import itertools
import math
import time

import numpy as np

from pstlab.experiments import (
    MagnusCheckConfig,
    ParitySweepConfig,
    run_magnus_crosscheck,
    run_parity_sweep,
    run_table1,
)
from pstlab.liouville import hamiltonian_superop, pauli_unitary_superop
from pstlab.magnus import (
    CoherentErrorSpec,
    DriveSpec,
    interaction_dressed,
    omega2_avg,
    over_rotation_factor,
)
from pstlab.numerics import expm
from pstlab.pauli import (
    commutation_sign,
    enumerate_group,
    matrix_of,
    sign_table,
)
from pstlab.pst_core import calibrate_tau, effective_generator, pst_channel

TABLE1_ERRORS = (("XX", 0.2), ("YY", 0.6), ("ZZ", 0.2), ("YX", 0.4))
ANTICOMMUTING_ERRORS = (("XX", 0.2), ("ZZ", 0.2), ("YX", 0.4))

# Amplitude-damping asymmetry on the default grid, measured once with this
# simulator (1.176e-2 at zeta 3, tau 2.5) and frozen at half as a
# regression floor.
DAMPING_ASYMMETRY_FLOOR = 5.0e-3
SYMMETRIC_ASYMMETRY_BOUND = 1e-10


def report(number: int, name: str, ok: bool, detail: str) -> None:
    line = f"criterion {number} ({name}): {'PASS' if ok else 'FAIL'} [{detail}]"
    print(line)
    assert ok, line


def drive_coefficients(errors, scale=1.0, tau=0.5):
    drive = DriveSpec.single("ZX", tau)
    err = CoherentErrorSpec(errors, scale=scale)
    return effective_generator(pst_channel(drive, err), tau)


def test_criterion_1_table1_reproduction():
    start = time.perf_counter()
    result = run_table1()
    elapsed = time.perf_counter() - start
    off_drive = max(abs(result.pst[label]) for label in ("XX", "YY", "ZZ", "YX"))
    ok = (
        off_drive <= 1e-3
        and abs(result.pst["ZX"] - 1.0207) <= 1e-3
        and elapsed < 1.0
    )
    report(
        1,
        "effective-weight table",
        ok,
        f"ZX={result.pst['ZX']:.5f}, max off-drive={off_drive:.2e}, {elapsed:.3f}s",
    )


def test_criterion_2_closed_form_over_rotation():
    factor = over_rotation_factor(0.5, 0.24)
    agreement = run_table1().agreement_pct
    ok = abs(factor - 1.019023) <= 1e-4 and abs(agreement - 99.8) <= 0.1
    report(
        2,
        "closed-form over-rotation",
        ok,
        f"factor={factor:.6f}, agreement={agreement:.3f}%",
    )


def test_criterion_3_magnus_equivalence():
    start = time.perf_counter()
    result = run_magnus_crosscheck(MagnusCheckConfig())  # 3 taus x (defaults + 5 random)
    elapsed = time.perf_counter() - start
    worst_discrepancy = max(row.discrepancy for row in result.rows)
    worst_omega1 = max(row.omega1_norm for row in result.rows)
    ok = (
        len(result.rows) == 18
        and worst_discrepancy <= 1e-6
        and worst_omega1 <= 1e-9
        and elapsed <= 30.0
    )
    report(
        3,
        "quadrature vs closed form",
        ok,
        f"max discrepancy={worst_discrepancy:.2e}, max omega1={worst_omega1:.2e},"
        f" {elapsed:.1f}s over {len(result.rows)} rows",
    )


def test_criterion_4_commuting_error_null():
    drive = DriveSpec.single("ZX", 0.5)
    commuting_only = CoherentErrorSpec((("YY", 0.6),))
    omega2_norm = float(np.linalg.norm(omega2_avg(drive, commuting_only)))

    with_commuting = drive_coefficients(TABLE1_ERRORS).coefficient("ZX")
    without_commuting = drive_coefficients(ANTICOMMUTING_ERRORS).coefficient("ZX")
    shift = abs(with_commuting - without_commuting)
    ok = omega2_norm <= 1e-10 and shift <= 1e-3
    report(
        4,
        "commuting error contributes nothing",
        ok,
        f"omega2 norm={omega2_norm:.2e}, drive-weight shift={shift:.2e}",
    )


def test_criterion_5_parity_suite():
    config = ParitySweepConfig(noise_kinds=("none", "pauli_z", "amplitude_damping"))
    rows = run_parity_sweep(config)
    deviations = {}
    for row in rows:
        deviations.setdefault(row.noise_kind, {})[row.delta] = row.error

    def asymmetry(kind):
        data = deviations[kind]
        return max(abs(data[d] - data[-d]) for d in data if d > 0)

    symmetric = max(asymmetry("none"), asymmetry("pauli_z"))
    damping = asymmetry("amplitude_damping")
    damping_scale = max(deviations["amplitude_damping"].values())
    ok = (
        symmetric <= SYMMETRIC_ASYMMETRY_BOUND
        and damping >= 100 * SYMMETRIC_ASYMMETRY_BOUND
        and damping >= DAMPING_ASYMMETRY_FLOOR
        and damping <= 0.1 * damping_scale  # broken, but mildly
    )
    report(
        5,
        "noise parity",
        ok,
        f"symmetric asym={symmetric:.2e}, damping asym={damping:.2e}"
        f" (E up to {damping_scale:.3f})",
    )


def test_criterion_6_scaling_properties():
    # Off-drive weights of the ensemble channel: quadratic in the error
    # scale or already at numerical zero.
    deltas = (0.01, 0.02, 0.04)
    coeff_runs = [drive_coefficients(ANTICOMMUTING_ERRORS, scale=d) for d in deltas]
    slope_fail = []
    for word in enumerate_group(2)[1:]:
        if word.label == "ZX":
            continue
        values = [abs(run.hamiltonian_coeffs[word]) for run in coeff_runs]
        if max(values) < 1e-10:
            continue
        slope = np.polyfit(np.log(deltas), np.log(values), 1)[0]
        if slope < 1.9:
            slope_fail.append((word.label, slope))

    # Non-Hermitian part of the dissipative remainder: cubic or better.
    remainder_deltas = (0.05, 0.1, 0.2)
    norms = []
    for d in remainder_deltas:
        remainder = drive_coefficients(TABLE1_ERRORS, scale=d).dissipative_remainder
        norms.append(np.linalg.norm((remainder - remainder.conj().T) / 2))
    remainder_slope = float(
        np.polyfit(np.log(remainder_deltas), np.log(norms), 1)[0]
    )
    ok = not slope_fail and remainder_slope >= 2.7
    report(
        6,
        "scaling exponents",
        ok,
        f"off-drive slope failures={slope_fail or 'none'},"
        f" non-Hermitian remainder slope={remainder_slope:.2f}",
    )


def test_criterion_7_algebraic_invariants():
    rng = np.random.default_rng(1729)
    checks = []

    for n in (1, 2):
        group = enumerate_group(n)
        size = len(group)

        table = sign_table(n)
        checks.append(np.array_equal(table @ table, size * np.eye(size, dtype=int)))

        for word in group:
            direct = pauli_unitary_superop(word)
            exponential = expm(
                -1j * (math.pi / 2) * hamiltonian_superop(matrix_of(word))
            )
            checks.append(np.abs(direct - exponential).max() <= 1e-10)

        unitaries = [pauli_unitary_superop(word) for word in group]
        checks.append(
            max(
                np.abs(a @ b - b @ a).max()
                for a, b in itertools.product(unitaries, repeat=2)
            )
            == 0.0
        )

        for beta, gamma in itertools.product(group[1:], repeat=2):
            if commutation_sign(beta, gamma) == 1:
                continue
            t = float(rng.uniform(0.1, 2.0))
            p_beta, p_gamma = matrix_of(beta), matrix_of(gamma)
            forward = expm(-1j * t * p_beta)
            backward = expm(1j * t * p_beta)
            checks.append(
                np.abs(p_gamma @ forward - backward @ p_gamma).max() <= 1e-12
            )

            drive = DriveSpec.single(beta.label, 1.0)
            h_beta = hamiltonian_superop(p_beta)
            t1, t2 = (float(v) for v in rng.uniform(0.0, 2.5, size=2))
            d1 = interaction_dressed(gamma, drive, t1)
            d2 = interaction_dressed(gamma, drive, t2)
            expected = -2j * math.sin(2 * (t2 - t1)) * h_beta
            checks.append(np.abs(d1 @ d2 - d2 @ d1 - expected).max() <= 1e-10)

    ok = all(checks)
    report(7, "algebraic invariants at n <= 2", ok, f"{len(checks)} checks")


def test_criterion_8_calibration():
    exact = all(calibrate_tau(theta, 0.0) == theta / 2 for theta in (0.3, 1.0, math.pi))
    tau = calibrate_tau(1.0, 0.24)
    residual = abs(tau * over_rotation_factor(tau, 0.24) - 0.5)
    witness = abs(calibrate_tau(0.5, 0.24) - tau / 2)
    ok = exact and residual <= 1e-12 and witness > 1e-4
    report(
        8,
        "calibration inversion",
        ok,
        f"tau={tau:.10f}, residual={residual:.2e}, nonlinearity witness={witness:.2e}",
    )
