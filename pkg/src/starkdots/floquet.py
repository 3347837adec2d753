"""Floquet quasi-energy oracle for a cosine-driven two-level system.

Used as an independent check of the counter-rotating Stark-shift formula:
the truncated Floquet matrix is diagonalized numerically and the splitting
of the two quasi-energies rooted in the n = 0 block is compared against the
closed form 2*Omega'^2/delta + 2*Omega'^2/(delta + 2*omega_l).
"""
from __future__ import annotations

import warnings
from dataclasses import dataclass

import numpy as np

DEFAULT_HARMONICS = 4
MAX_HARMONICS = 6
CONVERGENCE_TOL_MEV = 1e-10


class FloquetConvergenceError(RuntimeError):
    """Quasi-energy splitting did not converge at the maximum truncation."""

    def __init__(self, estimates: tuple[float, float], max_harmonics: int):
        self.estimates = estimates
        super().__init__(
            f"no convergence at N = {max_harmonics}: last two estimates {estimates}")


@dataclass(frozen=True)
class TwoLevelDrive:
    """A two-level system with transition energy omega1 driven at omega_l (meV)."""

    omega1: float
    omega_l: float
    omega_rabi: float

    def __post_init__(self):
        if self.omega_l <= 0:
            raise ValueError("omega_l must be positive")

    @property
    def delta(self) -> float:
        return self.omega1 - self.omega_l


@dataclass(frozen=True)
class FloquetMatrix:
    """Truncated Floquet Hamiltonian with Fourier index n in [-N, N]."""

    n_harmonics: int
    matrix: np.ndarray

    @property
    def dim(self) -> int:
        return 2 * (2 * self.n_harmonics + 1)


def build_floquet_matrix(drive: TwoLevelDrive, n_harmonics: int) -> FloquetMatrix:
    """Assemble the 2(2N+1)-dimensional Floquet matrix of a cosine drive.

    Diagonal blocks are diag(0, omega1) + n*omega_l; the drive couples only
    adjacent blocks (|n - m| = 1) through off-diagonal entries Omega/2.
    """
    if n_harmonics < 1:
        raise ValueError("n_harmonics must be >= 1")
    n_blocks = 2 * n_harmonics + 1
    dim = 2 * n_blocks
    H = np.zeros((dim, dim))
    h0 = np.diag([0.0, drive.omega1])
    coupling = (drive.omega_rabi / 2) * np.array([[0.0, 1.0], [1.0, 0.0]])
    for bi, n in enumerate(range(-n_harmonics, n_harmonics + 1)):
        s = 2 * bi
        H[s:s + 2, s:s + 2] = h0 + n * drive.omega_l * np.eye(2)
        if bi + 1 < n_blocks:
            H[s:s + 2, s + 2:s + 4] = coupling
            H[s + 2:s + 4, s:s + 2] = coupling
    return FloquetMatrix(n_harmonics=n_harmonics, matrix=H)


def _splitting_at(drive: TwoLevelDrive, n_harmonics: int) -> float:
    fm = build_floquet_matrix(drive, n_harmonics)
    evals, evecs = np.linalg.eigh(fm.matrix)
    # Rows of the n = 0 block sit at offset 2*n_harmonics.
    base = 2 * n_harmonics
    picked = []
    for row, ref in ((base, 0.0), (base + 1, drive.omega1)):
        weights = np.abs(evecs[row, :]) ** 2
        best = np.flatnonzero(weights > weights.max() - 1e-12)
        if len(best) > 1:
            best = best[np.argmin(np.abs(evals[best] - ref))]
        else:
            best = best[0]
        picked.append(evals[best])
    return float(picked[1] - picked[0])


def quasi_energy_splitting(drive: TwoLevelDrive,
                           n_harmonics: int = DEFAULT_HARMONICS,
                           max_harmonics: int = MAX_HARMONICS) -> float:
    """Quasi-energy splitting of the levels rooted in the n = 0 block (meV).

    Raises the truncation until increasing N by one changes the result by
    less than 1e-10 meV; raises FloquetConvergenceError at max N otherwise.
    Warns when the drive is outside the off-resonant regime delta >> Omega/2.
    """
    if drive.omega_rabi != 0 and (
            drive.delta == 0 or abs(drive.omega_rabi / 2 / drive.delta) > 0.1):
        warnings.warn("drive outside the off-resonant regime delta >> Omega/2; "
                      "perturbative interpretation of the splitting is unreliable",
                      stacklevel=2)
    prev = _splitting_at(drive, n_harmonics)
    for n in range(n_harmonics + 1, max_harmonics + 1):
        cur = _splitting_at(drive, n)
        if abs(cur - prev) < CONVERGENCE_TOL_MEV:
            return cur
        prev = cur
    raise FloquetConvergenceError((prev, cur), max_harmonics)


def counter_rotating_formula(drive: TwoLevelDrive) -> float:
    """Closed-form level-splitting shift 2 O'^2/delta + 2 O'^2/(delta + 2 omega_l)."""
    op = drive.omega_rabi / 2
    return 2 * op**2 / drive.delta + 2 * op**2 / (drive.delta + 2 * drive.omega_l)


@dataclass(frozen=True)
class Eq13Validation:
    floquet_shift: float
    formula_shift: float
    discrepancy: float
    budget: float

    @property
    def passed(self) -> bool:
        return abs(self.discrepancy) < self.budget


def validate_shift_formula(drive: TwoLevelDrive,
                           n_harmonics: int = DEFAULT_HARMONICS) -> Eq13Validation:
    """Compare the Floquet splitting shift against the closed form.

    The pass budget is 10 * Omega'^4 / delta^3, the expected size of the
    next perturbative order.
    """
    if drive.omega_rabi == 0:
        return Eq13Validation(0.0, 0.0, 0.0, budget=0.0 if drive.delta == 0 else 1e-12)
    floquet_shift = quasi_energy_splitting(drive, n_harmonics) - drive.omega1
    formula_shift = counter_rotating_formula(drive)
    op = drive.omega_rabi / 2
    budget = 10 * op**4 / abs(drive.delta) ** 3
    return Eq13Validation(
        floquet_shift=floquet_shift,
        formula_shift=formula_shift,
        discrepancy=floquet_shift - formula_shift,
        budget=budget,
    )
