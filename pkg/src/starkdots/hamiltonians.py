"""Lab-frame, rotating-frame and effective-subspace Hamiltonians.

Also houses the perturbative validity check, the Stark resonance solver,
the effective Forster coupling and the counter-rotating (Bloch-Siegert
type) detuning corrections.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .model import SystemParams, hbar_mev_ps


class SingularDetuningError(ValueError):
    """A perturbative energy denominator vanishes."""


def build_lab_hamiltonian(params: SystemParams, t: float, laser_on: bool = True) -> np.ndarray:
    """Full 4x4 lab-frame Hamiltonian at time t (ps), in meV.

    The drive entries carry cos(omega_l * t / hbar); with the laser off all
    Omega-bearing entries are zero.
    """
    p = params
    H = np.zeros((4, 4), dtype=complex)
    H[0, 0] = p.omega0
    H[1, 1] = p.omega0 + p.omega2
    H[2, 2] = p.omega0 + p.omega1
    H[3, 3] = p.omega_total + p.v_biexciton
    H[1, 2] = H[2, 1] = p.v_forster
    if laser_on:
        c = np.cos(p.omega_laser * t / hbar_mev_ps())
        H[0, 1] = H[1, 0] = p.rabi2 * c
        H[0, 2] = H[2, 0] = p.rabi1 * c
        H[1, 3] = H[3, 1] = p.rabi1 * c
        H[2, 3] = H[3, 2] = p.rabi2 * c
    return H


def build_rwa_hamiltonian(params: SystemParams, laser_on: bool = True) -> np.ndarray:
    """Time-independent rotating-frame Hamiltonian within the RWA, in meV.

    Diagonal (0, delta2, delta1, delta1+delta2+V_XX); drive entries
    Omega_i/2 when the laser is on.
    """
    p = params
    H = np.zeros((4, 4), dtype=complex)
    H[1, 1] = p.delta2
    H[2, 2] = p.delta1
    H[3, 3] = p.delta1 + p.delta2 + p.v_biexciton
    H[1, 2] = H[2, 1] = p.v_forster
    if laser_on:
        H[0, 1] = H[1, 0] = p.rabi2 / 2
        H[0, 2] = H[2, 0] = p.rabi1 / 2
        H[1, 3] = H[3, 1] = p.rabi1 / 2
        H[2, 3] = H[3, 2] = p.rabi2 / 2
    return H


@dataclass(frozen=True)
class EffectiveSubspace:
    """Effective 2x2 Hamiltonian of the {|01>, |10>} subspace (meV).

    ``diag01`` is the |01> diagonal (contains delta2), ``diag10`` the |10>
    diagonal.  ``alpha`` = 1/delta1 and ``beta`` = 1/(delta2 + V_XX) are the
    perturbative energy denominators in meV^-1.
    """

    diag01: float
    diag10: float
    v_eff: float
    alpha: float
    beta: float

    def matrix(self) -> np.ndarray:
        return np.array([[self.diag01, self.v_eff], [self.v_eff, self.diag10]])

    def eigenvalues(self) -> np.ndarray:
        return np.linalg.eigvalsh(self.matrix())

    def gap(self) -> float:
        lo, hi = self.eigenvalues()
        return float(hi - lo)


def effective_subspace(params: SystemParams) -> EffectiveSubspace:
    """Second-order effective Hamiltonian of the single-exciton subspace."""
    p = params
    if p.delta1 == 0:
        raise SingularDetuningError("delta1 = 0: 1/delta1 denominator vanishes")
    if p.delta2 + p.v_biexciton == 0:
        raise SingularDetuningError(
            "delta2 + v_biexciton = 0: 1/(delta2 + V_XX) denominator vanishes")
    alpha = 1.0 / p.delta1
    beta = 1.0 / (p.delta2 + p.v_biexciton)
    o1p, o2p = p.rabi1 / 2, p.rabi2 / 2
    return EffectiveSubspace(
        diag01=p.delta2 + alpha * o2p**2 - beta * o1p**2,
        diag10=p.delta1 + alpha * o1p**2 - beta * o2p**2,
        v_eff=p.v_forster + o1p * o2p * (alpha - beta),
        alpha=alpha,
        beta=beta,
    )


@dataclass(frozen=True)
class ConditionReport:
    """Perturbative validity check of the subspace decoupling.

    ``lhs_terms`` maps each left-hand quantity to its value; ``rhs`` is the
    smallest relevant denominator; ``max_ratio`` the worst lhs/rhs.
    """

    lhs_terms: dict[str, float]
    rhs: float
    max_ratio: float
    threshold: float

    @property
    def satisfied(self) -> bool:
        return self.max_ratio < self.threshold


def check_conditions(params: SystemParams, threshold: float = 0.1) -> ConditionReport:
    """Check |delta1-delta2|, |V_F|, |Omega_i/2| << min(|delta_i|, |delta_i + V_XX|)."""
    p = params
    lhs = {
        "abs_delta_diff": abs(p.delta1 - p.delta2),
        "abs_v_forster": abs(p.v_forster),
        "abs_rabi1_half": abs(p.rabi1 / 2),
        "abs_rabi2_half": abs(p.rabi2 / 2),
    }
    rhs = min(abs(p.delta1), abs(p.delta2),
              abs(p.delta1 + p.v_biexciton), abs(p.delta2 + p.v_biexciton))
    max_ratio = np.inf if rhs == 0 else max(lhs.values()) / rhs
    return ConditionReport(lhs_terms=lhs, rhs=rhs, max_ratio=max_ratio,
                           threshold=threshold)


def resonance_mismatch(params: SystemParams) -> float:
    """Deviation from the Stark resonance condition, in meV.

    Returns (delta1 - delta2) - (Omega2'^2 - Omega1'^2)(alpha + beta), which
    equals diag10 - diag01 of the effective subspace and vanishes when the
    laser Stark-shifts the two dots into resonance.
    """
    eff = effective_subspace(params)
    return eff.diag10 - eff.diag01


def counter_rotating_correction(params: SystemParams) -> tuple[float, float]:
    """Counter-rotating Stark-shift corrections (Delta1, Delta2) in meV.

    Delta_i = 2 Omega_i'^2 / (2 omega_l + delta_i) is the level-splitting
    shift discarded by the RWA.
    """
    p = params
    shifts = []
    for rabi, delta in ((p.rabi1, p.delta1), (p.rabi2, p.delta2)):
        den = 2 * p.omega_laser + delta
        if den == 0:
            raise SingularDetuningError("2*omega_laser + delta_i vanishes")
        shifts.append(2 * (rabi / 2) ** 2 / den)
    return shifts[0], shifts[1]


def corrected_detuning_difference(params: SystemParams) -> float:
    """Bare detuning difference a lab-frame run must use to sit at the
    RWA-designed resonance: (delta1 - delta2) + (Delta2 - Delta1)."""
    d1, d2 = counter_rotating_correction(params)
    return (params.delta1 - params.delta2) + (d2 - d1)


def rwa_equivalent_params(params: SystemParams) -> SystemParams:
    """Rotating-frame parameter set describing a lab-frame system.

    The counter-rotating Stark shifts push the dressed levels of the full
    (non-RWA) dynamics to delta_i + Delta_i, so an RWA model of a lab-frame
    run must use those corrected detunings.
    """
    c1, c2 = counter_rotating_correction(params)
    return params.replace(omega1=params.omega1 + c1, omega2=params.omega2 + c2)


def solve_resonant_rabi(params: SystemParams, ratio: float,
                        include_counter_rotating: bool = False) -> float:
    """Rabi frequency Omega2 (meV) that Stark-shifts the dots into resonance.

    ``ratio`` = Omega1/Omega2 is held fixed.  Solves the closed form
    Omega2 = 2 sqrt((delta1 - delta2) / ((1 - ratio^2)(alpha + beta))); with
    ``include_counter_rotating`` one fixed-point iteration folds the
    counter-rotating shifts into the detuning gap.
    """
    p = params
    eff = effective_subspace(params)
    if ratio**2 == 1.0:
        raise ValueError("ratio^2 = 1: equal Rabi frequencies cannot close the gap")
    gap = p.delta1 - p.delta2
    denom = (1 - ratio**2) * (eff.alpha + eff.beta)

    def closed_form(g):
        rad = g / denom
        if rad < 0:
            raise ValueError(
                f"no real solution: (delta1-delta2)/((1-ratio^2)(alpha+beta)) = {rad} < 0")
        return 2 * np.sqrt(rad)

    omega2 = closed_form(gap)
    if include_counter_rotating:
        trial = p.replace(rabi2=omega2, rabi1=ratio * omega2)
        c1, c2 = counter_rotating_correction(trial)
        omega2 = closed_form(gap + (c1 - c2))
    return float(omega2)


def anticrossing_sweep(params: SystemParams, ratio: float,
                       omega2_grid) -> list[tuple[float, tuple[float, float]]]:
    """Eigenvalues of the effective 2x2 Hamiltonian along an Omega2 grid.

    For each grid value, Omega1 = ratio * Omega2.  Returns a list of
    (omega2, (eig_lower, eig_upper)) with branches sorted by value.
    """
    grid = np.atleast_1d(np.asarray(omega2_grid, dtype=float))
    if grid.size == 0:
        raise ValueError("omega2_grid must be non-empty")
    out = []
    for o2 in grid:
        eff = effective_subspace(params.replace(rabi2=float(o2), rabi1=float(ratio * o2)))
        lo, hi = eff.eigenvalues()
        out.append((float(o2), (float(lo), float(hi))))
    return out
