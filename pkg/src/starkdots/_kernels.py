"""Numba-compiled fixed-step RK4 kernels for the 4-level system.

The Hamiltonian is passed in split form H(t) = A + cos(w t) * B with A, B
constant 4x4 complex matrices (meV) and w the carrier angular frequency in
rad/ps (w = 0 reduces to a static drive, the RWA case).  A is expected to
be recentred (trace removed) by the caller for numerical conditioning.
"""
from __future__ import annotations

import numpy as np
from numba import njit


@njit(cache=True, nogil=True)
def _h_psi(a, b, cos_wt, psi, inv_hbar):
    out = np.empty(4, dtype=np.complex128)
    for i in range(4):
        acc = 0.0 + 0.0j
        for j in range(4):
            acc += (a[i, j] + cos_wt * b[i, j]) * psi[j]
        out[i] = -1j * inv_hbar * acc
    return out


@njit(cache=True, nogil=True)
def rk4_schrodinger(psi, a, b, w, t0, dt, n_steps, hbar):
    """Advance a state vector by n_steps RK4 steps of size dt from t0."""
    inv_hbar = 1.0 / hbar
    p = psi.copy()
    for k in range(n_steps):
        t = t0 + k * dt
        k1 = _h_psi(a, b, np.cos(w * t), p, inv_hbar)
        k2 = _h_psi(a, b, np.cos(w * (t + 0.5 * dt)), p + 0.5 * dt * k1, inv_hbar)
        k3 = _h_psi(a, b, np.cos(w * (t + 0.5 * dt)), p + 0.5 * dt * k2, inv_hbar)
        k4 = _h_psi(a, b, np.cos(w * (t + dt)), p + dt * k3, inv_hbar)
        p = p + (dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4)
    return p


@njit(cache=True, nogil=True)
def _lindblad_rhs(a, b, cos_wt, rho, cs, cds, cdcs, rates, inv_hbar):
    h = a + cos_wt * b
    drho = -1j * inv_hbar * (h @ rho - rho @ h)
    for i in range(rates.shape[0]):
        g = rates[i]
        if g == 0.0:
            continue
        c = cs[i]
        cd = cds[i]
        cdc = cdcs[i]
        drho += g * (c @ rho @ cd - 0.5 * (cdc @ rho + rho @ cdc))
    return drho


@njit(cache=True, nogil=True)
def rk4_lindblad(rho, a, b, w, t0, dt, n_steps, cs, cds, cdcs, rates, hbar):
    """Advance a density matrix by n_steps RK4 steps of size dt from t0."""
    inv_hbar = 1.0 / hbar
    r = rho.copy()
    for k in range(n_steps):
        t = t0 + k * dt
        k1 = _lindblad_rhs(a, b, np.cos(w * t), r, cs, cds, cdcs, rates, inv_hbar)
        k2 = _lindblad_rhs(a, b, np.cos(w * (t + 0.5 * dt)), r + 0.5 * dt * k1,
                           cs, cds, cdcs, rates, inv_hbar)
        k3 = _lindblad_rhs(a, b, np.cos(w * (t + 0.5 * dt)), r + 0.5 * dt * k2,
                           cs, cds, cdcs, rates, inv_hbar)
        k4 = _lindblad_rhs(a, b, np.cos(w * (t + dt)), r + dt * k3,
                           cs, cds, cdcs, rates, inv_hbar)
        r = r + (dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4)
    return r
