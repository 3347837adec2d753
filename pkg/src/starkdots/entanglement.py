"""Two-qubit entanglement measures and state fidelities.

Concurrence via the spin-flipped matrix rho * (sy x sy) rho^* (sy x sy),
tangle = concurrence^2, and entanglement of formation as the binary-entropy
function of the tangle.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .model import DensityMatrix, QuantumState

_SY = np.array([[0.0, -1.0j], [1.0j, 0.0]])
_SPIN_FLIP = np.kron(_SY, _SY)


def _as_matrix(rho) -> np.ndarray:
    if isinstance(rho, DensityMatrix):
        return rho.matrix
    return np.asarray(rho, dtype=complex).reshape(4, 4)


def concurrence(rho) -> float:
    """Wootters concurrence of a two-qubit density matrix.

    Accepts a DensityMatrix or a raw 4x4 array.  Factoring rho = F F^dag
    (F = eigenvectors scaled by root eigenvalues), the lambda_i are the
    singular values of F^dag (sy x sy) F^*: same spectrum as the textbook
    rho*rho_tilde route, but the near-zero lambdas come out at machine
    accuracy instead of sqrt(eps).
    """
    m = _as_matrix(rho)
    w, v = np.linalg.eigh(m)
    factor = v * np.sqrt(np.clip(w, 0.0, None))
    lam = np.linalg.svd(factor.conj().T @ _SPIN_FLIP @ factor.conj(),
                        compute_uv=False)
    return float(max(lam[0] - lam[1] - lam[2] - lam[3], 0.0))


def concurrence_general(rho) -> float:
    """Cross-check route: general eigensolve of the non-Hermitian product
    rho * rho_tilde (accurate to ~1e-8 on near-pure states)."""
    m = _as_matrix(rho)
    rho_tilde = _SPIN_FLIP @ m.conj() @ _SPIN_FLIP
    evals = np.linalg.eigvals(m @ rho_tilde)
    lam = np.sort(np.sqrt(np.clip(evals.real, 0.0, None)))[::-1]
    return float(max(lam[0] - lam[1] - lam[2] - lam[3], 0.0))


def binary_entropy(x: float) -> float:
    """Shannon entropy h(x) in bits, with h(0) = h(1) = 0 by continuity."""
    if x <= 0.0 or x >= 1.0:
        return 0.0
    return float(-x * np.log2(x) - (1 - x) * np.log2(1 - x))


def eof(rho) -> float:
    """Entanglement of formation, h((1 + sqrt(1 - tangle)) / 2)."""
    return eof_from_concurrence(concurrence(rho))


def eof_from_concurrence(c: float) -> float:
    tau = min(c * c, 1.0)
    return binary_entropy((1.0 + np.sqrt(1.0 - tau)) / 2.0)


def fidelity_pure(rho, target: QuantumState) -> float:
    """Overlap <target| rho |target> with a normalized pure target state."""
    m = _as_matrix(rho)
    a = target.amplitudes
    return float(np.real(a.conj() @ m @ a))


@dataclass(frozen=True)
class EntanglementReport:
    """Concurrence, tangle and entanglement of formation of one state."""

    concurrence: float
    tangle: float
    eof: float

    @classmethod
    def from_state(cls, rho) -> "EntanglementReport":
        c = concurrence(rho)
        return cls(concurrence=c, tangle=c * c, eof=eof_from_concurrence(c))
