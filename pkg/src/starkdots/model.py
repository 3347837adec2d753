"""Physical parameters, unit conventions and state containers.

Units throughout the package: energies and Hamiltonian matrix elements in
meV, times in ps, decay rates in ps^-1.  The only conversion constant is
``hbar_mev_ps()``; every ps <-> meV^-1 conversion must route through it.

Basis ordering is fixed as (|00>, |01>, |10>, |11>), where the first digit
is dot 1 and the second is dot 2 (|01> = exciton on dot 2).
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field, fields, asdict, replace
from pathlib import Path

import numpy as np

#: hbar in meV*ps (CODATA).
HBAR_MEV_PS = 0.6582119569

#: Basis state labels in matrix order.
BASIS_LABELS = ("00", "01", "10", "11")


def hbar_mev_ps() -> float:
    """Return hbar in meV*ps."""
    return HBAR_MEV_PS


@dataclass(frozen=True)
class SystemParams:
    """All physical constants of the two-dot + laser system.

    Energies in meV, rates in ps^-1.  ``omega0`` is a global offset with
    no observable effect and defaults to 0.
    """

    omega1: float
    omega2: float
    v_forster: float
    v_biexciton: float
    rabi1: float
    rabi2: float
    omega_laser: float
    omega0: float = 0.0
    gamma1: float = 0.0
    gamma2: float = 0.0

    def __post_init__(self):
        for f in fields(self):
            v = getattr(self, f.name)
            if not np.isfinite(v):
                raise ValueError(f"{f.name} must be finite, got {v!r}")
        if self.omega1 <= 0 or self.omega2 <= 0:
            raise ValueError("exciton creation energies must be positive")
        if self.omega_laser <= 0:
            raise ValueError("omega_laser must be positive")
        if self.gamma1 < 0 or self.gamma2 < 0:
            raise ValueError("decay rates must be non-negative")

    @property
    def omega_total(self) -> float:
        """Energy of |11> before the biexciton shift: omega0 + omega1 + omega2."""
        return self.omega0 + self.omega1 + self.omega2

    @property
    def delta1(self) -> float:
        """Detuning of the laser from dot 1, omega1 - omega_laser."""
        return self.omega1 - self.omega_laser

    @property
    def delta2(self) -> float:
        """Detuning of the laser from dot 2, omega2 - omega_laser."""
        return self.omega2 - self.omega_laser

    def replace(self, **changes) -> "SystemParams":
        return replace(self, **changes)

    def to_dict(self) -> dict:
        return asdict(self)

    @classmethod
    def from_dict(cls, data: dict) -> "SystemParams":
        known = {f.name for f in fields(cls)}
        unknown = set(data) - known
        if unknown:
            raise ValueError(f"unknown parameter keys: {sorted(unknown)}")
        return cls(**{k: float(v) for k, v in data.items()})

    @classmethod
    def from_file(cls, path: str | Path) -> "SystemParams":
        """Load parameters from a flat JSON key-value file (keys = field names)."""
        with open(path) as fh:
            data = json.load(fh)
        if not isinstance(data, dict):
            raise ValueError("parameter file must contain a JSON object")
        return cls.from_dict(data)


@dataclass(frozen=True)
class PulseSchedule:
    """Piecewise square laser on/off envelope over the simulation window.

    ``segments`` is an ordered tuple of (t_start, t_end, laser_on), contiguous
    and covering [t0, t1] with no overlaps.
    """

    segments: tuple[tuple[float, float, bool], ...]

    def __post_init__(self):
        if not self.segments:
            raise ValueError("schedule needs at least one segment")
        segs = tuple((float(a), float(b), bool(on)) for a, b, on in self.segments)
        object.__setattr__(self, "segments", segs)
        for a, b, _ in segs:
            if not a < b:
                raise ValueError(f"segment ({a}, {b}) must have t_start < t_end")
        for (_, b0, _), (a1, _, _) in zip(segs, segs[1:]):
            if not np.isclose(b0, a1, rtol=0, atol=1e-12):
                raise ValueError("segments must be contiguous and non-overlapping")

    @property
    def t_start(self) -> float:
        return self.segments[0][0]

    @property
    def t_end(self) -> float:
        return self.segments[-1][1]

    def laser_on(self, t: float) -> bool:
        """Laser state at time t (boundaries belong to the later segment)."""
        for a, b, on in self.segments:
            if a <= t < b:
                return on
        if np.isclose(t, self.t_end):
            return self.segments[-1][2]
        raise ValueError(f"t={t} outside schedule window")

    @classmethod
    def always_on(cls, t_end: float, t_start: float = 0.0) -> "PulseSchedule":
        return cls(((t_start, t_end, True),))

    @classmethod
    def always_off(cls, t_end: float, t_start: float = 0.0) -> "PulseSchedule":
        return cls(((t_start, t_end, False),))

    @classmethod
    def square_pulse(cls, t_pulse: float, t_end: float) -> "PulseSchedule":
        """Laser on over [0, t_pulse), off until t_end."""
        if not 0 < t_pulse < t_end:
            raise ValueError("need 0 < t_pulse < t_end")
        return cls(((0.0, t_pulse, True), (t_pulse, t_end, False)))


@dataclass(frozen=True)
class QuantumState:
    """Pure 4-component state in the computational basis (|00>,|01>,|10>,|11>)."""

    amplitudes: np.ndarray

    def __post_init__(self):
        a = np.asarray(self.amplitudes, dtype=complex).reshape(4)
        a = a.copy()
        a.setflags(write=False)
        object.__setattr__(self, "amplitudes", a)
        norm = np.sum(np.abs(a) ** 2)
        if abs(norm - 1.0) > 1e-9:
            raise ValueError(f"state not normalized: sum |a|^2 = {norm}")

    @classmethod
    def basis(cls, label: str) -> "QuantumState":
        """Computational basis state from its label, e.g. ``'01'``."""
        idx = BASIS_LABELS.index(label)
        a = np.zeros(4, complex)
        a[idx] = 1.0
        return cls(a)

    def populations(self) -> np.ndarray:
        return np.abs(self.amplitudes) ** 2


@dataclass(frozen=True)
class DensityMatrix:
    """4x4 Hermitian, unit-trace, positive-semidefinite operator."""

    matrix: np.ndarray

    def __post_init__(self):
        m = np.asarray(self.matrix, dtype=complex).reshape(4, 4).copy()
        m.setflags(write=False)
        object.__setattr__(self, "matrix", m)
        herm_err = np.max(np.abs(m - m.conj().T))
        if herm_err > 1e-10:
            raise ValueError(f"not Hermitian: max |rho - rho^dag| = {herm_err}")
        tr = np.trace(m).real
        if abs(tr - 1.0) > 1e-8:
            raise ValueError(f"trace {tr} != 1")
        lam_min = np.linalg.eigvalsh(m)[0]
        if lam_min < -1e-9:
            raise ValueError(f"negative eigenvalue {lam_min}")

    def purity(self) -> float:
        return float(np.trace(self.matrix @ self.matrix).real)


def pure_to_density(state: QuantumState) -> DensityMatrix:
    """Projector |psi><psi| of a normalized pure state."""
    a = state.amplitudes
    return DensityMatrix(np.outer(a, a.conj()))


def populations(rho: DensityMatrix) -> np.ndarray:
    """Diagonal of the density matrix (real parts), in basis order."""
    return np.diag(rho.matrix).real.copy()
