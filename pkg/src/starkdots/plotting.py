"""Figure rendering for scenario CSV artifacts.

Plots are generated straight from the emitted CSV files so a figure can
always be reproduced from the on-disk artifact alone.  Uses the Agg
backend; every function writes a PNG next to the data and returns its path.
"""
from __future__ import annotations

from pathlib import Path

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt  # noqa: E402
import numpy as np  # noqa: E402

_POP_LABELS = {"p00": "|00>", "p01": "|01>", "p10": "|10>", "p11": "|11>"}


def _load(csv_path) -> np.ndarray:
    return np.genfromtxt(csv_path, delimiter=",", names=True)


def plot_anticrossing(csv_path, png_path=None) -> Path:
    """Eigenvalue branches of the driven single-exciton doublet."""
    data = _load(csv_path)
    png_path = Path(png_path or Path(csv_path).with_suffix(".png"))
    fig, ax = plt.subplots(figsize=(5.0, 3.6))
    ax.plot(data["omega2_mev"], data["eig_lower_mev"], label="lower branch")
    ax.plot(data["omega2_mev"], data["eig_upper_mev"], label="upper branch")
    ax.set_xlabel(r"$\Omega_2$ (meV)")
    ax.set_ylabel("eigenvalue (meV)")
    ax.legend()
    fig.tight_layout()
    fig.savefig(png_path, dpi=150)
    plt.close(fig)
    return png_path


def plot_populations(csv_path, png_path=None) -> Path:
    """Basis-state populations versus time, with EOF when present."""
    data = _load(csv_path)
    png_path = Path(png_path or Path(csv_path).with_suffix(".png"))
    fig, ax = plt.subplots(figsize=(5.0, 3.6))
    for col, label in _POP_LABELS.items():
        ax.plot(data["t_ps"], data[col], label=label)
    if "eof" in (data.dtype.names or ()):
        ax.plot(data["t_ps"], data["eof"], "k--", label="EOF")
    ax.set_xlabel("t (ps)")
    ax.set_ylabel("population")
    ax.set_ylim(-0.02, 1.02)
    ax.legend(ncol=2, fontsize=8)
    fig.tight_layout()
    fig.savefig(png_path, dpi=150)
    plt.close(fig)
    return png_path


def plot_eof_sweep(csv_path, gamma2_values=None, png_path=None) -> Path:
    """EOF versus time, one curve per decay rate."""
    data = _load(csv_path)
    png_path = Path(png_path or Path(csv_path).with_suffix(".png"))
    cols = [c for c in data.dtype.names if c.startswith("eof_")]
    fig, ax = plt.subplots(figsize=(5.0, 3.6))
    for i, col in enumerate(cols):
        if gamma2_values is not None and i < len(gamma2_values):
            g2 = gamma2_values[i]
            label = r"$\Gamma_2 = 0$" if g2 == 0 else \
                rf"$\Gamma_2^{{-1}} = {1.0 / g2:.0f}$ ps"
        else:
            label = col
        ax.plot(data["t_ps"], data[col], label=label)
    ax.set_xlabel("t (ps)")
    ax.set_ylabel("entanglement of formation")
    ax.set_ylim(-0.02, 1.02)
    ax.legend(fontsize=8)
    fig.tight_layout()
    fig.savefig(png_path, dpi=150)
    plt.close(fig)
    return png_path


def plot_floquet_discrepancy(csv_path, png_path=None) -> Path:
    """Formula-vs-Floquet discrepancy of each validated drive."""
    data = _load(csv_path)
    png_path = Path(png_path or Path(csv_path).with_suffix(".png"))
    delta = data["omega1"] - data["omega_l"]
    ok = np.isfinite(data["discrepancy"]) & (data["rabi"] > 0)
    fig, ax = plt.subplots(figsize=(5.0, 3.6))
    ax.loglog(np.abs(data["rabi"][ok] / 2 / delta[ok]),
              np.abs(data["discrepancy"][ok]), "o", ms=3)
    ax.set_xlabel(r"$\Omega'/\delta$")
    ax.set_ylabel("|discrepancy| (meV)")
    fig.tight_layout()
    fig.savefig(png_path, dpi=150)
    plt.close(fig)
    return png_path
