"""Simulator for entanglement generation in two laser-driven,
Forster-coupled quantum dots via the optical Stark effect."""

from .model import (HBAR_MEV_PS, BASIS_LABELS, DensityMatrix, PulseSchedule,
                    QuantumState, SystemParams, hbar_mev_ps, populations,
                    pure_to_density)
from .hamiltonians import (ConditionReport, EffectiveSubspace,
                           SingularDetuningError, anticrossing_sweep,
                           build_lab_hamiltonian, build_rwa_hamiltonian,
                           check_conditions, corrected_detuning_difference,
                           counter_rotating_correction, effective_subspace,
                           resonance_mismatch, rwa_equivalent_params,
                           solve_resonant_rabi)
from .floquet import (Eq13Validation, FloquetConvergenceError, FloquetMatrix,
                      TwoLevelDrive, build_floquet_matrix,
                      counter_rotating_formula, quasi_energy_splitting,
                      validate_shift_formula)
from .dynamics import (CollapseChannel, IntegratorConfig, Trajectory,
                       evolve_lindblad, evolve_schrodinger,
                       make_collapse_channels, pulse_times)
from .entanglement import (EntanglementReport, concurrence,
                           concurrence_general, eof, eof_from_concurrence,
                           fidelity_pure)
from .scenarios import (SCENARIOS, ConfigError, ScenarioConfig,
                        ScenarioResult, load_config, run_scenario)

__version__ = "0.1.0"
