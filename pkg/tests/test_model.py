import json

import numpy as np
import pytest

from starkdots.model import (BASIS_LABELS, HBAR_MEV_PS, DensityMatrix,
                             PulseSchedule, QuantumState, SystemParams,
                             hbar_mev_ps, populations, pure_to_density)


def make_params(**over):
    base = dict(omega1=1792.59, omega2=1790.59, v_forster=0.1,
                v_biexciton=0.0, rabi1=22.528, rabi2=40.96,
                omega_laser=1500.0)
    base.update(over)
    return SystemParams(**base)


class TestSystemParams:
    def test_detunings(self):
        p = make_params()
        assert p.delta1 == pytest.approx(292.59)
        assert p.delta2 == pytest.approx(290.59)
        assert p.omega_total == pytest.approx(1792.59 + 1790.59)

    def test_omega0_shifts_total_only(self):
        p = make_params(omega0=5.0)
        assert p.delta1 == make_params().delta1
        assert p.omega_total == pytest.approx(make_params().omega_total + 5.0)

    def test_rejects_nonpositive_energies(self):
        with pytest.raises(ValueError):
            make_params(omega1=0.0)
        with pytest.raises(ValueError):
            make_params(omega_laser=-1.0)

    def test_rejects_negative_rates(self):
        with pytest.raises(ValueError):
            make_params(gamma1=-0.1)

    def test_rejects_nonfinite(self):
        with pytest.raises(ValueError):
            make_params(v_forster=float("nan"))

    def test_replace_is_pure(self):
        p = make_params()
        q = p.replace(rabi2=10.0)
        assert p.rabi2 == 40.96 and q.rabi2 == 10.0

    def test_roundtrip_dict(self):
        p = make_params(gamma1=0.01, gamma2=0.02)
        assert SystemParams.from_dict(p.to_dict()) == p

    def test_unknown_key_rejected(self):
        d = make_params().to_dict()
        d["rabi3"] = 1.0
        with pytest.raises(ValueError, match="rabi3"):
            SystemParams.from_dict(d)

    def test_from_file(self, tmp_path):
        p = make_params()
        f = tmp_path / "params.json"
        f.write_text(json.dumps(p.to_dict()))
        assert SystemParams.from_file(f) == p

    def test_from_file_rejects_non_object(self, tmp_path):
        f = tmp_path / "params.json"
        f.write_text("[1, 2]")
        with pytest.raises(ValueError):
            SystemParams.from_file(f)


class TestPulseSchedule:
    def test_square_pulse(self):
        s = PulseSchedule.square_pulse(5.0, 50.0)
        assert s.laser_on(0.0)
        assert s.laser_on(4.999)
        assert not s.laser_on(5.0)  # boundary belongs to the later segment
        assert not s.laser_on(50.0)
        assert s.t_start == 0.0 and s.t_end == 50.0

    def test_always_on_off(self):
        assert PulseSchedule.always_on(10.0).laser_on(3.0)
        assert not PulseSchedule.always_off(10.0).laser_on(3.0)

    def test_outside_window(self):
        with pytest.raises(ValueError):
            PulseSchedule.always_on(10.0).laser_on(11.0)

    def test_rejects_gap(self):
        with pytest.raises(ValueError):
            PulseSchedule(((0.0, 1.0, True), (1.5, 2.0, False)))

    def test_rejects_empty_segment(self):
        with pytest.raises(ValueError):
            PulseSchedule(((1.0, 1.0, True),))

    def test_rejects_no_segments(self):
        with pytest.raises(ValueError):
            PulseSchedule(())


class TestStates:
    def test_basis_ordering(self):
        assert BASIS_LABELS == ("00", "01", "10", "11")
        s = QuantumState.basis("01")
        assert np.allclose(s.amplitudes, [0, 1, 0, 0])

    def test_norm_enforced(self):
        with pytest.raises(ValueError):
            QuantumState(np.array([1.0, 1.0, 0.0, 0.0]))

    def test_amplitudes_readonly(self):
        s = QuantumState.basis("00")
        with pytest.raises(ValueError):
            s.amplitudes[0] = 0.0

    def test_pure_to_density(self):
        s = QuantumState(np.array([0, 1, 1j, 0]) / np.sqrt(2))
        rho = pure_to_density(s)
        assert rho.purity() == pytest.approx(1.0)
        assert populations(rho) == pytest.approx([0, 0.5, 0.5, 0])

    def test_density_invariants(self):
        with pytest.raises(ValueError):
            DensityMatrix(np.diag([0.5, 0.5, 0.1, -0.1]))  # trace + negativity
        with pytest.raises(ValueError):
            m = np.diag([0.25, 0.25, 0.25, 0.25]).astype(complex)
            m[0, 1] = 1e-3  # not Hermitian
            DensityMatrix(m)

    def test_maximally_mixed(self):
        rho = DensityMatrix(np.eye(4) / 4)
        assert rho.purity() == pytest.approx(0.25)


def test_hbar_constant():
    assert hbar_mev_ps() == HBAR_MEV_PS == pytest.approx(0.6582119569)
