import numpy as np
import pytest

from starkdots.entanglement import (EntanglementReport, binary_entropy,
                                    concurrence, concurrence_general, eof,
                                    eof_from_concurrence, fidelity_pure)
from starkdots.model import DensityMatrix, QuantumState, pure_to_density


def random_pure(rng):
    a = rng.standard_normal(4) + 1j * rng.standard_normal(4)
    return a / np.linalg.norm(a)


def random_su2(rng):
    h = rng.standard_normal((2, 2)) + 1j * rng.standard_normal((2, 2))
    q, r = np.linalg.qr(h)
    return q * (np.diag(r) / np.abs(np.diag(r)))


def bell_state():
    return QuantumState(np.array([0, 1, 1j, 0]) / np.sqrt(2))


class TestConcurrence:
    def test_bell_state(self):
        assert concurrence(pure_to_density(bell_state())) == pytest.approx(1.0)

    def test_product_state(self):
        rho = pure_to_density(QuantumState.basis("01"))
        assert concurrence(rho) == pytest.approx(0.0, abs=1e-12)

    def test_werner_state(self):
        phi = np.array([1, 0, 0, 1]) / np.sqrt(2)
        for p, expected in ((0.5, 0.25), (0.9, 0.85), (0.2, 0.0)):
            rho = p * np.outer(phi, phi) + (1 - p) * np.eye(4) / 4
            assert concurrence(DensityMatrix(rho)) == pytest.approx(
                max((3 * p - 1) / 2, 0.0), abs=1e-9)

    def test_pure_state_closed_form(self):
        # For amplitudes (a, b, c, d), concurrence is 2|ad - bc|.
        rng = np.random.default_rng(7)
        for _ in range(1000):
            a = random_pure(rng)
            rho = np.outer(a, a.conj())
            expected = 2 * abs(a[0] * a[3] - a[1] * a[2])
            assert concurrence(rho) == pytest.approx(expected, abs=1e-9)

    def test_general_eigensolver_route_agrees(self):
        rng = np.random.default_rng(11)
        for _ in range(50):
            m = rng.standard_normal((4, 4)) + 1j * rng.standard_normal((4, 4))
            rho = m @ m.conj().T
            rho /= np.trace(rho).real
            assert concurrence(rho) == pytest.approx(
                concurrence_general(rho), abs=1e-8)

    def test_local_unitary_invariance(self):
        rng = np.random.default_rng(3)
        for _ in range(50):
            a = random_pure(rng)
            rho = np.outer(a, a.conj())
            u = np.kron(random_su2(rng), random_su2(rng))
            rotated = u @ rho @ u.conj().T
            assert concurrence(rotated) == pytest.approx(concurrence(rho),
                                                         abs=1e-9)
            assert eof(rotated) == pytest.approx(eof(rho), abs=1e-9)

    def test_accepts_raw_array_and_wrapper(self):
        rho = pure_to_density(bell_state())
        assert concurrence(rho) == concurrence(rho.matrix)


class TestEof:
    def test_endpoints(self):
        assert eof_from_concurrence(0.0) == 0.0
        assert eof_from_concurrence(1.0) == pytest.approx(1.0)

    def test_half_concurrence(self):
        assert eof_from_concurrence(0.5) == pytest.approx(0.3546, abs=1e-4)

    def test_monotone_in_concurrence(self):
        grid = np.linspace(0.0, 1.0, 1001)
        values = [eof_from_concurrence(c) for c in grid]
        assert all(b >= a for a, b in zip(values, values[1:]))

    def test_binary_entropy(self):
        assert binary_entropy(0.5) == pytest.approx(1.0)
        assert binary_entropy(0.0) == 0.0
        assert binary_entropy(1.0) == 0.0

    def test_ranges_on_random_mixed_states(self):
        rng = np.random.default_rng(5)
        for _ in range(200):
            m = rng.standard_normal((4, 4)) + 1j * rng.standard_normal((4, 4))
            rho = m @ m.conj().T
            rho /= np.trace(rho).real
            rep = EntanglementReport.from_state(rho)
            assert 0.0 <= rep.concurrence <= 1.0
            assert 0.0 <= rep.tangle <= 1.0
            assert 0.0 <= rep.eof <= 1.0
            assert rep.tangle == pytest.approx(rep.concurrence**2)


class TestFidelity:
    def test_same_state(self):
        rho = pure_to_density(QuantumState.basis("01"))
        assert fidelity_pure(rho, QuantumState.basis("01")) == 1.0

    def test_orthogonal(self):
        rho = pure_to_density(QuantumState.basis("01"))
        assert fidelity_pure(rho, QuantumState.basis("10")) == 0.0

    def test_maximally_mixed(self):
        rho = DensityMatrix(np.eye(4) / 4)
        assert fidelity_pure(rho, bell_state()) == pytest.approx(0.25)
