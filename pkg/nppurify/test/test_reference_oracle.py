"""Test the density matrix reference maps"""

import numpy as np
import pytest

from nppurify.reference_oracle import (
    DensityMatrix, D_matrix, S_matrix, U_conj, evolution_matrix, pure_state)


def test_maximally_mixed_is_fixed_by_purification():
    rho = S_matrix(DensityMatrix.maximally_mixed())

    assert rho.max_entry_distance(DensityMatrix.maximally_mixed()) == 0.0


def test_purification_of_pure_state_squares_coordinate():
    rho = S_matrix(pure_state(2.0))

    assert rho.max_entry_distance(pure_state(4.0)) < 1e-15


def test_purification_increases_purity_of_diagonal_states():
    for population in np.linspace(0.05, 0.95, 19):
        rho = DensityMatrix(population, 0.0, 1.0 - population)
        assert S_matrix(rho).purity() >= rho.purity() - 1e-15


def test_purification_rejects_degenerate_matrix():
    with pytest.raises(ValueError):
        S_matrix(DensityMatrix(0.0, 0.0, 0.0))


def test_identity_evolution():
    rho = DensityMatrix(0.3, 0.2 + 0.1j, 0.7)

    result = U_conj(rho, 0.0, 0.0, 0.0)

    assert result.max_entry_distance(rho) < 1e-15


def test_evolution_maps_pure_states_by_mobius_transformation():
    alpha, phi, x = 0.3, -0.4, 0.2
    p = np.exp(1j * phi) * np.tan(x)
    z = 0.7 - 0.2j

    result = U_conj(pure_state(z), alpha, phi, x)

    expected = (np.exp(1j * alpha) * z + p) / (np.exp(-1j * alpha) - np.conj(p) * z)
    assert result.max_entry_distance(pure_state(expected)) < 1e-14


def test_evolution_matrix_is_unitary():
    unitary = evolution_matrix(0.7, 1.2, -0.3)

    np.testing.assert_allclose(unitary.dot(unitary.conj().T), np.eye(2), atol=1e-15)


def test_dephasing_scales_coherence():
    rho = pure_state(1.0)

    assert D_matrix(rho, 0.0).max_entry_distance(rho) == 0.0
    assert D_matrix(rho, 0.5).rho01 == pytest.approx(0.25)


def test_dephasing_composes():
    rho = pure_state(0.4 + 0.9j)

    twice = D_matrix(D_matrix(rho, 0.1), 0.2)
    once = D_matrix(rho, 1.0 - 0.9 * 0.8)

    assert twice.max_entry_distance(once) < 1e-15


@pytest.mark.parametrize("beta", [-0.1, 1.0, 2.0])
def test_dephasing_rejects_rate_out_of_range(beta):
    with pytest.raises(ValueError):
        D_matrix(DensityMatrix.maximally_mixed(), beta)


def test_maps_preserve_validity():
    random_state = np.random.RandomState(10)
    for _ in range(200):
        z = complex(*random_state.normal(size=2))
        mixing = random_state.uniform(0.0, 0.5)
        rho = pure_state(z)
        rho = DensityMatrix(rho.rho00, (1.0 - mixing) * rho.rho01, rho.rho11)
        alpha, phi, x = random_state.uniform(-np.pi, np.pi, size=3)

        assert S_matrix(rho).is_valid()
        assert U_conj(rho, alpha, phi, x).is_valid()
        assert D_matrix(rho, mixing).is_valid()


def test_from_matrix_rejects_bad_shape():
    with pytest.raises(ValueError):
        DensityMatrix.from_matrix(np.eye(3))
