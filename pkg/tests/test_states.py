"""Density-matrix construction, spectral data, state families, and POVMs."""

import numpy as np
import pytest

from conftest import random_density
from metrocommute.operator_core import ValidationError, partial_trace, tensor
from metrocommute.states import (
    bell_diagonal,
    density_from_eigpairs,
    density_matrix,
    povm_set,
    state_marginal,
    tensor_power,
    transpose_invariant,
    white_noise_state,
)


def test_density_matrix_valid_full_rank():
    rng = np.random.default_rng(0)
    rho = density_matrix(random_density(rng, 4))
    assert rho.dim == 4
    assert rho.spectrum.rank == 4
    assert np.all(np.diff(rho.spectrum.eigenvalues) <= 1e-14)  # descending
    v = rho.spectrum.eigenvectors
    assert np.allclose(v.conj().T @ v, np.eye(4), atol=1e-12)
    recon = (v * rho.spectrum.eigenvalues) @ v.conj().T
    assert np.allclose(recon, rho.matrix, atol=1e-12)


def test_density_matrix_trace_error_names_value():
    with pytest.raises(ValidationError, match="trace 0.9"):
        density_matrix(np.diag([0.5, 0.4]))


def test_density_matrix_rejects_negative_eigenvalue():
    mat = np.array([[0.9, 0.5], [0.5, 0.1]])
    with pytest.raises(ValidationError, match="not positive semidefinite"):
        density_matrix(mat)


def test_density_matrix_rejects_non_hermitian():
    mat = np.array([[0.5, 0.3], [0.0, 0.5]])
    with pytest.raises(ValidationError, match="not Hermitian"):
        density_matrix(mat)


def test_density_matrix_rank_detection():
    rho = density_matrix(np.diag([0.5, 0.5, 0.0, 0.0]))
    assert rho.spectrum.rank == 2
    assert np.allclose(rho.spectrum.eigenvalues[:2], [0.5, 0.5])


def test_eigpairs_orthonormal_kept_and_kernel_completed():
    v1 = np.array([1, 0, 0, 0], dtype=complex)
    v2 = np.array([0, 1, 0, 0], dtype=complex)
    rho = density_from_eigpairs([(0.75, v1), (0.25, v2)])
    assert rho.spectrum.rank == 2
    assert np.allclose(rho.spectrum.eigenvalues, [0.75, 0.25, 0.0, 0.0])
    full = rho.spectrum.eigenvectors
    assert np.allclose(full.conj().T @ full, np.eye(4), atol=1e-12)


def test_eigpairs_non_orthogonal_rediagonalized():
    v1 = np.array([1, 0], dtype=complex)
    v2 = np.array([1, 1], dtype=complex) / np.sqrt(2)
    rho = density_from_eigpairs([(0.5, v1), (0.5, v2)])
    assert np.trace(rho.matrix) == pytest.approx(1.0)
    assert np.linalg.eigvalsh(rho.matrix).min() >= -1e-12


def test_eigpairs_weight_validation():
    v = np.array([1, 0], dtype=complex)
    with pytest.raises(ValidationError, match="sum to"):
        density_from_eigpairs([(0.5, v)])
    with pytest.raises(ValidationError, match="negative weight"):
        density_from_eigpairs([(-0.2, v), (1.2, v)])
    with pytest.raises(ValidationError, match="zero vector"):
        density_from_eigpairs([(1.0, np.zeros(2))])


def test_white_noise_spectrum():
    p, d = 0.6, 4
    psi = np.zeros(d)
    psi[0] = 1.0
    rho = white_noise_state(psi, p)
    vals = np.sort(np.linalg.eigvalsh(rho.matrix))
    assert vals[-1] == pytest.approx(p + (1 - p) / d)
    assert np.allclose(vals[:-1], (1 - p) / d)


def test_white_noise_normalizes_input_vector():
    rho1 = white_noise_state([2.0, 0.0], 0.5)
    rho2 = white_noise_state([1.0, 0.0], 0.5)
    assert np.allclose(rho1.matrix, rho2.matrix)


def test_white_noise_domain():
    with pytest.raises(ValidationError, match="outside"):
        white_noise_state([1, 0], 1.5)


def test_bell_diagonal_qubit_basis_states():
    # weight on (m, n) = (0, 0) alone is the canonical maximally entangled ket
    bd = bell_diagonal([1.0], 2)
    phi_plus = np.array([1, 0, 0, 1], dtype=complex) / np.sqrt(2)
    assert np.allclose(bd.rho.matrix, np.outer(phi_plus, phi_plus.conj()), atol=1e-12)
    assert bd.is_real


def test_bell_diagonal_marginals_maximally_mixed():
    rng = np.random.default_rng(1)
    w = rng.dirichlet(np.ones(9))
    bd = bell_diagonal(w, 3)
    for keep in (0, 1):
        marg = state_marginal(bd.rho, (3, 3), [keep])
        assert np.allclose(marg.matrix, np.eye(3) / 3, atol=1e-10)


def test_bell_diagonal_real_flag_matches_transpose_invariance():
    # symmetrized weights w(m, n) = w(-m mod d, n) give a transpose-invariant state
    rng = np.random.default_rng(2)
    raw = rng.dirichlet(np.ones(9)).reshape(3, 3)
    sym = (raw + raw[(-np.arange(3)) % 3, :]) / 2.0
    bd = bell_diagonal(sym.reshape(-1), 3)
    assert bd.is_real
    assert transpose_invariant(bd.rho)
    asym = np.zeros(9)
    asym[3] = 1.0  # (m, n) = (1, 0) alone: breaks the symmetry for d = 3
    bd2 = bell_diagonal(asym, 3)
    assert not bd2.is_real
    assert not transpose_invariant(bd2.rho)


def test_bell_diagonal_pads_and_validates():
    bd = bell_diagonal([0.5, 0.5], 3)
    assert bd.weights.size == 9
    assert bd.rho.spectrum.rank == 2
    with pytest.raises(ValidationError, match="exceed"):
        bell_diagonal(np.ones(5) / 5, 2)
    with pytest.raises(ValidationError, match="integer d"):
        bell_diagonal([1.0], 1)


def test_tensor_power():
    rng = np.random.default_rng(3)
    rho = density_matrix(random_density(rng, 3))
    r2 = tensor_power(rho, 2)
    assert r2.dim == 9
    assert np.allclose(r2.matrix, np.kron(rho.matrix, rho.matrix), atol=1e-12)
    assert tensor_power(rho, 1) is rho
    with pytest.raises(ValidationError, match="nu must be"):
        tensor_power(rho, 4)
    big = density_matrix(np.eye(9) / 9)
    with pytest.raises(ValidationError, match="cap"):
        tensor_power(big, 3)


def test_povm_validation():
    up = np.diag([1.0, 0.0])
    down = np.diag([0.0, 1.0])
    povm = povm_set([up, down])
    assert len(povm.effects) == 2
    with pytest.raises(ValidationError, match="sum to the identity"):
        povm_set([up, up])
    with pytest.raises(ValidationError, match="not positive semidefinite"):
        povm_set([np.diag([1.5, 0.0]), np.diag([-0.5, 1.0])])
    with pytest.raises(ValidationError, match="empty"):
        povm_set([])


def test_state_marginal_matches_partial_trace():
    rng = np.random.default_rng(4)
    rho = density_matrix(random_density(rng, 6))
    marg = state_marginal(rho, (2, 3), [1])
    assert np.allclose(marg.matrix, partial_trace(rho.matrix, (2, 3), [1]), atol=1e-12)


def test_tensor_utility_reexport_consistency():
    a = np.eye(2)
    b = np.ones((2, 2))
    assert np.allclose(tensor(a, b), np.kron(a, b))
