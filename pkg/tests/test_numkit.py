import numpy as np
import pytest
from hypothesis import given, settings, strategies as st
from scipy.linalg import expm

from spinwitness import numkit
from spinwitness.errors import (
    DimensionMismatchError,
    NoConvergenceError,
    NotAStateError,
    NotHermitianError,
)
from spinwitness.lattice import chain
from spinwitness.models import build_heisenberg

from conftest import random_hermitian

METHODS = ["lapack", "householder"]


def test_kron_identity_and_diagonal():
    assert np.array_equal(numkit.kron(numkit.I2, numkit.I2), np.eye(4))
    assert np.array_equal(numkit.kron(numkit.SZ, numkit.SZ), np.diag([1, -1, -1, 1]))


def test_kron_matches_elementwise_definition(rng):
    a = rng.standard_normal((2, 3)) + 1j * rng.standard_normal((2, 3))
    b = rng.standard_normal((3, 2))
    k = numkit.kron(a, b)
    assert k.shape == (6, 6)
    for i in range(2):
        for j in range(3):
            for p in range(3):
                for q in range(2):
                    assert k[3 * i + p, 2 * j + q] == a[i, j] * b[p, q]


def _mat(seed, shape):
    r = np.random.default_rng(seed)
    return r.standard_normal(shape) + 1j * r.standard_normal(shape)


@settings(max_examples=50, deadline=None)
@given(st.integers(0, 2**32 - 1))
def test_kron_associative(seed):
    a, b, c = (_mat([seed, i], (2, 2)) for i in range(3))
    left = numkit.kron(numkit.kron(a, b), c)
    right = numkit.kron(a, numkit.kron(b, c))
    assert np.max(np.abs(left - right)) <= 1e-12 * (1 + np.max(np.abs(left)))
    assert np.allclose(numkit.kron(a, b, c), left, rtol=0, atol=1e-12)


@settings(max_examples=50, deadline=None)
@given(st.integers(0, 2**32 - 1))
def test_kron_mixed_product(seed):
    a, c = _mat([seed, 0], (2, 3)), _mat([seed, 1], (3, 2))
    b, d = _mat([seed, 2], (3, 2)), _mat([seed, 3], (2, 4))
    lhs = numkit.kron(a, b) @ numkit.kron(c, d)
    rhs = numkit.kron(a @ c, b @ d)
    assert np.max(np.abs(lhs - rhs)) <= 1e-12 * (1 + np.max(np.abs(lhs)))


@pytest.mark.parametrize("method", METHODS)
def test_eigh_small_examples(method):
    assert np.allclose(numkit.eigh(np.eye(2), method=method).eigenvalues, [1, 1])
    assert np.allclose(numkit.eigh(numkit.SX, method=method).eigenvalues, [-1, 1])
    assert np.allclose(numkit.eigh(numkit.SY, method=method).eigenvalues, [-1, 1])


@pytest.mark.parametrize("method", METHODS)
def test_eigh_reconstruction_16(rng, method):
    h = random_hermitian(rng, 16)
    w, v = numkit.eigh(h, method=method)
    err = np.linalg.norm(v @ np.diag(w) @ v.conj().T - h)
    assert err <= 1e-9 * np.linalg.norm(h)
    assert np.all(np.diff(w) >= 0)


def _check_decomposition(h, dec):
    w, v = dec
    fro = np.linalg.norm(h)
    residual = np.linalg.norm(h @ v - v * w, axis=0).max()
    ortho = np.abs(v.conj().T @ v - np.eye(len(w))).max()
    assert residual <= 1e-9 * fro
    assert ortho <= 1e-10
    assert np.all(np.diff(w) >= 0)
    assert abs(np.trace(h).real - w.sum()) <= 1e-9 * (1 + np.abs(w).sum())


def test_eigh_invariants_1000_random(rng):
    for i in range(1000):
        n = int(rng.integers(1, 65))
        h = random_hermitian(rng, n, scale=10 ** rng.uniform(-3, 3))
        if i % 3 == 0:
            h = h.real.copy()
        _check_decomposition(h, numkit.eigh(h))


def test_householder_invariants_random(rng):
    for i in range(150):
        n = int(rng.integers(1, 33))
        h = random_hermitian(rng, n)
        if i % 2:
            h = h.real.copy()
        _check_decomposition(h, numkit.eigh(h, method="householder"))
    h = random_hermitian(rng, 64)
    _check_decomposition(h, numkit.eigh(h, method="householder"))


def test_householder_handles_degenerate_spectra():
    h = build_heisenberg(chain(6), 0.0)
    ref = numkit.eigh(h).eigenvalues
    dec = numkit.eigh(h, method="householder")
    _check_decomposition(h, dec)
    assert np.allclose(dec.eigenvalues, ref, atol=1e-10)


def test_householder_agrees_with_lapack(rng):
    h = random_hermitian(rng, 40)
    assert np.allclose(
        numkit.eigh(h, method="householder").eigenvalues, numkit.eigh(h).eigenvalues, atol=1e-10
    )


@pytest.mark.parametrize("method", METHODS)
def test_eigh_rejects_non_hermitian(method):
    with pytest.raises(NotHermitianError):
        numkit.eigh(np.array([[0.0, 1.0], [0.0, 0.0]]), method=method)
    with pytest.raises(DimensionMismatchError):
        numkit.eigh(np.ones((2, 3)), method=method)


def test_hermiticity_tolerance_is_relative():
    m = 1e6 * numkit.SX
    m = m + np.array([[0, 1e-7], [0, 0]])
    assert numkit.is_hermitian(m)
    assert not numkit.is_hermitian(numkit.SX + np.array([[0, 1e-9], [0, 0]]))


def test_eigh_unknown_method():
    with pytest.raises(ValueError):
        numkit.eigh(np.eye(2), method="jacobi")


def test_ql_iteration_cap():
    d = np.array([1.0, 2.0, 3.0, 4.0])
    e = np.array([1.0, 1.0, 1.0])
    with pytest.raises(NoConvergenceError):
        numkit.tridiagonal_ql(d, e, np.eye(4), max_sweeps=0)
    w, _ = numkit.tridiagonal_ql(d, e, np.eye(4))
    t = np.diag(d) + np.diag(e, 1) + np.diag(e, -1)
    assert np.allclose(np.sort(w), np.linalg.eigvalsh(t), atol=1e-12)


def test_expectation_examples():
    assert numkit.expectation(np.eye(2) / 2, numkit.SZ) == 0
    assert numkit.expectation(np.diag([1.0, 0.0]), numkit.SZ) == 1


def test_expectation_matches_spectral_sum():
    h = build_heisenberg(chain(4), 0.0)
    t = 1.0
    rho = expm(-h / t)
    rho /= np.trace(rho)
    w = np.linalg.eigvalsh(h)
    boltz = np.exp(-(w - w[0]) / t)
    expected = np.dot(w, boltz) / boltz.sum()
    assert abs(numkit.expectation(rho, h) - expected) <= 1e-10


def test_expectation_errors():
    with pytest.raises(DimensionMismatchError):
        numkit.expectation(np.eye(2) / 2, np.eye(4))
    with pytest.raises(NotAStateError):
        numkit.expectation(np.eye(2), numkit.SZ)
    with pytest.raises(NotAStateError):
        numkit.expectation(np.diag([1.5, -0.5]), numkit.SZ)
    with pytest.raises(NotHermitianError):
        numkit.expectation(np.eye(2) / 2, np.array([[0, 1], [0, 0]]))


def test_trace_basis_invariant(rng):
    for n in (3, 17, 64):
        h = random_hermitian(rng, n)
        w = numkit.eigvalsh(h)
        assert abs(numkit.trace(h).real - w.sum()) <= 1e-9 * (1 + np.abs(w).sum())
