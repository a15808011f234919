"""Dense Hermitian linear algebra used by every other module.

Matrices are plain ``numpy.ndarray`` objects. Hamiltonians that are real in
the computational basis are stored as ``float64``; density matrices and
generic observables as ``complex128``.

Two eigensolvers are available:

* ``method="lapack"`` (default) delegates to ``numpy.linalg.eigh``;
* ``method="householder"`` runs the in-package Householder reduction to a
  real tridiagonal matrix followed by implicit-shift QL iteration.

The second one is slow for large dimensions and exists so that results can
be cross-checked against an implementation that shares no code with LAPACK.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import reduce

import numpy as np

from .errors import (
    DimensionMismatchError,
    NoConvergenceError,
    NotAStateError,
    NotHermitianError,
)

HERMITIAN_TOL = 1e-12
STATE_TOL = 1e-9
QL_MAX_SWEEPS = 50

I2 = np.eye(2, dtype=complex)
SX = np.array([[0, 1], [1, 0]], dtype=complex)
SY = np.array([[0, -1j], [1j, 0]], dtype=complex)
SZ = np.array([[1, 0], [0, -1]], dtype=complex)
PAULI = {"x": SX, "y": SY, "z": SZ}


@dataclass(frozen=True)
class EigenDecomposition:
    """Ascending eigenvalues and the matching orthonormal eigenvector columns."""

    eigenvalues: np.ndarray
    eigenvectors: np.ndarray

    def __iter__(self):
        yield self.eigenvalues
        yield self.eigenvectors


def kron(*mats: np.ndarray) -> np.ndarray:
    """Kronecker product of one or more matrices, left to right."""
    if not mats:
        raise ValueError("kron needs at least one matrix")
    return reduce(np.kron, mats)


def _square(m: np.ndarray, name: str = "matrix") -> np.ndarray:
    m = np.asarray(m)
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        raise DimensionMismatchError(f"{name} must be square, got shape {m.shape}")
    return m


def hermiticity_error(m: np.ndarray) -> float:
    m = _square(m)
    if m.size == 0:
        return 0.0
    return float(np.max(np.abs(m - m.conj().T)))


def is_hermitian(m: np.ndarray, tol: float = HERMITIAN_TOL) -> bool:
    m = _square(m)
    scale = 1.0 + (float(np.max(np.abs(m))) if m.size else 0.0)
    return hermiticity_error(m) <= tol * scale


def check_hermitian(m: np.ndarray) -> np.ndarray:
    m = _square(m)
    if not is_hermitian(m):
        raise NotHermitianError(
            f"matrix is not Hermitian (max asymmetry {hermiticity_error(m):.3e})"
        )
    return m


def eigh(m: np.ndarray, method: str = "lapack") -> EigenDecomposition:
    """Eigendecomposition of a Hermitian matrix, eigenvalues ascending.

    Parameters
    ----------
    m : ndarray
        Square Hermitian matrix (checked to ``1e-12 * (1 + max|m|)``).
    method : {"lapack", "householder"}
        Backend; see the module docstring.
    """
    m = check_hermitian(m)
    if method == "lapack":
        w, v = np.linalg.eigh(m)
        return EigenDecomposition(w, v)
    if method == "householder":
        return householder_eigh(m)
    raise ValueError(f"unknown eigensolver method {method!r}")


def eigvalsh(m: np.ndarray) -> np.ndarray:
    """Ascending eigenvalues only (cheaper than :func:`eigh`)."""
    return np.linalg.eigvalsh(check_hermitian(m))


def householder_tridiagonalize(m: np.ndarray):
    """Reduce a Hermitian matrix to real symmetric tridiagonal form.

    Returns ``(diag, offdiag, q)`` with ``q.conj().T @ m @ q`` equal to the
    real tridiagonal matrix built from ``diag`` and ``offdiag``.
    """
    a = np.array(_square(m), dtype=complex)
    n = a.shape[0]
    q = np.eye(n, dtype=complex)
    for k in range(n - 2):
        x = a[k + 1 :, k]
        xnorm = np.linalg.norm(x)
        if xnorm == 0.0:
            continue
        phase = x[0] / abs(x[0]) if x[0] != 0 else 1.0
        alpha = -phase * xnorm
        v = x.copy()
        v[0] -= alpha
        vnorm = np.linalg.norm(v)
        if vnorm == 0.0:
            continue
        v /= vnorm
        # A <- H A H with H = I - 2 v v^H acting on the trailing block
        sub = a[k + 1 :, k + 1 :]
        p = sub @ v
        w = p - (v.conj() @ p) * v
        sub -= 2.0 * (np.outer(v, w.conj()) + np.outer(w, v.conj()))
        a[k + 1 :, k] = 0.0
        a[k, k + 1 :] = 0.0
        a[k + 1, k] = alpha
        a[k, k + 1] = np.conj(alpha)
        qk = q[:, k + 1 :]
        qk -= 2.0 * np.outer(qk @ v, v.conj())

    diag = np.real(np.diag(a)).copy()
    sub = np.diag(a, -1).copy()
    # diagonal phase similarity makes every off-diagonal real and >= 0
    phases = np.ones(n, dtype=complex)
    for k in range(n - 1):
        if sub[k] != 0:
            phases[k + 1] = phases[k] * sub[k] / abs(sub[k])
        else:
            phases[k + 1] = phases[k]
    q = q * phases[np.newaxis, :]
    return diag, np.abs(sub), q


def tridiagonal_ql(diag, offdiag, z=None, max_sweeps: int = QL_MAX_SWEEPS):
    """Implicit-shift QL iteration on a real symmetric tridiagonal matrix.

    ``z`` (optional) is transformed in place by the accumulated rotations, so
    passing the Householder basis yields eigenvectors of the original matrix.
    Returns ``(eigenvalues, z)`` sorted ascending.
    """
    d = np.array(diag, dtype=float)
    n = d.size
    e = np.zeros(n)
    e[: n - 1] = offdiag
    if z is None:
        z = np.eye(n)
    else:
        z = np.array(z)
    for l in range(n):
        iters = 0
        while True:
            m = l
            while m < n - 1:
                dd = abs(d[m]) + abs(d[m + 1])
                if abs(e[m]) <= np.finfo(float).eps * dd:
                    break
                m += 1
            if m == l:
                break
            iters += 1
            if iters > max_sweeps:
                raise NoConvergenceError(
                    f"QL iteration did not converge for eigenvalue {l} in {max_sweeps} sweeps"
                )
            g = (d[l + 1] - d[l]) / (2.0 * e[l])
            r = np.hypot(g, 1.0)
            g = d[m] - d[l] + e[l] / (g + np.copysign(r, g))
            s = c = 1.0
            p = 0.0
            i = m - 1
            underflow = False
            while i >= l:
                f = s * e[i]
                b = c * e[i]
                r = np.hypot(f, g)
                e[i + 1] = r
                if r == 0.0:
                    d[i + 1] -= p
                    e[m] = 0.0
                    underflow = True
                    break
                s = f / r
                c = g / r
                g = d[i + 1] - p
                r = (d[i] - g) * s + 2.0 * c * b
                p = s * r
                d[i + 1] = g + p
                g = c * r - b
                zi = z[:, i].copy()
                z[:, i] = c * zi - s * z[:, i + 1]
                z[:, i + 1] = s * zi + c * z[:, i + 1]
                i -= 1
            if underflow:
                continue
            d[l] -= p
            e[l] = g
            e[m] = 0.0
    order = np.argsort(d, kind="stable")
    return d[order], z[:, order]


def householder_eigh(m: np.ndarray) -> EigenDecomposition:
    m = check_hermitian(m)
    n = m.shape[0]
    if n == 1:
        return EigenDecomposition(np.real(np.diag(m)).astype(float), np.eye(1, dtype=m.dtype))
    diag, off, q = householder_tridiagonalize(m)
    w, v = tridiagonal_ql(diag, off, q)
    if np.isrealobj(m):
        # real input keeps every Householder vector and phase real
        v = v.real
    return EigenDecomposition(w, v)


def trace(m: np.ndarray) -> complex:
    return complex(np.trace(_square(m)))


def check_state(rho: np.ndarray, tol: float = STATE_TOL) -> np.ndarray:
    """Validate a density matrix: Hermitian, unit trace, no eigenvalue below ``-tol``."""
    rho = _square(rho, "density matrix")
    if not is_hermitian(rho, tol):
        raise NotAStateError("density matrix is not Hermitian")
    tr = np.trace(rho)
    if abs(tr - 1.0) > tol:
        raise NotAStateError(f"density matrix trace is {tr.real:.12g}, expected 1")
    lowest = np.linalg.eigvalsh(rho)[0]
    if lowest < -tol:
        raise NotAStateError(f"density matrix has negative eigenvalue {lowest:.3e}")
    return rho


def expectation(rho: np.ndarray, obs: np.ndarray, validate: bool = True) -> float:
    """Real expectation value ``Tr(rho @ obs)``.

    With ``validate`` the state is checked for unit trace and positivity
    (an eigenvalue computation), which dominates the cost for large
    dimensions; callers that built ``rho`` themselves may skip it.
    """
    rho = _square(rho, "density matrix")
    obs = _square(obs, "observable")
    if rho.shape != obs.shape:
        raise DimensionMismatchError(f"state {rho.shape} vs observable {obs.shape}")
    if validate:
        check_state(rho)
        check_hermitian(obs)
    # Tr(rho obs) = sum_ij rho_ij obs_ji
    value = np.einsum("ij,ji->", rho, obs)
    if abs(value.imag) > STATE_TOL * (1.0 + abs(value.real)):
        raise NotAStateError(f"expectation value has imaginary part {value.imag:.3e}")
    return float(value.real)
