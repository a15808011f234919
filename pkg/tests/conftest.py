"""Shared fixtures and the per-criterion pass/fail summary."""

import numpy as np
import pytest

_CRITERIA = {}


def pytest_runtest_makereport(item, call):
    marker = item.get_closest_marker("criterion")
    if marker is None or call.when != "call":
        return
    number, title = marker.args
    ok = call.excinfo is None
    prev = _CRITERIA.get(number, (title, True))
    _CRITERIA[number] = (title, prev[1] and ok)


def pytest_terminal_summary(terminalreporter):
    if not _CRITERIA:
        return
    terminalreporter.section("acceptance criteria")
    numbered = sorted(k for k in _CRITERIA if isinstance(k, int))
    for key in numbered + [k for k in _CRITERIA if not isinstance(k, int)]:
        title, ok = _CRITERIA[key]
        label = f"criterion {key}" if isinstance(key, int) else key
        terminalreporter.write_line(f"{'PASS' if ok else 'FAIL'}  {label}: {title}")


@pytest.fixture
def rng():
    return np.random.default_rng(12345)


def random_hermitian(rng, n, scale=1.0):
    a = rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))
    return scale * (a + a.conj().T) / 2


def random_product_state(rng, n):
    """Random pure product state vector and the Bloch vectors of its factors."""
    psi = np.array([1.0 + 0j])
    blochs = []
    for _ in range(n):
        v = rng.standard_normal(2) + 1j * rng.standard_normal(2)
        v /= np.linalg.norm(v)
        psi = np.kron(psi, v)
        rho = np.outer(v, v.conj())
        blochs.append([2 * rho[0, 1].real, -2 * rho[0, 1].imag, (rho[0, 0] - rho[1, 1]).real])
    return psi, np.array(blochs)
